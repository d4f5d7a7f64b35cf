"""Indexed binary min-heap over vertex ids.

The heap orders vertices by ``(key[v], v)`` so equal keys pop the smaller id
first.  ``pos[v]`` is the slot of ``v`` or -1; callers own all arrays.
"""
from .._jit import jit


@jit
def less(key, a, b):
    ka = key[a]
    kb = key[b]
    return ka < kb or (ka == kb and a < b)


@jit
def sift_up(heap, pos, key, i):
    v = heap[i]
    while i > 0:
        p = (i - 1) >> 1
        u = heap[p]
        if less(key, v, u):
            heap[i] = u
            pos[u] = i
            i = p
        else:
            break
    heap[i] = v
    pos[v] = i


@jit
def push(heap, pos, size, key, v):
    heap[size] = v
    pos[v] = size
    sift_up(heap, pos, key, size)
    return size + 1


@jit
def pop(heap, pos, size, key):
    top = heap[0]
    pos[top] = -1
    size -= 1
    if size > 0:
        last = heap[size]
        i = 0
        while True:
            c = 2 * i + 1
            if c >= size:
                break
            if c + 1 < size and less(key, heap[c + 1], heap[c]):
                c += 1
            if less(key, heap[c], last):
                heap[i] = heap[c]
                pos[heap[i]] = i
                i = c
            else:
                break
        heap[i] = last
        pos[last] = i
    return top, size


@jit
def push_or_decrease(heap, pos, size, key, v):
    """Insert ``v`` or restore order after its key was lowered."""
    if pos[v] < 0:
        return push(heap, pos, size, key, v)
    sift_up(heap, pos, key, pos[v])
    return size
