"""Linear-time tree indexing kernels.

Trees are given by a parent array (-1 at the root) plus the children in CSR
form (``child_ptr``, ``child``), children of each vertex in ascending id.
"""
import numpy as np

from .._jit import jit


@jit
def preorder(root, child_ptr, child):
    """Preorder numbering; children visited in the order they are stored."""
    n = child_ptr.shape[0] - 1
    order = np.empty(n, np.int64)
    pre_in = np.full(n, -1, np.int64)
    stack = np.empty(n, np.int64)
    sp = 0
    stack[sp] = root
    sp += 1
    cnt = 0
    while sp > 0:
        sp -= 1
        x = stack[sp]
        pre_in[x] = cnt
        order[cnt] = x
        cnt += 1
        for k in range(child_ptr[x + 1] - 1, child_ptr[x] - 1, -1):
            stack[sp] = child[k]
            sp += 1
    return order[:cnt], pre_in


@jit
def subtree_stats(order, parent):
    """Subtree sizes, hop depths and hop heights of the vertices in ``order``."""
    n = parent.shape[0]
    size = np.ones(n, np.int64)
    depth = np.zeros(n, np.int64)
    height = np.zeros(n, np.int64)
    for p in range(1, order.shape[0]):
        x = order[p]
        depth[x] = depth[parent[x]] + 1
    for p in range(order.shape[0] - 1, 0, -1):
        x = order[p]
        q = parent[x]
        size[q] += size[x]
        if height[x] + 1 > height[q]:
            height[q] = height[x] + 1
    return size, depth, height


@jit
def tree_bridges(order, parent, pre_in, pre_out, parent_edge, indptr, adj, adj_eid):
    """Mark every vertex whose parent edge is the only edge leaving its subtree."""
    n = pre_in.shape[0]
    low = np.empty(n, np.int64)
    high = np.empty(n, np.int64)
    for x in range(n):
        lo = pre_in[x]
        hi = pre_in[x]
        for k in range(indptr[x], indptr[x + 1]):
            if adj_eid[k] == parent_edge[x]:
                continue
            py = pre_in[adj[k]]
            if py < lo:
                lo = py
            if py > hi:
                hi = py
        low[x] = lo
        high[x] = hi
    bridge = np.zeros(n, np.bool_)
    # reverse preorder folds every child into x before x is tested
    for p in range(order.shape[0] - 1, 0, -1):
        x = order[p]
        if low[x] >= pre_in[x] and high[x] <= pre_out[x]:
            bridge[x] = True
        q = parent[x]
        if low[x] < low[q]:
            low[q] = low[x]
        if high[x] > high[q]:
            high[q] = high[x]
    return bridge


@jit
def heavy_path(order, parent, size, child_ptr, child):
    """Heavy-path decomposition: chain heads and heavy-first positions."""
    n = parent.shape[0]
    heavy = np.full(n, -1, np.int64)
    for x in range(n):
        best = 0
        for k in range(child_ptr[x], child_ptr[x + 1]):
            c = child[k]
            if size[c] > best:
                best = size[c]
                heavy[x] = c
    head = np.empty(n, np.int64)
    hpos = np.empty(n, np.int64)
    vert_at = np.empty(n, np.int64)
    root = order[0]
    stack = np.empty(n, np.int64)
    sp = 0
    stack[sp] = root
    sp += 1
    head[root] = root
    cnt = 0
    while sp > 0:
        sp -= 1
        x = stack[sp]
        # walk the whole chain starting at x, queueing light children
        while x >= 0:
            hpos[x] = cnt
            vert_at[cnt] = x
            cnt += 1
            h = heavy[x]
            for k in range(child_ptr[x + 1] - 1, child_ptr[x] - 1, -1):
                c = child[k]
                if c != h:
                    head[c] = c
                    stack[sp] = c
                    sp += 1
            if h >= 0:
                head[h] = head[x]
            x = h
    return head, hpos, vert_at


@jit
def ladders(order, parent, height, child_ptr, child):
    """Long-path decomposition with each path doubled upward into a ladder.

    Ladders are stored bottom-up and concatenated in ``ladder``.  For vertex x,
    ``lad_of[x]`` is the ladder of its own long path and ``lad_idx[x]`` its
    offset in that ladder.
    """
    n = parent.shape[0]
    longc = np.full(n, -1, np.int64)
    for x in range(n):
        best = -1
        for k in range(child_ptr[x], child_ptr[x + 1]):
            c = child[k]
            if height[c] > best:
                best = height[c]
                longc[x] = c
    ladder = np.empty(2 * n, np.int64)
    lad_start = np.empty(n + 1, np.int64)
    lad_of = np.empty(n, np.int64)
    lad_idx = np.empty(n, np.int64)
    path = np.empty(n, np.int64)
    nl = 0
    fill = 0
    for p in range(order.shape[0]):
        top = order[p]
        q = parent[top]
        if q >= 0 and longc[q] == top:
            continue
        plen = 0
        x = top
        while x >= 0:
            path[plen] = x
            plen += 1
            x = longc[x]
        lad_start[nl] = fill
        for i in range(plen):
            x = path[plen - 1 - i]
            ladder[fill] = x
            lad_of[x] = nl
            lad_idx[x] = i
            fill += 1
        x = parent[top]
        ext = 0
        while x >= 0 and ext < plen:
            ladder[fill] = x
            fill += 1
            ext += 1
            x = parent[x]
        nl += 1
    lad_start[nl] = fill
    return ladder[:fill], lad_start[:nl + 1], lad_of, lad_idx
