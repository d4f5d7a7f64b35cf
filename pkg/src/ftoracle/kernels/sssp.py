"""Dijkstra kernels on a CSR adjacency (``indptr``, ``adj``, ``adj_eid``, ``adj_w``)."""
import numpy as np

from .._jit import jit
from . import heap


@jit
def dijkstra(n, indptr, adj, adj_eid, adj_w, root, banned):
    """Distances and parents from ``root`` ignoring edges with ``banned[e]``.

    Ties: the heap pops equal distances by smaller vertex id, and an unsettled
    vertex reached again at its current distance adopts the smaller parent id.
    """
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, np.int64)
    pedge = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    hp = np.empty(n, np.int64)
    pos = np.full(n, -1, np.int64)
    dist[root] = 0.0
    size = heap.push(hp, pos, 0, dist, root)
    while size > 0:
        u, size = heap.pop(hp, pos, size, dist)
        done[u] = True
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            e = adj_eid[k]
            if banned[e]:
                continue
            x = adj[k]
            if done[x]:
                continue
            nd = du + adj_w[k]
            if nd < dist[x]:
                dist[x] = nd
                parent[x] = u
                pedge[x] = e
                size = heap.push_or_decrease(hp, pos, size, dist, x)
            elif nd == dist[x] and u < parent[x]:
                parent[x] = u
                pedge[x] = e
    return dist, parent, pedge


@jit
def subtree_replacement(v, e, pre_in, pre_out, order, dist_g,
                        indptr, adj, adj_eid, adj_w, rd, hp, pos, done):
    """Fill ``rd[x] = d_{G-e}(s, x)`` for every x in the subtree of ``v``.

    ``e`` is the tree edge above ``v``.  Vertices outside the subtree keep
    their fault-free distance, so the search seeds every subtree vertex with
    its best edge leaving the subtree and then runs Dijkstra on the subtree
    alone.  ``hp``/``pos``/``done`` are scratch arrays of length n; ``pos``
    must be all -1 on entry and is left that way.
    """
    lo = pre_in[v]
    hi = pre_out[v]
    size = 0
    for p in range(lo, hi + 1):
        x = order[p]
        best = np.inf
        for k in range(indptr[x], indptr[x + 1]):
            if adj_eid[k] == e:
                continue
            py = pre_in[adj[k]]
            if py < lo or py > hi:
                c = dist_g[adj[k]] + adj_w[k]
                if c < best:
                    best = c
        rd[x] = best
        done[x] = False
        if best < np.inf:
            size = heap.push(hp, pos, size, rd, x)
    while size > 0:
        x, size = heap.pop(hp, pos, size, rd)
        done[x] = True
        dx = rd[x]
        for k in range(indptr[x], indptr[x + 1]):
            y = adj[k]
            py = pre_in[y]
            if py < lo or py > hi or done[y] or adj_eid[k] == e:
                continue
            nd = dx + adj_w[k]
            if nd < rd[y]:
                rd[y] = nd
                size = heap.push_or_decrease(hp, pos, size, rd, y)
