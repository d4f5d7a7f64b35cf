"""Preprocessing loops of the two oracles.

Both visit the tree edges in preorder (edge of rank r has child ``order[r]``)
and, per edge, the child's subtree in preorder.  The replacement distances of
the current edge live in one scratch row that is overwritten edge by edge.
"""
import numpy as np

from .._jit import jit
from . import INF_RANK
from .sssp import subtree_replacement


@jit
def _fen_add(fen, p, delta):
    i = p + 1
    n = fen.shape[0] - 1
    while i <= n:
        fen[i] += delta
        i += i & (-i)


@jit
def _fen_prefix(fen, p):
    i = p + 1
    s = 0
    while i > 0:
        s += fen[i]
        i -= i & (-i)
    return s


@jit
def markup(order, parent, parent_edge, pre_in, pre_out, dist_g,
           indptr, adj, adj_eid, adj_w):
    """Labels and detours of the 2-stretch oracle.

    ``t`` is marked at edge rank r when the detour through the child endpoint
    is more than twice the replacement distance and no vertex on the tree
    path from the child endpoint to ``t`` is marked yet.  Marked ancestors are
    counted with a Fenwick tree over preorder positions (range add, point
    query), so the ancestor test is ``nu(t) - nu(u) > 0``.
    """
    n = parent.shape[0]
    labels = np.full(n, INF_RANK, np.int64)
    detour = np.empty(max(n - 1, 0))
    fen = np.zeros(n + 1, np.int64)
    rd = np.full(n, np.inf)
    hp = np.empty(n, np.int64)
    pos = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    for r in range(1, n):
        v = order[r]
        u = parent[v]
        subtree_replacement(v, parent_edge[v], pre_in, pre_out, order, dist_g,
                            indptr, adj, adj_eid, adj_w, rd, hp, pos, done)
        dv = rd[v]
        detour[r - 1] = dv
        nu_u = _fen_prefix(fen, pre_in[u])
        base_v = dist_g[v]
        for p in range(r, pre_out[v] + 1):
            t = order[p]
            if dv + (dist_g[t] - base_v) <= 2.0 * rd[t]:
                continue
            if _fen_prefix(fen, p) - nu_u > 0:
                continue
            labels[t] = r
            _fen_add(fen, p, 1)
            _fen_add(fen, pre_out[t] + 1, -1)
    return labels, detour


@jit
def select_landmarks(order, parent, parent_edge, parent_weight, pre_in, pre_out,
                     dist_g, indptr, adj, adj_eid, adj_w, sqrt1e, capacity, tol):
    """Type-1 distances of the (1+eps)-stretch oracle.

    ``cur[t]`` is the best known s-t distance in G-e for the edge being
    visited, computed from the parent's value and ``last`` (the most recent
    type-1 distance stored at each vertex).  When it exceeds ``sqrt1e`` times
    the true replacement distance, the exact value is stored instead.

    Returns the detour per edge rank, the stored triples (vertex, rank,
    distance) in insertion order, and diagnostics: number of computed values
    outside ``[d, sqrt1e * d * (1 + tol)]``, the worst ratio seen, and an
    overflow flag set if ``capacity`` triples were not enough.
    """
    n = parent.shape[0]
    detour = np.empty(max(n - 1, 0))
    last = np.full(n, np.inf)
    cur = np.full(n, np.inf)
    ent_v = np.empty(capacity, np.int64)
    ent_r = np.empty(capacity, np.int64)
    ent_d = np.empty(capacity)
    cnt = 0
    violations = 0
    worst = 1.0
    overflow = False
    rd = np.full(n, np.inf)
    hp = np.empty(n, np.int64)
    pos = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    for r in range(1, n):
        v = order[r]
        subtree_replacement(v, parent_edge[v], pre_in, pre_out, order, dist_g,
                            indptr, adj, adj_eid, adj_w, rd, hp, pos, done)
        dv = rd[v]
        detour[r - 1] = dv
        last[v] = dv
        cur[v] = dv
        for p in range(r + 1, pre_out[v] + 1):
            t = order[p]
            c = cur[parent[t]] + parent_weight[t]
            if last[t] < c:
                c = last[t]
            d = rd[t]
            if c > sqrt1e * d:
                if cnt == capacity:
                    overflow = True
                else:
                    ent_v[cnt] = t
                    ent_r[cnt] = r
                    ent_d[cnt] = d
                    cnt += 1
                last[t] = d
                c = d
            cur[t] = c
            if c < d or c > sqrt1e * d * (1.0 + tol):
                violations += 1
            if d > 0.0 and d < np.inf and c / d > worst:
                worst = c / d
    return detour, ent_v[:cnt], ent_r[:cnt], ent_d[:cnt], violations, worst, overflow
