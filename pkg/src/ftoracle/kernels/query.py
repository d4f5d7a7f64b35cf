"""Query kernels over the tree indexes built in :mod:`ftoracle.treekit`."""
import numpy as np

from .._jit import jit


@jit
def _rmq(tab, lab, lg, a, b, prefer_high):
    j = lg[b - a + 1]
    p1 = tab[j, a]
    p2 = tab[j, b - (1 << j) + 1]
    if prefer_high:
        return p2 if lab[p2] <= lab[p1] else p1
    return p1 if lab[p1] <= lab[p2] else p2


@jit
def path_min(x, y, parent, depth, head, hpos, lab, lo_tab, hi_tab, lg):
    """Heavy-first position of the minimum-label vertex on the x-y tree path.

    ``lab`` is indexed by heavy-first position.  Among equal labels the vertex
    nearest to ``x`` wins: segments are combined in path order from x and
    each segment's table breaks ties toward its x-side end.
    """
    best = -1
    ya = np.empty(64, np.int64)
    yb = np.empty(64, np.int64)
    ny = 0
    while head[x] != head[y]:
        if depth[head[x]] >= depth[head[y]]:
            p = _rmq(hi_tab, lab, lg, hpos[head[x]], hpos[x], True)
            if best < 0 or lab[p] < lab[best]:
                best = p
            x = parent[head[x]]
        else:
            ya[ny] = hpos[head[y]]
            yb[ny] = hpos[y]
            ny += 1
            y = parent[head[y]]
    if depth[x] >= depth[y]:
        p = _rmq(hi_tab, lab, lg, hpos[y], hpos[x], True)
    else:
        p = _rmq(lo_tab, lab, lg, hpos[x], hpos[y], False)
    if best < 0 or lab[p] < lab[best]:
        best = p
    for i in range(ny - 1, -1, -1):
        p = _rmq(lo_tab, lab, lg, ya[i], yb[i], False)
        if lab[p] < lab[best]:
            best = p
    return best


@jit
def level_ancestor(x, h, jump, ladder, lad_start, lad_of, lad_idx, lg):
    """Ancestor ``h`` hops above ``x``: one jump pointer, then one ladder step."""
    if h == 0:
        return x
    j = lg[h]
    y = jump[j, x]
    r = h - (1 << j)
    if r == 0:
        return y
    return ladder[lad_start[lad_of[y]] + lad_idx[y] + r]


@jit
def search_bucket(v, t, e_rank, parent, depth, head, hpos, lab,
                  lo_tab, hi_tab, lg, jump, ladder, lad_start, lad_of, lad_idx):
    """Vertex of the v-t tree path nearest to ``v`` with label <= ``e_rank``.

    ``v`` must be an ancestor of ``t``.  Returns -1 if no label qualifies.
    Bisects on hop depth: the upper half is probed with one path-minimum
    query and the search continues in whichever half holds the topmost
    qualifying vertex.
    """
    p = path_min(t, v, parent, depth, head, hpos, lab, lo_tab, hi_tab, lg)
    if lab[p] > e_rank:
        return -1
    top = v
    bot = t
    while top != bot:
        hops = depth[bot] - depth[top]
        x = level_ancestor(bot, hops // 2, jump, ladder, lad_start, lad_of, lad_idx, lg)
        xp = parent[x]
        p = path_min(top, xp, parent, depth, head, hpos, lab, lo_tab, hi_tab, lg)
        if lab[p] <= e_rank:
            bot = xp
        else:
            top = x
    return top


@jit
def query_buckets(v, t, e_rank, dist, parent, depth, head, hpos, labs,
                  stored, lo_tabs, hi_tabs, lg, jump, ladder, lad_start, lad_of, lad_idx):
    """Best bucket candidate ``stored(z) + d_T(z, t)`` over all label trees.

    ``labs``/``lo_tabs``/``hi_tabs`` stack one bottleneck index per non-empty
    bucket; ``stored`` holds the stored distance per bucket and vertex.
    Returns (value, slot) with slot -1 when no bucket has a qualifying vertex.
    """
    best = np.inf
    slot = -1
    for b in range(labs.shape[0]):
        z = search_bucket(v, t, e_rank, parent, depth, head, hpos, labs[b],
                          lo_tabs[b], hi_tabs[b], lg, jump, ladder, lad_start,
                          lad_of, lad_idx)
        if z < 0:
            continue
        c = stored[b, z] + (dist[t] - dist[z])
        if c < best:
            best = c
            slot = b
    return best, slot
