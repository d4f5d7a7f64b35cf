"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here calls the package kernels; trees are taken as plain parent
lists so the references can be fed either package output or hand input.
"""
from __future__ import annotations

import heapq
import math

INF = math.inf
INF_RANK = 2**63 - 1


def adjacency(n, edges, skip=()):
    skip = {frozenset(e) for e in skip}
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        if frozenset((u, v)) in skip:
            continue
        adj[u].append((v, w))
        adj[v].append((u, w))
    return adj


def bellman_ford(n, edges, src, skip=()):
    skip = {frozenset(e) for e in skip}
    d = [INF] * n
    d[src] = 0.0
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            if frozenset((u, v)) in skip:
                continue
            if d[u] + w < d[v]:
                d[v] = d[u] + w
                changed = True
            if d[v] + w < d[u]:
                d[u] = d[v] + w
                changed = True
        if not changed:
            break
    return d


def dijkstra(n, edges, src, skip=()):
    """Distances and parents; on equal distance the smaller parent id wins."""
    adj = adjacency(n, edges, skip)
    d = [INF] * n
    par = [-1] * n
    done = [False] * n
    d[src] = 0.0
    pq = [(0.0, src)]
    while pq:
        dx, x = heapq.heappop(pq)
        if done[x] or dx > d[x]:
            continue
        done[x] = True
        for y, w in adj[x]:
            if done[y]:
                continue
            nd = dx + w
            if nd < d[y] or (nd == d[y] and x < par[y]):
                if nd < d[y]:
                    heapq.heappush(pq, (nd, y))
                d[y] = nd
                par[y] = x
    return d, par


def children(parent):
    kids = [[] for _ in parent]
    for x, p in enumerate(parent):
        if p >= 0:
            kids[p].append(x)
    return kids


def preorder(parent):
    kids = children(parent)
    root = parent.index(-1)
    out, stack = [], [root]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(sorted(kids[x], reverse=True))
    return out


def subtree(parent, v):
    """Vertices of T_v in preorder."""
    kids = children(parent)
    out, stack = [], [v]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(sorted(kids[x], reverse=True))
    return out


def ancestors(parent, x):
    out = [x]
    while parent[x] >= 0:
        x = parent[x]
        out.append(x)
    return out


def path_down(parent, v, t):
    """Vertices from v down to its descendant t, in order."""
    up = []
    x = t
    while x != v:
        up.append(x)
        x = parent[x]
        if x < 0:
            raise ValueError("not a descendant")
    up.append(v)
    return up[::-1]


def tree_path(parent, x, y):
    ax, ay = ancestors(parent, x), ancestors(parent, y)
    common = set(ax) & set(ay)
    lca = next(a for a in ax if a in common)
    left = ax[:ax.index(lca) + 1]
    right = ay[:ay.index(lca)]
    return left + right[::-1]


def walk_up(parent, x, h):
    for _ in range(h):
        x = parent[x]
    return x


def path_min(parent, labels, x, y):
    """(vertex, label) with the smallest label on the x-y path, first from x."""
    best = None
    for z in tree_path(parent, x, y):
        if best is None or labels[z] < labels[best]:
            best = z
    return best, labels[best]


def tree_ranks(parent):
    order = preorder(parent)
    return {v: i for i, v in enumerate(order)}, order


# -- the two preprocessing algorithms, literally --------------------------------

def markup(parent, dist, rows):
    """Labels and detours of the 2-stretch oracle.

    ``rows[r-1]`` are exact post-failure distances for the edge of rank r.
    """
    n = len(parent)
    rank, order = tree_ranks(parent)
    labels = [INF_RANK] * n
    detour = []
    for r in range(1, n):
        v = order[r]
        row = rows[r - 1]
        detour.append(row[v])
        for t in subtree(parent, v):
            pe = row[v] + (dist[t] - dist[v])
            if pe <= 2 * row[t]:
                continue
            if any(labels[z] != INF_RANK for z in path_down(parent, v, t)):
                continue
            labels[t] = r
    return labels, detour


def select(parent, dist, rows, eps):
    """Type-1 triples (vertex, rank, distance) of the (1+eps) oracle, plus
    every internal value as (rank, t, value, exact)."""
    n = len(parent)
    rank, order = tree_ranks(parent)
    sq = math.sqrt(1 + eps)
    last = [INF] * n
    S, trace = [], []
    for r in range(1, n):
        v = order[r]
        row = rows[r - 1]
        cur = {v: row[v]}
        last[v] = row[v]
        trace.append((r, v, row[v], row[v]))
        for t in subtree(parent, v)[1:]:
            p = parent[t]
            c = min(last[t], cur[p] + (dist[t] - dist[p]))
            if c > sq * row[t]:
                S.append((t, r, row[t]))
                last[t] = row[t]
                c = row[t]
            cur[t] = c
            trace.append((r, t, c, row[t]))
    return S, trace


def k_of(eps):
    return math.floor(2 * math.log(2 / (math.sqrt(1 + eps) - 1)) / math.log(1 + eps))


def a_of(eps, i):
    return 2 / ((math.sqrt(1 + eps) - 1) * (1 + eps) ** (i / 2))


def bucket_of(eps, base, d):
    for i in range(k_of(eps) + 1):
        if a_of(eps, i + 1) * base <= d < a_of(eps, i) * base:
            return i
    return None


def query2(parent, dist, labels, detour, r, v, t):
    if t not in subtree(parent, v):
        return dist[t], "NO_FAULT_EFFECT"
    if any(labels[z] <= r for z in path_down(parent, v, t)):
        return 2 * dist[t], "DOUBLED_BASE"
    return detour[r - 1] + (dist[t] - dist[v]), "DETOUR_PATH"


def first_qualifying(parent, lab, v, t, r):
    """First vertex from v on the v-t path whose label is <= r, or None."""
    for z in path_down(parent, v, t):
        if lab[z] <= r:
            return z
    return None


def query_eps(parent, dist, eps, detour, S, r, v, t):
    """Answer from the stored distances by linear scans of every bucket."""
    if t not in subtree(parent, v):
        return dist[t]
    best = detour[r - 1] + (dist[t] - dist[v])
    by_bucket = {}
    for z, rr, d in S:
        i = bucket_of(eps, dist[z], d)
        by_bucket.setdefault(i, {})[z] = (rr, d)
    for tab in by_bucket.values():
        for z in path_down(parent, v, t):
            if z in tab and tab[z][0] <= r:
                best = min(best, tab[z][1] + (dist[t] - dist[z]))
                break
    return best
