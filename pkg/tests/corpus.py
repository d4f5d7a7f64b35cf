"""Seeded graph corpora shared by the test modules."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ftoracle.exact import build_exact
from ftoracle.randgraph import random_2ec_graph
from ftoracle.spt import build_spt

CORPUS_SEED = 20240601


def random_graph(rng: np.random.Generator, nmin: int = 4, nmax: int = 64):
    n = int(rng.integers(nmin, nmax + 1))
    top = min(3 * n, n * (n - 1) // 2)
    m = int(rng.integers(n, top + 1))
    method = "tree" if rng.random() < 0.4 else "cycle"
    u = rng.random()
    # dyadic weights keep every path sum exact; integer weights force many ties
    if u < 0.6:
        kw = dict(weights="dyadic")
    elif u < 0.85:
        kw = dict(weights="integer", wmax=10.0)
    else:
        kw = dict(weights="dyadic", zero_prob=0.15)
    return random_2ec_graph(n, m, rng, method=method, **kw)


@lru_cache(maxsize=None)
def corpus(count: int = 200, seed: int = CORPUS_SEED):
    """``count`` tuples (graph, spt, exact table)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        g = random_graph(rng)
        spt = build_spt(g)
        out.append((g, spt, build_exact(g, spt)))
    return tuple(out)


def failure_pairs(spt):
    """Every (rank, u, v, t) with t in the subtree below tree edge (u, v)."""
    for r in range(1, spt.n):
        v = int(spt.order[r])
        u = int(spt.parent[v])
        for p in range(spt.pre_in[v], spt.pre_out[v] + 1):
            yield r, u, v, int(spt.order[p])
