"""Seeded random inputs: 2-edge-connected weighted graphs and rooted trees."""
from __future__ import annotations

from typing import Optional, Union

import numpy as np

from .graph import Graph, validate_fault_coverage
from .spt import Spt, build_spt

Seed = Union[int, np.random.Generator, None]

# dyadic weights are multiples of 2^-10, so sums of a few thousand of them are exact
DYADIC_SCALE = 1024


def _rng(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_weights(rng: np.random.Generator, m: int, mode: str = "dyadic",
                   wmax: float = 100.0, zero_prob: float = 0.0) -> np.ndarray:
    if mode == "dyadic":
        w = rng.integers(0, int(wmax * DYADIC_SCALE) + 1, m) / DYADIC_SCALE
    elif mode == "integer":
        w = rng.integers(0, int(wmax) + 1, m).astype(np.float64)
    elif mode == "uniform":
        w = rng.uniform(0.0, wmax, m)
    else:
        raise ValueError(f"unknown weight mode {mode!r}")
    if zero_prob > 0:
        w[rng.random(m) < zero_prob] = 0.0
    return w


def _add_random_pairs(rng, n: int, keys: np.ndarray, want: int) -> np.ndarray:
    """``want`` new distinct keys min*n+max not already in ``keys``."""
    have = np.unique(keys)
    out = np.empty(0, np.int64)
    while out.shape[0] < want:
        need = want - out.shape[0]
        a = rng.integers(0, n, 2 * need + 16)
        b = rng.integers(0, n, 2 * need + 16)
        ok = a != b
        cand = np.minimum(a, b)[ok] * n + np.maximum(a, b)[ok]
        cand = cand[~np.isin(cand, have) & ~np.isin(cand, out)]
        _, first = np.unique(cand, return_index=True)
        cand = cand[np.sort(first)][:need]
        out = np.concatenate([out, cand])
    return out


def random_2ec_graph(n: int, m: int, seed: Seed = None, weights: str = "dyadic",
                     wmax: float = 100.0, zero_prob: float = 0.0, method: str = "cycle",
                     source: Optional[int] = None) -> Graph:
    """Random simple 2-edge-connected graph with about ``m`` edges.

    ``method="cycle"`` lays a random Hamiltonian cycle and adds chords;
    ``method="tree"`` starts from a random tree plus extra edges and then
    patches every bridge with an edge across it (the edge count can exceed
    ``m`` by the number of patches).
    """
    rng = _rng(seed)
    if n < 3:
        raise ValueError("a simple 2-edge-connected graph needs n >= 3")
    m = min(max(m, n), n * (n - 1) // 2)
    source = int(rng.integers(0, n)) if source is None else source
    if method == "cycle":
        perm = rng.permutation(n)
        a, b = perm, np.roll(perm, -1)
        keys = np.minimum(a, b) * n + np.maximum(a, b)
        keys = np.concatenate([keys, _add_random_pairs(rng, n, keys, m - n)])
    elif method == "tree":
        perm = rng.permutation(n)
        par = perm[(rng.random(n - 1) * np.arange(1, n)).astype(np.int64)]
        a, b = perm[1:], par
        keys = np.minimum(a, b) * n + np.maximum(a, b)
        keys = np.concatenate([keys, _add_random_pairs(rng, n, keys, max(m - (n - 1), 0))])
        keys = _patch_bridges(rng, n, keys, source)
    else:
        raise ValueError(f"unknown method {method!r}")
    w = random_weights(rng, keys.shape[0], weights, wmax, zero_prob)
    return Graph.from_arrays(n, keys // n, keys % n, w, source)


def _patch_bridges(rng, n: int, keys: np.ndarray, source: int) -> np.ndarray:
    while True:
        g = Graph.from_arrays(n, keys // n, keys % n, np.ones(keys.shape[0]), source)
        spt = build_spt(g)
        bad = validate_fault_coverage(g, spt)
        if not bad:
            return keys
        extra = []
        have = set(keys.tolist())
        for _, c in bad:
            lo, hi = spt.pre_in[c], spt.pre_out[c]
            inside = spt.order[lo:hi + 1]
            outside = np.concatenate([spt.order[:lo], spt.order[hi + 1:]])
            for _ in range(64):
                x, y = int(rng.choice(inside)), int(rng.choice(outside))
                key = min(x, y) * n + max(x, y)
                if key not in have:
                    have.add(key)
                    extra.append(key)
                    break
        keys = np.concatenate([keys, np.array(extra, np.int64)])


def random_parent(n: int, seed: Seed = None, shape: str = "recursive") -> np.ndarray:
    """Parent array of a random rooted tree on ``n`` relabelled vertices."""
    rng = _rng(seed)
    if shape == "recursive":
        idx = (rng.random(n) * np.arange(n)).astype(np.int64)
    elif shape == "deep":
        idx = np.maximum(np.arange(n) - 1 - rng.geometric(0.7, n) + 1, 0)
    elif shape == "star":
        idx = np.zeros(n, np.int64)
    elif shape == "path":
        idx = np.maximum(np.arange(n) - 1, 0)
    else:
        raise ValueError(f"unknown tree shape {shape!r}")
    perm = rng.permutation(n)
    parent = np.full(n, -1, np.int64)
    parent[perm[1:]] = perm[idx[1:]]
    return parent


def random_tree(n: int, seed: Seed = None, shape: str = "recursive",
                weights: str = "integer") -> Spt:
    rng = _rng(seed)
    parent = random_parent(n, rng, shape)
    w = random_weights(rng, n, weights, 10.0)
    dist = np.zeros(n)
    # parents can carry larger ids, so accumulate in a top-down order
    order = Spt.from_parent(parent, np.zeros(n)).order
    for x in order[1:]:
        dist[x] = dist[parent[x]] + w[x]
    return Spt.from_parent(parent, dist)
