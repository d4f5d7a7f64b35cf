"""Near-linear-size oracle with stretch 1+eps.

Preprocessing walks the tree edges in preorder and keeps, per vertex, the
exact replacement distances ("type-1" values) that could not be matched
within a sqrt(1+eps) factor by extending an earlier stored value along the
tree.  Stored values are grouped by their ratio to the fault-free distance
into geometric bands of width sqrt(1+eps); each band becomes one labelled
copy of the tree.  A query takes the best of the detour through the child
endpoint of the failed edge and, per band, the stored value at the
qualifying vertex nearest to that endpoint.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .answers import Answer, Case
from .errors import BuildError, ParameterError, QueryError
from .graph import Fingerprint, Graph, lookup_edge, validate_fault_coverage
from .kernels import INF_RANK
from .kernels import build as _build
from .kernels import query as _query
from .spt import Spt
from .treekit import BottleneckIndex, HeavyPaths, argmin_tables

log = logging.getLogger(__name__)

# relative slack used by every post-hoc check on computed distances
CHECK_TOL = 1e-9


def check_epsilon(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise ParameterError("epsilon must be in (0,1)")
    return epsilon


def bucket_limit(epsilon: float) -> int:
    """Largest band index k: floor(2 log(2/(sqrt(1+eps)-1)) / log(1+eps))."""
    c = math.sqrt(1.0 + epsilon) - 1.0
    return int(math.floor(2.0 * math.log(2.0 / c) / math.log(1.0 + epsilon)))


def bucket_bound(epsilon: float, i) -> np.ndarray | float:
    """Band boundary a_i = 2 / ((sqrt(1+eps)-1) (1+eps)^(i/2))."""
    c = math.sqrt(1.0 + epsilon) - 1.0
    return 2.0 / (c * np.power(1.0 + epsilon, np.asarray(i, dtype=np.float64) / 2.0))


def assign_buckets(epsilon: float, k: int, base: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Band index of each ratio ``d/base`` under a_{i+1} <= d/base < a_i, or -1.

    The closed form is only a first guess; the half-open predicate decides,
    checking the neighbouring bands when rounding lands on a boundary.
    """
    a0 = bucket_bound(epsilon, 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        guess = np.floor(2.0 * np.log(a0 * base / d) / math.log(1.0 + epsilon))
    guess = np.clip(np.nan_to_num(guess, nan=-1.0, posinf=k, neginf=0.0), 0, k).astype(np.int64)
    out = np.full(base.shape[0], -1, np.int64)
    for delta in (0, -1, 1):
        i = guess + delta
        ok = (out < 0) & (i >= 0) & (i <= k)
        ic = np.clip(i, 0, k)
        ok &= (bucket_bound(epsilon, ic + 1) * base <= d) & (d < bucket_bound(epsilon, ic) * base)
        out[ok] = i[ok]
    return out


@dataclass
class EpsBuildStats:
    """Diagnostics gathered while building; zero counters mean every check held."""

    sandwich_violations: int = 0
    worst_ratio: float = 1.0
    count_violations: int = 0
    max_per_vertex: int = 0
    decay_violations: int = 0
    magnitude_violations: int = 0
    bucket_collisions: int = 0
    unplaced: int = 0
    skipped_zero: int = 0


@dataclass(frozen=True, eq=False)
class OracleEps:
    epsilon: float
    k: int
    spt: Spt
    detour: np.ndarray  # S': d_{G-e}(s, v) by rank - 1
    ent_vertex: np.ndarray  # S, sorted by (bucket, vertex)
    ent_rank: np.ndarray
    ent_dist: np.ndarray
    ent_bucket: np.ndarray
    edge_keys: np.ndarray
    fingerprint: Fingerprint
    stats: Optional[EpsBuildStats] = field(default=None, compare=False)

    kind = "EPS"

    @property
    def stretch(self) -> float:
        return 1.0 + self.epsilon

    @property
    def n(self) -> int:
        return self.spt.n

    @cached_property
    def paths(self) -> HeavyPaths:
        return HeavyPaths.of(self.spt)

    @cached_property
    def bucket_ids(self) -> np.ndarray:
        """Band indices that hold at least one entry, ascending."""
        return np.unique(self.ent_bucket)

    @cached_property
    def _slot(self) -> dict:
        return {int(b): i for i, b in enumerate(self.bucket_ids)}

    @cached_property
    def _tables(self):
        n = self.n
        nb = self.bucket_ids.shape[0]
        labels = np.full((nb, n), INF_RANK, np.int64)
        stored = np.full((nb, n), np.inf)
        slot = np.searchsorted(self.bucket_ids, self.ent_bucket)
        labels[slot, self.ent_vertex] = self.ent_rank
        stored[slot, self.ent_vertex] = self.ent_dist
        vert_at = self.paths.vert_at
        lab = np.ascontiguousarray(labels[:, vert_at]) if nb else np.empty((0, n), np.int64)
        levels = int(self.spt.lg[max(n, 1)]) + 1
        dtype = np.int32 if n < 2**31 else np.int64
        lo = np.empty((nb, levels, n), dtype)
        hi = np.empty((nb, levels, n), dtype)
        for b in range(nb):
            lo[b], hi[b] = argmin_tables(lab[b], self.spt.lg)
        return labels, stored, lab, lo, hi

    def bucket_index(self, i: int) -> Optional[BottleneckIndex]:
        """Bottleneck index of band ``i`` (None when the band is empty)."""
        b = self._slot.get(int(i))
        if b is None:
            return None
        labels, _, lab, lo, hi = self._tables
        return BottleneckIndex(self.paths, labels[b], lab[b], lo[b], hi[b])

    def bucket_labels(self, i: int) -> np.ndarray:
        b = self._slot.get(int(i))
        if b is None:
            return np.full(self.n, INF_RANK, np.int64)
        return self._tables[0][b]

    def bucket_stored(self, i: int) -> np.ndarray:
        b = self._slot.get(int(i))
        if b is None:
            return np.full(self.n, np.inf)
        return self._tables[1][b]

    def size_counters(self) -> dict:
        sizes = np.bincount(self.ent_bucket, minlength=self.k + 1) if self.ent_bucket.size else np.zeros(self.k + 1, np.int64)
        return {
            "k": self.k,
            "S_prime": int(self.detour.shape[0]),
            "S": int(self.ent_dist.shape[0]),
            "stored_reals": int(self.detour.shape[0] + self.ent_dist.shape[0]),
            "budget": int(self.n - 1 + self.n * (self.k + 1)),
            "bucket_sizes": [int(x) for x in sizes],
        }

    def search(self, i: int, v: int, t: int, e_rank: int) -> Optional[tuple[int, float]]:
        b = self._slot.get(int(i))
        if b is None:
            return None
        labels, stored, lab, lo, hi = self._tables
        s = self.spt
        ladder, lad_start, lad_of, lad_idx = s.ladders
        z = _query.search_bucket(v, t, e_rank, s.parent, s.depth, self.paths.head, self.paths.hpos,
                                 lab[b], lo[b], hi[b], s.lg, s.jump, ladder, lad_start, lad_of, lad_idx)
        if z < 0:
            return None
        return int(z), float(stored[b, z])

    def query(self, u: int, v: int, t: int) -> Answer:
        spt = self.spt
        if lookup_edge(self.edge_keys, None, spt.n, u, v) is None:
            raise QueryError(f"({u}, {v}) is not an edge of the graph")
        if not 0 <= t < spt.n:
            raise QueryError(f"target {t} out of range")
        r = spt.rank(u, v)
        if r is None:
            return Answer(float(spt.dist[t]), Case.NO_FAULT_EFFECT)
        c = spt.child_of(r)
        if not spt.is_descendant(t, c):
            return Answer(float(spt.dist[t]), Case.NO_FAULT_EFFECT)
        best = float(self.detour[r - 1] + (spt.dist[t] - spt.dist[c]))
        if self.bucket_ids.shape[0] == 0:
            return Answer(best, Case.S_PRIME_CANDIDATE)
        _, stored, lab, lo, hi = self._tables
        ladder, lad_start, lad_of, lad_idx = spt.ladders
        val, b = _query.query_buckets(c, t, r, spt.dist, spt.parent, spt.depth, self.paths.head,
                                      self.paths.hpos, lab, stored, lo, hi, spt.lg, spt.jump,
                                      ladder, lad_start, lad_of, lad_idx)
        if b >= 0 and val < best:
            return Answer(float(val), Case.BUCKET_CANDIDATE, int(self.bucket_ids[b]))
        return Answer(best, Case.S_PRIME_CANDIDATE)


def build_oracle_eps(g: Graph, spt: Spt, epsilon: float, strict: bool = False) -> OracleEps:
    """Select the type-1 distances, then band them into labelled trees."""
    epsilon = check_epsilon(epsilon)
    if strict:
        bad = validate_fault_coverage(g, spt)
        if bad:
            raise BuildError(f"graph is not 2-edge-connected; bridges in the tree: {bad[:10]}")
    n = g.n
    k = bucket_limit(epsilon)
    sq = math.sqrt(1.0 + epsilon)
    detour, ev, er, ed, viol, worst, overflow = _build.select_landmarks(
        spt.order, spt.parent, spt.parent_edge, spt.parent_weight, spt.pre_in, spt.pre_out,
        spt.dist, g.indptr, g.adj, g.adj_eid, g.adj_w, sq, n * (k + 1) + 1, CHECK_TOL)
    if overflow:
        raise BuildError("more type-1 distances than n(k+1); size bound violated")
    stats = EpsBuildStats(sandwich_violations=int(viol), worst_ratio=float(worst))

    zero = ed == 0.0
    stats.skipped_zero = int(zero.sum())
    ev, er, ed = ev[~zero], er[~zero], ed[~zero]
    base = spt.dist[ev]
    if np.any(base <= 0.0):
        raise BuildError("positive replacement distance stored at a vertex at distance 0")

    # per-vertex sequences in insertion (edge) order
    seq = np.argsort(ev, kind="stable")
    sv, sd = ev[seq], ed[seq]
    first = np.ones(sv.shape[0], bool)
    first[1:] = sv[1:] != sv[:-1]
    starts = np.flatnonzero(first)
    ordinal = np.arange(sv.shape[0]) - np.repeat(starts, np.diff(np.append(starts, sv.shape[0])))
    counts = np.bincount(sv, minlength=n)
    stats.max_per_vertex = int(counts.max(initial=0))
    stats.count_violations = int(np.count_nonzero(counts > k + 1))
    same = ~first[1:]
    stats.decay_violations = int(np.count_nonzero(same & ~(sq * sd[1:] < sd[:-1] * (1 + CHECK_TOL))))
    stats.magnitude_violations = int(np.count_nonzero(~(sd < bucket_bound(epsilon, ordinal) * spt.dist[sv])))

    bucket = assign_buckets(epsilon, k, base, ed)
    stats.unplaced = int(np.count_nonzero(bucket < 0))
    if stats.unplaced:
        raise BuildError(f"{stats.unplaced} stored distances fall outside every band")
    key = bucket * n + ev
    srt = np.argsort(key, kind="stable")
    key = key[srt]
    stats.bucket_collisions = int(np.count_nonzero(key[1:] == key[:-1]))
    if stats.bucket_collisions:
        raise BuildError(f"{stats.bucket_collisions} vertices carry two labels in one band")
    if stats.sandwich_violations:
        log.warning("%d computed distances fell outside the sqrt(1+eps) sandwich", stats.sandwich_violations)
    return OracleEps(epsilon, k, spt, detour, ev[srt], er[srt], ed[srt], bucket[srt],
                     g.keys, g.fingerprint, stats)


def query_eps(o: OracleEps, fail: tuple[int, int], t: int) -> Answer:
    return o.query(fail[0], fail[1], t)


def search_bucket(o: OracleEps, i: int, v: int, t: int, e_rank: int) -> Optional[tuple[int, float]]:
    """Vertex nearest to ``v`` on the v-t path whose band-``i`` label precedes ``e_rank``."""
    return o.search(i, v, t, e_rank)
