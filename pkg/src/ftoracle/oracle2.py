"""Linear-size oracle with stretch 2.

Preprocessing stores, for every tree edge e=(u,v), the replacement distance
d_{G-e}(s,v), and marks a sparse set of vertices with the edge at which the
detour through v first stops being a 2-approximation.  A query for (e, t)
returns ``2 d_G(s,t)`` if some vertex between v and t was marked no later
than e, and the detour ``d_{G-e}(s,v) + d_T(v,t)`` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .answers import Answer, Case
from .errors import BuildError, QueryError
from .graph import Fingerprint, Graph, lookup_edge, validate_fault_coverage
from .kernels import INF_RANK
from .kernels import build as _build
from .spt import Spt
from .treekit import BottleneckIndex, build_bvq


@dataclass(frozen=True, eq=False)
class Oracle2:
    spt: Spt
    detour: np.ndarray  # by rank - 1
    labels: np.ndarray  # edge rank or INF_RANK, per vertex
    edge_keys: np.ndarray  # sorted E(G) keys, only used to reject non-edges
    fingerprint: Fingerprint

    kind = "TWO"
    stretch = 2.0

    @cached_property
    def bvq(self) -> BottleneckIndex:
        return build_bvq(self.spt, self.labels)

    @property
    def n(self) -> int:
        return self.spt.n

    @property
    def marked(self) -> int:
        return int(np.count_nonzero(self.labels != INF_RANK))

    def size_counters(self) -> dict:
        return {"detours": int(self.detour.shape[0]), "labels": int(self.labels.shape[0]),
                "marked": self.marked}

    def query(self, u: int, v: int, t: int) -> Answer:
        spt = self.spt
        if lookup_edge(self.edge_keys, None, spt.n, u, v) is None:
            raise QueryError(f"({u}, {v}) is not an edge of the graph")
        if not 0 <= t < spt.n:
            raise QueryError(f"target {t} out of range")
        r = spt.rank(u, v)
        base = float(spt.dist[t])
        if r is None:
            return Answer(base, Case.NO_FAULT_EFFECT)
        c = spt.child_of(r)
        if not spt.is_descendant(t, c):
            return Answer(base, Case.NO_FAULT_EFFECT)
        _, lab = self.bvq.min(t, c)
        if lab <= r:
            return Answer(2.0 * base, Case.DOUBLED_BASE)
        return Answer(float(self.detour[r - 1] + (spt.dist[t] - spt.dist[c])), Case.DETOUR_PATH)


def build_oracle2(g: Graph, spt: Spt, strict: bool = False) -> Oracle2:
    """Run the mark-up pass over all tree edges (one subtree Dijkstra each)."""
    if strict:
        bad = validate_fault_coverage(g, spt)
        if bad:
            raise BuildError(f"graph is not 2-edge-connected; bridges in the tree: {bad[:10]}")
    labels, detour = _build.markup(spt.order, spt.parent, spt.parent_edge, spt.pre_in, spt.pre_out,
                                   spt.dist, g.indptr, g.adj, g.adj_eid, g.adj_w)
    return Oracle2(spt, detour, labels, g.keys, g.fingerprint)


def query2(o: Oracle2, fail: tuple[int, int], t: int) -> Answer:
    return o.query(fail[0], fail[1], t)
