"""Exact post-failure distances for every tree edge: the verification oracle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .graph import Graph
from .kernels import sssp as _sssp
from .spt import Spt


@dataclass(frozen=True, eq=False)
class ExactTable:
    """``rows[r - 1]`` holds d_{G-e}(s, .) for the tree edge of rank r."""

    spt: Spt
    rows: np.ndarray

    def row(self, u: int, v: int) -> np.ndarray:
        r = self.spt.rank(u, v)
        if r is None:
            raise ContractError(f"({u}, {v}) is not a tree edge")
        return self.rows[r - 1]

    def query(self, u: int, v: int, t: int) -> float:
        return float(self.row(u, v)[t])


def build_exact(g: Graph, spt: Spt) -> ExactTable:
    """One full exclusion Dijkstra per tree edge; Theta(n^2) memory."""
    n = g.n
    rows = np.empty((max(n - 1, 0), n))
    banned = np.zeros(max(g.m, 1), np.bool_)
    for r in range(1, n):
        e = int(spt.parent_edge[spt.order[r]])
        banned[e] = True
        rows[r - 1] = _sssp.dijkstra(n, g.indptr, g.adj, g.adj_eid, g.adj_w, g.source, banned)[0]
        banned[e] = False
    rows.flags.writeable = False
    return ExactTable(spt, rows)


def exact_query(tbl: ExactTable, e: tuple[int, int], t: int) -> float:
    return tbl.query(e[0], e[1], t)
