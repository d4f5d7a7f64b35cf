"""Bottleneck vertex queries: the minimum-label vertex on a tree path.

A heavy-path decomposition turns any tree path into O(log n) contiguous
position ranges; two sparse tables per label set answer each range in O(1),
one breaking ties toward the low end of the range and one toward the high
end, so a path query can always prefer the vertex nearest its first
endpoint.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import INF_RANK
from .kernels import query as _query
from .kernels import tree as _tree
from .spt import Spt


@dataclass(frozen=True, eq=False)
class HeavyPaths:
    """Chain heads and heavy-first positions of a tree (label independent)."""

    spt: Spt
    head: np.ndarray
    hpos: np.ndarray
    vert_at: np.ndarray

    @classmethod
    def of(cls, spt: Spt) -> "HeavyPaths":
        head, hpos, vert_at = _tree.heavy_path(spt.order, spt.parent, spt.size, spt.child_ptr, spt.child)
        return cls(spt, head, hpos, vert_at)


def argmin_tables(lab: np.ndarray, lg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sparse tables of argmin positions over ``lab``.

    ``lo[j, i]`` is the smallest position in ``[i, i + 2**j)`` holding the
    minimum label there, ``hi[j, i]`` the largest.
    """
    n = lab.shape[0]
    levels = int(lg[max(n, 1)]) + 1
    dtype = np.int32 if n < 2**31 else np.int64
    lo = np.zeros((levels, n), dtype)
    hi = np.zeros((levels, n), dtype)
    lo[0] = hi[0] = np.arange(n, dtype=dtype)
    for j in range(1, levels):
        half = 1 << (j - 1)
        width = n - (1 << j) + 1
        a, b = lo[j - 1, :width], lo[j - 1, half:half + width]
        lo[j, :width] = np.where(lab[a] <= lab[b], a, b)
        a, b = hi[j - 1, :width], hi[j - 1, half:half + width]
        hi[j, :width] = np.where(lab[b] <= lab[a], b, a)
    return lo, hi


@dataclass(frozen=True, eq=False)
class BottleneckIndex:
    paths: HeavyPaths
    labels: np.ndarray  # per vertex
    lab: np.ndarray  # per heavy-first position
    lo_tab: np.ndarray
    hi_tab: np.ndarray

    @property
    def spt(self) -> Spt:
        return self.paths.spt

    def query_pos(self, x: int, y: int) -> int:
        s = self.paths.spt
        return int(_query.path_min(x, y, s.parent, s.depth, self.paths.head, self.paths.hpos,
                                   self.lab, self.lo_tab, self.hi_tab, s.lg))

    def min(self, x: int, y: int) -> tuple[int, int]:
        """``(vertex, label)`` of the lightest vertex on the x-y path, ties toward x."""
        p = self.query_pos(x, y)
        return int(self.paths.vert_at[p]), int(self.lab[p])


def build_bvq(spt: Spt, labels, paths: HeavyPaths | None = None) -> BottleneckIndex:
    """Index per-vertex labels (edge ranks or INF_RANK) for path-minimum queries."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (spt.n,):
        raise ValueError("one label per vertex required")
    paths = paths if paths is not None else HeavyPaths.of(spt)
    lab = np.ascontiguousarray(labels[paths.vert_at])
    lo, hi = argmin_tables(lab, spt.lg)
    return BottleneckIndex(paths, labels, lab, lo, hi)


def bvq_min(ix: BottleneckIndex, x: int, y: int) -> tuple[int, int]:
    return ix.min(x, y)


__all__ = ["BottleneckIndex", "HeavyPaths", "INF_RANK", "argmin_tables", "build_bvq", "bvq_min"]
