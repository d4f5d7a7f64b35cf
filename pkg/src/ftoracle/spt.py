"""The fixed shortest-path tree: preorder edge ranks, ancestry, tree distances."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import BuildError, ContractError
from .graph import Graph, sssp
from .kernels import INF_RANK
from .kernels import query as _query
from .kernels import tree as _tree

__all__ = [
    "INF_RANK",
    "Spt",
    "build_spt",
    "is_descendant",
    "level_ancestor",
    "rank_precedes",
    "tree_distance",
]


def rank_precedes(a: int, b: int) -> bool:
    """``a`` is visited no later than ``b`` in preorder (INF_RANK is last)."""
    return a <= b


def floor_log2_table(n: int) -> np.ndarray:
    """``lg[i] = floor(log2(i))`` for ``1 <= i <= n`` (``lg[0]`` unused)."""
    lg = np.zeros(max(n, 1) + 1, np.int64)
    lg[1:] = np.frexp(np.arange(1, lg.shape[0], dtype=np.float64))[1] - 1
    return lg


@dataclass(frozen=True, eq=False)
class Spt:
    """Shortest-path tree rooted at the source.

    The tree edge into vertex ``v`` has rank ``pre_in[v]`` (1..n-1), so ranks
    follow the preorder in which edges are traversed.  Children are visited
    in ascending vertex id.  ``pre_out[v]`` is the last preorder number inside
    the subtree of ``v``.
    """

    source: int
    parent: np.ndarray
    parent_edge: np.ndarray
    parent_weight: np.ndarray
    dist: np.ndarray
    depth: np.ndarray
    pre_in: np.ndarray
    pre_out: np.ndarray
    order: np.ndarray
    size: np.ndarray
    height: np.ndarray
    child_ptr: np.ndarray
    child: np.ndarray

    @classmethod
    def from_parent(cls, parent, dist, parent_edge=None, parent_weight=None) -> "Spt":
        """Index a rooted tree given as a parent array (-1 marks the root)."""
        parent = np.array(parent, dtype=np.int64)
        dist = np.array(dist, dtype=np.float64)
        n = parent.shape[0]
        roots = np.flatnonzero(parent < 0)
        if roots.shape[0] != 1:
            raise BuildError(f"expected exactly one root, found {roots.shape[0]}")
        root = int(roots[0])
        kids = np.flatnonzero(parent >= 0)
        kids = kids[np.lexsort((kids, parent[kids]))]
        child_ptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(parent[kids], minlength=n), out=child_ptr[1:])
        order, pre_in = _tree.preorder(root, child_ptr, kids)
        if order.shape[0] != n:
            raise BuildError("parent array does not describe a tree")
        size, depth, height = _tree.subtree_stats(order, parent)
        if parent_edge is None:
            parent_edge = np.full(n, -1, np.int64)
        if parent_weight is None:
            parent_weight = np.zeros(n)
            parent_weight[kids] = dist[kids] - dist[parent[kids]]
        return cls(
            source=root,
            parent=parent,
            parent_edge=np.array(parent_edge, dtype=np.int64),
            parent_weight=np.array(parent_weight, dtype=np.float64),
            dist=dist,
            depth=depth,
            pre_in=pre_in,
            pre_out=pre_in + size - 1,
            order=order,
            size=size,
            height=height,
            child_ptr=child_ptr,
            child=kids,
        )

    @property
    def n(self) -> int:
        return int(self.parent.shape[0])

    def rank(self, u: int, v: int) -> Optional[int]:
        """Rank of tree edge ``{u, v}``, or None if it is not a tree edge."""
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            return None
        if self.parent[v] == u:
            return int(self.pre_in[v])
        if self.parent[u] == v:
            return int(self.pre_in[u])
        return None

    def child_of(self, rank: int) -> int:
        """Lower endpoint of the tree edge with the given rank."""
        return int(self.order[rank])

    def edge_of(self, rank: int) -> tuple[int, int]:
        v = int(self.order[rank])
        return int(self.parent[v]), v

    def is_descendant(self, x: int, v: int) -> bool:
        return bool(self.pre_in[v] <= self.pre_in[x] <= self.pre_out[v])

    def tree_distance(self, z: int, t: int) -> float:
        if not self.is_descendant(t, z):
            raise ContractError(f"{z} is not an ancestor of {t}")
        return float(self.dist[t] - self.dist[z])

    def path(self, x: int, y: int) -> list[int]:
        """Vertices of the tree path from ``x`` to ``y``, in order (walks parents)."""
        up_x, up_y = [x], [y]
        a, b = x, y
        while self.depth[a] > self.depth[b]:
            a = int(self.parent[a])
            up_x.append(a)
        while self.depth[b] > self.depth[a]:
            b = int(self.parent[b])
            up_y.append(b)
        while a != b:
            a, b = int(self.parent[a]), int(self.parent[b])
            up_x.append(a)
            up_y.append(b)
        return up_x + up_y[-2::-1]

    # -- level ancestor -----------------------------------------------------

    @cached_property
    def lg(self) -> np.ndarray:
        return floor_log2_table(self.n)

    @cached_property
    def jump(self) -> np.ndarray:
        """``jump[j, x]``: ancestor 2**j hops above x, or -1."""
        levels = int(self.lg[max(int(self.depth.max(initial=0)), 1)]) + 1
        jump = np.full((levels, self.n), -1, np.int64)
        jump[0] = self.parent
        for j in range(1, levels):
            prev = jump[j - 1]
            ok = prev >= 0
            jump[j, ok] = prev[prev[ok]]
        return jump

    @cached_property
    def ladders(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return _tree.ladders(self.order, self.parent, self.height, self.child_ptr, self.child)

    def level_ancestor(self, x: int, h: int) -> int:
        if not 0 <= h <= self.depth[x]:
            raise ContractError(f"vertex {x} has no ancestor {h} hops up")
        ladder, lad_start, lad_of, lad_idx = self.ladders
        return int(_query.level_ancestor(x, h, self.jump, ladder, lad_start, lad_of, lad_idx, self.lg))


def build_spt(g: Graph) -> Spt:
    """Shortest-path tree of ``g`` from its source, with deterministic ties."""
    res = sssp(g)
    unreachable = np.flatnonzero(~np.isfinite(res.dist))
    if unreachable.size:
        raise BuildError(f"{unreachable.size} vertices unreachable from source, e.g. {int(unreachable[0])}")
    pw = np.zeros(g.n)
    kids = res.parent >= 0
    pw[kids] = g.ew[res.parent_edge[kids]]
    return Spt.from_parent(res.parent, res.dist, res.parent_edge, pw)


def is_descendant(spt: Spt, x: int, v: int) -> bool:
    return spt.is_descendant(x, v)


def tree_distance(spt: Spt, z: int, t: int) -> float:
    return spt.tree_distance(z, t)


def level_ancestor(spt: Spt, x: int, h: int) -> int:
    return spt.level_ancestor(x, h)
