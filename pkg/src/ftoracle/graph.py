"""Weighted undirected graphs, the text format, and single-source shortest paths."""
from __future__ import annotations

import hashlib
import io
import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, NamedTuple, Optional, Sequence, TextIO, Union

import numpy as np

from .errors import GraphError, ParseError
from .kernels import sssp as _sssp
from .kernels import tree as _tree

if TYPE_CHECKING:
    from .spt import Spt

UNREACHABLE = math.inf


class Fingerprint(NamedTuple):
    n: int
    m: int
    source: int
    checksum: int


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with non-negative weights and a source vertex.

    Edge ``i`` is ``(eu[i], ev[i])`` with weight ``ew[i]``.  The adjacency is
    kept in CSR form; every edge appears once in each endpoint's list.
    """

    n: int
    source: int
    eu: np.ndarray
    ev: np.ndarray
    ew: np.ndarray
    indptr: np.ndarray
    adj: np.ndarray
    adj_eid: np.ndarray
    adj_w: np.ndarray
    keys: np.ndarray  # sorted min*n+max keys
    key_edge: np.ndarray  # edge index of keys[i]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[float]], source: int = 0) -> "Graph":
        """Validate and index an edge list of ``(u, v, w)`` triples."""
        arr = [tuple(e) for e in edges]
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        if not 0 <= source < n:
            raise GraphError(f"source {source} out of range [0, {n})")
        m = len(arr)
        eu = np.empty(m, np.int64)
        ev = np.empty(m, np.int64)
        ew = np.empty(m, np.float64)
        for i, (u, v, w) in enumerate(arr):
            u, v, w = int(u), int(v), float(w)
            _check_edge(n, i, u, v, w)
            eu[i], ev[i], ew[i] = u, v, w
        return cls._index(n, source, eu, ev, ew)

    @classmethod
    def from_arrays(cls, n: int, eu, ev, ew, source: int = 0) -> "Graph":
        """Vectorised constructor for large generated graphs."""
        eu = np.array(eu, dtype=np.int64)
        ev = np.array(ev, dtype=np.int64)
        ew = np.array(ew, dtype=np.float64)
        if n < 1 or not 0 <= source < n:
            raise GraphError("bad vertex count or source")
        if not (eu.shape == ev.shape == ew.shape):
            raise GraphError("edge arrays differ in length")
        bad = (eu < 0) | (eu >= n) | (ev < 0) | (ev >= n) | (eu == ev) | ~np.isfinite(ew) | (ew < 0)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            _check_edge(n, i, int(eu[i]), int(ev[i]), float(ew[i]))
        return cls._index(n, source, eu, ev, ew)

    @classmethod
    def _index(cls, n, source, eu, ev, ew) -> "Graph":
        m = eu.shape[0]
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        key = lo * n + hi
        key_edge = np.argsort(key, kind="stable")
        keys = key[key_edge]
        dup = np.flatnonzero(keys[1:] == keys[:-1]) if m > 1 else np.empty(0, np.int64)
        if dup.size:
            i = int(key_edge[dup[0] + 1])
            raise GraphError(f"duplicate edge ({int(eu[i])}, {int(ev[i])})")
        ends = np.concatenate([eu, ev])
        other = np.concatenate([ev, eu])
        eids = np.concatenate([np.arange(m), np.arange(m)])
        # group by endpoint, neighbours ascending within each list
        perm = np.lexsort((other, ends))
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(ends, minlength=n), out=indptr[1:])
        for a in (eu, ev, ew):
            a.flags.writeable = False
        return cls(
            n=n,
            source=source,
            eu=eu,
            ev=ev,
            ew=ew,
            indptr=indptr,
            adj=np.ascontiguousarray(other[perm]),
            adj_eid=np.ascontiguousarray(eids[perm]),
            adj_w=np.ascontiguousarray(np.concatenate([ew, ew])[perm]),
            keys=keys,
            key_edge=key_edge.astype(np.int64),
        )

    @property
    def m(self) -> int:
        return int(self.eu.shape[0])

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.eu.tolist(), self.ev.tolist(), self.ew.tolist()))

    def edge_index(self, u: int, v: int) -> Optional[int]:
        """Index of the edge joining ``u`` and ``v``, or None."""
        return lookup_edge(self.keys, self.key_edge, self.n, u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_index(u, v) is not None

    def neighbors(self, x: int) -> list[tuple[int, int, float]]:
        """``(neighbour, edge index, weight)`` triples of ``x``."""
        a, b = self.indptr[x], self.indptr[x + 1]
        return list(zip(self.adj[a:b].tolist(), self.adj_eid[a:b].tolist(), self.adj_w[a:b].tolist()))

    @cached_property
    def fingerprint(self) -> Fingerprint:
        return Fingerprint(self.n, self.m, self.source, edge_checksum(self.keys, self.ew[self.key_edge]))

    def to_text(self) -> str:
        buf = io.StringIO()
        write_graph(self, buf)
        return buf.getvalue()


def lookup_edge(keys: np.ndarray, key_edge: Optional[np.ndarray], n: int, u: int, v: int) -> Optional[int]:
    if not (0 <= u < n and 0 <= v < n) or u == v:
        return None
    key = min(u, v) * n + max(u, v)
    i = int(np.searchsorted(keys, key))
    if i < keys.shape[0] and keys[i] == key:
        return int(key_edge[i]) if key_edge is not None else i
    return None


def edge_checksum(sorted_keys: np.ndarray, weights: np.ndarray) -> int:
    """64-bit digest of the sorted ``(key, weight bits)`` sequence."""
    h = hashlib.blake2b(digest_size=8)
    h.update(np.ascontiguousarray(sorted_keys, dtype="<i8").tobytes())
    h.update(np.ascontiguousarray(weights, dtype="<f8").tobytes())
    return int.from_bytes(h.digest(), "little")


def _check_edge(n: int, i: int, u: int, v: int, w: float) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge {i}: vertex id out of range [0, {n})")
    if u == v:
        raise GraphError(f"edge {i}: self-loop at vertex {u}")
    if not math.isfinite(w):
        raise GraphError(f"edge {i}: weight must be finite")
    if w < 0:
        raise GraphError(f"edge {i}: negative weight {w}")


# -- text format -------------------------------------------------------------

def parse_graph(text: Union[str, TextIO]) -> Graph:
    """Parse ``n m s`` followed by ``m`` lines ``u v w``.

    Blank lines and lines starting with ``#`` are skipped.
    """
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()
    header = None
    rows: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _tokens(raw)
        if len(tokens) != 3:
            col = tokens[3][0] if len(tokens) > 3 else len(raw.rstrip()) + 1
            raise ParseError(f"expected 3 fields, found {len(tokens)}", lineno, col)
        if header is None:
            n, m, s = (_int(tok, lineno, col) for col, tok in tokens)
            header = (n, m, s)
            if n < 1:
                raise ParseError("vertex count must be positive", lineno, tokens[0][0])
            if m < 0:
                raise ParseError("edge count must be non-negative", lineno, tokens[1][0])
            continue
        if len(rows) == header[1]:
            raise ParseError(f"more than the declared {header[1]} edges", lineno, 1)
        (cu, tu), (cv, tv), (cw, tw) = tokens
        u, v = _int(tu, lineno, cu), _int(tv, lineno, cv)
        try:
            w = float(tw)
        except ValueError:
            raise ParseError(f"bad weight {tw!r}", lineno, cw) from None
        try:
            _check_edge(header[0], len(rows), u, v, w)
        except GraphError as exc:
            raise ParseError(str(exc), lineno, cu) from None
        rows.append((u, v, w))
    if header is None:
        raise ParseError("missing header line 'n m s'", max(len(lines), 1))
    if len(rows) != header[1]:
        raise ParseError(f"declared {header[1]} edges, found {len(rows)}", max(len(lines), 1))
    try:
        return Graph.from_edges(header[0], rows, source=header[2])
    except ParseError:
        raise
    except GraphError as exc:
        raise ParseError(str(exc), 1) from None


def _tokens(line: str) -> list[tuple[int, str]]:
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def read_graph(path: Union[str, os.PathLike]) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh)


def write_graph(g: Graph, out: TextIO) -> None:
    out.write(f"{g.n} {g.m} {g.source}\n")
    for u, v, w in g.edges:
        out.write(f"{u} {v} {w!r}\n")


# -- shortest paths ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SsspResult:
    dist: np.ndarray  # inf marks unreachable vertices
    parent: np.ndarray  # -1 at the root and at unreachable vertices
    parent_edge: np.ndarray


def sssp(g: Graph, root: Optional[int] = None,
         excluded: Union[None, int, Iterable[int]] = None) -> SsspResult:
    """Exact distances from ``root`` in ``g`` minus the excluded edge(s).

    ``excluded`` is an edge index or an iterable of them; indices outside
    ``[0, m)`` exclude nothing.
    """
    root = g.source if root is None else root
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    banned = np.zeros(max(g.m, 1), np.bool_)
    if excluded is not None:
        ids = [excluded] if isinstance(excluded, (int, np.integer)) else list(excluded)
        for e in ids:
            if 0 <= e < g.m:
                banned[e] = True
    dist, parent, pedge = _sssp.dijkstra(g.n, g.indptr, g.adj, g.adj_eid, g.adj_w, root, banned)
    return SsspResult(dist, parent, pedge)


def validate_fault_coverage(g: Graph, spt: "Spt") -> list[tuple[int, int]]:
    """Tree edges ``(parent, child)`` whose failure cuts some vertex off the source."""
    bridge = _tree.tree_bridges(spt.order, spt.parent, spt.pre_in, spt.pre_out, spt.parent_edge,
                                g.indptr, g.adj, g.adj_eid)
    return [(int(spt.parent[x]), int(x)) for x in spt.order[bridge[spt.order]]]
