"""Hard instances for additive-stretch fault-tolerant distance structures.

The instance is a zero-weight path u_eta (the source) ... u_0, a star from
u_0 to t_1..t_eta, a complete bipartite graph between the t's and
v_1..v_eta, and spokes (u_i, v_i) of increasing weight x_i.  When path edge
e_i = (u_i, u_{i-1}) fails, the only cheap way to reach t_h runs through
spoke i and the bipartite edge (v_i, t_h); without that edge every route is
longer by more than beta(x_i + y).  A structure with additive error beta
must therefore keep all eta^2 bipartite edges.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import LowerBoundError, ParameterError
from .exact import ExactTable, build_exact
from .graph import Graph, sssp
from .spt import build_spt

# weights stay exactly representable integers (for integral parameters)
MAX_WEIGHT = 2.0**53


@dataclass(frozen=True)
class LowerBoundParams:
    eta: int
    k: float = 1.0
    delta: float = 1.0
    gamma: float = 1.0
    y: Optional[float] = None

    def validate(self) -> None:
        if self.k < 1:
            raise ParameterError("k must be >= 1")
        if not 0 < self.delta <= 1:
            raise ParameterError("delta must be in (0,1]")
        if not 0 < self.gamma <= 1:
            raise ParameterError("gamma must be in (0,1]")
        if self.eta < self.k + 1:
            raise ParameterError(f"eta must be >= k+1 (eta={self.eta}, k={self.k})")
        if self.y is not None and not (math.isfinite(self.y) and self.y >= 1):
            raise ParameterError("y must be a finite value >= 1")

    def beta(self, d):
        """Additive error allowed at distance ``d``: k d^(1-delta)."""
        return self.k * np.power(d, 1.0 - self.delta)

    @property
    def n(self) -> int:
        return 3 * self.eta + 1


def log_feasibility_bound(k: float, delta: float, n: int) -> float:
    """Natural log of (k/2)^(1/delta) (4 (2n)^(k+2+2/delta))^(1/delta-1)."""
    a = math.log(k / 2.0) / delta
    b = (math.log(4.0) + (k + 2.0 + 2.0 / delta) * math.log(2.0 * n)) * (1.0 / delta - 1.0)
    return a + b


def default_y(p: LowerBoundParams) -> float:
    """Smallest power of two (at least 1) strictly above the feasibility bound."""
    lb = log_feasibility_bound(p.k, p.delta, p.n)
    if lb >= math.log(MAX_WEIGHT):
        raise LowerBoundError("required y exceeds 2^53; lower eta or raise delta")
    bound = math.exp(lb)
    y = 1.0
    while y <= bound:
        y *= 2.0
    return y


@dataclass(frozen=True, eq=False)
class LowerBoundInstance:
    params: LowerBoundParams
    y: float
    graph: Graph
    x: np.ndarray  # x_1..x_eta
    z: np.ndarray  # x_i + y
    u: np.ndarray  # u_0..u_eta, u_eta is the source
    t: np.ndarray  # t_1..t_eta
    v: np.ndarray  # v_1..v_eta
    bipartite: list = field(default_factory=list)  # (t_h, v_j) pairs

    @property
    def eta(self) -> int:
        return self.params.eta

    def path_edge(self, i: int) -> tuple[int, int]:
        """e_i = (u_i, u_{i-1}) for 1 <= i <= eta."""
        return int(self.u[i]), int(self.u[i - 1])


def _instance_edges(eta: int, y: float, x: np.ndarray, keep=None):
    u = np.arange(eta + 1)
    t = eta + np.arange(1, eta + 1)
    v = 2 * eta + np.arange(1, eta + 1)
    edges = [(int(u[i]), int(u[i - 1]), 0.0) for i in range(1, eta + 1)]
    edges += [(int(u[0]), int(t[h]), y) for h in range(eta)]
    edges += [(int(u[i + 1]), int(v[i]), float(x[i])) for i in range(eta)]
    bip = [(int(t[h]), int(v[j])) for h in range(eta) for j in range(eta)]
    for idx, (a, b) in enumerate(bip):
        if keep is None or keep[idx]:
            edges.append((a, b, y))
    return u, t, v, bip, edges


def gen_lower_bound(p: LowerBoundParams) -> LowerBoundInstance:
    p.validate()
    y = float(p.y) if p.y is not None else default_y(p)
    eta = int(p.eta)
    x = np.empty(eta)
    x[0] = 2 * y + p.gamma
    for i in range(1, eta):
        x[i] = x[i - 1] + p.beta(x[i - 1] + y) + p.gamma
    z = x + y
    if not np.all(np.isfinite(x)) or x[-1] >= MAX_WEIGHT:
        raise LowerBoundError(f"spoke weight {x[-1]:.6g} does not fit below 2^53")
    if not 2 * y > p.beta(z[-1]):
        raise LowerBoundError(f"infeasible: 2y = {2 * y!r} <= beta(z_eta) = {float(p.beta(z[-1]))!r}")
    log_cap = math.log(4 * y) + (p.k + 2 + 2 / p.delta) * math.log(2 * p.n)
    if math.log(z[-1]) > log_cap:
        raise LowerBoundError("z_eta exceeds 4y(2n)^(k+2+2/delta)")
    u, t, v, bip, edges = _instance_edges(eta, y, x)
    g = Graph.from_edges(p.n, edges, source=int(u[eta]))
    return LowerBoundInstance(p, y, g, x, z, u, t, v, bip)


@dataclass(frozen=True)
class SeparationCheck:
    i: int
    h: int
    replacement: float  # d_{G-e_i}(s, t_h)
    expected: float  # x_i + y
    deprived: float  # same, also without (v_i, t_h)
    threshold: float  # x_i + y + beta(x_i + y)

    @property
    def ok(self) -> bool:
        return self.replacement == self.expected and self.deprived > self.threshold


@dataclass
class SeparationReport:
    checks: list
    base_ok: bool  # d_G(s,t_i) = y and d_G(s,v_i) = 2y
    condition_ok: bool  # 2y > beta(z_eta)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def passed(self) -> bool:
        return self.base_ok and self.condition_ok and not self.failures

    def lines(self) -> list[str]:
        out = [f"base distances: {'ok' if self.base_ok else 'FAIL'}",
               f"2y > beta(z_eta): {'ok' if self.condition_ok else 'FAIL'}"]
        for c in self.checks:
            out.append(f"i={c.i} h={c.h} d={c.replacement:.17g} expected={c.expected:.17g} "
                       f"without_edge={c.deprived:.17g} threshold={c.threshold:.17g} "
                       f"{'ok' if c.ok else 'FAIL'}")
        out.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} pairs pass")
        return out


def check_separation(inst: LowerBoundInstance, tbl: Optional[ExactTable] = None) -> SeparationReport:
    """Confirm that every bipartite edge is needed under some path-edge failure."""
    g, p, y = inst.graph, inst.params, inst.y
    if tbl is None:
        tbl = build_exact(g, build_spt(g))
    dist = tbl.spt.dist
    base_ok = bool(np.all(dist[inst.t] == y) and np.all(dist[inst.v] == 2 * y))
    condition_ok = bool(2 * y > p.beta(inst.z[-1]))
    checks = []
    for i in range(1, inst.eta + 1):
        a, b = inst.path_edge(i)
        row = tbl.row(a, b)
        ei = g.edge_index(a, b)
        vi = int(inst.v[i - 1])
        for h in range(1, inst.eta + 1):
            th = int(inst.t[h - 1])
            deprived = sssp(g, excluded=[ei, g.edge_index(vi, th)]).dist[th]
            zi = float(inst.z[i - 1])
            checks.append(SeparationCheck(i, h, float(row[th]), zi, float(deprived),
                                          zi + float(p.beta(zi))))
    return SeparationReport(checks, base_ok, condition_ok)


@dataclass
class EnumerationReport:
    subsets: int
    pairs: int
    indistinct: list  # (mask_a, mask_b) pairs no failure/target separates

    @property
    def passed(self) -> bool:
        return not self.indistinct


def failure_profile(inst: LowerBoundInstance, keep) -> np.ndarray:
    """d_{H-e_i}(s, t_h) for H = instance restricted to the kept bipartite edges."""
    eta = inst.eta
    _, _, _, _, edges = _instance_edges(eta, inst.y, inst.x, keep)
    g = Graph.from_edges(inst.graph.n, edges, source=inst.graph.source)
    out = np.empty((eta, eta))
    for i in range(1, eta + 1):
        d = sssp(g, excluded=g.edge_index(*inst.path_edge(i))).dist
        out[i - 1] = d[inst.t]
    return out.ravel()


def enumerate_distinguishability(inst: LowerBoundInstance, max_eta: int = 3) -> EnumerationReport:
    """Check that every two bipartite-edge subsets are told apart by some (e_i, t_h).

    Two distances a <= b count as distinguished when b > a + beta(a); an
    infinite distance is distinguished from every finite one.
    """
    eta = inst.eta
    if eta > max_eta:
        raise ParameterError(f"enumeration limited to eta <= {max_eta}")
    q = eta * eta
    count = 1 << q
    masks = (np.arange(count)[:, None] >> np.arange(q)[None, :]) & 1
    prof = np.array([failure_profile(inst, m.astype(bool)) for m in masks])
    beta = inst.params.beta
    indistinct = []
    pairs = 0
    for a in range(count - 1):
        lo = np.minimum(prof[a], prof[a + 1:])
        hi = np.maximum(prof[a], prof[a + 1:])
        with np.errstate(invalid="ignore"):
            sep = np.where(np.isinf(lo), False, np.where(np.isinf(hi), True, hi > lo + beta(lo)))
        ok = sep.any(axis=1)
        pairs += ok.shape[0]
        for b in np.flatnonzero(~ok):
            indistinct.append((a, a + 1 + int(b)))
    return EnumerationReport(count, pairs, indistinct)


def metadata_lines(inst: LowerBoundInstance) -> list[str]:
    p = inst.params
    fmt = lambda seq: ",".join(repr(float(a)) for a in seq)  # noqa: E731
    return [
        f"eta={p.eta}",
        f"k={float(p.k)!r}",
        f"delta={float(p.delta)!r}",
        f"gamma={float(p.gamma)!r}",
        f"y={inst.y!r}",
        f"n={inst.graph.n}",
        f"m={inst.graph.m}",
        f"source={inst.graph.source}",
        f"x={fmt(inst.x)}",
        f"z={fmt(inst.z)}",
        f"beta_z_eta={float(p.beta(inst.z[-1]))!r}",
        "u=" + ",".join(str(int(a)) for a in inst.u),
        "t=" + ",".join(str(int(a)) for a in inst.t),
        "v=" + ",".join(str(int(a)) for a in inst.v),
    ]


def write_metadata(inst: LowerBoundInstance, path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(metadata_lines(inst)) + "\n")


def read_metadata(path: Union[str, os.PathLike]) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                key, _, val = line.partition("=")
                out[key] = val
    return out
