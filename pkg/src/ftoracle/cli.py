"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input or parameters,
3 verification failure.
"""
from __future__ import annotations

import argparse
import hashlib
import math
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import container
from ._jit import BACKEND
from .errors import FtOracleError
from .exact import build_exact
from .graph import Graph, read_graph, write_graph
from .lowerbound import LowerBoundParams, check_separation, enumerate_distinguishability, gen_lower_bound, write_metadata
from .oracle2 import Oracle2, build_oracle2
from .oracle_eps import OracleEps, build_oracle_eps
from .randgraph import random_2ec_graph
from .spt import build_spt

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3
VERIFY_MAX_N = 4096
REL_TOL = 1e-9
_MISSING = object()


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_stretch(text: str) -> Optional[float]:
    """``"2"`` selects the 2-stretch oracle (None); ``"eps:<x>"`` the (1+x) one."""
    if text.strip() == "2":
        return None
    if text.startswith("eps:"):
        try:
            eps = float(text[4:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad epsilon {text[4:]!r}") from None
        if not 0.0 < eps < 1.0:
            raise argparse.ArgumentTypeError("epsilon must be in (0,1)")
        return eps
    raise argparse.ArgumentTypeError("stretch must be '2' or 'eps:<value in (0,1)>'")


def fmt_value(x: float) -> str:
    return "UNREACHABLE" if math.isinf(x) else "%.17g" % x


def build(g: Graph, eps: Optional[float], strict: bool = False):
    spt = build_spt(g)
    if eps is None:
        return build_oracle2(g, spt, strict)
    return build_oracle_eps(g, spt, eps, strict)


def _counters(o) -> list[str]:
    c = o.size_counters()
    if isinstance(o, Oracle2):
        return ["kind: TWO", f"detours: {c['detours']}", f"labels: {c['labels']}",
                f"marked: {c['marked']}", f"stored_values: {c['detours'] + c['labels']}"]
    return ["kind: EPS", f"epsilon: {o.epsilon!r}", f"k: {c['k']}", f"S_prime: {c['S_prime']}",
            f"S: {c['S']}", f"stored_reals: {c['stored_reals']}", f"budget: {c['budget']}",
            "bucket_sizes: " + " ".join(map(str, c["bucket_sizes"]))]


# -- commands ----------------------------------------------------------------

def cmd_build(a) -> int:
    g = read_graph(a.graph)
    t0 = time.perf_counter()
    o = build(g, a.stretch, a.strict)
    elapsed = time.perf_counter() - t0
    size = container.save(o, a.out)
    for line in _counters(o):
        print(line)
    print(f"build_seconds: {elapsed:.6f}")
    print(f"container_bytes: {size}")
    return EXIT_OK


def cmd_query(a) -> int:
    g = read_graph(a.graph) if a.graph else None
    o = container.load(a.oracle, g)
    ans = o.query(a.fail[0], a.fail[1], a.target)
    print(fmt_value(ans.value), ans.tag)
    return EXIT_OK


def verify_oracle(o, tbl, samples: Optional[int] = None, seed: int = 0):
    """Check exact <= answer <= stretch * exact on (tree edge, descendant) pairs.

    Returns (checked, max_ratio, witnesses).
    """
    spt = tbl.spt
    n = spt.n
    pairs = []
    for r in range(1, n):
        v = int(spt.order[r])
        for p in range(spt.pre_in[v], spt.pre_out[v] + 1):
            pairs.append((r, int(spt.order[p])))
    if samples is not None and samples < len(pairs):
        rng = np.random.default_rng(seed)
        pick = np.sort(rng.choice(len(pairs), samples, replace=False))
        pairs = [pairs[i] for i in pick]
    worst, witnesses = 1.0, []
    alpha = o.stretch
    for r, t in pairs:
        u, v = spt.edge_of(r)
        got = o.query(u, v, t).value
        exact = float(tbl.rows[r - 1, t])
        if math.isinf(exact):
            ok = math.isinf(got)
        else:
            ok = exact <= got <= alpha * exact * (1 + REL_TOL)
            if exact > 0:
                worst = max(worst, got / exact)
        if not ok:
            witnesses.append((u, v, t, got, exact))
    return len(pairs), worst, witnesses


def cmd_verify(a) -> int:
    g = read_graph(a.graph)
    if g.n > VERIFY_MAX_N:
        print(f"graph too large for exhaustive verification (n={g.n} > {VERIFY_MAX_N})", file=sys.stderr)
        return EXIT_INPUT
    if a.oracle:
        o = container.load(a.oracle, g)
    elif a.stretch is not _MISSING:
        o = build(g, a.stretch, a.strict)
    else:
        raise UsageError("verify needs --stretch or --oracle")
    tbl = build_exact(g, o.spt)
    checked, worst, bad = verify_oracle(o, tbl, a.samples, a.seed)
    print(f"kind: {o.kind}")
    print(f"pairs_checked: {checked}")
    print(f"max_stretch: {worst:.17g}")
    print(f"violations: {len(bad)}")
    if bad:
        u, v, t, got, exact = bad[0]
        print(f"witness: fail=({u},{v}) target={t} value={fmt_value(got)} exact={fmt_value(exact)}")
        return EXIT_VERIFY
    return EXIT_OK


def _percentiles(xs: np.ndarray) -> str:
    if xs.size == 0:
        return "n/a"
    p50, p90, p99 = np.percentile(xs, [50, 90, 99])
    return f"p50={p50:.2f}us p90={p90:.2f}us p99={p99:.2f}us"


def bench_workload(o, count: int, seed: int) -> list[tuple[int, int, int]]:
    """Seeded (u, v, t) queries on tree edges, with t drawn from the failed subtree."""
    spt = o.spt
    rng = np.random.default_rng(seed)
    out = []
    if spt.n < 2:
        return out
    ranks = rng.integers(1, spt.n, count)
    offs = rng.random(count)
    for r, f in zip(ranks.tolist(), offs.tolist()):
        v = int(spt.order[r])
        t = int(spt.order[spt.pre_in[v] + int(f * spt.size[v])])
        out.append((int(spt.parent[v]), v, t))
    return out


def cmd_bench(a) -> int:
    g = read_graph(a.graph)
    t0 = time.perf_counter()
    o = build(g, a.stretch, a.strict)
    elapsed = time.perf_counter() - t0
    size = len(container.serialize(o))
    work = bench_workload(o, a.queries, a.seed)
    digest = hashlib.blake2b(repr(work).encode(), digest_size=8).hexdigest()
    if work:
        o.query(*work[0])  # index construction and compilation are not query latency
    lat = np.empty(len(work))
    for i, q in enumerate(work):
        q0 = time.perf_counter_ns()
        o.query(*q)
        lat[i] = (time.perf_counter_ns() - q0) / 1e3
    print(f"backend: {BACKEND}")
    print(f"n: {g.n}")
    print(f"m: {g.m}")
    for line in _counters(o):
        print(line)
    if isinstance(o, OracleEps):
        c = o.size_counters()
        total = c["stored_reals"]
        print(f"within_budget: {'yes' if total <= c['budget'] else 'NO'}")
    print(f"build_seconds: {elapsed:.6f}")
    print(f"container_bytes: {size}")
    print(f"queries: {len(work)}")
    print(f"workload_digest: {digest}")
    print(f"latency: {_percentiles(lat)}")
    return EXIT_OK


def cmd_gen_lb(a) -> int:
    p = LowerBoundParams(a.eta, a.k, a.delta, a.gamma, a.y)
    inst = gen_lower_bound(p)
    with open(a.out, "w", encoding="utf-8") as fh:
        write_graph(inst.graph, fh)
    meta = a.meta or a.out + ".meta"
    write_metadata(inst, meta)
    print(f"n: {inst.graph.n}")
    print(f"m: {inst.graph.m}")
    print(f"y: {inst.y!r}")
    print("x: " + " ".join(repr(float(x)) for x in inst.x))
    rep = check_separation(inst)
    for line in rep.lines():
        print(line)
    ok = rep.passed
    if a.enumerate:
        en = enumerate_distinguishability(inst)
        print(f"enumeration: {en.subsets} subsets, {en.pairs} pairs, {len(en.indistinct)} indistinguishable")
        ok = ok and en.passed
    print("separation: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gen_random(a) -> int:
    g = random_2ec_graph(a.n, a.m, a.seed, weights=a.weights, method=a.method)
    with open(a.out, "w", encoding="utf-8") as fh:
        write_graph(g, fh)
    print(f"n: {g.n}")
    print(f"m: {g.m}")
    print(f"source: {g.source}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ftoracle", description="Single-failure approximate distance oracles.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build an oracle and write its container")
    b.add_argument("--graph", required=True)
    b.add_argument("--stretch", required=True, type=parse_stretch)
    b.add_argument("--out", required=True)
    b.add_argument("--strict", action="store_true", help="reject graphs with bridges")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer one failure query from a container")
    q.add_argument("--oracle", required=True)
    q.add_argument("--fail", required=True, nargs=2, type=int, metavar=("U", "V"))
    q.add_argument("--target", required=True, type=int)
    q.add_argument("--graph", help="refuse if the container was built for another graph")
    q.set_defaults(func=cmd_query)

    v = sub.add_parser("verify", help="compare an oracle against exact post-failure distances")
    v.add_argument("--graph", required=True)
    v.add_argument("--stretch", type=parse_stretch, default=_MISSING)
    v.add_argument("--oracle", help="verify this container instead of building one")
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--strict", action="store_true")
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="build time, size and query latency")
    be.add_argument("--graph", required=True)
    be.add_argument("--stretch", required=True, type=parse_stretch)
    be.add_argument("--queries", type=int, default=1000)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--strict", action="store_true")
    be.set_defaults(func=cmd_bench)

    lb = sub.add_parser("gen-lb", help="generate and check a lower-bound instance")
    lb.add_argument("--eta", required=True, type=int)
    lb.add_argument("--k", type=float, default=1.0)
    lb.add_argument("--delta", type=float, default=1.0)
    lb.add_argument("--gamma", type=float, default=1.0)
    lb.add_argument("--y", type=float)
    lb.add_argument("--out", default="lowerbound.txt")
    lb.add_argument("--meta", help="metadata path (default: OUT.meta)")
    lb.add_argument("--enumerate", action="store_true",
                    help="also check all bipartite-edge subsets (eta <= 3)")
    lb.set_defaults(func=cmd_gen_lb)

    gr = sub.add_parser("gen-random", help="write a random 2-edge-connected graph")
    gr.add_argument("--n", required=True, type=int)
    gr.add_argument("--m", required=True, type=int)
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("--weights", choices=["dyadic", "integer", "uniform"], default="dyadic")
    gr.add_argument("--method", choices=["cycle", "tree"], default="cycle")
    gr.add_argument("--out", required=True)
    gr.set_defaults(func=cmd_gen_random)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = make_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return a.func(a)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"ftoracle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FtOracleError, ValueError, OSError) as exc:
        print(f"ftoracle: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
