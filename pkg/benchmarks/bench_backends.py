"""Compare build and query time of the numba and interpreted backends.

Each backend runs in its own process because the backend flag is read at
import time.  Usage: python benchmarks/bench_backends.py [--n N] [--m M]
"""
import argparse
import json
import os
import subprocess
import sys

CHILD = """
import json, sys, time
import numpy as np
from ftoracle import _jit
from ftoracle.oracle2 import build_oracle2
from ftoracle.oracle_eps import build_oracle_eps
from ftoracle.randgraph import random_2ec_graph
from ftoracle.spt import build_spt

n, m, eps, queries, warm = int(sys.argv[1]), int(sys.argv[2]), float(sys.argv[3]), int(sys.argv[4]), sys.argv[5] == "1"
if warm:
    # compile everything once so the timed run measures steady state
    g = random_2ec_graph(50, 150, seed=1)
    s = build_spt(g)
    build_oracle2(g, s).query(int(s.parent[s.order[1]]), int(s.order[1]), 0)
    build_oracle_eps(g, s, eps).query(int(s.parent[s.order[1]]), int(s.order[1]), 0)
g = random_2ec_graph(n, m, seed=7)
out = {"backend": _jit.BACKEND}
t = time.perf_counter()
spt = build_spt(g)
out["spt_s"] = time.perf_counter() - t
rng = np.random.default_rng(3)
vs = spt.order[rng.integers(1, n, queries)]
ts = rng.integers(0, n, queries)
for name, build in (("two", lambda: build_oracle2(g, spt)), ("eps", lambda: build_oracle_eps(g, spt, eps))):
    t = time.perf_counter()
    o = build()
    out[name + "_build_s"] = time.perf_counter() - t
    t = time.perf_counter()
    for v, x in zip(vs.tolist(), ts.tolist()):
        o.query(int(spt.parent[v]), v, x)
    out[name + "_query_us"] = (time.perf_counter() - t) / max(queries, 1) * 1e6
print(json.dumps(out))
"""


def run(no_jit: bool, args) -> dict:
    env = dict(os.environ)
    env.pop("FTORACLE_NO_JIT", None)
    if no_jit:
        env["FTORACLE_NO_JIT"] = "1"
    cmd = [sys.executable, "-c", CHILD, str(args.n), str(args.m), str(args.eps), str(args.queries),
           "0" if no_jit else "1"]
    r = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True)
    return json.loads(r.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5000)
    ap.add_argument("--m", type=int, default=20000)
    ap.add_argument("--eps", type=float, default=0.25)
    ap.add_argument("--queries", type=int, default=2000)
    args = ap.parse_args()
    rows = [run(False, args), run(True, args)]
    keys = [k for k in rows[0] if k != "backend"]
    print(f"n={args.n} m={args.m} eps={args.eps} queries={args.queries}")
    print(f"{'metric':<16}" + "".join(f"{r['backend']:>12}" for r in rows) + f"{'speedup':>10}")
    for k in keys:
        a, b = rows[0][k], rows[1][k]
        print(f"{k:<16}{a:>12.4f}{b:>12.4f}{b / a if a else float('nan'):>9.1f}x")


if __name__ == "__main__":
    main()
