"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each case is run on both backends and the results are compared for equality
before any timing is reported.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from kummer_lcp import kernels
from kummer_lcp.codes import ag_code
from kummer_lcp.constructions import build_ell_mds, complete_fibers, elliptic_curve, lcp_divisors, ym_curve
from kummer_lcp.gf import field_create


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(1)
    F64 = field_create(2, 6)
    t64 = F64.require_tables()
    curve = ym_curve(2, 3, 3, 1)
    X, Y = complete_fibers(curve)
    G, _ = lcp_divisors(curve, "w0_a", 10, X.size)
    code = ag_code(curve, (X, Y), G)
    A = rng.integers(0, 64, size=(200, 200), dtype=np.int64)
    B = rng.integers(0, 64, size=(200, 200), dtype=np.int64)
    yield "rref 200x200 GF(64)", lambda k: k.rref(t64, A.copy())
    yield "rref generator [108,59] GF(64)", lambda k: k.rref(t64, code.matrix.copy())
    yield "matmul 200x200 GF(64)", lambda k: k.matmul(t64, A, B)

    F25 = field_create(5, 2)
    t25 = F25.require_tables()
    ell = build_ell_mds(elliptic_curve(5), 2, 3, exhaustive=False)
    H = ell.lcp.code_h.matrix
    yield "min weight [16,5] GF(25)", lambda k: k.min_weight(t25, H)[0]
    yield "singular subset [16,5] GF(25)", lambda k: k.first_singular_subset(t25, H)
    F7 = field_create(7)
    t7 = F7.require_tables()
    R = rng.integers(0, 7, size=(7, 24), dtype=np.int64)
    yield "min weight [24,7] GF(7)", lambda k: k.min_weight(t7, R)[0]


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    impls = kernels.implementations()
    rows = []
    print(f"{'case':36s} " + " ".join(f"{n:>12s}" for n in impls) + "   speedup")
    for name, fn in cases():
        times, outs = {}, {}
        for iname, mod in impls.items():
            times[iname], outs[iname] = _best(lambda: fn(mod), args.repeat)
        vals = list(outs.values())
        if not all(_same(vals[0], v) for v in vals[1:]):
            raise SystemExit(f"backends disagree on {name}")
        speed = times["numpy"] / times["compiled"] if "compiled" in times else float("nan")
        rows.append({"case": name, "seconds": times, "speedup": speed})
        print(f"{name:36s} " + " ".join(f"{times[n]:12.5f}" for n in impls) + f"   {speed:7.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
