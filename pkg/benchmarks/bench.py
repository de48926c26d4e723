"""Benchmark the jit-compiled kernels against their interpreted fallbacks.

The package's hot loops (incomplete-beta continued fraction, Kummer series
and ratio fraction, the Poisson-mixture series) are numba kernels whose
interpreted implementations remain reachable through ``.py_func``.  This
script times both paths on representative workloads and an end-to-end
dispatcher sweep.

Run:  python benchmarks/bench.py [--points 200]

With NCBETA_DISABLE_JIT=1 the package imports in interpreted mode and the
comparison collapses to a single column.
"""

import argparse
import math
import time

import numpy as np

import ncbeta
from ncbeta._jit import JIT_ENABLED, py_impl
from ncbeta.kernels import _betainc, _kummer_m_log, _kummer_ratio_pp
from ncbeta.params import EvalPoint, ShapeParams
from ncbeta.series import _member_b, _member_complement


def time_call(fn, args_list, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(name, fn, args_list, rows):
    fast = time_call(fn, args_list)
    pure_fn = py_impl(fn)
    if pure_fn is fn:
        rows.append((name, len(args_list), fast, None))
        return
    pure = time_call(pure_fn, args_list, repeats=1)
    rows.append((name, len(args_list), fast, pure))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=200)
    args = parser.parse_args()

    print(f"jit enabled: {JIT_ENABLED}")
    ncbeta.warmup()
    rng = np.random.default_rng(1)

    rows = []
    pts = [(rng.uniform(0.5, 300.0), rng.uniform(0.5, 300.0), rng.uniform(0.01, 0.99)) for _ in range(args.points)]
    bench_kernel("incomplete beta CF", _betainc, pts, rows)
    kpts = [(rng.uniform(1.0, 300.0), rng.uniform(1.0, 300.0), rng.uniform(0.0, 80.0)) for _ in range(args.points)]
    bench_kernel("log Kummer M series", _kummer_m_log, kpts, rows)
    bench_kernel("Kummer ratio CF", _kummer_ratio_pp, kpts, rows)
    spts = [
        (rng.uniform(1.0, 200.0), rng.uniform(1.0, 200.0), rng.uniform(0.0, 300.0), rng.uniform(0.05, 0.45))
        for _ in range(args.points)
    ]
    bench_kernel("series member (value side)", _member_b, spts, rows)
    cpts = [(p, q, x, 1.0 - y) for (p, q, x, y) in spts]
    bench_kernel("series member (complement)", _member_complement, cpts, rows)

    print(f"\n{'workload':34s} {'calls':>6s} {'jit [ms]':>10s} {'pure [ms]':>10s} {'speedup':>8s}")
    for name, n, fast, pure in rows:
        if pure is None:
            print(f"{name:34s} {n:6d} {fast * 1e3:10.2f} {'-':>10s} {'-':>8s}")
        else:
            print(f"{name:34s} {n:6d} {fast * 1e3:10.2f} {pure * 1e3:10.2f} {pure / fast:7.1f}x")

    # end-to-end sweep through the dispatcher (mixed routes)
    from ncbeta.dispatch import evaluate

    cases = []
    for _ in range(args.points):
        p = math.exp(rng.uniform(math.log(0.5), math.log(2000.0)))
        q = math.exp(rng.uniform(math.log(0.5), math.log(2000.0)))
        cases.append((ShapeParams(p, q), EvalPoint(rng.uniform(0.0, 500.0), rng.uniform(0.001, 0.999))))
    t0 = time.perf_counter()
    for sp, pt in cases:
        evaluate(sp, pt)
    dt = time.perf_counter() - t0
    print(f"\ndispatcher sweep: {args.points} points in {dt * 1e3:.1f} ms ({dt / args.points * 1e6:.0f} us/point)")


if __name__ == "__main__":
    main()
