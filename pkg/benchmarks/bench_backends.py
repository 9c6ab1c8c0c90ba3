#!/usr/bin/env python3
"""Benchmark the compiled tape kernels against the pure-Python fallback.

Times both backends on the two shapes that dominate real runs:
  - small batches (15 quadrature nodes per panel), where call overhead rules
  - large batches (completed-curve z tabulation), where throughput rules
and on a full end-to-end work dispatch.

Usage: python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from isowork import _tape_py
from isowork.exprlang import compile_ast, parse

try:
    from isowork import _tape
except ImportError:
    _tape = None

WORK_INTEGRAND = ("(1.2 + 0.3*sin(x) + 0.2*cos(y) + 0.1*sin(z)) * (t + 1)"
                  " + (1.4 - 0.2*cos(x)) * (t^2 + 0.5) - x*y/(z + 4)")


def bench_tape(impl, prog, n, repeats, dual):
    xs, ys, zs, ts = (np.linspace(0.1, 1.9, n) for _ in range(4))
    ones = np.ones(n)
    out = np.empty(n)
    out_d = np.empty(n)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        if dual:
            err, _ = impl.eval_dual_batch(prog.code, prog.consts,
                                          prog.stack_need, xs, ys, zs, ts,
                                          ones, ones, ones, ones, out, out_d)
        else:
            err, _ = impl.eval_batch(prog.code, prog.consts, prog.stack_need,
                                     xs, ys, zs, ts, out)
        assert err == 0
        best = min(best, time.perf_counter() - start)
    return best, out.copy()


def bench_work_dispatch(repeats):
    """End-to-end: classify + case formula + direct oracle, current backend."""
    from isowork import ForceField, ParamCurve, work

    field = ForceField.from_text("1", "1", "-1/2")
    curve = ParamCurve.from_text("t", "2*t", "-2*t/3", 0.0, 1.0)
    best = float("inf")
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = work(field, curve).value
        best = min(best, time.perf_counter() - start)
    return best, value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    if _tape is None:
        print("compiled backend not built (pip install -e . rebuilds it); "
              "benchmarking the fallback only")
    prog = compile_ast(parse(WORK_INTEGRAND))
    print(f"tape: {prog.code.size // 2} instructions, "
          f"stack depth {prog.stack_need}")
    print(f"{'case':34s} {'python':>12s} {'compiled':>12s} {'speedup':>8s}")
    for n, dual in ((15, False), (15, True), (2048, False), (2048, True)):
        label = f"{'dual' if dual else 'value'} batch n={n}"
        t_py, out_py = bench_tape(_tape_py, prog, n, args.repeats, dual)
        if _tape is not None:
            t_c, out_c = bench_tape(_tape, prog, n, args.repeats, dual)
            dev = float(np.max(np.abs(out_c - out_py)))
            print(f"{label:34s} {t_py * 1e6:10.1f}us {t_c * 1e6:10.1f}us "
                  f"{t_py / t_c:7.1f}x   (max dev {dev:.1e})")
        else:
            print(f"{label:34s} {t_py * 1e6:10.1f}us {'-':>12s} {'-':>8s}")

    t_work, value = bench_work_dispatch(args.repeats)
    print(f"\nfull work dispatch (current backend): {t_work * 1e3:.2f} ms, "
          f"value {value:.12g}")


if __name__ == "__main__":
    main()
