#!/usr/bin/env python3
"""Benchmark of the compiled geodesic kernel against the pure-Python twin.

Runs the same integration workload through every importable backend and
reports wall time, accepted-step throughput and the speedup of the compiled
kernel.  The two backends produce bit-identical trajectories, which is
asserted on the fly.

Usage:
    python benchmarks/bench_integrator.py [--repeats N] [--tol TOL]
"""

import argparse
import math
import time

import numpy as np

from igscatter._kernels import available_backends


def build_workload(rng: np.random.Generator) -> list[tuple[list, float, float]]:
    cases = []
    for r in (0.0, 0.01, 0.5):
        for _ in range(10):
            y0 = [
                rng.uniform(-1, 1),
                rng.uniform(-1, 1),
                rng.uniform(0.5, 2.0),
                rng.uniform(-1, 1),
                rng.uniform(-1, 1),
                rng.uniform(-1, 1),
            ]
            cases.append((y0, r, 10.0))
    # two long collision-style runs with a small sigma scale
    cases.append(([0.0, 0.0, 0.002, 7.07e-3, -7.07e-3, 0.5], 0.0, 25.0))
    cases.append(([0.0, 0.0, 0.2, 0.34, -0.34, 0.46], 0.19, 25.0))
    return cases


def run(backend, workload, tol: float):
    t0 = time.perf_counter()
    steps = 0
    outputs = []
    for y0, r, tau_max in workload:
        status, taus, ys, _ = backend.integrate(
            y0, r, 0.0, tau_max, tol, tol * 1e-3, math.inf, 10**6
        )
        steps += len(taus)
        outputs.append((status, taus, ys))
    return time.perf_counter() - t0, steps, outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats (best wins)")
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    backends = available_backends()
    workload = build_workload(np.random.default_rng(42))
    print(f"workload: {len(workload)} integrations at tol={args.tol:g}")

    results = {}
    outputs = {}
    for name in sorted(backends):
        best = math.inf
        for _ in range(args.repeats):
            elapsed, steps, out = run(backends[name], workload, args.tol)
            best = min(best, elapsed)
        results[name] = (best, steps)
        outputs[name] = out
        print(f"{name:>10s}: {best:8.3f} s   {steps:7d} accepted steps   "
              f"{steps / best / 1e3:8.1f} ksteps/s")

    if len(outputs) == 2:
        for (sa, ta, ya), (sb, tb, yb) in zip(outputs["compiled"], outputs["python"]):
            assert sa == sb and np.array_equal(ta, tb) and np.array_equal(ya, yb), (
                "backend outputs diverged"
            )
        speedup = results["python"][0] / results["compiled"][0]
        print(f"bit-identical outputs confirmed; compiled speedup: {speedup:.1f}x")
    else:
        print("compiled kernel not available; nothing to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
