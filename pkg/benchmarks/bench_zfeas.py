#!/usr/bin/env python3
"""Benchmark the feasibility-search kernels: compiled extension vs pure Python.

The witness search is the hot loop of population-level soundness sweeps
(tens of thousands of invocations), so the package ships a compiled kernel
with a pure-Python twin as fallback.  This script times both on the same
workload and verifies they return identical results.

Usage: python benchmarks/bench_zfeas.py [n_spectra]
"""

import sys
import time

import numpy as np

import chanspec as cs
from chanspec import _zopt_py

try:
    from chanspec import _zopt
except ImportError:
    _zopt = None


def workload(n):
    """Mixed population: CP channel spectra plus raw triples (some infeasible)."""
    rng = np.random.default_rng(0)
    jobs = []
    for i in range(n):
        if i % 2:
            sp = cs.spectrum(cs.kraus_to_superoperator(cs.sample_cptp(2, 4, seed=i)))
        else:
            sp = cs.build_spectrum([1.0, *rng.uniform(-1.0, 1.0, size=3)], 2)
        moduli = sp.moduli_decreasing()
        product = float(np.prod(sp.non_unit_values()).real)
        det_sign = 1.0 if product > 1e-12 else (-1.0 if product < -1e-12 else 0.0)
        bound = max(cs.k_norm_bound(sp), 0.0)
        jobs.append(
            (float(moduli[0]), float(moduli[1]), float(moduli[2]), det_sign, bound)
        )
    return jobs


def run(kernel, jobs, grid_n=25, n_random=64, iters=200):
    start = time.perf_counter()
    results = [
        kernel.optimize_margin(m1, m2, m3, det_sign, bound, grid_n, n_random, iters, i)
        for i, (m1, m2, m3, det_sign, bound) in enumerate(jobs)
    ]
    return time.perf_counter() - start, results


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    jobs = workload(n)
    print(f"feasibility search over {n} spectra "
          f"(grid 25/axis, 64 random candidates, 200 refinement steps)\n")
    pure_time, pure_results = run(_zopt_py, jobs)
    print(f"  pure python : {pure_time:8.3f} s  ({pure_time / n * 1e3:7.2f} ms/call)")
    if _zopt is None:
        print("  compiled    : unavailable (extension not built)")
        return
    compiled_time, compiled_results = run(_zopt, jobs)
    print(f"  compiled    : {compiled_time:8.3f} s  ({compiled_time / n * 1e3:7.2f} ms/call)")
    print(f"  speedup     : {pure_time / compiled_time:8.1f} x")
    worst = max(
        max(abs(a - b) for a, b in zip(p, c))
        for p, c in zip(pure_results, compiled_results)
    )
    print(f"\n  max result deviation between kernels: {worst:.3e}")
    agree = all(
        (p[0] >= -1e-9) == (c[0] >= -1e-9)
        for p, c in zip(pure_results, compiled_results)
    )
    print(f"  feasibility verdicts identical: {agree}")


if __name__ == "__main__":
    main()
