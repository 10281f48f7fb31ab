#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-NumPy fallback.

Covers the two hot kernels: the dense complex matrix exponential (dominant
cost of every evolution and squeeze application) and the sequential
trapezoidal LTI stepper (dominant cost of the step-response cross-check).

Run:  python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from cryosqueeze.kernels import available_backends


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_expm(backends: dict, repeat: int):
    rng = np.random.default_rng(0)
    print("\nexpm: dense complex, Hermitian generator scaled to ||A|| ~ 900")
    print(f"{'dim':>6} " + " ".join(f"{name:>12}" for name in backends))
    for dim in (64, 128, 225, 400, 784):
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = 0.5 * (h + h.conj().T)
        a = -1j * h * (900.0 / np.linalg.norm(h, 2))
        row = [time_call(impl.expm, a, repeat=repeat) for impl in backends.values()]
        print(f"{dim:>6} " + " ".join(f"{t * 1e3:>10.1f}ms" for t in row))


def bench_trapezoid(backends: dict, repeat: int):
    print("\ntrapezoid_lti: 4-state system, unit step")
    print(f"{'steps':>8} " + " ".join(f"{name:>12}" for name in backends))
    amat = np.array(
        [[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0], [-1.0, -2.1, -3.2, -1.3]]
    )
    bvec = np.array([0.0, 0.0, 0.0, 1.0])
    cvec = np.array([1.0, 0.5, 0.0, 0.0])
    for steps in (20_000, 100_000, 400_000):
        row = [
            time_call(impl.trapezoid_lti, amat, bvec, cvec, 0.0, 1e-3, steps, repeat=repeat)
            for impl in backends.values()
        ]
        print(f"{steps:>8} " + " ".join(f"{t * 1e3:>10.1f}ms" for t in row))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = available_backends()
    print("backends:", ", ".join(backends))
    if len(backends) == 1:
        print("note: compiled extension not built; timing the pure backend only")
    bench_expm(backends, args.repeat)
    bench_trapezoid(backends, args.repeat)


if __name__ == "__main__":
    main()
