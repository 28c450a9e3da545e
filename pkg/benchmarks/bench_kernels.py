"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Numba timings exclude the first (compiling) call, which is reported apart.
"""

import argparse
import time

import numpy as np

from gtwidth import _kernels, oracle
from gtwidth.lie import Family, Weight
from gtwidth.polytope import hrep


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.min_slack_numba is None:
        print("numba unavailable or disabled; nothing to compare")
        return

    w = Weight.of(Family.SO_ODD, [7, 5, 3, 2, 1])
    p = hrep(w)
    A, b = p.dense()
    A = np.array([[float(x) for x in r] for r in A])
    b = np.array([float(x) for x in b])
    X = np.random.default_rng(0).normal(size=(20000, p.N))
    pts = oracle.sample_psi_domain(3, 20000, np.random.default_rng(1))

    cases = [
        (f"min_slack  {A.shape[0]}x{A.shape[1]} ineq, {X.shape[0]} samples",
         lambda: _kernels.min_slack_numpy(A, b, X), lambda: _kernels.min_slack_numba(A, b, X)),
        (f"psi_dev    N=3, {pts.shape[0]} points",
         lambda: _kernels.psi_deviation_numpy(pts, 1e-6), lambda: _kernels.psi_deviation_numba(pts, 1e-6)),
    ]
    print(f"{'kernel':44s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s} {'compile':>8s}")
    for name, f_np, f_nb in cases:
        t0 = time.perf_counter()
        f_nb()
        compile_t = time.perf_counter() - t0
        t_np, r_np = best_of(f_np, args.repeat)
        t_nb, r_nb = best_of(f_nb, args.repeat)
        assert abs(r_np - r_nb) <= 1e-9 * max(1.0, abs(r_np)), (r_np, r_nb)
        print(f"{name:44s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x {compile_t:7.2f}s")


if __name__ == "__main__":
    main()
