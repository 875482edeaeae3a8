#!/usr/bin/env python3
"""Benchmark the phase-accumulation kernel: compiled vs numpy fallback.

Sizes mirror the Monte Carlo workloads: n positions per trajectory times
m = order^2 solid-angle quadrature nodes.

    python benchmarks/bench_phase_kernel.py
"""

import time

import numpy as np

from chaodeph import _kernels_py

try:
    from chaodeph import _kernels_c
except ImportError:
    _kernels_c = None

SIZES = [(100, 32), (1000, 32), (1000, 64), (10000, 64)]
REPEATS = 5


def best_time(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"{'n_pos':>7} {'order':>6} {'nodes':>6} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    for n, order in SIZES:
        m = order * order
        kx, ky, kz = rng.normal(size=(3, m))
        pos = rng.normal(size=(n, 3)) * 3.0

        t_py = best_time(_kernels_py.phase_window_moments, kx, ky, kz, pos)
        if _kernels_c is None:
            print(f"{n:>7} {order:>6} {m:>6} {t_py * 1e3:>9.2f}ms {'(not built)':>10} {'-':>8}")
            continue
        t_cy = best_time(_kernels_c.phase_window_moments, kx, ky, kz, pos)

        s_py, q_py = _kernels_py.phase_window_moments(kx, ky, kz, pos)
        s_cy, q_cy = _kernels_c.phase_window_moments(kx, ky, kz, pos)
        assert np.allclose(s_py, s_cy, atol=1e-13) and np.allclose(q_py, q_cy, atol=1e-13)

        print(
            f"{n:>7} {order:>6} {m:>6} {t_py * 1e3:>9.2f}ms {t_cy * 1e3:>9.2f}ms "
            f"{t_py / t_cy:>7.2f}x"
        )


if __name__ == "__main__":
    main()
