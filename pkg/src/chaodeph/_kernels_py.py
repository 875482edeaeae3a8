"""Pure-numpy fallback for the phase-accumulation hot kernel.

Positions are processed in fixed-size blocks so the summation tree, and
therefore the rounding, depends only on the input shape. Everything runs
on single-threaded numpy elementwise ops (no BLAS), which keeps results
reproducible across machines and worker counts.
"""

from __future__ import annotations

import numpy as np

_BLOCK = 512


def phase_window_moments(kx, ky, kz, positions):
    """First two moments over a trajectory of exp(-i K_j . r_l).

    Parameters
    ----------
    kx, ky, kz : (m,) float64
        Momentum-transfer components at the m quadrature nodes.
    positions : (n, 3) float64
        Scatterer positions r_1 .. r_n.

    Returns
    -------
    mean_phase : (m,) complex128
        (1/n) sum_l exp(-i K_j . r_l).
    mean_sq_modulus : (m,) float64
        (1/n) sum_l |exp(-i K_j . r_l)|^2, identically 1 up to rounding;
        kept so the denominator of the empirical estimator is evaluated
        literally rather than assumed.
    """
    kx = np.ascontiguousarray(kx, dtype=float)
    ky = np.ascontiguousarray(ky, dtype=float)
    kz = np.ascontiguousarray(kz, dtype=float)
    pos = np.ascontiguousarray(positions, dtype=float)
    n = pos.shape[0]
    m = kx.shape[0]

    sum_cos = np.zeros(m)
    sum_sin = np.zeros(m)
    sum_sq = np.zeros(m)
    for start in range(0, n, _BLOCK):
        blk = pos[start : start + _BLOCK]
        dot = blk[:, 0:1] * kx + blk[:, 1:2] * ky + blk[:, 2:3] * kz
        c = np.cos(dot)
        s = np.sin(dot)
        sum_cos += c.sum(axis=0)
        sum_sin += s.sum(axis=0)
        sum_sq += (c * c + s * s).sum(axis=0)

    mean_phase = (sum_cos - 1j * sum_sin) / n
    return mean_phase, sum_sq / n
