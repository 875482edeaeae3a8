"""Backend parity: the compiled kernel and the numpy fallback must agree."""

import numpy as np
import pytest

from chaodeph import _kernels_py
from chaodeph.kernels import BACKEND

try:
    from chaodeph import _kernels_c
except ImportError:
    _kernels_c = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    BACKENDS.append(pytest.param(_kernels_c, id="cython"))


def _random_inputs(n, m, seed):
    rng = np.random.default_rng(seed)
    k = rng.normal(size=(3, m))
    pos = rng.normal(size=(n, 3)) * 3.0
    return k[0].copy(), k[1].copy(), k[2].copy(), pos


@pytest.mark.parametrize("impl", BACKENDS)
def test_zero_positions_give_unit_phase(impl):
    kx, ky, kz, _ = _random_inputs(1, 16, 0)
    pos = np.zeros((5, 3))
    mean_phase, mean_sq = impl.phase_window_moments(kx, ky, kz, pos)
    assert np.allclose(mean_phase, 1.0 + 0.0j, atol=1e-15)
    assert np.allclose(mean_sq, 1.0, atol=1e-15)


@pytest.mark.parametrize("impl", BACKENDS)
def test_single_position_matches_direct_exponential(impl):
    kx, ky, kz, pos = _random_inputs(1, 32, 1)
    mean_phase, mean_sq = impl.phase_window_moments(kx, ky, kz, pos)
    dots = kx * pos[0, 0] + ky * pos[0, 1] + kz * pos[0, 2]
    assert np.allclose(mean_phase, np.exp(-1j * dots), atol=1e-14)
    assert np.allclose(mean_sq, 1.0, atol=1e-14)


@pytest.mark.parametrize("impl", BACKENDS)
def test_mean_over_trajectory_matches_numpy_reference(impl):
    kx, ky, kz, pos = _random_inputs(700, 50, 2)  # crosses the block boundary
    mean_phase, mean_sq = impl.phase_window_moments(kx, ky, kz, pos)
    dots = pos @ np.vstack([kx, ky, kz])
    ref = np.exp(-1j * dots).mean(axis=0)
    assert np.allclose(mean_phase, ref, atol=1e-13)
    assert np.allclose(mean_sq, 1.0, atol=1e-13)


@pytest.mark.skipif(_kernels_c is None, reason="compiled kernel not built")
def test_backends_agree():
    kx, ky, kz, pos = _random_inputs(1500, 64, 3)
    s_py, q_py = _kernels_py.phase_window_moments(kx, ky, kz, pos)
    s_cy, q_cy = _kernels_c.phase_window_moments(kx, ky, kz, pos)
    assert np.allclose(s_py, s_cy, atol=1e-13)
    assert np.allclose(q_py, q_cy, atol=1e-13)


def test_selected_backend_is_reported():
    assert BACKEND in ("cython", "python")
