import numpy as np
import pytest
from scipy import integrate

from chaodeph import (
    BornGaussian,
    Kinematics,
    LowEnergy,
    base_amplitude,
    momentum_transfer,
    phase_factor,
    shifted_amplitude,
)
from chaodeph.amplitudes import amplitude_vs_theta


def born_gaussian_oracle(strength, width, k_mag):
    """Radial Born integral -(1/2pi) FT[V], independent of the analytic form."""
    if k_mag < 1e-12:
        val, _ = integrate.quad(
            lambda r: r * r * np.exp(-r * r / (2 * width * width)), 0, np.inf
        )
        ft = 4 * np.pi * strength * val
    else:
        val, _ = integrate.quad(
            lambda r: r * np.sin(k_mag * r) * np.exp(-r * r / (2 * width * width)),
            0, np.inf,
        )
        ft = 4 * np.pi * strength * val / k_mag
    return -ft / (2 * np.pi)


class TestMomentumTransfer:
    def test_forward_is_zero(self):
        K = momentum_transfer(Kinematics(k=1.0, theta=0.0))
        assert np.allclose(K, 0.0, atol=1e-15)

    def test_backscattering(self):
        K = momentum_transfer(Kinematics(k=1.0, theta=np.pi, phi=0.0))
        assert np.linalg.norm(K) == pytest.approx(2.0, abs=1e-14)

    def test_right_angle_magnitude(self):
        # |K| = 2 k sin(theta/2); cross-checked against components
        K = momentum_transfer(Kinematics(k=3.0, theta=np.pi / 2, phi=0.7))
        assert np.linalg.norm(K) == pytest.approx(3.0 * np.sqrt(2.0), abs=1e-12)
        kprime = 3.0 * np.array(
            [np.sin(np.pi / 2) * np.cos(0.7), np.sin(np.pi / 2) * np.sin(0.7), np.cos(np.pi / 2)]
        )
        assert np.allclose(K, kprime - np.array([0.0, 0.0, 3.0]), atol=1e-14)

    def test_elastic_magnitude_formula_random_angles(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            k = rng.uniform(0.1, 5.0)
            theta = rng.uniform(0.0, np.pi)
            phi = rng.uniform(0.0, 2 * np.pi)
            K = momentum_transfer(Kinematics(k=k, theta=theta, phi=phi))
            assert np.linalg.norm(K) == pytest.approx(2 * k * np.sin(theta / 2), rel=1e-12)


class TestPhaseFactor:
    def test_zero_phase(self):
        assert phase_factor(np.zeros(3), np.array([1.0, 2.0, 3.0])) == 1.0 + 0.0j

    def test_pi_phase(self):
        v = phase_factor(np.array([0.0, 0.0, 2.0]), np.array([0.0, 0.0, np.pi / 2]))
        assert v == pytest.approx(-1.0 + 0.0j, abs=1e-15)

    def test_quarter_turn(self):
        v = phase_factor(np.array([1.0, 1.0, 0.0]), np.array([np.pi / 4, np.pi / 4, 9.0]))
        assert v == pytest.approx(-1.0j, abs=1e-15)

    def test_unit_modulus(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            v = phase_factor(rng.normal(size=3), rng.normal(size=3) * 10)
            assert abs(v) == pytest.approx(1.0, abs=1e-15)


class TestBaseAmplitude:
    def test_low_energy(self):
        v = base_amplitude(LowEnergy(scattering_length=0.5), Kinematics(k=2.0, theta=0.3))
        assert v == -1.0 + 0.0j

    def test_born_gaussian_forward(self):
        v = base_amplitude(BornGaussian(1.0, 1.0), Kinematics(k=1.0, theta=0.0))
        assert v.real == pytest.approx(-np.sqrt(2 * np.pi), abs=1e-12)
        assert v.real == pytest.approx(born_gaussian_oracle(1.0, 1.0, 0.0), rel=1e-9)

    def test_born_gaussian_at_k_transfer_2(self):
        # theta = pi at k = 1 gives |K| = 2
        v = base_amplitude(BornGaussian(1.0, 1.0), Kinematics(k=1.0, theta=np.pi))
        assert v.real == pytest.approx(-np.sqrt(2 * np.pi) * np.exp(-2.0), rel=1e-12)
        assert v.real == pytest.approx(born_gaussian_oracle(1.0, 1.0, 2.0), rel=1e-9)

    def test_born_gaussian_matches_oracle_on_grid(self):
        model = BornGaussian(0.7, 1.3)
        for k_mag in (0.1, 0.5, 1.0, 2.5):
            theta = 2 * np.arcsin(k_mag / (2 * 1.5))
            v = base_amplitude(model, Kinematics(k=1.5, theta=theta))
            assert v.real == pytest.approx(born_gaussian_oracle(0.7, 1.3, k_mag), rel=1e-9)

    def test_forward_peak_and_monotone_decay(self):
        thetas = np.linspace(0.0, np.pi, 200)
        vals = np.abs(amplitude_vs_theta(BornGaussian(1.0, 0.9), 1.2, thetas))
        assert np.argmax(vals) == 0
        assert np.all(np.diff(vals) <= 0)

    def test_vectorized_matches_scalar(self):
        model = BornGaussian(2.0, 0.6)
        thetas = np.linspace(0.0, np.pi, 7)
        vec = amplitude_vs_theta(model, 1.7, thetas)
        for th, v in zip(thetas, vec):
            assert v == pytest.approx(base_amplitude(model, Kinematics(1.7, th)).real, rel=1e-14)


class TestShiftedAmplitude:
    def test_zero_shift_is_identity(self):
        kin = Kinematics(k=1.0, theta=0.4, phi=1.0)
        model = BornGaussian(1.0, 1.0)
        assert shifted_amplitude(model, kin, np.zeros(3)) == base_amplitude(model, kin)

    def test_modulus_is_shift_independent(self):
        # the complex product rounds the modulus by at most 1 ulp
        kin = Kinematics(k=2.0, theta=1.1, phi=0.2)
        model = LowEnergy(0.3)
        base = abs(base_amplitude(model, kin))
        rng = np.random.default_rng(2)
        for _ in range(10):
            shifted = abs(shifted_amplitude(model, kin, rng.normal(size=3) * 5))
            assert shifted == pytest.approx(base, rel=1e-15)

    def test_quarter_phase_composition(self):
        # backscattering at k = 1: K = (0, 0, -2); choose r with K.r = pi/2
        kin = Kinematics(k=1.0, theta=np.pi, phi=0.0)
        r = np.array([0.0, 0.0, -np.pi / 4])
        v = shifted_amplitude(LowEnergy(1.0), kin, r)
        assert v == pytest.approx(1.0j * 1.0, abs=1e-14)  # (-kb) e^{-i pi/2} = i kb


def shifted_born_integral_oracle(strength, width, K, r0, half_box=8.0, n=160):
    """Midpoint 3D Born integral of the shifted Gaussian potential."""
    xs = (np.arange(n) + 0.5) / n * 2 * half_box - half_box
    dx = xs[1] - xs[0]
    X, Y, Z = np.meshgrid(xs, xs, xs, indexing="ij")
    V = strength * np.exp(
        -((X - r0[0]) ** 2 + (Y - r0[1]) ** 2 + (Z - r0[2]) ** 2) / (2 * width**2)
    )
    phase = np.exp(-1j * (K[0] * X + K[1] * Y + K[2] * Z))
    return -(phase * V).sum() * dx**3 / (2 * np.pi)


def test_translation_covariance_sample():
    rng = np.random.default_rng(17)
    for _ in range(3):
        width = rng.uniform(0.6, 1.2)
        k = rng.uniform(0.5, 1.2)
        theta = rng.uniform(0.1, np.pi - 0.1)
        phi = rng.uniform(0.0, 2 * np.pi)
        r0 = rng.uniform(-1.0, 1.0, 3)
        kin = Kinematics(k=k, theta=theta, phi=phi)
        model = BornGaussian(1.0, width)
        K = momentum_transfer(kin)
        expected = shifted_amplitude(model, kin, r0)
        numeric = shifted_born_integral_oracle(1.0, width, K, r0)
        assert abs(numeric - expected) / abs(expected) < 1e-6
