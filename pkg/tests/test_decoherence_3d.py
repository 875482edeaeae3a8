import math

import numpy as np
import pytest
from scipy import integrate

from chaodeph import (
    BornGaussian,
    DecoherenceReport,
    DetectorWindow,
    Fixed,
    GaussianWalk,
    LowEnergy,
    QuadratureSpec,
    Trajectory,
    classify_regime,
    epsilon_empirical,
    epsilon_gaussian_closed_form,
    epsilon_gaussian_quadrature,
    epsilon_walk_sum,
    gen_trajectory,
    walk_sum_window_average,
    window_phase_average,
)
from chaodeph.decoherence import _geometric_phase_mean

WINDOW = DetectorWindow(theta0=np.pi / 2, dtheta=0.1, dphi=0.1)


def scipy_epsilon_oracle(y, theta0, dtheta):
    """Gaussian-model epsilon by adaptive 1D quadrature, fully independent
    of the package's Gauss-Legendre path."""
    num, _ = integrate.quad(
        lambda th: np.exp(-y * (1 - np.cos(th))) * np.sin(th),
        theta0, theta0 + dtheta, epsabs=1e-15, epsrel=1e-13,
    )
    den, _ = integrate.quad(np.sin, theta0, theta0 + dtheta, epsabs=1e-15, epsrel=1e-13)
    return 1 - (num / den) ** 2


class TestClosedForm:
    def test_spot_value(self):
        # y = 1, theta0 = pi/2, dtheta = 0.1; frozen from direct evaluation,
        # cross-checked against the scipy oracle below
        rep = epsilon_gaussian_closed_form(1, 1.0, 1.0, WINDOW)
        assert rep.epsilon_gaussian == pytest.approx(0.8774414907017243, rel=1e-12)
        assert abs(rep.epsilon_gaussian - scipy_epsilon_oracle(1.0, np.pi / 2, 0.1)) < 1e-3

    def test_scale_fields(self):
        rep = epsilon_gaussian_closed_form(4, 0.5, 2.0, WINDOW)  # y = 4
        y = 4 * 0.5**2 * 2.0**2
        assert rep.window_term_x == pytest.approx(y * WINDOW.expansion_factor(), rel=1e-14)
        assert rep.prefactor_exponent == pytest.approx(y * (1 - np.cos(np.pi / 2)), rel=1e-14)
        assert rep.n_p == 4

    def test_coherent_example(self):
        # y = 0.01, theta0 = 0.1, dtheta = 0.05: epsilon ~ 1.62e-4
        win = DetectorWindow(theta0=0.1, dtheta=0.05, dphi=0.1)
        rep = epsilon_gaussian_closed_form(1, 0.1, 1.0, win)  # y = 0.01
        assert abs(rep.epsilon_gaussian - 1.6223408272553197e-04) < 5e-8  # scipy oracle
        assert rep.regime == "coherent"

    def test_dephased_example(self):
        rep = epsilon_gaussian_closed_form(100, 1.0, 1.0, WINDOW)  # y = 100
        assert rep.epsilon_gaussian >= 1 - 1e-12

    def test_vanishing_window_term_limit(self):
        # w -> 0 with a = 1 gives epsilon -> 1 - e^{-2}
        win = DetectorWindow(theta0=np.pi / 2, dtheta=1e-9, dphi=0.1)
        rep = epsilon_gaussian_closed_form(1, 1.0, 1.0, win)
        assert rep.epsilon_gaussian == pytest.approx(1 - math.exp(-2.0), rel=1e-8)

    def test_monotone_in_y(self):
        win = DetectorWindow(theta0=np.pi / 4, dtheta=0.1, dphi=0.1)
        ys = np.logspace(-3, 2, 300)
        eps = [epsilon_gaussian_closed_form(1, math.sqrt(y), 1.0, win).epsilon_gaussian for y in ys]
        assert np.all(np.diff(eps) >= 0)

    def test_monotone_in_n_p(self):
        win = DetectorWindow(theta0=np.pi / 4, dtheta=0.1, dphi=0.1)
        n_values = np.unique(np.logspace(0, 4, 50).astype(int))
        eps = [
            epsilon_gaussian_closed_form(int(n), 0.03, 1.0, win).epsilon_gaussian
            for n in n_values
        ]
        assert np.all(np.diff(eps) >= 0)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            epsilon_gaussian_closed_form(0, 1.0, 1.0, WINDOW)
        with pytest.raises(ValueError):
            epsilon_gaussian_closed_form(1, -1.0, 1.0, WINDOW)
        with pytest.raises(ValueError):
            epsilon_gaussian_closed_form(1, 1.0, 0.0, WINDOW)


class TestGaussianQuadrature:
    @pytest.mark.parametrize("dtheta,tol", [(0.1, 1e-3), (0.01, 1e-6)])
    def test_closed_form_agrees_within_expansion_error(self, dtheta, tol):
        for y in (0.01, 0.1, 1.0, 10.0):
            for theta0 in (0.1, np.pi / 4, np.pi / 2):
                win = DetectorWindow(theta0=theta0, dtheta=dtheta, dphi=0.1)
                closed = epsilon_gaussian_closed_form(1, math.sqrt(y), 1.0, win).epsilon_gaussian
                quad = epsilon_gaussian_quadrature(1, math.sqrt(y), 1.0, win)
                assert abs(closed - quad) < tol

    def test_matches_fully_independent_scipy_oracle(self):
        for y, theta0, dtheta in [(1.0, np.pi / 2, 0.1), (0.3, 0.2, 0.05), (10.0, np.pi / 4, 0.02)]:
            win = DetectorWindow(theta0=theta0, dtheta=dtheta, dphi=0.1)
            mine = epsilon_gaussian_quadrature(1, math.sqrt(y), 1.0, win)
            assert mine == pytest.approx(scipy_epsilon_oracle(y, theta0, dtheta), abs=1e-11)

    def test_zero_dephasing_scale(self):
        # dL = 0 degenerates to a constant integrand and epsilon = 0
        assert epsilon_gaussian_quadrature(5, 0.0, 1.0, WINDOW) == 0.0

    def test_phi_window_is_irrelevant(self):
        a = epsilon_gaussian_quadrature(1, 1.0, 1.0, WINDOW)
        wide = DetectorWindow(theta0=np.pi / 2, dtheta=0.1, dphi=2.0, phi0=1.0)
        b = epsilon_gaussian_quadrature(1, 1.0, 1.0, wide)
        assert a == pytest.approx(b, rel=1e-12)


class TestWalkSum:
    def test_inner_geometric_sum(self):
        # two encounters with per-step damping 1/2: (1/2 + 1/4) / 2
        assert _geometric_phase_mean(np.array(math.log(2.0)), 2) == pytest.approx(0.375, rel=1e-14)

    def test_inner_sum_limits(self):
        assert _geometric_phase_mean(np.array(0.0), 10) == 1.0
        # huge damping kills every term
        assert _geometric_phase_mean(np.array(200.0), 10) == pytest.approx(0.0, abs=1e-80)

    def test_inner_sum_against_brute_force(self):
        for c in (1e-12, 1e-6, 0.1, 2.0, 40.0):
            for n in (1, 2, 7, 1000):
                brute = sum(math.exp(-l * c) for l in range(1, n + 1)) / n
                assert _geometric_phase_mean(np.array(c), n) == pytest.approx(brute, rel=1e-12)

    def test_single_encounter_equals_gaussian_model(self):
        # n_p = 1: S(theta) = exp(-c) is exactly the aged-walk factor
        a = epsilon_walk_sum(1, 0.7, 1.3, WINDOW)
        b = epsilon_gaussian_quadrature(1, 0.7, 1.3, WINDOW)
        assert a == pytest.approx(b, rel=1e-12)

    def test_dephased_regime_matches_closed_form_regime(self):
        # y = 25 at n_p = 10^4
        dl = math.sqrt(25.0 / 10**4)
        eps = epsilon_walk_sum(10**4, dl, 1.0, WINDOW)
        assert eps > 0.99
        assert epsilon_gaussian_closed_form(10**4, dl, 1.0, WINDOW).epsilon_gaussian > 0.99

    def test_walk_sum_dominates_aged_model(self):
        # early encounters are less damped, so the walk sum keeps more
        # coherence than the aged-walk replacement at every n_p
        for n_p in (2, 10, 100):
            dl = math.sqrt(4.0 / n_p)
            assert epsilon_walk_sum(n_p, dl, 1.0, WINDOW) <= epsilon_gaussian_quadrature(
                n_p, dl, 1.0, WINDOW
            )


class TestEmpirical:
    def test_fixed_at_origin_is_coherent(self):
        traj = gen_trajectory(Fixed((0.0, 0.0, 0.0)), 10, seed=0)
        rep = epsilon_empirical(traj, WINDOW, 1.0, LowEnergy(1.0))
        assert rep.epsilon_empirical < 1e-9
        assert rep.window_term_x == 0.0
        assert rep.regime == "coherent"

    def test_single_particle_at_origin(self):
        traj = gen_trajectory(Fixed((0.0, 0.0, 0.0)), 1, seed=0)
        rep = epsilon_empirical(traj, WINDOW, 2.0, LowEnergy(0.5))
        assert rep.epsilon_empirical < 1e-9

    def test_dephased_walk_single_seed(self):
        # y = 25: deep dephasing for one frozen walk realization
        traj = gen_trajectory(GaussianWalk(0.5), 100, seed=1)
        rep = epsilon_empirical(traj, WINDOW, 1.0, LowEnergy(1.0))
        assert rep.epsilon_empirical > 0.9
        assert rep.intermediates is not None

    def test_epsilon_in_unit_interval(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            n = int(rng.integers(1, 40))
            traj = gen_trajectory(GaussianWalk(rng.uniform(0.05, 2.0)), n, seed=int(rng.integers(1e6)))
            win = DetectorWindow(
                theta0=rng.uniform(0.05, 2.5), dtheta=rng.uniform(0.005, 0.3), dphi=rng.uniform(0.01, 1.0)
            )
            rep = epsilon_empirical(traj, win, rng.uniform(0.2, 3.0), LowEnergy(1.0))
            assert 0.0 <= rep.epsilon_empirical <= 1.0

    def test_amplitude_model_independence_small_window(self):
        # with F0 nearly constant over the window the model drops out; the
        # residual scales as (width * k)^2, so a short-range potential is
        # needed to reach the 1e-8 level
        traj = gen_trajectory(GaussianWalk(0.5), 50, seed=9)
        win = DetectorWindow(theta0=np.pi / 4, dtheta=0.05, dphi=0.05)
        a = epsilon_empirical(traj, win, 1.0, LowEnergy(1.0)).epsilon_empirical
        b = epsilon_empirical(traj, win, 1.0, BornGaussian(1.0, 0.005)).epsilon_empirical
        assert abs(a - b) < 1e-8

    def test_rejects_bad_inputs(self):
        traj = Trajectory(positions=np.empty((0, 3)), model=Fixed(), seed=0)
        with pytest.raises(ValueError):
            epsilon_empirical(traj, WINDOW, 1.0, LowEnergy(1.0))
        good = gen_trajectory(Fixed(), 2, 0)
        with pytest.raises(ValueError):
            epsilon_empirical(good, WINDOW, 0.0, LowEnergy(1.0))

    def test_empirical_tracks_walk_sum_model(self):
        # cheap Monte Carlo consistency check; the acceptance suite runs
        # the full 200-seed version
        n_p, dl, k = 10, 0.3, 1.0
        quad = QuadratureSpec(order=16, max_doublings=0)
        vals = [
            window_phase_average(gen_trajectory(GaussianWalk(dl), n_p, seed=5000 + i), WINDOW, k, quad)
            for i in range(100)
        ]
        re = np.array([v.real for v in vals])
        se = re.std(ddof=1) / np.sqrt(len(re))
        model = walk_sum_window_average(n_p, dl, k, WINDOW, quad)
        assert abs(abs(np.mean(vals)) - model) < 3 * se


class TestClassifyRegime:
    def test_thresholds(self):
        assert classify_regime(0.0) == "coherent"
        assert classify_regime(0.009) == "coherent"
        assert classify_regime(1.0) == "intermediate"
        assert classify_regime(100.0) == "dephased"

    def test_custom_thresholds(self):
        assert classify_regime(0.5, coherent_below=0.6) == "coherent"
        assert classify_regime(5.0, dephased_above=2.0) == "dephased"

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            classify_regime(-0.1)

    def test_accepts_report(self):
        rep = epsilon_gaussian_closed_form(1, 1.0, 1.0, WINDOW)
        assert classify_regime(rep) == classify_regime(rep.window_term_x)
        with pytest.raises(ValueError):
            classify_regime(DecoherenceReport(n_p=1))


class TestDetectorWindow:
    def test_invalid_windows_rejected(self):
        with pytest.raises(ValueError):
            DetectorWindow(theta0=-0.1, dtheta=0.1, dphi=0.1)
        with pytest.raises(ValueError):
            DetectorWindow(theta0=3.1, dtheta=0.2, dphi=0.1)  # past the pole
        with pytest.raises(ValueError):
            DetectorWindow(theta0=0.1, dtheta=0.0, dphi=0.1)
        with pytest.raises(ValueError):
            DetectorWindow(theta0=0.1, dtheta=0.1, dphi=0.0)
        with pytest.raises(ValueError):
            DetectorWindow(theta0=0.1, dtheta=0.1, dphi=7.0)
        with pytest.raises(ValueError):
            DetectorWindow(theta0=0.1, dtheta=0.1, dphi=0.1, phi0=-1.0)

    def test_expansion_factor(self):
        win = DetectorWindow(theta0=0.3, dtheta=0.1, dphi=0.1)
        expected = 0.1 * math.sin(0.3) + 0.005 * math.cos(0.3)
        assert win.expansion_factor() == pytest.approx(expected, rel=1e-14)
