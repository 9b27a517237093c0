import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
from scipy import integrate

from nmxstate.exceptions import DomainError, NumericalError, UnsupportedOperationError
from nmxstate.noise import (
    NoiseKernel,
    QuadratureConfig,
    epsilon_at,
    epsilon_closed_form,
    epsilon_rate,
    epsilon_series,
    gauss3_integrate,
    kernel_autocorrelation,
)
from nmxstate.presets import PRESET_NAMES, load_preset, regime_kernel


def double_integral_oracle(gamma, lam, omega, t):
    """epsilon(t) straight from the double time integral of the kernel.

    The integrand is symmetric in (t1, t2), so integrate below the diagonal
    and double; this keeps the |t1 - t2| kink on the boundary.
    """
    def f(t2, t1):
        return math.cos(omega * (t1 - t2)) * 0.5 * gamma * lam * math.exp(-lam * (t1 - t2))
    value, _ = integrate.dblquad(f, 0, t, 0, lambda t1: t1, epsabs=1e-14, epsrel=1e-12)
    return 2 * value


class TestKernel:
    def test_peak(self):
        assert kernel_autocorrelation(NoiseKernel.exponential(1, 2), 0) == 1

    def test_tail(self):
        assert kernel_autocorrelation(NoiseKernel.exponential(1, 2), 1e3) == 0

    def test_even(self):
        k = NoiseKernel.exponential(0.7, 1.3)
        assert kernel_autocorrelation(k, -0.4) == kernel_autocorrelation(k, 0.4)

    @pytest.mark.parametrize("lam", [0.25, 1.0, 40.0])
    def test_integrates_to_gamma(self, lam):
        k = NoiseKernel.exponential(0.3, lam)
        total, _ = integrate.quad(lambda x: kernel_autocorrelation(k, x), -np.inf, np.inf)
        assert total == pytest.approx(0.3, rel=1e-9)

    def test_white_pointwise_unsupported(self):
        with pytest.raises(UnsupportedOperationError):
            kernel_autocorrelation(NoiseKernel.white(0.1), 0.0)

    @pytest.mark.parametrize("args", [("white", 0.0), ("white", -1.0), ("exponential", 1.0, 0.0),
                                      ("exponential", 1.0, math.inf), ("pink", 1.0)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            NoiseKernel(*args)


class TestGauss3:
    def test_quadratic(self):
        assert gauss3_integrate(lambda x: x**2, 0, 1) == pytest.approx(1 / 3, abs=1e-15)

    def test_degree_five_one_panel(self):
        assert gauss3_integrate(lambda x: x**5, 0, 1, 1) == pytest.approx(1 / 6, abs=1e-15)

    def test_degree_six_not_exact(self):
        assert abs(gauss3_integrate(lambda x: x**6, 0, 1, 1) - 1 / 7) > 1e-4

    def test_sine(self):
        assert abs(gauss3_integrate(np.sin, 0, np.pi, 8) - 2) < 1e-6

    def test_empty_interval(self):
        assert gauss3_integrate(np.exp, 1.0, 1.0, 4) == 0.0

    def test_reversed(self):
        with pytest.raises(DomainError):
            gauss3_integrate(np.sin, 1, 0)

    def test_sixth_order(self):
        errors = [abs(gauss3_integrate(np.exp, 0, 3, n) - math.expm1(3)) for n in (2, 4, 8)]
        assert errors[0] / errors[1] > 50 and errors[1] / errors[2] > 50


class TestEpsilon:
    def test_white_linear(self):
        assert epsilon_at(NoiseKernel.white(0.1), 3.0, 5.0) == pytest.approx(0.5, abs=1e-15)

    def test_zero_time(self):
        for k in (NoiseKernel.white(0.1), NoiseKernel.exponential(1, 0.25)):
            assert epsilon_at(k, 1.0, 0.0) == 0.0
            assert epsilon_closed_form(k, 1.0, 0.0) == 0.0

    def test_negative_time(self):
        with pytest.raises(DomainError):
            epsilon_at(NoiseKernel.white(0.1), 1.0, -1.0)
        with pytest.raises(DomainError):
            epsilon_closed_form(NoiseKernel.exponential(1, 1), 1.0, -1.0)

    @pytest.mark.parametrize("gamma,lam,omega,t", [(1.0, 0.25, 1.0, 3.0), (0.1, 0.875, 1.0, 3.5),
                                                    (0.8775, 0.25, 1.0, 7.5), (2.0, 5.0, 0.3, 1.2)])
    def test_closed_form_vs_double_integral(self, gamma, lam, omega, t):
        ref = double_integral_oracle(gamma, lam, omega, t)
        k = NoiseKernel.exponential(gamma, lam)
        assert epsilon_closed_form(k, omega, t) == pytest.approx(ref, rel=1e-9)
        assert epsilon_at(k, omega, t) == pytest.approx(ref, rel=1e-6)

    def test_small_argument_branch(self):
        k = NoiseKernel.exponential(1.0, 0.5)
        t = 1e-3
        ref, _ = integrate.quad(lambda u: (t - u) * np.exp(-0.5 * u) * np.cos(u), 0, t,
                                epsabs=1e-20, epsrel=1e-13)
        assert epsilon_closed_form(k, 1.0, t) == pytest.approx(0.5 * ref, rel=1e-10)

    @pytest.mark.parametrize("ratio", [1e2, 1e3, 1e4])
    def test_white_limit(self, ratio):
        k = NoiseKernel.exponential(0.1, ratio)
        t = np.linspace(0.5, 10, 20)
        eps = np.array([epsilon_closed_form(k, 1.0, x) for x in t])
        assert np.max(np.abs(eps - 0.1 * t)) < 0.01 * 0.1 * t[-1]
        assert abs(eps[-1] - 0.1 * t[-1]) < 0.01 * 0.1 * t[-1]

    def test_colored_non_monotone(self):
        k = NoiseKernel.exponential(1.0, 0.25)
        t = np.linspace(0, 4 * np.pi, 2001)
        eps = np.array([epsilon_closed_form(k, 1.0, x) for x in t])
        assert np.any(np.diff(np.sign(np.diff(eps))) < 0)

    def test_rate_matches_finite_difference(self):
        k = NoiseKernel.exponential(0.8775, 0.25)
        for t in (0.5, 2.0, 5.0):
            h = 1e-5
            fd = (epsilon_closed_form(k, 1.0, t + h) - epsilon_closed_form(k, 1.0, t - h)) / (2 * h)
            assert epsilon_rate(k, 1.0, t) == pytest.approx(fd, rel=1e-6)

    def test_smooth_start(self):
        k = NoiseKernel.exponential(1.0, 0.25)
        h = 1e-6
        assert epsilon_closed_form(k, 1.0, h) / h < 1e-5
        assert epsilon_rate(k, 1.0, 0.0) == 0.0

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.01, 5), st.floats(0.05, 20), st.floats(0.1, 3), st.floats(0, 20))
    def test_nonnegative(self, gamma, lam, omega, t):
        k = NoiseKernel.exponential(gamma, lam)
        assert epsilon_closed_form(k, omega, t) >= 0
        assert epsilon_at(k, omega, t, QuadratureConfig(16)) >= -1e-12

    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_convergence_rate(self, name):
        k = regime_kernel(name, 1.0)
        t = load_preset(name)["t_grid"]["stop"]
        ref = epsilon_closed_form(k, 1.0, t)
        errors = [abs(epsilon_at(k, 1.0, t, QuadratureConfig(n)) - ref) for n in (2, 4, 8, 16)]
        for coarse, fine in zip(errors, errors[1:]):
            if coarse < 1e-3 and coarse > 1e-13:
                assert coarse / max(fine, 1e-300) >= 4


class TestSeries:
    def test_white(self):
        pts = epsilon_series(NoiseKernel.white(0.1), 1.0, [0, 1, 2])
        assert [p.epsilon for p in pts] == pytest.approx([0, 0.1, 0.2], abs=1e-15)

    def test_single_point(self):
        pts = epsilon_series(NoiseKernel.exponential(1, 1), 1.0, [0])
        assert len(pts) == 1 and pts[0].epsilon == 0

    def test_unsorted(self):
        with pytest.raises(DomainError):
            epsilon_series(NoiseKernel.white(0.1), 1.0, [0, 2, 1])

    def test_verify_passes(self):
        k = regime_kernel("colored", 1.0)
        pts = epsilon_series(k, 1.0, np.linspace(0, 7.5, 31), verify=True)
        assert len(pts) == 31

    def test_verify_flags_coarse_quadrature(self):
        k = regime_kernel("colored", 1.0)
        with pytest.raises(NumericalError):
            epsilon_series(k, 1.0, [0.0, 7.5], QuadratureConfig(1), verify=True)

    def test_colored_fluctuates_near_threshold(self):
        k = regime_kernel("colored", 1.0)
        eps = np.array([p.epsilon for p in epsilon_series(k, 1.0, np.linspace(0, 7.5, 301))])
        assert np.any(np.diff(eps) < 0)
        crossings = np.flatnonzero(np.diff(np.sign(eps - 0.4550898605622274)))
        assert len(crossings) >= 3
