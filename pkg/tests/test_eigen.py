import math

import mpmath
import numpy as np
import pytest
from scipy import optimize, special as sp

from conftest import LAMBDA1_EPS_0_01, LAMBDA1_EPS_0_1
from massratio import (Domain, GridFunction, InvalidParameter, SpikeProfile, lambda1_ball2,
                       lambda1_discrete, lambda1_variational_bound, lambda_k_interval,
                       make_grid, sample_spike)
from massratio.eigen import (BALL2_EPS_MAX, eigenpair_ball2, eigenpair_interval,
                             rayleigh_quotient, reciprocal_lambda1_lower_bound)


class TestSpike:
    def test_interval_values(self):
        g = make_grid(Domain.interval(), 128, 0.25)
        m = sample_spike(SpikeProfile(1, 0.25), g)
        r = np.asarray(g.nodes)
        assert np.all(m.values[r <= 0.25] == 4.0)
        assert np.all(m.values[r > 0.25] == 0.0)
        assert m.right_limits[g.interface_index] == 0.0

    def test_amplitude(self):
        assert SpikeProfile(3, 0.5).amplitude == 8.0
        assert SpikeProfile(2, 0.1).amplitude == pytest.approx(100.0)

    def test_grid_mismatch(self):
        g = make_grid(Domain.ball(2), 128, 0.25)
        with pytest.raises(InvalidParameter):
            sample_spike(SpikeProfile(2, 0.2), g)

    @pytest.mark.parametrize("eps", [0.0, 1.0, -1.0])
    def test_profile_invariants(self, eps):
        with pytest.raises(InvalidParameter):
            SpikeProfile(1, eps)


class TestTranscendental:
    def test_pinned_values(self):
        assert lambda_k_interval(0.01, 1) == pytest.approx(LAMBDA1_EPS_0_01, rel=1e-12)
        assert lambda_k_interval(0.1, 1) == pytest.approx(LAMBDA1_EPS_0_1, rel=1e-12)

    @pytest.mark.parametrize("eps", [0.5, 0.1, 0.01, 1e-4])
    def test_against_mpmath(self, eps):
        with mpmath.workdps(30):
            c = mpmath.mpf(eps) / (1 - mpmath.mpf(eps))
            theta = mpmath.findroot(lambda t: t * mpmath.tan(t) - c, mpmath.sqrt(c))
            lam = float(theta ** 2 / mpmath.mpf(eps))
        assert lambda_k_interval(eps, 1) == pytest.approx(lam, rel=1e-12)

    @pytest.mark.parametrize("eps", [0.9, 0.5, 0.1, 0.01, 0.001, 1e-6])
    def test_upper_bound(self, eps):
        assert lambda_k_interval(eps, 1) * (1 - eps) <= 1.0

    @pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-6, 1e-8])
    def test_limit_one(self, eps):
        lam = lambda_k_interval(eps, 1)
        assert lam >= 1.0
        assert abs(lam - 1.0) <= 2 * eps

    @pytest.mark.parametrize("eps", [0.5, 0.1, 0.01])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_interlacing(self, eps, k):
        lam = lambda_k_interval(eps, k)
        assert (k - 1) ** 2 * math.pi ** 2 / eps < lam < (k - 0.5) ** 2 * math.pi ** 2 / eps

    def test_second_eigenvalue_window(self):
        assert 98.70 < lambda_k_interval(0.1, 2) < 222.07

    @pytest.mark.parametrize("eps", [0.3, 0.01])
    def test_root_of_determinant(self, eps):
        for k in (1, 2, 3):
            lam = lambda_k_interval(eps, k)
            s = math.sqrt(lam * eps)
            lhs = math.sin(s) * (1 - eps)
            rhs = math.sqrt(eps / lam) * math.cos(s)
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_closed_form_eigenfunction(self):
        g = make_grid(Domain.interval(), 256, 0.1)
        res = eigenpair_interval(0.1, g)
        phi = res.eigenfunction.values
        assert phi[-1] == pytest.approx(0.0, abs=1e-15)
        assert np.all(phi[:-1] > 0)
        assert res.residual < 1e-12

    @pytest.mark.parametrize("k", [0, -1])
    def test_rejects_bad_index(self, k):
        with pytest.raises(InvalidParameter):
            lambda_k_interval(0.1, k)


def _ball2_oracle(eps):
    L = abs(math.log(eps))
    z = optimize.brentq(lambda z: sp.j0(z) - z * sp.j1(z) * L, 1e-12, 2.404825557695773, xtol=1e-15)
    return z * z


class TestBall2:
    def test_small_lambda_expansion(self):
        lam = lambda1_ball2(math.exp(-10))
        assert lam == pytest.approx(_ball2_oracle(math.exp(-10)), rel=1e-10)
        assert lam == pytest.approx(4 / 21, rel=5e-2)
        assert lam == pytest.approx(0.1950827973, rel=1e-9)

    @pytest.mark.parametrize("eps", [BALL2_EPS_MAX, 1e-2, 1e-4, 1e-6, 1e-8, 1e-12])
    def test_log_bracket(self, eps):
        L = abs(math.log(eps))
        assert 1 / L <= lambda1_ball2(eps) <= 4 / L

    def test_monotone_in_eps(self):
        assert lambda1_ball2(1e-6) < lambda1_ball2(1e-4)

    def test_precondition(self):
        with pytest.raises(InvalidParameter):
            lambda1_ball2(0.2)

    def test_eigenfunction_shape(self):
        g = make_grid(Domain.ball(2), 512, 1e-3)
        res = eigenpair_ball2(1e-3, g)
        assert res.eigenfunction.values[-1] == pytest.approx(0.0, abs=1e-15)
        assert res.eigenfunction.max() == pytest.approx(1.0)


class TestVariationalBound:
    def test_values(self):
        assert lambda1_variational_bound(2, 0.37) == 6.0
        assert lambda1_variational_bound(3, 0.1) == pytest.approx(1.0)
        assert reciprocal_lambda1_lower_bound(3, 0.1) == pytest.approx(1.0)

    def test_rejects_one_dimension(self):
        with pytest.raises(InvalidParameter):
            lambda1_variational_bound(1, 0.1)

    @pytest.mark.parametrize("n,eps", [(2, 0.1), (3, 0.1), (3, 0.01), (4, 0.2)])
    def test_numeric_rayleigh_quotient(self, n, eps):
        g = make_grid(Domain.ball(n), 8192, eps)
        r = np.asarray(g.nodes)
        i = g.interface_index
        phi = GridFunction(g, np.maximum(eps - r, 0.0))
        dvals = np.where(r <= eps, -1.0, 0.0)
        dright = dvals.copy()
        dright[i] = 0.0
        dphi = GridFunction(g, dvals, dright)
        m = sample_spike(SpikeProfile(n, eps), g)
        assert rayleigh_quotient(phi, dphi, m, n) == pytest.approx(
            lambda1_variational_bound(n, eps), rel=1e-4)

    @pytest.mark.parametrize("n,eps", [(2, 0.1), (3, 0.1), (3, 1e-3)])
    def test_bounds_discrete_eigenvalue(self, n, eps):
        g = make_grid(Domain.ball(n), 2048, eps)
        lam = lambda1_discrete(sample_spike(SpikeProfile(n, eps), g), g, n).lambda1
        assert lam <= lambda1_variational_bound(n, eps)


class TestDiscrete:
    def test_interval_constant_resource(self):
        g = make_grid(Domain.interval(), 2048, 0.5)
        res = lambda1_discrete(GridFunction.constant(g, 1.0), g, 1)
        assert res.lambda1 == pytest.approx(math.pi ** 2 / 4, abs=1e-4)

    def test_disc_constant_resource(self):
        g = make_grid(Domain.ball(2), 2048, 0.5)
        res = lambda1_discrete(GridFunction.constant(g, 1.0), g, 2)
        assert res.lambda1 == pytest.approx(2.404825557695773 ** 2, abs=1e-3)

    @pytest.mark.parametrize("eps", [0.5, 0.1, 0.01, 1e-3])
    def test_agrees_with_transcendental(self, eps):
        g = make_grid(Domain.interval(), 4096, eps)
        res = lambda1_discrete(sample_spike(SpikeProfile(1, eps), g), g, 1)
        assert res.lambda1 == pytest.approx(lambda_k_interval(eps, 1), rel=1e-3)

    @pytest.mark.parametrize("eps", [1e-2, 1e-3, 1e-5])
    def test_agrees_with_bessel(self, eps):
        g = make_grid(Domain.ball(2), 4096, eps)
        res = lambda1_discrete(sample_spike(SpikeProfile(2, eps), g), g, 2)
        assert res.lambda1 == pytest.approx(lambda1_ball2(eps), rel=1e-2)

    def test_eigenfunction_positive_and_normalized(self):
        g = make_grid(Domain.ball(3), 1024, 0.05)
        res = lambda1_discrete(sample_spike(SpikeProfile(3, 0.05), g), g, 3)
        phi = res.eigenfunction.values
        assert phi[-1] == 0.0
        assert np.all(phi[:-1] > 0)
        assert phi.max() == pytest.approx(1.0)
        assert res.residual < 1e-4
        assert res.method == "Discrete"

    def test_discrete_eigenfunction_matches_closed_form(self):
        g = make_grid(Domain.interval(), 4096, 0.1)
        disc = lambda1_discrete(sample_spike(SpikeProfile(1, 0.1), g), g, 1).eigenfunction.values
        exact = eigenpair_interval(0.1, g).eigenfunction.values
        assert np.max(np.abs(disc - exact)) < 1e-5

    def test_rejects_zero_resource(self):
        g = make_grid(Domain.interval(), 128, 0.5)
        with pytest.raises(InvalidParameter):
            lambda1_discrete(GridFunction.constant(g, 0.0), g, 1)
        with pytest.raises(InvalidParameter):
            lambda1_discrete(GridFunction.constant(g, -1.0), g, 1)
