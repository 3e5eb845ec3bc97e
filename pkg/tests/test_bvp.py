import math

import numpy as np
import pytest

import massratio.bvp as bvp
from massratio import (Domain, ExplicitFamily, GridFunction, InvalidParameter, LogisticProblem,
                       NoPositiveSolution, NumericalFailure, build_sub_1d,
                       compare_dirichlet_neumann, l1_ratio, lambda_k_interval, make_grid,
                       monotone_iterate, solve_logistic, solve_neumann_reference)
from massratio.bvp import DIRICHLET, MONOTONE, NEUMANN, NEWTON, _System, spike_problem

RATIO_EPS_0_1 = 1.21218887  # d = sqrt(0.1), fine-grid solve (N = 32768)


def _dirichlet(eps, d, N=4096, n=1):
    g = make_grid(Domain.for_dimension(n), N, eps)
    p = spike_problem(eps, d, g, DIRICHLET, n=n)
    return g, p, solve_logistic(p, g)


class TestProblem:
    def test_validation(self):
        g = make_grid(Domain.interval(), 64, 0.5)
        one = GridFunction.constant(g, 1.0)
        with pytest.raises(InvalidParameter):
            LogisticProblem(1, 0.0, one)
        with pytest.raises(InvalidParameter):
            LogisticProblem(1, 0.1, one, "robin")
        with pytest.raises(InvalidParameter):
            LogisticProblem(1, 0.1, GridFunction.constant(g, 0.0))
        with pytest.raises(InvalidParameter):
            LogisticProblem(1, 0.1, GridFunction.constant(g, -1.0))


class TestSolveLogistic:
    def test_beyond_bifurcation(self):
        g = make_grid(Domain.interval(), 256, 0.5)
        p = LogisticProblem(1, 0.5, GridFunction.constant(g, 1.0), DIRICHLET)
        with pytest.raises(NoPositiveSolution):
            solve_logistic(p, g)

    @pytest.mark.parametrize("d", [0.01, 0.5, 3.0])
    def test_neumann_constant_resource(self, d):
        g = make_grid(Domain.interval(), 256, 0.5)
        p = LogisticProblem(1, d, GridFunction.constant(g, 1.0), NEUMANN)
        rep = solve_logistic(p, g)
        np.testing.assert_allclose(rep.solution.values, 1.0, rtol=0, atol=1e-12)

    def test_spike_ratio_below_three(self):
        g, p, rep = _dirichlet(0.1, math.sqrt(0.1))
        ratio = l1_ratio(rep.solution, p.m, 1)
        assert ratio < 3
        assert ratio == pytest.approx(RATIO_EPS_0_1, rel=1e-5)
        assert rep.method == NEWTON
        assert rep.lambda1 == pytest.approx(lambda_k_interval(0.1, 1), rel=1e-3)

    @pytest.mark.parametrize("n,eps,d", [(1, 0.1, 0.3), (1, 1e-3, math.sqrt(1e-3)),
                                         (2, 1e-3, 0.05), (3, 1e-2, 3.37)])
    def test_health(self, n, eps, d):
        g, p, rep = _dirichlet(eps, d, N=2048, n=n)
        u = rep.solution.values
        assert rep.final_residual <= 1e-10
        assert u[-1] == 0.0
        assert np.all(u[:-1] > 0)
        assert np.all(u <= p.m.max())
        system = _System(p, g)
        assert system.relative_defect(system.unknowns(rep.solution)) <= 1e-10

    def test_ratio_vanishes_towards_bifurcation(self):
        lam = lambda_k_interval(0.1, 1)
        ratios = []
        for frac in (0.5, 0.99):
            g, p, rep = _dirichlet(0.1, frac / lam, N=1024)
            ratios.append(l1_ratio(rep.solution, p.m, 1))
        assert ratios[1] < ratios[0]

    def test_grid_convergence_order(self):
        eps, d = 0.1, math.sqrt(0.1)
        sols = [_dirichlet(eps, d, N=N)[2].solution.values for N in (512, 1024, 2048)]
        e1 = np.max(np.abs(sols[1][::2] - sols[0]))
        e2 = np.max(np.abs(sols[2][::2] - sols[1]))
        assert math.log2(e1 / e2) >= 1.7

    def test_user_initial_guess(self):
        g = make_grid(Domain.interval(), 1024, 0.1)
        p = spike_problem(0.1, 0.3, g)
        ref = solve_logistic(p, g).solution
        rep = solve_logistic(p, g, initial=GridFunction(g, 1.01 * ref.values))
        np.testing.assert_allclose(rep.solution.values, ref.values, rtol=1e-9, atol=1e-12)
        assert rep.iterations <= 5

    def test_falls_back_to_monotone(self, monkeypatch):
        monkeypatch.setattr(bvp, "_newton", lambda system, u, tol: (None, 300, 1.0))
        g = make_grid(Domain.interval(), 512, 0.1)
        p = spike_problem(0.1, 0.3, g)
        rep = solve_logistic(p, g, lambda1=lambda_k_interval(0.1, 1))
        assert rep.method == MONOTONE
        monkeypatch.undo()
        ref = solve_logistic(p, g).solution
        np.testing.assert_allclose(rep.solution.values, ref.values, rtol=1e-8, atol=1e-10)

    def test_both_methods_fail(self, monkeypatch):
        monkeypatch.setattr(bvp, "_newton", lambda system, u, tol: (None, 300, 1.0))
        g = make_grid(Domain.interval(), 512, 0.1)
        p = spike_problem(0.1, 0.3, g)

        def broken(*args, **kwargs):
            raise NumericalFailure("stuck")

        monkeypatch.setattr(bvp, "monotone_iterate", broken)
        with pytest.raises(NumericalFailure):
            solve_logistic(p, g)


class TestMonotone:
    def test_fixed_point_one_step(self):
        g = make_grid(Domain.interval(), 1024, 0.1)
        p = spike_problem(0.1, 0.3, g)
        u = solve_logistic(p, g, tol=1e-13).solution
        rep = monotone_iterate(p, u, u, g, tol=1e-9)
        assert rep.iterations == 1

    @pytest.mark.parametrize("eps", [1e-3, 1e-4])
    def test_nd_sandwich(self, eps):
        fam = ExplicitFamily(2, eps, 0.05, 0.2)
        g = make_grid(Domain.ball(2), 4096, eps)
        p = spike_problem(eps, fam.d, g, DIRICHLET, n=2)
        lower, upper = fam.sample_sub(g), fam.sample_super(g)
        rep = monotone_iterate(p, lower, upper, g)
        u = rep.solution.values
        top = np.max(u)
        assert np.all(lower.values <= u + 1e-6 * top)
        assert np.all(u <= upper.values + 1e-6 * top)
        newton = solve_logistic(p, g).solution.values
        np.testing.assert_allclose(u, newton, rtol=1e-8, atol=1e-9 * top)

    def test_1d_sandwich_from_neumann_bounds(self):
        eps = 0.01
        g = make_grid(Domain.interval(), 4096, eps)
        v = solve_neumann_reference(eps, g)
        p = spike_problem(eps, math.sqrt(eps), g, DIRICHLET)
        rep = monotone_iterate(p, build_sub_1d(v, eps), v, g)
        u = rep.solution.values
        assert np.all(build_sub_1d(v, eps).values <= u + 1e-12)
        assert np.all(u <= v.values + 1e-12)

    def test_classical_shift_agrees(self):
        g = make_grid(Domain.interval(), 256, 0.5)
        p = spike_problem(0.5, 0.2, g)
        upper = GridFunction.constant(g, p.m.max())
        lower = GridFunction.constant(g, 0.0)
        a = monotone_iterate(p, lower, upper, g, tol=1e-11, shift="classical")
        b = monotone_iterate(p, lower, upper, g, tol=1e-11)
        np.testing.assert_allclose(a.solution.values, b.solution.values, rtol=1e-8, atol=1e-10)
        assert a.iterations > b.iterations

    def test_rejects_unordered_bounds(self):
        g = make_grid(Domain.interval(), 256, 0.5)
        p = spike_problem(0.5, 0.2, g)
        with pytest.raises(InvalidParameter):
            monotone_iterate(p, GridFunction.constant(g, 3.0), GridFunction.constant(g, 2.0), g)
        with pytest.raises(InvalidParameter):
            monotone_iterate(p, GridFunction.constant(g, 0.0), GridFunction.constant(g, 2.0), g,
                             shift="bogus")

    def test_warns_on_bad_sub_solution(self):
        g = make_grid(Domain.interval(), 256, 0.5)
        p = spike_problem(0.5, 0.2, g)
        with pytest.warns(RuntimeWarning):
            with pytest.raises(NumericalFailure):
                monotone_iterate(p, GridFunction.constant(g, 1.9), GridFunction.constant(g, 2.0), g)


class TestNeumannReference:
    def test_decreasing_and_positive(self):
        g = make_grid(Domain.interval(), 4096, 1e-3)
        v = solve_neumann_reference(1e-3, g).values
        assert np.all(np.diff(v) <= 0)
        assert np.all(v > 0)

    def test_mass_grows_with_smaller_eps(self):
        from massratio import integrate_weighted

        masses = []
        for eps in (1e-2, 1e-4):
            g = make_grid(Domain.interval(), 8192, eps)
            masses.append(0.5 * integrate_weighted(solve_neumann_reference(eps, g), 1))
        assert masses[0] < masses[1] < 3

    def test_rejects_eps(self):
        g = make_grid(Domain.interval(), 64, 0.5)
        with pytest.raises(InvalidParameter):
            solve_neumann_reference(1.5, g)


class TestComparison:
    @pytest.mark.parametrize("eps,d", [(0.1, 0.3), (0.01, 0.1)])
    def test_ordering(self, eps, d):
        g = make_grid(Domain.interval(), 4096, eps)
        cmp = compare_dirichlet_neumann(eps, d, g)
        assert cmp.max_violation <= 1e-6 * cmp.u_neu.max()

    def test_precondition(self):
        g = make_grid(Domain.interval(), 256, 0.1)
        with pytest.raises(InvalidParameter):
            compare_dirichlet_neumann(0.1, 0.9, g)
