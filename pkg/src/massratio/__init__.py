"""Numerical laboratory for the population/resource mass ratio of the
Dirichlet diffusive logistic equation with spike resources."""
from ._backend import BACKEND
from .bvp import (LogisticProblem, SolveReport, compare_dirichlet_neumann, monotone_iterate,
                  solve_logistic, solve_neumann_reference)
from .eigen import (EigenResult, SpikeProfile, lambda1_ball2, lambda1_discrete,
                    lambda1_variational_bound, lambda_k_interval, sample_spike)
from .errors import (DegenerateResource, InsufficientData, InvalidParameter, IoError,
                     NoPositiveSolution, NumericalFailure)
from .grid import Domain, Grid, GridFunction, integrate_weighted, l1_ratio, make_grid
from .special import bessel_j0, bessel_j1, bessel_zero
from .subsuper import (ConstantsPoint, ExplicitFamily, analytic_sub_l1, build_sub_1d,
                       eval_family_nd, region_contains, region_vertices, residual_1d,
                       residual_nd)
from .sweep import SweepRecord, export, fit_log_slope, sweep_1d, sweep_nd

__version__ = "0.1.0"
