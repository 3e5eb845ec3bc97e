"""Command-line interface: ``massratio <subcommand> ...``.

Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 a PASS/FAIL
check failed.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import _backend
from .bvp import ADMISSIBLE_MARGIN, DIRICHLET, NEUMANN, solve_logistic, solve_neumann_reference, spike_problem
from .eigen import (BALL2_EPS_MAX, SpikeProfile, lambda1_ball2, lambda1_discrete,
                    lambda1_variational_bound, lambda_k_interval, sample_spike)
from .errors import InvalidParameter, IoError, NumericalFailure
from .grid import Domain, integrate_weighted, l1_ratio, make_grid
from .plot import line_chart
from .special import selftest
from .subsuper import (ConstantsPoint, ExplicitFamily, analytic_sub_ratio, build_sub_1d,
                       conditions, region_contains, region_vertices, residual_1d,
                       residual_nd)
from .sweep import export, fit_log_slope, sweep_1d, sweep_nd

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_CHECK = 0, 1, 2, 3
SANDWICH_RTOL = 1e-6
SWEEP_SANDWICH_RTOL = 1e-3
ND_LOWER_SLACK = 1e-2
RESIDUAL_FLOOR = 1e-12  # roundoff floor for relative defects
SLOPE_FACTOR = 0.95


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def g12(x) -> str:
    return format(float(x), ".12g")


class _Checks:
    def __init__(self, out):
        self.out = out
        self.failed = False

    def __call__(self, name, passed, detail=""):
        self.failed |= not passed
        tail = f"  ({detail})" if detail else ""
        print(f"{'PASS' if passed else 'FAIL'}  {name}{tail}", file=self.out)


def _eps(text):
    value = float(text)
    if not (0.0 < value < 1.0):
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1), got {text}")
    return value


def _pos_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _point(text):
    try:
        c1, c2 = (float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected c1,c2 got {text!r}") from None
    return c1, c2


def _decades(text):
    try:
        a, b = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"need 1 <= a <= b, got {text!r}")
    return a, b


def expand_decades(a: int, b: int, per_decade: int = 1) -> list:
    """``10^-a, ..., 10^-b`` with ``per_decade`` points per decade."""
    steps = (b - a) * per_decade
    return [10.0 ** -(a + j / per_decade) for j in range(steps + 1)]


def build_parser():
    p = _Parser(prog="massratio", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eig", help="principal eigenvalue of the spike resource")
    e.add_argument("--n", type=_pos_int, required=True)
    e.add_argument("--eps", type=_eps, required=True)
    e.add_argument("--method", choices=("trans", "bessel", "discrete", "all"), default="all")
    e.add_argument("--grid-N", type=_pos_int, default=4096)

    s = sub.add_parser("solve", help="solve the logistic problem for the spike resource")
    s.add_argument("--n", type=_pos_int, required=True)
    s.add_argument("--eps", type=_eps, required=True)
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--bc", choices=(DIRICHLET, NEUMANN), default=DIRICHLET)
    s.add_argument("--grid-N", type=_pos_int, default=4096)
    s.add_argument("--out", help="write r,u,m columns as CSV")

    v = sub.add_parser("verify", help="check the sub/super-solution inequalities")
    v.add_argument("--n", type=_pos_int, required=True)
    v.add_argument("--eps", type=_eps, required=True)
    v.add_argument("--c1", type=float, default=0.05)
    v.add_argument("--c2", type=float, default=0.2)
    v.add_argument("--grid-N", type=_pos_int, default=8192)

    r = sub.add_parser("region", help="vertices of T_n and membership of a point")
    r.add_argument("--n", type=_pos_int, required=True)
    r.add_argument("--point", type=_point)

    w = sub.add_parser("sweep", help="eps-sweep of the Dirichlet mass ratio")
    w.add_argument("--mode", choices=("1d", "nd"), required=True)
    w.add_argument("--eps-decades", type=_decades, required=True)
    w.add_argument("--per-decade", type=_pos_int, default=1)
    w.add_argument("--n", type=_pos_int, default=2)
    w.add_argument("--c1", type=float, default=0.05)
    w.add_argument("--c2", type=float, default=0.2)
    w.add_argument("--grid-N", type=_pos_int, default=1024)
    w.add_argument("--out", required=True)
    w.add_argument("--format", choices=("csv", "json"), default=None)
    w.add_argument("--plot", help="write an SVG chart of ratio vs |log eps|")
    w.add_argument("--workers", type=_pos_int, default=1)
    w.add_argument("--timing", action="store_true", help="record wallclock_ms (not reproducible)")

    sub.add_parser("bessel-selftest", help="J0/J1 and zeros against the extended-precision series")
    return p


def cmd_eig(args, out):
    n, eps = args.n, args.eps
    methods = ("trans", "bessel", "discrete") if args.method == "all" else (args.method,)
    values = {}
    for method in methods:
        if method == "trans":
            if n != 1:
                if args.method == "all":
                    continue
                raise InvalidParameter("the transcendental route needs --n 1")
            values["trans"] = lambda_k_interval(eps, 1)
        elif method == "bessel":
            if n != 2 or eps > BALL2_EPS_MAX:
                if args.method == "all":
                    continue
                raise InvalidParameter("the Bessel route needs --n 2 and eps <= e^-2")
            values["bessel"] = lambda1_ball2(eps)
        else:
            grid = make_grid(Domain.for_dimension(n), args.grid_N, eps)
            m = sample_spike(SpikeProfile(n, eps), grid)
            values["discrete"] = lambda1_discrete(m, grid, n).lambda1
    for name, lam in values.items():
        print(f"{name:<9} lambda1 = {g12(lam)}", file=out)
    if n >= 2:
        print(f"{'bound':<9} lambda1 <= {g12(lambda1_variational_bound(n, eps))}", file=out)
    if "discrete" in values:
        ref = values["discrete"]
        for name, lam in values.items():
            if name != "discrete":
                print(f"delta({name}, discrete) = {g12(abs(lam - ref) / abs(ref))}", file=out)
    return EXIT_OK


def cmd_solve(args, out):
    grid = make_grid(Domain.for_dimension(args.n), args.grid_N, args.eps)
    problem = spike_problem(args.eps, args.d, grid, args.bc, n=args.n)
    report = solve_logistic(problem, grid)
    u = report.solution
    print(f"ratio = {g12(l1_ratio(u, problem.m, args.n))}", file=out)
    print(f"max_u = {g12(u.max())}", file=out)
    print(f"iterations = {report.iterations}", file=out)
    print(f"method = {report.method}", file=out)
    print(f"final_residual = {g12(report.final_residual)}", file=out)
    if args.out:
        rows = ["r,u,m"] + [f"{g12(r)},{g12(a)},{g12(b)}"
                            for r, a, b in zip(grid.nodes, u.values, problem.m.values)]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")
    return EXIT_OK


def _verify_1d(args, check):
    eps = args.eps
    grid = make_grid(Domain.interval(), args.grid_N, eps)
    v = solve_neumann_reference(eps, grid)
    lower = build_sub_1d(v, eps)
    res = residual_1d(lower, eps, grid, relative=True)
    check("1D sub-solution residual >= 0", res >= -RESIDUAL_FLOOR, f"min relative defect {g12(res)}")
    problem = spike_problem(eps, math.sqrt(eps), grid, DIRICHLET)
    lam = lambda_k_interval(eps, 1)
    admissible = problem.d * lam <= ADMISSIBLE_MARGIN
    check("d * lambda1 < 1", admissible, f"d * lambda1 = {g12(problem.d * lam)}")
    if not admissible:
        return
    u = solve_logistic(problem, grid, lambda1=lam).solution
    top = u.max()
    check("sub <= u nodewise", bool(np.all(lower.values <= u.values + SANDWICH_RTOL * top)))
    check("u <= v nodewise", bool(np.all(u.values <= v.values + SANDWICH_RTOL * top)))
    lo = 0.5 * integrate_weighted(lower, 1)
    mid = 0.5 * integrate_weighted(u, 1)
    hi = 0.5 * integrate_weighted(v, 1)
    check("integral sandwich", lo <= mid * (1 + SWEEP_SANDWICH_RTOL) and mid <= hi * (1 + SWEEP_SANDWICH_RTOL),
          f"{g12(lo)} <= {g12(mid)} <= {g12(hi)}")
    check("ratio < 3", mid < 3.0, f"ratio {g12(mid)}")


def _verify_nd(args, check):
    n, eps, c1, c2 = args.n, args.eps, args.c1, args.c2
    point = ConstantsPoint(n, c1, c2)
    inside = region_contains(point)
    check(f"(c1, c2) in T_{n}", inside,
          ", ".join(f"{k}={'ok' if ok else 'violated'}" for k, ok in conditions(point).items()))
    fam = ExplicitFamily(n, eps, c1, c2)
    grid = make_grid(Domain.ball(n), args.grid_N, eps)
    rep = residual_nd(fam, grid)
    check("sub-solution residual >= 0", rep.min_sub_residual >= 0.0, g12(rep.min_sub_residual))
    check("super-solution residual <= 0", rep.max_super_residual <= 0.0, g12(rep.max_super_residual))
    jump_v, jump_d = fam.interface_mismatch()
    scale = abs(fam.sub_inner(eps)[1])
    check("C1 matching at r = eps", abs(jump_v) <= 1e-12 * fam.super_value and abs(jump_d) <= 1e-12 * scale,
          f"value jump {g12(jump_v)}, slope jump {g12(jump_d)}")
    if not inside:
        return
    problem = spike_problem(eps, fam.d, grid, DIRICHLET, n=n)
    u = solve_logistic(problem, grid).solution
    sub = fam.sample_sub(grid)
    top = u.max()
    check("sub <= u nodewise", bool(np.all(sub.values <= u.values + SANDWICH_RTOL * top)))
    check("u <= super nodewise", bool(np.all(u.values <= fam.super_value + SANDWICH_RTOL * top)))
    ratio = l1_ratio(u, problem.m, n)
    bound = analytic_sub_ratio(n, eps, c2)
    check("ratio >= analytic lower bound", ratio >= bound, f"{g12(ratio)} >= {g12(bound)}")


def cmd_verify(args, out):
    check = _Checks(out)
    if args.n == 1:
        _verify_1d(args, check)
    else:
        _verify_nd(args, check)
    return EXIT_CHECK if check.failed else EXIT_OK


def cmd_region(args, out):
    n = args.n
    verts = region_vertices(n)
    shape = "triangle" if len(verts) == 3 else "quadrilateral"
    print(f"T_{n} is a {shape} with vertices:", file=out)
    for c1, c2 in verts:
        print(f"  ({g12(c1)}, {g12(c2)})", file=out)
    if args.point is not None:
        c1, c2 = args.point
        point = ConstantsPoint(n, c1, c2)
        where = "inside" if region_contains(point) else "outside"
        print(f"({g12(c1)}, {g12(c2)}) is {where} T_{n}", file=out)
        for name, ok in conditions(point).items():
            print(f"  {name}: {'satisfied' if ok else 'violated'}", file=out)
    return EXIT_OK


def cmd_sweep(args, out):
    a, b = args.eps_decades
    eps_list = expand_decades(a, b, args.per_decade)
    check = _Checks(out)
    if args.mode == "1d":
        records = sweep_1d(eps_list, args.grid_N, timing=args.timing, workers=args.workers)
    else:
        records = sweep_nd(args.n, args.c1, args.c2, eps_list, args.grid_N,
                           timing=args.timing, workers=args.workers)
    fmt = args.format or ("json" if args.out.endswith(".json") else "csv")
    export(records, fmt, args.out)
    for rec in records:
        print(f"eps={g12(rec.eps)} ratio={g12(rec.ratio)} lower={g12(rec.lower_bound)} "
              f"upper={g12(rec.upper_bound)} status={rec.status}", file=out)
    good = [r for r in records if r.ok]
    if args.mode == "1d":
        check("every ratio < 3", all(r.ratio < 3.0 for r in good))
        check("sandwich lower <= ratio <= upper",
              all(r.lower_bound <= r.ratio * (1 + SWEEP_SANDWICH_RTOL)
                  and r.ratio <= r.upper_bound * (1 + SWEEP_SANDWICH_RTOL) for r in good))
    else:
        check("every ratio >= lower bound - 1e-2",
              all(r.ratio >= r.lower_bound - ND_LOWER_SLACK for r in good))
        if len(good) >= 3:
            fit = fit_log_slope(good)
            target = args.c2 * args.n / math.e
            check("fitted slope >= 0.95 c2 n/e", fit.slope >= SLOPE_FACTOR * target,
                  f"slope {g12(fit.slope)}, c2 n/e = {g12(target)}, r^2 {g12(fit.r_squared)}")
    check("ratio increases as eps decreases",
          all(a.ratio < b.ratio for a, b in zip(good, good[1:])))
    check("d * lambda1 < 1", all(r.d * r.lambda1 < 1.0 for r in good))
    if args.plot:
        xs = [abs(math.log(r.eps)) for r in good]
        series = [("computed ratio", xs, [r.ratio for r in good])]
        if args.mode == "nd":
            series.append(("analytic lower bound", xs, [r.lower_bound for r in good]))
        else:
            series.append(("sub-solution bound", xs, [r.lower_bound for r in good]))
            series.append(("Neumann bound", xs, [r.upper_bound for r in good]))
        with open(args.plot, "w", encoding="utf-8") as fh:
            fh.write(line_chart(series, title=f"mass ratio, {args.mode} sweep",
                                xlabel="|log eps|", ylabel="||u||_1 / ||m||_1"))
    if len(good) < len(records):
        print(f"{len(records) - len(good)} record(s) failed", file=out)
        return EXIT_NUMERIC
    return EXIT_CHECK if check.failed else EXIT_OK


def cmd_bessel_selftest(args, out):
    res = selftest()
    check = _Checks(out)
    print(f"backend = {res['backend']}", file=out)
    check("J0 max error <= 1e-10 on [0, 50]", res["j0_max_error"] <= 1e-10, g12(res["j0_max_error"]))
    check("J1 max error <= 1e-10 on [0, 50]", res["j1_max_error"] <= 1e-10, g12(res["j1_max_error"]))
    check("first zeros within 1e-9", res["zero_max_error"] <= 1e-9, g12(res["zero_max_error"]))
    return EXIT_CHECK if check.failed else EXIT_OK


COMMANDS = {
    "eig": cmd_eig,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "region": cmd_region,
    "sweep": cmd_sweep,
    "bessel-selftest": cmd_bessel_selftest,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (NumericalFailure, IoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # InvalidParameter, NoPositiveSolution, DegenerateResource, InsufficientData
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

def main(argv=None):
    sys.exit(run(argv))
