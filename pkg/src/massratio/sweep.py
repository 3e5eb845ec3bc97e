"""Asymptotic eps-sweeps of the Dirichlet mass ratio and their export."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import NamedTuple

import numpy as np

from .bvp import DIRICHLET, NEUMANN, solve_logistic, spike_problem
from .eigen import BALL2_EPS_MAX, lambda1_ball2, lambda1_discrete, lambda_k_interval
from .errors import InsufficientData, InvalidParameter, IoError, MassRatioError
from .grid import Domain, integrate_weighted, l1_ratio, make_grid
from .subsuper import ConstantsPoint, analytic_sub_ratio, build_sub_1d, region_contains

CSV_COLUMNS = ("n", "eps", "d", "lambda1", "ratio", "lower_bound", "upper_bound",
               "grid_N", "wallclock_ms", "status")
OK = "ok"


@dataclass(frozen=True)
class SweepRecord:
    n: int
    eps: float
    d: float
    lambda1: float
    ratio: float
    lower_bound: float
    upper_bound: float
    grid_N: int
    wallclock_ms: float = 0.0
    status: str = OK

    @property
    def ok(self) -> bool:
        return self.status == OK


def grid_size_for(eps: float, grid_N: int) -> int:
    """``max(grid_N, 64 ceil(1/sqrt(eps)))`` rounded up to a multiple of 4."""
    N = max(int(grid_N), 64 * math.ceil(1.0 / math.sqrt(eps)))
    return 4 * math.ceil(N / 4)


def _failed(n, eps, d, N, exc):
    nan = float("nan")
    return SweepRecord(n, eps, d, nan, nan, nan, nan, N, 0.0, f"failed: {exc}")


def _one_1d(eps, grid_N, timing):
    start = time.perf_counter()
    d = math.sqrt(eps)
    N = grid_size_for(eps, grid_N)
    try:
        if not d < 1.0 - eps:
            raise InvalidParameter(f"d = sqrt(eps) = {d:.6g} is not below 1 - eps")
        lam = lambda_k_interval(eps, 1)
        grid = make_grid(Domain.interval(), N, eps)
        dir_problem = spike_problem(eps, d, grid, DIRICHLET)
        u = solve_logistic(dir_problem, grid, lambda1=lam).solution
        v = solve_logistic(spike_problem(eps, d, grid, NEUMANN), grid).solution
        ratio = l1_ratio(u, dir_problem.m, 1)
        half_v = 0.5 * integrate_weighted(v, 1)
        lower = 0.5 * integrate_weighted(build_sub_1d(v, eps), 1)
    except MassRatioError as exc:
        return _failed(1, eps, d, N, exc)
    ms = 1e3 * (time.perf_counter() - start) if timing else 0.0
    return SweepRecord(1, eps, d, lam, ratio, lower, half_v, N, ms)


def _one_nd(n, c1, c2, eps, grid_N, timing):
    start = time.perf_counter()
    d = c1 / eps ** (n - 2)
    N = grid_size_for(eps, grid_N)
    try:
        grid = make_grid(Domain.ball(n), N, eps)
        problem = spike_problem(eps, d, grid, DIRICHLET, n=n)
        if n == 2 and eps <= BALL2_EPS_MAX:
            lam = lambda1_ball2(eps)
        else:
            lam = lambda1_discrete(problem.m, grid, n).lambda1
        u = solve_logistic(problem, grid, lambda1=lam).solution
        ratio = l1_ratio(u, problem.m, n)
    except MassRatioError as exc:
        return _failed(n, eps, d, N, exc)
    ms = 1e3 * (time.perf_counter() - start) if timing else 0.0
    return SweepRecord(n, eps, d, lam, ratio, analytic_sub_ratio(n, eps, c2),
                       eps ** (-n), N, ms)


def _run(func, args_list, workers):
    if workers and workers > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(func, *zip(*args_list)))
    else:
        out = [func(*a) for a in args_list]
    return sorted(out, key=lambda rec: -rec.eps)


def _check_eps(eps_list):
    eps_list = [float(e) for e in eps_list]
    if not all(0.0 < e < 1.0 for e in eps_list):
        raise InvalidParameter("every eps must lie in (0, 1)")
    return eps_list


def sweep_1d(eps_list, grid_N: int = 1024, timing: bool = False, workers: int = 1) -> list:
    """Half-interval sweep with ``d = sqrt(eps)``.

    Per eps: Dirichlet solution ``U``, Neumann reference ``v`` and the
    sub-solution ``(1 - eps^(1/4)) (v - v(1))``.  ``ratio`` is ``int_0^1 U``,
    bracketed by ``int`` of the sub-solution and ``int_0^1 v``.  Wallclock
    times are recorded only when ``timing`` is set, so default output is
    reproducible byte for byte.
    """
    eps_list = _check_eps(eps_list)
    return _run(_one_1d, [(e, grid_N, timing) for e in eps_list], workers)


def sweep_nd(n: int, c1: float, c2: float, eps_list, grid_N: int = 1024,
             timing: bool = False, workers: int = 1) -> list:
    """Ball sweep with ``d = c1 / eps^(n-2)``; lower bound is the sub-solution ratio."""
    if not region_contains(ConstantsPoint(n, c1, c2)):
        raise InvalidParameter(f"({c1}, {c2}) is not in T_{n}")
    eps_list = _check_eps(eps_list)
    return _run(_one_nd, [(n, c1, c2, e, grid_N, timing) for e in eps_list], workers)


class LogFit(NamedTuple):
    slope: float
    intercept: float
    r_squared: float


def fit_log_slope(records) -> LogFit:
    """Least-squares line ``ratio ~ slope |log eps| + intercept`` over successful records."""
    good = [r for r in records if r.ok and math.isfinite(r.ratio)]
    if len(good) < 3:
        raise InsufficientData(f"need at least 3 successful records, got {len(good)}")
    x = np.array([abs(math.log(r.eps)) for r in good])
    y = np.array([r.ratio for r in good])
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return LogFit(float(slope), float(intercept), r2)


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".12g")


def to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in sorted(records, key=lambda r: -r.eps):
        writer.writerow([_fmt(getattr(rec, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def to_json(records) -> str:
    rows = [asdict(r) for r in sorted(records, key=lambda r: -r.eps)]
    for row in rows:
        for k, v in row.items():
            if isinstance(v, float) and not math.isfinite(v):
                row[k] = None
    return json.dumps(rows, indent=2) + "\n"


def from_json(text: str) -> list:
    names = {f.name for f in fields(SweepRecord)}
    out = []
    for row in json.loads(text):
        row = {k: (float("nan") if v is None else v) for k, v in row.items() if k in names}
        out.append(SweepRecord(**row))
    return out


def export(records, format: str, path) -> None:
    """Write records as ``csv`` or ``json``, ordered by descending eps."""
    if format == "csv":
        text = to_csv(records)
    elif format == "json":
        text = to_json(records)
    else:
        raise InvalidParameter(f"unknown export format {format!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
