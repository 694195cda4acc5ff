"""The five studies: validation, self-convergence, moments, cost, x_max sweep.

Every study expands its config into independent cases (scheme, grid), runs
them, optionally on a thread pool, and collects rows in config order.  A
case that fails with a solver error is recorded in a ``<study>_failures``
table and the remaining cases still run.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .. import __version__
from ..analytic import element_averages_f, element_averages_g, solution_for
from ..diagnostics import counted_rhs, estimate_order, grid_error_norm, moments, per_doubling_orders
from ..errors import CoagError
from ..fem import FemOperator
from ..flfm import FluxOperator
from ..kernel import kernel_from_name
from ..mesh import make_uniform_grid, restrict_to_coarse
from ..specfun import QuadratureSpec, integrate_intervals
from ..timestep import IntegratorSpec, Trajectory, integrate_adaptive, integrate_fixed
from .config import ExperimentConfig, format_config
from .results import ResultTable

__all__ = [
    "run_study",
    "run_validation",
    "run_self_convergence",
    "run_moment_study",
    "run_cost_study",
    "run_xmax_sweep",
    "solve",
]


@dataclass(frozen=True)
class _Case:
    scheme: str
    n: int
    x_max: float


def _quad(cfg):
    return QuadratureSpec(rel_tol=cfg.quad_rel_tol, abs_tol=cfg.quad_abs_tol)


def _metadata(cfg):
    return [("coagkit_version", __version__), *format_config(cfg)]


def _table(cfg, name, columns):
    return ResultTable(name, tuple(columns), metadata=_metadata(cfg))


def _map(fn, cases, threads):
    """``fn`` over ``cases``; returns ``(case, result or exception)`` in order."""
    def guarded(case):
        try:
            return case, fn(case)
        except CoagError as exc:
            return case, exc
    if threads > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(guarded, cases))
    return [guarded(c) for c in cases]


def _record_failures(cfg, table, outcomes):
    failed = [(c, r) for c, r in outcomes if isinstance(r, Exception)]
    if failed:
        fails = _table(cfg, f"{table.name}_failures", ("scheme", "kernel", "n", "x_max", "error"))
        for c, exc in failed:
            fails.add(c.scheme, cfg.kernel, c.n, float(c.x_max), f"{type(exc).__name__}: {exc}")
        table.children.append(fails)
    return [(c, r) for c, r in outcomes if not isinstance(r, Exception)]


def solve(cfg: ExperimentConfig, scheme: str, grid, samples, t0=None) -> Trajectory:
    """Integrate one scheme on one grid from analytic data at ``t0``.

    FEM evolves element means of f, FLFM element means of g.
    """
    kernel = kernel_from_name(cfg.kernel)
    sol = solution_for(kernel)
    quad = _quad(cfg)
    t0 = cfg.t_span[0] if t0 is None else t0
    t_end = cfg.t_span[1]
    ispec = IntegratorSpec(rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, sample_times=samples, method=cfg.method)
    if scheme == "fem":
        op = FemOperator(grid, kernel, quad)
        y0 = element_averages_f(sol, grid, t0, quad)
        jac = (lambda t, y: op.jacobian(y)) if cfg.method in ("BDF", "Radau", "LSODA") else None
        return integrate_adaptive(lambda t, y: op.rhs(y), y0, t0, t_end, ispec, jac=jac)
    op = FluxOperator(grid, kernel, path=cfg.flux_path, quad=quad)
    y0 = element_averages_g(sol, grid, t0, quad)
    if cfg.flfm_integrator == "adaptive":
        return integrate_adaptive(lambda t, y: op.rhs(y), y0, t0, t_end, ispec)
    return integrate_fixed(lambda y, dt: op.step(y, dt)[0], y0, t0, t_end, cfg.dt, samples)


def _reference(cfg, scheme, grid, t):
    sol = solution_for(kernel_from_name(cfg.kernel))
    if scheme == "fem":
        return element_averages_f(sol, grid, t, _quad(cfg))
    return element_averages_g(sol, grid, t, _quad(cfg))


def _scheme_ns(cfg, scheme):
    if scheme == "flfm" and cfg.flfm_max_n is not None:
        return [n for n in cfg.n_list if n <= cfg.flfm_max_n]
    return list(cfg.n_list)


def _orders_table(cfg, name, keyed_pairs, extra=()):
    """Fitted and per-doubling orders for each key -> [(n, dx, err), ...]."""
    orders = _table(cfg, name, ("scheme", "kernel", *extra, "kind", "n_from", "n_to", "order"))
    for key, pts in keyed_pairs:
        pts = [p for p in pts if p[2] > 0 and math.isfinite(p[2])]
        if len(pts) < 2:
            continue
        pairs = [(dx, e) for _, dx, e in pts]
        orders.add(*key, "fit", pts[0][0], pts[-1][0], estimate_order(pairs))
        for (a, b), o in zip(zip(pts, pts[1:]), per_doubling_orders(pairs)):
            orders.add(*key, "doubling", a[0], b[0], o)
    return orders


# -- studies --------------------------------------------------------------


def run_validation(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    """Error against the analytic solution at every sample time, per N."""
    samples = cfg.samples()
    table = _table(cfg, "validate", ("scheme", "kernel", "n", "dx", "t", "error_l1"))
    cases = [_Case(s, n, cfg.x_max) for s in cfg.schemes for n in _scheme_ns(cfg, s)]

    def run(case):
        grid = make_uniform_grid(cfg.x_min, case.x_max, case.n)
        traj = solve(cfg, case.scheme, grid, samples)
        errs = [grid_error_norm(traj.at(t), _reference(cfg, case.scheme, grid, t), grid.dx) for t in samples]
        return grid.dx, errs

    done = _record_failures(cfg, table, _map(run, cases, threads))
    final = {}
    for case, (dx, errs) in done:
        for t, e in zip(samples, errs):
            table.add(case.scheme, cfg.kernel, case.n, dx, t, e)
        final.setdefault(case.scheme, []).append((case.n, dx, errs[-1]))
    table.children.append(_orders_table(
        cfg, "validate_orders", [((s, cfg.kernel), pts) for s, pts in final.items()]))
    return table


def run_self_convergence(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    """Error at ``t_end`` against the finest grid, restricted to each coarse grid."""
    t_end = cfg.t_span[1]
    table = _table(cfg, "self_converge", ("scheme", "kernel", "n", "dx", "n_fine", "error_l1"))
    cases = [_Case(s, n, cfg.x_max) for s in cfg.schemes for n in _scheme_ns(cfg, s)]

    def run(case):
        grid = make_uniform_grid(cfg.x_min, case.x_max, case.n)
        return grid, solve(cfg, case.scheme, grid, (t_end,)).at(t_end)

    done = _record_failures(cfg, table, _map(run, cases, threads))
    by_scheme = {}
    for case, res in done:
        by_scheme.setdefault(case.scheme, []).append((case.n, *res))
    curves = []
    for scheme, runs in by_scheme.items():
        n_fine, g_fine, y_fine = runs[-1]
        pts = []
        for n, grid, y in runs[:-1]:
            e = grid_error_norm(y, restrict_to_coarse(y_fine, g_fine, grid), grid.dx)
            table.add(scheme, cfg.kernel, n, grid.dx, n_fine, e)
            pts.append((n, grid.dx, e))
        curves.append(((scheme, cfg.kernel), pts))
    table.children.append(_orders_table(cfg, "self_converge_orders", curves))
    return table


def _reference_moments(cfg):
    sol = solution_for(kernel_from_name(cfg.kernel))
    f0 = sol.initial_f()
    edges = np.array([cfg.x_min, cfg.x_max])
    quad = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14, max_subdivisions=100000)
    m0 = float(integrate_intervals(f0, edges, quad)[0])
    m1 = float(integrate_intervals(lambda x: x * f0(x), edges, quad)[0])
    return m0, m1


def run_moment_study(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    """Moment histories from ``t_span[0]``, the initial-moment table and the
    convergence of moment differences against the finest grid."""
    samples = cfg.samples()
    if samples[0] > cfg.t_span[0]:
        samples = (float(cfg.t_span[0]), *samples)
    t0, t_end = cfg.t_span
    table = _table(cfg, "moments", ("scheme", "kernel", "n", "t", "m0", "m1"))
    cases = [_Case(s, n, cfg.x_max) for s in cfg.schemes for n in _scheme_ns(cfg, s)]

    def run(case):
        grid = make_uniform_grid(cfg.x_min, case.x_max, case.n)
        traj = solve(cfg, case.scheme, grid, samples)
        return grid, [moments(case.scheme, traj.at(t), grid) for t in samples]

    done = _record_failures(cfg, table, _map(run, cases, threads))
    ref0, ref1 = _reference_moments(cfg)
    initial = _table(cfg, "moments_initial",
                     ("scheme", "kernel", "n", "t", "m0", "m0_ref", "m0_rel_diff", "m1", "m1_ref", "m1_rel_diff"))
    diffs = _table(cfg, "moments_diff", ("scheme", "kernel", "moment", "n", "dx", "n_fine", "t", "diff"))
    by_scheme = {}
    for case, (grid, ms) in done:
        for t, (m0, m1) in zip(samples, ms):
            table.add(case.scheme, cfg.kernel, case.n, t, m0, m1)
        m0, m1 = ms[0]
        initial.add(case.scheme, cfg.kernel, case.n, float(t0), m0, ref0, (m0 - ref0) / ref0,
                    m1, ref1, (m1 - ref1) / ref1)
        by_scheme.setdefault(case.scheme, []).append((case.n, grid.dx, ms[-1]))
    curves = []
    for scheme, runs in by_scheme.items():
        n_fine, _, fine = runs[-1]
        for k, name in enumerate(("m0", "m1")):
            pts = []
            for n, dx, ms in runs[:-1]:
                d = abs(ms[k] - fine[k])
                diffs.add(scheme, cfg.kernel, name, n, dx, n_fine, float(t_end), d)
                pts.append((n, dx, d))
            curves.append(((scheme, cfg.kernel, name), pts))
    table.children += [initial, diffs, _orders_table(cfg, "moments_orders", curves, extra=("moment",))]
    return table


def run_cost_study(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    """Counted floating point work of one right-hand side (FEM) or flux
    evaluation (FLFM) per N, on the analytic data at ``t_span[0]``."""
    table = _table(cfg, "cost", ("scheme", "kernel", "n", "adds", "muls", "divs", "special", "total"))
    cases = [_Case(s, n, cfg.x_max) for s in cfg.schemes for n in _scheme_ns(cfg, s)]
    kernel = kernel_from_name(cfg.kernel)

    def run(case):
        grid = make_uniform_grid(cfg.x_min, case.x_max, case.n)
        y = _reference(cfg, case.scheme, grid, cfg.t_span[0])
        return counted_rhs(case.scheme, y, grid, kernel, flux_path=cfg.flux_path)[1]

    done = _record_failures(cfg, table, _map(run, cases, threads))
    ratios = _table(cfg, "cost_ratios", ("scheme", "kernel", "n_from", "n_to", "ratio"))
    totals = {}
    for case, c in done:
        table.add(case.scheme, cfg.kernel, case.n, c.adds, c.muls, c.divs, c.special, c.total)
        totals.setdefault(case.scheme, []).append((case.n, c.total))
    for scheme, pts in totals.items():
        for (na, a), (nb, b) in zip(pts, pts[1:]):
            ratios.add(scheme, cfg.kernel, na, nb, b / a)
    if "fem" in totals and "flfm" in totals:
        fem, flfm = dict(totals["fem"]), dict(totals["flfm"])
        for n in sorted(set(fem) & set(flfm)):
            ratios.add("flfm/fem", cfg.kernel, n, n, flfm[n] / fem[n])
    table.children.append(ratios)
    return table


def run_xmax_sweep(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    """Error at ``t_end`` against the analytic solution over an (x_max, dx) grid.

    The number of boundaries for target spacing ``dx`` is
    ``round((x_max - x_min) / dx) + 1``.
    """
    t_end = cfg.t_span[1]
    table = _table(cfg, "xmax_sweep", ("scheme", "kernel", "x_max", "n", "dx", "error_l1"))
    cases = [
        _Case(s, int(round((xm - cfg.x_min) / dx)) + 1, xm)
        for s in cfg.schemes for xm in cfg.x_max_list for dx in cfg.dx_list
    ]

    def run(case):
        grid = make_uniform_grid(cfg.x_min, case.x_max, case.n)
        y = solve(cfg, case.scheme, grid, (t_end,)).at(t_end)
        return grid.dx, grid_error_norm(y, _reference(cfg, case.scheme, grid, t_end), grid.dx)

    for case, (dx, e) in _record_failures(cfg, table, _map(run, cases, threads)):
        table.add(case.scheme, cfg.kernel, float(case.x_max), case.n, dx, e)
    return table


_RUNNERS = {
    "validate": run_validation,
    "self_converge": run_self_convergence,
    "moments": run_moment_study,
    "cost": run_cost_study,
    "xmax_sweep": run_xmax_sweep,
}


def run_study(cfg: ExperimentConfig, threads: int = 1) -> ResultTable:
    return _RUNNERS[cfg.study](cfg, threads=threads)
