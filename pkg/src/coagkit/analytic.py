"""Exact solutions of the coagulation equation used as benchmarks.

Constant kernel (K = 1), exponential initial data::

    f(t, x) = (2/(2+t))**2 * exp(-2x/(2+t))

Multiplicative kernel (K = xy), initial data exp(-x)/x::

    f(t, x) = exp(-T(t) x) * I1(2x sqrt(t)) / (x**2 sqrt(t)),
    T(t) = 1 + t for t <= 1, 2 sqrt(t) afterwards.

The multiplicative solution gels at t = 1; past that point mass leaves every
bounded volume window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernel import Kernel, Kind
from .mesh import Grid
from .specfun import DEFAULT_QUAD, QuadratureSpec, bessel_i1e, integrate_intervals

__all__ = [
    "AnalyticSolution",
    "CONSTANT_SOLUTION",
    "MULTIPLICATIVE_SOLUTION",
    "solution_for",
    "gel_time_scale",
    "eval_f",
    "eval_g",
    "element_average_f",
    "element_average_g",
    "element_averages_f",
    "element_averages_g",
]


@dataclass(frozen=True)
class AnalyticSolution:
    kernel_kind: Kind

    def f(self, t, x):
        return eval_f(self, t, x)

    def g(self, t, x):
        return eval_g(self, t, x)

    def initial_f(self):
        """Initial size distribution as a vectorized callable."""
        return lambda x: eval_f(self, 0.0, x)


CONSTANT_SOLUTION = AnalyticSolution(Kind.CONSTANT)
MULTIPLICATIVE_SOLUTION = AnalyticSolution(Kind.MULTIPLICATIVE)


def solution_for(kernel: Kernel) -> AnalyticSolution:
    if kernel.kind is Kind.CONSTANT:
        return CONSTANT_SOLUTION
    if kernel.kind is Kind.MULTIPLICATIVE:
        return MULTIPLICATIVE_SOLUTION
    raise DomainError(f"no analytic solution for kernel {kernel.name!r}")


def gel_time_scale(t: float) -> float:
    """The exponent factor T(t) of the multiplicative solution."""
    return 1.0 + t if t <= 1.0 else 2.0 * math.sqrt(t)


def _check_t(t):
    t = float(t)
    if not (math.isfinite(t) and t >= 0.0):
        raise DomainError(f"time must be finite and >= 0, got {t}")
    return t


def _f_multiplicative(t, x):
    if t == 0.0:
        # 0/0 in the closed form; the t -> 0 limit is exp(-x)/x
        return np.exp(-x) / x
    rt = math.sqrt(t)
    z = 2.0 * x * rt
    # exp(-T x) I1(z) = exp(z - T x) * i1e(z); z - T x <= 0 for every t
    return np.exp(z - gel_time_scale(t) * x) * bessel_i1e(z) / (x * x * rt)


def eval_f(sol: AnalyticSolution, t, x):
    """Number density f(t, x)."""
    t = _check_t(t)
    xa = np.asarray(x, dtype=float)
    if sol.kernel_kind is Kind.CONSTANT:
        if np.any(xa < 0.0):
            raise DomainError("volume must be >= 0")
        c = 2.0 / (2.0 + t)
        out = c * c * np.exp(-c * xa)
    elif sol.kernel_kind is Kind.MULTIPLICATIVE:
        if np.any(xa <= 0.0):
            raise DomainError("the multiplicative solution needs x > 0")
        out = _f_multiplicative(t, xa)
    else:
        raise DomainError(f"no analytic solution for {sol.kernel_kind}")
    return float(out) if np.ndim(out) == 0 else out


def eval_g(sol: AnalyticSolution, t, x):
    """Volume density g(t, x) = x f(t, x)."""
    out = np.asarray(x, dtype=float) * eval_f(sol, t, x)
    return float(out) if np.ndim(out) == 0 else out


def element_averages_f(sol: AnalyticSolution, grid: Grid, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """Mean of f(t, .) over every element of ``grid``."""
    t = _check_t(t)
    if sol.kernel_kind is Kind.CONSTANT:
        c = 2.0 / (2.0 + t)
        # c * int_a^b exp(-c y) dy, written with expm1 to survive small dx
        return -c * np.exp(-c * grid.left) * np.expm1(-c * grid.dx) / grid.dx
    return integrate_intervals(lambda y: eval_f(sol, t, y), grid.boundaries, quad) / grid.dx


def element_averages_g(sol: AnalyticSolution, grid: Grid, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """Mean of g(t, .) = x f(t, .) over every element of ``grid``."""
    t = _check_t(t)
    if sol.kernel_kind is Kind.CONSTANT:
        c = 2.0 / (2.0 + t)
        a, b = grid.left, grid.right
        return ((c * a + 1.0) * np.exp(-c * a) - (c * b + 1.0) * np.exp(-c * b)) / grid.dx
    return integrate_intervals(lambda y: eval_g(sol, t, y), grid.boundaries, quad) / grid.dx


def element_average_f(sol: AnalyticSolution, grid: Grid, i: int, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Mean of f(t, .) over element ``i`` (zero based)."""
    _check_index(grid, i)
    sub = _Element(grid, i)
    return float(element_averages_f(sol, sub, t, quad)[0])


def element_average_g(sol: AnalyticSolution, grid: Grid, i: int, t: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Mean of g(t, .) over element ``i`` (zero based)."""
    _check_index(grid, i)
    sub = _Element(grid, i)
    return float(element_averages_g(sol, sub, t, quad)[0])


def _check_index(grid, i):
    if not 0 <= i < grid.n_elements:
        raise IndexError(f"element {i} out of range for {grid.n_elements} elements")


class _Element:
    # duck-typed one-element grid; avoids re-deriving dx from the endpoints
    def __init__(self, grid, i):
        self.boundaries = grid.boundaries[i:i + 2]
        self.left = self.boundaries[:1]
        self.right = self.boundaries[1:]
        self.dx = grid.dx

