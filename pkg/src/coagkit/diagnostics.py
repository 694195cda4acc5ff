"""Moments, error norms, convergence orders and operation counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .fem import FemOperator
from .flfm import FluxOperator
from .kernel import Kernel
from .mesh import Grid
from .opcount import OpCount, OpCounter

__all__ = [
    "MomentSeries",
    "ErrorSeries",
    "partial_moment",
    "moments",
    "grid_error_norm",
    "estimate_order",
    "per_doubling_orders",
    "counted_rhs",
    "OpCount",
]

FEM = "fem"
FLFM = "flfm"


@dataclass
class MomentSeries:
    times: list = field(default_factory=list)
    m0: list = field(default_factory=list)
    m1: list = field(default_factory=list)

    def append(self, t, m0, m1):
        self.times.append(float(t))
        self.m0.append(float(m0))
        self.m1.append(float(m1))


@dataclass
class ErrorSeries:
    times: list = field(default_factory=list)
    values: list = field(default_factory=list)

    def append(self, t, value):
        if not (np.isfinite(value) and value >= 0):
            raise DomainError(f"error norm must be finite and >= 0, got {value}")
        self.times.append(float(t))
        self.values.append(float(value))


def _left_to_right(terms) -> float:
    # cumsum accumulates sequentially; np.sum would use pairwise summation
    terms = np.asarray(terms, dtype=float)
    return float(np.cumsum(terms)[-1]) if terms.size else 0.0


def partial_moment(order: int, scheme: str, values, grid: Grid) -> float:
    """Zeroth or first moment of a discrete state over the whole grid.

    ``scheme`` says what ``values`` hold: ``"fem"`` for element means of f,
    ``"flfm"`` for element means of g = x f.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n_elements,):
        raise ValueError(f"expected {grid.n_elements} values, got shape {values.shape}")
    x = grid.boundaries
    if scheme == FEM:
        if order == 0:
            return grid.dx * _left_to_right(values)
        if order == 1:
            return 0.5 * _left_to_right(values * (x[1:] ** 2 - x[:-1] ** 2))
    elif scheme == FLFM:
        if order == 0:
            if x[0] <= 0.0:
                raise DomainError("the discrete zeroth moment of g needs x_min > 0 (log singularity)")
            return _left_to_right(values * np.log(x[1:] / x[:-1]))
        if order == 1:
            return grid.dx * _left_to_right(values)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    raise ValueError(f"only moments of order 0 and 1 are defined, got {order}")


def moments(scheme: str, values, grid: Grid) -> tuple[float, float]:
    return partial_moment(0, scheme, values, grid), partial_moment(1, scheme, values, grid)


def grid_error_norm(approx, reference, dx: float) -> float:
    """Discrete L1 norm ``dx * sum |approx - reference|``."""
    approx = np.asarray(approx, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if approx.shape != reference.shape:
        raise ValueError(f"length mismatch: {approx.shape} vs {reference.shape}")
    return float(dx * np.abs(approx - reference).sum())


def estimate_order(pairs: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(error) against log(dx)."""
    pairs = list(pairs)
    if len(pairs) < 2:
        raise ValueError("need at least two (dx, error) pairs")
    dx = np.array([p[0] for p in pairs], dtype=float)
    err = np.array([p[1] for p in pairs], dtype=float)
    if np.any(dx <= 0) or np.any(err <= 0) or not np.all(np.isfinite(err)):
        raise DomainError("dx and error must be positive and finite")
    slope, _ = np.polyfit(np.log(dx), np.log(err), 1)
    return float(slope)


def per_doubling_orders(pairs: Sequence[tuple[float, float]]) -> list[float]:
    """Order between each consecutive pair, in the given order."""
    return [estimate_order([a, b]) for a, b in zip(pairs, pairs[1:])]


def counted_rhs(scheme: str, values, grid: Grid, kernel: Kernel, flux_path: str = "naive"):
    """Right-hand side (FEM) or flux vector (FLFM) together with its op count.

    Setup work (kernel weights) is counted along with the assembly; the
    result is bit-identical to the uncounted path of the same operator.
    """
    counter = OpCounter()
    values = np.asarray(values, dtype=float)
    if scheme == FEM:
        op = FemOperator(grid, kernel, counter=counter)
        out = op.rhs(values, counter)
    elif scheme == FLFM:
        op = FluxOperator(grid, kernel, path=flux_path)
        out = op.flux(values, counter)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return out, counter.snapshot()

