"""Uniform grids on a truncated aggregate-volume domain.

Boundaries are numbered ``x[0] .. x[n-1]`` (zero based); element ``i`` spans
``[x[i], x[i+1])`` so a grid with ``n`` boundaries has ``n - 1`` elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IncompatibleGridError, InvalidDomainError, TooFewElementsError

__all__ = ["Grid", "make_uniform_grid", "restrict_to_coarse"]


@dataclass(frozen=True)
class Grid:
    """Uniform partition of ``[x_min, x_max]``.

    Use :func:`make_uniform_grid` rather than the constructor.
    """

    x_min: float
    x_max: float
    n_boundaries: int
    boundaries: np.ndarray = field(repr=False, compare=False)
    dx: float = field(repr=False, compare=False)

    @property
    def n_elements(self) -> int:
        return self.n_boundaries - 1

    @property
    def left(self) -> np.ndarray:
        """Left boundary of every element."""
        return self.boundaries[:-1]

    @property
    def right(self) -> np.ndarray:
        """Right boundary of every element."""
        return self.boundaries[1:]

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.boundaries[:-1] + self.boundaries[1:])

    def __len__(self) -> int:
        return self.n_elements


def make_uniform_grid(x_min: float, x_max: float, n_boundaries: int) -> Grid:
    """Build a uniform grid with ``n_boundaries`` boundaries on ``[x_min, x_max]``.

    Parameters
    ----------
    x_min, x_max : float
        Volume bounds, ``0 <= x_min < x_max``.
    n_boundaries : int
        Number of element boundaries (``N``); at least 3.

    Returns
    -------
    Grid
        Boundaries ``x_min + i*dx`` with ``dx = (x_max - x_min)/(N - 1)``.
    """
    x_min = float(x_min)
    x_max = float(x_max)
    if not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise InvalidDomainError(f"non-finite domain [{x_min}, {x_max}]")
    if x_min < 0.0 or not x_max > x_min:
        raise InvalidDomainError(f"need 0 <= x_min < x_max, got [{x_min}, {x_max}]")
    if int(n_boundaries) != n_boundaries:
        raise TooFewElementsError(f"n_boundaries must be an integer, got {n_boundaries!r}")
    n_boundaries = int(n_boundaries)
    if n_boundaries < 3:
        raise TooFewElementsError(f"need at least 3 boundaries, got {n_boundaries}")

    dx = (x_max - x_min) / (n_boundaries - 1)
    # x_min + i*dx, not a running sum: no drift over thousands of elements
    boundaries = x_min + np.arange(n_boundaries, dtype=float) * dx
    boundaries[-1] = x_max
    boundaries.flags.writeable = False
    return Grid(x_min, x_max, n_boundaries, boundaries, dx)


def restrict_to_coarse(fine_values, fine: Grid, coarse: Grid) -> np.ndarray:
    """Average per-element values from ``fine`` onto the nested ``coarse`` grid.

    Each coarse value is the arithmetic mean of the fine elements it contains,
    which preserves the discrete integral ``dx * sum(values)``.
    """
    fine_values = np.asarray(fine_values, dtype=float)
    if fine_values.shape != (fine.n_elements,):
        raise IncompatibleGridError(
            f"expected {fine.n_elements} fine values, got shape {fine_values.shape}"
        )
    if fine.x_min != coarse.x_min or fine.x_max != coarse.x_max:
        raise IncompatibleGridError("grids do not cover the same domain")
    ratio, rem = divmod(fine.n_elements, coarse.n_elements)
    if rem or ratio < 1:
        raise IncompatibleGridError(
            f"{fine.n_elements} fine elements do not nest into {coarse.n_elements}"
        )
    return fine_values.reshape(coarse.n_elements, ratio).mean(axis=1)
