"""Piecewise-constant finite element (DG0) semi-discretization.

The state is the vector of element averages ``f[i]`` of the number density.
Aggregates in element ``i`` are treated as having the volume of its right
boundary when they aggregate out, and element indices pair up as a discrete
convolution when aggregating in::

    out[i] = -f[i] * sum_j W[i, j] f[j],  W[i, j] = int_{x_j}^{x_{j+1}} K(x_{i+1}, y) dy
    in[i]  = 1/2 * sum_{j < i} C[i, j] f[j] f[i-1-j],
             C[i, j] = int_{x_j}^{x_{j+1}} K(y, x_i - y) dy

(zero-based element indices, ``x_i`` the left boundary of element ``i``).
Closed forms exist for the constant and multiplicative kernels; other
kernels go through quadrature.

The index pairing is exact when ``x_min = 0`` and approximate otherwise.
Positivity is not preserved by the scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import Kernel, Kind
from .mesh import Grid
from .opcount import OpCounter
from .specfun import DEFAULT_QUAD, QuadratureSpec, integrate_intervals

__all__ = [
    "SizeDistribution",
    "FemOperator",
    "project_initial",
    "aggregation_out",
    "aggregation_in",
    "fem_rhs",
]


@dataclass
class SizeDistribution:
    """Element averages of the number density on ``grid``."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_elements,):
            raise ValueError(
                f"expected {self.grid.n_elements} values, got shape {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("size distribution has non-finite entries")


def project_initial(f0, grid: Grid, quad: QuadratureSpec = DEFAULT_QUAD) -> SizeDistribution:
    """L2 projection of ``f0`` onto piecewise constants: element means."""
    means = integrate_intervals(f0, grid.boundaries, quad) / grid.dx
    return SizeDistribution(means, grid)


def _conv_head(a, b, n, counter):
    # first n entries of the full linear convolution
    c = np.convolve(a, b)[:n]
    if counter is not None:
        # entry k of the full convolution sums k+1 products
        k = np.minimum(np.arange(n), len(a) - 1) + 1
        counter.mul(int(k.sum()))
        counter.add(int((k - 1).sum()))
    return c


class FemOperator:
    """Right-hand side of the FEM ODE system for a fixed grid and kernel.

    Parameters
    ----------
    grid : Grid
    kernel : Kernel
    quad : QuadratureSpec
        Used only for kernels without a closed form.
    force_quadrature : bool
        Use the quadrature path even for the constant and multiplicative
        kernels (cross-checking).
    """

    def __init__(self, grid: Grid, kernel: Kernel, quad: QuadratureSpec = DEFAULT_QUAD,
                 force_quadrature: bool = False, counter: OpCounter | None = None):
        self.grid = grid
        self.kernel = kernel
        self.closed_form = kernel.has_closed_form and not force_quadrature
        x = grid.boundaries
        n = grid.n_elements
        if self.closed_form and kernel.kind is Kind.MULTIPLICATIVE:
            left, right = x[:-1], x[1:]
            l2, r2 = left * left, right * right
            # A_j = (r^2 - l^2)/2, B_j = (r^3 - l^3)/3
            self._a = 0.5 * (r2 - l2)
            self._b = (r2 * right - l2 * left) / 3.0
            if counter is not None:
                counter.mul(6 * n)
                counter.add(2 * n)
                counter.div(n)
        elif not self.closed_form:
            self._w_out = np.empty((n, n))
            self._c_in = np.zeros((n, n))
            k = kernel.raw
            for i in range(n):
                xr = x[i + 1]
                self._w_out[i] = integrate_intervals(lambda y: k(xr, y), x, quad)
                if i > 0:
                    xl = x[i]
                    self._c_in[i, :i] = integrate_intervals(lambda y: k(y, xl - y), x[: i + 1], quad)

    def aggregation_out(self, f, counter: OpCounter | None = None) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        n = f.size
        if self.closed_form and self.kernel.kind is Kind.CONSTANT:
            s = f.sum()
            out = -f * (self.grid.dx * s)
            if counter is not None:
                counter.sum(n)
                counter.mul(1 + n)
            return out
        if self.closed_form:
            # -(f_i x_{i+1}/2) sum_j (x_{j+1}^2 - x_j^2) f_j
            s = self._a @ f
            out = -(f * self.grid.right) * s
            if counter is not None:
                counter.mul(n)
                counter.sum(n)
                counter.mul(2 * n)
            return out
        out = -f * (self._w_out @ f)
        if counter is not None:
            counter.mul(n * n + n)
            counter.add(n * (n - 1))
        return out

    def aggregation_in(self, f, counter: OpCounter | None = None) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        n = f.size
        out = np.zeros(n)
        if n < 2:
            return out
        if self.closed_form and self.kernel.kind is Kind.CONSTANT:
            c = _conv_head(f, f, n - 1, counter)
            out[1:] = (0.5 * self.grid.dx) * c
            if counter is not None:
                counter.mul(n)
            return out
        if self.closed_form:
            ca = _conv_head(self._a * f, f, n - 1, counter)
            cb = _conv_head(self._b * f, f, n - 1, counter)
            out[1:] = 0.5 * (self.grid.left[1:] * ca - cb)
            if counter is not None:
                counter.mul(2 * n)
                counter.mul(2 * (n - 1))
                counter.add(n - 1)
            return out
        for i in range(1, n):
            out[i] = 0.5 * np.dot(self._c_in[i, :i] * f[:i], f[i - 1::-1])
        if counter is not None:
            pairs = n * (n - 1) // 2
            counter.mul(2 * pairs + (n - 1))
            counter.add(pairs - (n - 1))
        return out

    def rhs(self, f, counter: OpCounter | None = None) -> np.ndarray:
        out = self.aggregation_in(f, counter) + self.aggregation_out(f, counter)
        if counter is not None:
            counter.add(len(out))
        return out

    __call__ = rhs

    def jacobian(self, f) -> np.ndarray:
        """Dense Jacobian of :meth:`rhs` with respect to ``f``."""
        f = np.asarray(f, dtype=float)
        n = f.size
        x = self.grid.boundaries
        if self.closed_form and self.kernel.kind is Kind.CONSTANT:
            w = np.full((n, n), self.grid.dx)
        elif self.closed_form:
            w = np.outer(x[1:], self._a)
        else:
            w = self._w_out
        jac = -f[:, None] * w
        jac[np.diag_indices(n)] -= w @ f
        c = self._in_coefficients()
        # d/df_k of 1/2 sum_j C[i,j] f_j f_{i-1-j}
        for i in range(1, n):
            j = np.arange(i)
            jac[i, j] += 0.5 * c[i, j] * f[i - 1 - j]
            jac[i, i - 1 - j] += 0.5 * c[i, j] * f[j]
        return jac

    def _in_coefficients(self):
        n = self.grid.n_elements
        if not self.closed_form:
            return self._c_in
        if self.kernel.kind is Kind.CONSTANT:
            return np.tril(np.full((n, n), self.grid.dx), -1)
        c = np.outer(self.grid.left, self._a) - self._b[None, :]
        return np.tril(c, -1)


def _operator(state: SizeDistribution, kernel: Kernel) -> FemOperator:
    return FemOperator(state.grid, kernel)


def aggregation_out(state: SizeDistribution, kernel: Kernel) -> np.ndarray:
    """Loss rate of every element (entries <= 0 for non-negative states)."""
    return _operator(state, kernel).aggregation_out(state.values)


def aggregation_in(state: SizeDistribution, kernel: Kernel) -> np.ndarray:
    """Gain rate of every element; the first entry is always zero."""
    return _operator(state, kernel).aggregation_in(state.values)


def fem_rhs(state: SizeDistribution, kernel: Kernel) -> np.ndarray:
    """d f / dt for every element."""
    return _operator(state, kernel).rhs(state.values)
