"""Adaptive quadrature and the modified Bessel function I1.

The quadrature uses a 7-point Gauss / 15-point Kronrod pair with global
adaptive bisection (worst interval first).  Integrands are called with numpy
arrays of nodes, so they must be vectorized.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, IntegrandError

__all__ = [
    "QuadratureSpec",
    "DEFAULT_QUAD",
    "adaptive_integrate",
    "integrate_intervals",
    "bessel_i1",
    "bessel_i1e",
    "bessel_i1_integral",
]

# Kronrod abscissae on [0, 1]; odd entries (1, 3, 5, 7) are the Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] and matching weights
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KW = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5]] = _WG[:3]
_GW[[9, 11, 13]] = _WG[2::-1]
_GW[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for :func:`adaptive_integrate`."""

    rel_tol: float = 1e-6
    abs_tol: float = 1e-10
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_QUAD = QuadratureSpec()


def _gk15(f, a, b):
    """Apply the G7/K15 rule on arrays of intervals; return (kronrod, |K - G|)."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    half = 0.5 * (b - a)
    center = 0.5 * (b + a)
    x = center[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise IntegrandError(f"integrand is not finite at x = {bad!r}")
    kron = half * (y @ _KW)
    gauss = half * (y @ _GW)
    return kron, np.abs(kron - gauss)


def adaptive_integrate(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """Integrate ``f`` over ``[a, b]`` to ``max(abs_tol, rel_tol*|I|)``.

    Parameters
    ----------
    f : callable
        Vectorized integrand; receives an ndarray of nodes.
    a, b : float
        Finite limits with ``a < b``.
    spec : QuadratureSpec
        Tolerances and subdivision budget.

    Raises
    ------
    ConvergenceError
        The subdivision budget ran out.  ``estimate`` and ``error`` carry the
        best result found.
    IntegrandError
        ``f`` returned a non-finite value.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")

    val, err = _gk15(f, a, b)
    total, total_err = float(val[0]), float(err[0])
    # max-heap on error via negated keys; ties broken by insertion order
    heap = [(-total_err, 0, a, b, total)]
    counter = 1
    subdivisions = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if subdivisions >= spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature on [{a}, {b}] did not converge in {spec.max_subdivisions} subdivisions",
                estimate=total,
                error=total_err,
            )
        neg_err, _, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        vals, errs = _gk15(f, [lo, mid], [mid, hi])
        total += float(vals[0] + vals[1]) - v
        total_err += float(errs[0] + errs[1]) + neg_err
        heapq.heappush(heap, (-float(errs[0]), counter, lo, mid, float(vals[0])))
        heapq.heappush(heap, (-float(errs[1]), counter + 1, mid, hi, float(vals[1])))
        counter += 2
        subdivisions += 1
    # re-sum from the leaves to avoid drift from the running updates
    return float(math.fsum(item[4] for item in heap))


def integrate_intervals(f, edges, spec: QuadratureSpec = DEFAULT_QUAD) -> np.ndarray:
    """Integrate ``f`` over each interval ``[edges[i], edges[i+1]]``.

    Every interval meets the tolerance of ``spec`` on its own; intervals that
    fail are bisected, all at once, until they pass.  Returns one integral per
    interval.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise DomainError("need at least two edges")
    if not np.all(np.isfinite(edges)) or np.any(np.diff(edges) <= 0):
        raise DomainError("edges must be finite and strictly increasing")

    n = edges.size - 1
    owner = np.arange(n)
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    result = np.zeros(n)
    # pieces are accepted per interval, so an interval's tolerance is split
    # across its pieces in proportion to their width
    full_width = hi - lo
    subdivisions = 0
    while lo.size:
        vals, errs = _gk15(f, lo, hi)
        frac = (hi - lo) / full_width[owner]
        tol = np.maximum(spec.abs_tol * frac, spec.rel_tol * np.abs(vals))
        ok = errs <= tol
        np.add.at(result, owner[ok], vals[ok])
        if np.all(ok):
            break
        subdivisions += 1
        if subdivisions > spec.max_subdivisions:
            raise ConvergenceError(
                "interval quadrature did not converge",
                estimate=result,
                error=float(errs[~ok].max()),
            )
        owner, lo, hi = owner[~ok], lo[~ok], hi[~ok]
        mid = 0.5 * (lo + hi)
        owner = np.concatenate([owner, owner])
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
    return result


def _check_nonneg(x):
    xa = np.asarray(x, dtype=float)
    if np.any(np.isnan(xa)) or np.any(xa < 0):
        raise DomainError("bessel_i1 is only implemented for x >= 0")
    return xa


_SERIES_CUTOFF = 30.0


def _i1_series(x):
    # sum_k (x/2)^(2k+1) / (k! (k+1)!), all terms positive
    h = 0.5 * x
    q = h * h
    term = h.copy()
    total = h.copy()
    k = 0
    while True:
        k += 1
        term = term * q / (k * (k + 1))
        total = total + term
        if np.all(term <= 1e-17 * total) or k > 200:
            return total


def _i1e_asymptotic(x):
    # e^{-x} I1(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k / x^k,
    # a_k = a_{k-1} * (4 - (2k-1)^2) / (8k); x > 30 keeps this far below eps
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 40):
        term = -term * (4.0 - (2 * k - 1) ** 2) / (8.0 * k * x)
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total / np.sqrt(2.0 * np.pi * x)


def bessel_i1e(x):
    """Exponentially scaled Bessel function ``exp(-x) * I1(x)`` for ``x >= 0``."""
    xa = _check_nonneg(x)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    out = np.empty_like(xa)
    small = xa <= _SERIES_CUTOFF
    if np.any(small):
        xs = xa[small]
        out[small] = _i1_series(xs) * np.exp(-xs)
    if np.any(~small):
        out[~small] = _i1e_asymptotic(xa[~small])
    return float(out[0]) if scalar else out


def bessel_i1(x):
    """Modified Bessel function of the first kind, order one, for ``x >= 0``.

    Power series up to x = 30, exponentially scaled asymptotic expansion
    beyond.  Overflows to ``inf`` past x of about 713.
    """
    xa = _check_nonneg(x)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    out = np.empty_like(xa)
    small = xa <= _SERIES_CUTOFF
    if np.any(small):
        out[small] = _i1_series(xa[small])
    if np.any(~small):
        xl = xa[~small]
        with np.errstate(over="ignore"):
            out[~small] = _i1e_asymptotic(xl) * np.exp(xl)
    return float(out[0]) if scalar else out


def bessel_i1_integral(x: float, spec: QuadratureSpec = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-14)) -> float:
    """I1 from its integral form ``(1/pi) int_0^pi exp(x cos t) cos t dt``.

    Slow; kept as an independent check on :func:`bessel_i1`.
    """
    x = float(_check_nonneg(x))
    return adaptive_integrate(lambda th: np.exp(x * np.cos(th)) * np.cos(th), 0.0, math.pi, spec) / math.pi
