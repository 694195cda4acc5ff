"""Aggregation kernels K(x, y).

Two kernels have closed forms throughout the package: the constant kernel
``K = 1`` and the multiplicative kernel ``K = x*y``.  Any other symmetric,
positive rate can be wrapped with :func:`custom_kernel`; the discretizations
fall back to quadrature for those.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

__all__ = [
    "Kind",
    "Kernel",
    "CONSTANT",
    "MULTIPLICATIVE",
    "custom_kernel",
    "evaluate",
    "homogeneity_degree",
    "kernel_from_name",
]


class Kind(enum.Enum):
    CONSTANT = "constant"
    MULTIPLICATIVE = "multiplicative"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Kernel:
    kind: Kind
    func: Optional[Callable] = None
    degree: Optional[float] = None
    name: str = ""

    def __call__(self, x, y):
        return evaluate(self, x, y)

    @property
    def has_closed_form(self) -> bool:
        return self.kind is not Kind.CUSTOM

    def raw(self, x, y):
        """Evaluate without argument checks (vectorized, used by quadrature)."""
        if self.kind is Kind.CONSTANT:
            return np.ones(np.broadcast(x, y).shape)
        if self.kind is Kind.MULTIPLICATIVE:
            return np.multiply(x, y)
        return self.func(x, y)


CONSTANT = Kernel(Kind.CONSTANT, degree=0.0, name="constant")
MULTIPLICATIVE = Kernel(Kind.MULTIPLICATIVE, degree=2.0, name="multiplicative")


def custom_kernel(func: Callable, degree: Optional[float] = None, name: str = "custom") -> Kernel:
    """Wrap a user rate function ``func(x, y)``.

    ``func`` must accept numpy arrays and be symmetric and positive; this is
    not verified.  ``degree`` is the homogeneity exponent if there is one.
    """
    return Kernel(Kind.CUSTOM, func=func, degree=degree, name=name)


def evaluate(kernel: Kernel, x, y):
    """Aggregation rate for volumes ``x`` and ``y`` (both strictly positive)."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(ya))):
        raise DomainError("kernel arguments must be finite")
    if np.any(xa <= 0.0) or np.any(ya <= 0.0):
        raise DomainError("kernel arguments must be strictly positive")
    out = kernel.raw(xa, ya)
    if np.ndim(out) == 0:
        return float(out)
    return out


def homogeneity_degree(kernel: Kernel) -> float:
    """Exponent m with K(l*x, l*y) = l**m * K(x, y)."""
    if kernel.degree is None:
        raise DomainError(f"kernel {kernel.name!r} has no declared homogeneity degree")
    return kernel.degree


def kernel_from_name(name: str) -> Kernel:
    """Look up a kernel by its config-file name."""
    try:
        return {"constant": CONSTANT, "multiplicative": MULTIPLICATIVE}[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown kernel {name!r}; expected 'constant' or 'multiplicative'") from None
