"""Integer floating-point operation counters.

Assembly routines take an optional :class:`OpCounter`; when one is passed
they bump it by the number of scalar operations each array expression
performs.  Every +, -, *, / and transcendental call counts as one.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["OpCount", "OpCounter"]


@dataclass(frozen=True)
class OpCount:
    adds: int = 0
    muls: int = 0
    divs: int = 0
    special: int = 0

    @property
    def total(self) -> int:
        return self.adds + self.muls + self.divs + self.special

    def as_dict(self):
        return {
            "adds": self.adds,
            "muls": self.muls,
            "divs": self.divs,
            "special": self.special,
            "total": self.total,
        }


class OpCounter:
    """Mutable accumulator; ``snapshot()`` returns an immutable :class:`OpCount`."""

    __slots__ = ("adds", "muls", "divs", "special")

    def __init__(self):
        self.adds = 0
        self.muls = 0
        self.divs = 0
        self.special = 0

    def add(self, n=1):
        self.adds += int(n)

    def mul(self, n=1):
        self.muls += int(n)

    def div(self, n=1):
        self.divs += int(n)

    def fn(self, n=1):
        self.special += int(n)

    def sum(self, n):
        """Reduction of ``n`` terms: ``n - 1`` additions."""
        if n > 1:
            self.adds += int(n) - 1

    def snapshot(self) -> OpCount:
        return OpCount(self.adds, self.muls, self.divs, self.special)
