"""Result record for inequality checkers.

Every ``check_*`` operation returns a :class:`BoundReport` with the two
sides of the inequality it verified.  The checked statements are theorems,
so ``holds`` is expected to be True on every valid input; a False is a bug
in the caller's input or in this library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BoundReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    note: str = ""

    def ratio(self) -> float:
        """Tightness lhs/rhs as a float (1.0 means the bound is sharp)."""
        if self.rhs == 0:
            return float("inf") if self.lhs else 0.0
        return float(self.lhs / self.rhs)
