"""Heights of rational points in projective space.

Points of P^n(Q) are stored by their unique canonical representative:
integer coordinates, gcd 1, first nonzero coordinate positive.  With that
representative only the real absolute value contributes, so the
multiplicative height is simply the largest coordinate magnitude.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd, isqrt, lcm, prod
from typing import Sequence

from .errors import (CommonZeroError, DimensionMismatchError, InvalidPointError,
                     NotHomogeneousError, ResourceLimitError, SingularMatrixError)
from .multipoly import MultiPoly, as_fraction
from .report import BoundReport

DEFAULT_ENUM_BUDGET = 10 ** 8


@dataclass(frozen=True)
class ProjPointQ:
    """Canonical primitive integer representative of a point of P^n(Q)."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not self.coords:
            raise InvalidPointError("empty coordinate vector")
        if any(not isinstance(c, int) for c in self.coords):
            raise InvalidPointError("canonical coordinates must be integers")
        nz = [c for c in self.coords if c]
        if not nz:
            raise InvalidPointError("all coordinates are zero")
        if gcd(*(abs(c) for c in self.coords)) != 1:
            raise InvalidPointError("coordinates are not primitive")
        if nz[0] < 0:
            raise InvalidPointError("first nonzero coordinate must be positive")

    @property
    def dim(self) -> int:
        """Dimension n of the ambient P^n."""
        return len(self.coords) - 1

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coords])

    @classmethod
    def from_json(cls, text: str) -> "ProjPointQ":
        return normalize([as_fraction(c) for c in json.loads(text)])

    def __repr__(self):
        return f"ProjPointQ{self.coords}"


def normalize(raw: Sequence) -> ProjPointQ:
    """Canonical representative of the point with the given rational coordinates."""
    vals = [as_fraction(x) for x in raw]
    if not vals:
        raise InvalidPointError("empty coordinate vector")
    if all(v == 0 for v in vals):
        raise InvalidPointError("all coordinates are zero")
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = gcd(*(abs(c) for c in ints))
    ints = [c // g for c in ints]
    first = next(c for c in ints if c)
    if first < 0:
        ints = [-c for c in ints]
    return ProjPointQ(tuple(ints))


def height(P: ProjPointQ) -> int:
    """Multiplicative height: max coordinate magnitude of the canonical form."""
    return max(abs(c) for c in P.coords)


def log_height(P: ProjPointQ) -> float:
    return math.log(height(P))


def segre(P: ProjPointQ, Q: ProjPointQ) -> ProjPointQ:
    """Segre embedding P^n x P^m -> P^((n+1)(m+1)-1), products x_i*y_j in (i,j) order."""
    return normalize([x * y for x in P.coords for y in Q.coords])


def _monomial_exponents(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All degree-d exponent vectors, lexicographically decreasing (x0 > x1 > ...)."""
    if nvars == 1:
        return [(d,)]
    out = []
    for e0 in range(d, -1, -1):
        out.extend((e0,) + rest for rest in _monomial_exponents(nvars - 1, d - e0))
    return out


def veronese(P: ProjPointQ, d: int) -> ProjPointQ:
    """d-uple embedding: all degree-d monomials in the coordinates."""
    if d < 1:
        raise ValueError("embedding degree must be >= 1")
    coords = []
    for exp in _monomial_exponents(len(P.coords), d):
        coords.append(prod(c ** e for c, e in zip(P.coords, exp) if e) if any(exp) else 1)
    assert len(coords) == comb(P.dim + d, P.dim)
    return normalize(coords)


def power_point(P: ProjPointQ, m: int) -> ProjPointQ:
    """Coordinate-wise m-th power."""
    if m < 1:
        raise ValueError("power must be >= 1")
    return normalize([c ** m for c in P.coords])


def is_kronecker_unit(P: ProjPointQ) -> bool:
    """True iff H(P) = 1; over Q this means every coordinate is -1, 0 or 1."""
    return height(P) == 1


def count_points_of_bounded_height(n: int, c: int, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Number of points of P^n(Q) with height <= c, by direct enumeration.

    Enumerates the box [-c, c]^(n+1) and keeps the canonical representatives
    (primitive, first nonzero coordinate positive).
    """
    if n < 1 or c < 1:
        raise ValueError("need n >= 1 and c >= 1")
    box = (2 * c + 1) ** (n + 1)
    if box > budget:
        raise ResourceLimitError(f"enumeration of {box} tuples exceeds budget {budget}")
    count = 0
    for t in product(range(-c, c + 1), repeat=n + 1):
        nz = next((x for x in t if x), None)
        if nz is None or nz < 0:
            continue
        if gcd(*(abs(x) for x in t)) == 1:
            count += 1
    return count


@dataclass(frozen=True)
class RationalMapQ:
    """Rational map P^n -> P^r given by r+1 homogeneous polynomials of equal degree."""

    components: tuple[MultiPoly, ...]

    def __post_init__(self):
        if not self.components:
            raise DimensionMismatchError("a rational map needs at least one component")
        nv = self.components[0].nvars
        if any(f.nvars != nv for f in self.components):
            raise DimensionMismatchError("components live in different variable sets")
        degs = set()
        for f in self.components:
            if not f.is_homogeneous():
                raise NotHomogeneousError("all components must be homogeneous")
            if f:
                degs.add(f.total_degree())
        if not degs:
            raise InvalidPointError("all components are zero")
        if len(degs) > 1:
            raise NotHomogeneousError(f"components have mixed degrees {sorted(degs)}")

    @property
    def degree(self) -> int:
        return next(f.total_degree() for f in self.components if f)

    @property
    def source_dim(self) -> int:
        return self.components[0].nvars - 1

    @property
    def target_dim(self) -> int:
        return len(self.components) - 1

    def coefficient_point(self) -> ProjPointQ:
        coeffs: list[Fraction] = []
        for f in self.components:
            coeffs.extend(f.coefficients())
        return normalize(coeffs)

    def max_monomial_count(self) -> int:
        return max(f.monomial_count() for f in self.components)


def map_height(phi: RationalMapQ) -> int:
    """Height of the concatenated coefficient vector of the map."""
    return height(phi.coefficient_point())


def apply_rational_map(phi: RationalMapQ, P: ProjPointQ) -> ProjPointQ:
    """Image of P under the map, or CommonZeroError on the base locus."""
    vals = [f.evaluate(P.coords) for f in phi.components]
    if all(v == 0 for v in vals):
        raise CommonZeroError("point lies in the common zero locus of the map")
    return normalize(vals)


def check_coordinate_change_bound(phi: RationalMapQ, P: ProjPointQ) -> BoundReport:
    """H(phi(P)) <= N * H(phi) * H(P)^m with N the largest monomial count."""
    image = apply_rational_map(phi, P)
    lhs = Fraction(height(image))
    rhs = Fraction(phi.max_monomial_count() * map_height(phi) * height(P) ** phi.degree)
    return BoundReport(lhs, rhs, lhs <= rhs)


def _matrix_det(M: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction Gaussian elimination (small matrices)."""
    n = len(M)
    A = [row[:] for row in M]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col]:
                factor = A[r][col] * inv
                A[r] = [a - factor * b for a, b in zip(A[r], A[col])]
    return det


def _coerce_matrix(M) -> list[list[Fraction]]:
    rows = [[as_fraction(x) for x in row] for row in M]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise DimensionMismatchError("matrix is not square")
    return rows


def matrix_height(M) -> int:
    """Max entry magnitude after clearing the matrix to a primitive integer one."""
    rows = _coerce_matrix(M)
    flat = [x for row in rows for x in row]
    return height(normalize(flat))


def apply_matrix(M, P: ProjPointQ) -> ProjPointQ:
    """Image of P under an automorphism of P^n given by an invertible matrix."""
    rows = _coerce_matrix(M)
    if len(rows) != len(P.coords):
        raise DimensionMismatchError(
            f"matrix size {len(rows)} does not match point dimension {len(P.coords)}")
    if _matrix_det(rows) == 0:
        raise SingularMatrixError("matrix is singular")
    return normalize([sum(a * c for a, c in zip(row, P.coords)) for row in rows])


def check_matrix_action_bound(M, P: ProjPointQ) -> BoundReport:
    """H(P^M) <= (n+1) * H(M) * H(P)."""
    image = apply_matrix(M, P)
    lhs = Fraction(height(image))
    rhs = Fraction(len(P.coords) * matrix_height(M) * height(P))
    return BoundReport(lhs, rhs, lhs <= rhs)
