"""Binary forms with the GL2 action, transvectants and discriminants.

A degree-d form is stored by its coefficient vector a_0..a_d with
f(X, Z) = sum a_i X^i Z^(d-i), the orientation used by the genus-2 curve
tables (y^2 = a_6 x^6 + ... + a_0).  The opposite "descending" orientation
a_0 X^d + a_1 X^(d-1) Z + ... is supported through an explicit adapter.

Coefficients may be rationals or MultiPoly values, so the same transvectant
code evaluates invariants numerically and expands them symbolically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .errors import DegreeError, ParseError, SingularMatrixError, ZeroPolynomialError
from .multipoly import MultiPoly, as_fraction, format_fraction
from .projpoint import height as point_height
from .projpoint import normalize
from .report import BoundReport


def _coerce_coeff(c):
    if isinstance(c, MultiPoly):
        return c
    return as_fraction(c)


def _is_zero(c) -> bool:
    return not c


@dataclass(frozen=True)
class BinaryForm:
    """Binary form of degree d; coeffs[i] multiplies X^i Z^(d-i)."""

    degree: int
    coeffs: tuple
    allow_zero: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.degree < 1:
            raise DegreeError("binary forms must have degree >= 1")
        if len(self.coeffs) != self.degree + 1:
            raise DegreeError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_coerce_coeff(c) for c in self.coeffs))
        if not self.allow_zero and all(_is_zero(c) for c in self.coeffs):
            raise ZeroPolynomialError("all coefficients are zero")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "BinaryForm":
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "BinaryForm":
        """Adapter for the a_0 X^d + a_1 X^(d-1) Z + ... orientation."""
        return cls(len(coeffs) - 1, tuple(reversed(tuple(coeffs))))

    def to_descending(self) -> tuple:
        return tuple(reversed(self.coeffs))

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def evaluate(self, x, z) -> Fraction:
        x, z = as_fraction(x), as_fraction(z)
        return sum((c * x ** i * z ** (self.degree - i)
                    for i, c in enumerate(self.coeffs)), Fraction(0))

    def scaled(self, s) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(c * s for c in self.coeffs),
                          allow_zero=self.allow_zero)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different degrees")
        return BinaryForm(self.degree,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
                          allow_zero=True)

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree,
                           "coeffs": [format_fraction(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "BinaryForm":
        try:
            payload = json.loads(text)
            return cls(int(payload["degree"]),
                       tuple(as_fraction(c) for c in payload["coeffs"]))
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad binary form JSON: {exc}") from exc


@dataclass(frozen=True)
class GL2Q:
    """Invertible 2x2 rational matrix (a b; c d)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.det == 0:
            raise SingularMatrixError("matrix (a b; c d) has determinant zero")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "GL2Q":
        return cls(1, 0, 0, 1)

    @classmethod
    def of(cls, a, b, c, d) -> "GL2Q":
        return cls(as_fraction(a), as_fraction(b), as_fraction(c), as_fraction(d))

    def __matmul__(self, other: "GL2Q") -> "GL2Q":
        return GL2Q(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def inverse(self) -> "GL2Q":
        dt = self.det
        return GL2Q(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def height(self) -> int:
        """Max entry of the primitive integer matrix proportional to this one."""
        return point_height(normalize(self.entries()))


def _conv(xs: Sequence, ys: Sequence) -> list:
    """Coefficient vector of the product of two binary forms (ascending in X)."""
    out = [xs[0] * 0] * (len(xs) + len(ys) - 1)
    for i, x in enumerate(xs):
        if _is_zero(x):
            continue
        for j, y in enumerate(ys):
            if not _is_zero(y):
                out[i + j] = out[i + j] + x * y
    return out


def act(f: BinaryForm, M: GL2Q) -> BinaryForm:
    """f^M(X, Z) = f(aX + bZ, cX + dZ), expanded exactly.

    Right action: act(act(f, M), N) == act(f, M @ N).
    """
    d = f.degree
    # powers of the two image linear forms, ascending in X
    pow_ab: list[list] = [[Fraction(1)]]
    pow_cd: list[list] = [[Fraction(1)]]
    for _ in range(d):
        pow_ab.append(_conv(pow_ab[-1], [M.b, M.a]))
        pow_cd.append(_conv(pow_cd[-1], [M.d, M.c]))
    zero = f.coeffs[0] * 0
    out = [zero] * (d + 1)
    for i, coeff in enumerate(f.coeffs):
        if _is_zero(coeff):
            continue
        for j, term in enumerate(_conv(pow_ab[i], pow_cd[d - i])):
            if not _is_zero(term):
                out[j] = out[j] + coeff * term
    return BinaryForm(d, tuple(out), allow_zero=True)


def form_height(f: BinaryForm) -> int:
    """Projective height of the coefficient vector."""
    if f.is_zero:
        raise ZeroPolynomialError("height of the zero form is undefined")
    return point_height(normalize(f.coeffs))


def check_action_height_bound(f: BinaryForm, M: GL2Q) -> BoundReport:
    """H(f^M) <= 2^n * (n+1) * H(M)^n * H(f) for a degree-n form."""
    n = f.degree
    lhs = Fraction(form_height(act(f, M)))
    rhs = Fraction(2 ** n * (n + 1) * M.height() ** n * form_height(f))
    return BoundReport(lhs, rhs, lhs <= rhs)


def check_shifted_form_bound(f: BinaryForm, u: int, w: int) -> BoundReport:
    """H(f(uX + wZ, Z)) <= (d+1) * 2^d * u^d * w^d * H(f) for positive integers u, w."""
    if u < 1 or w < 1:
        raise ValueError("u and w must be positive integers")
    d = f.degree
    g = act(f, GL2Q.of(u, w, 0, 1))
    lhs = Fraction(form_height(g))
    rhs = Fraction((d + 1) * 2 ** d * u ** d * w ** d * form_height(f))
    return BoundReport(lhs, rhs, lhs <= rhs)


def _partial_x(coeffs: Sequence, d: int) -> list:
    """d/dX of an ascending degree-d coefficient vector (result has degree d-1)."""
    return [coeffs[i + 1] * (i + 1) for i in range(d)]


def _partial_z(coeffs: Sequence, d: int) -> list:
    return [coeffs[i] * (d - i) for i in range(d)]


def _mixed_partial(coeffs: Sequence, d: int, kx: int, kz: int) -> list:
    out = list(coeffs)
    deg = d
    for _ in range(kx):
        out = _partial_x(out, deg)
        deg -= 1
    for _ in range(kz):
        out = _partial_z(out, deg)
        deg -= 1
    return out


def transvectant(f: BinaryForm, g: BinaryForm, r: int):
    """r-th transvectant (f, g)^r.

    (f,g)^r = c * sum_k (-1)^k C(r,k) d^r f/dX^(r-k) dZ^k * d^r g/dX^k dZ^(r-k)
    with c = (m-r)! (n-r)! / (n! m!).  Returns a BinaryForm of degree
    n + m - 2r, or the bare coefficient when that degree is zero.
    """
    n, m = f.degree, g.degree
    if r < 0 or r > min(n, m):
        raise DegreeError(f"transvectant order {r} exceeds min degree {min(n, m)}")
    if r == 0:
        prod = _conv(f.coeffs, g.coeffs)
        return BinaryForm(n + m, tuple(prod), allow_zero=True)
    c = Fraction(factorial(m - r) * factorial(n - r), factorial(n) * factorial(m))
    order = n + m - 2 * r
    zero = f.coeffs[0] * 0
    acc = [zero] * (order + 1)
    for k in range(r + 1):
        df = _mixed_partial(f.coeffs, n, r - k, k)
        dg = _mixed_partial(g.coeffs, m, k, r - k)
        sign = -1 if k % 2 else 1
        factor = sign * comb(r, k)
        for j, term in enumerate(_conv(df, dg)):
            if not _is_zero(term):
                acc[j] = acc[j] + term * factor
    acc = [c * t for t in acc]
    if order == 0:
        return acc[0]
    return BinaryForm(order, tuple(acc), allow_zero=True)


def check_transvectant_covariance(f: BinaryForm, g: BinaryForm, r: int, M: GL2Q) -> BoundReport:
    """(f^M, g^M)^r == ((f,g)^r)^M exactly, for unimodular M."""
    if M.det != 1:
        raise ValueError("covariance check requires det M = 1")
    lhs = transvectant(act(f, M), act(g, M), r)
    base = transvectant(f, g, r)
    rhs = act(base, M) if isinstance(base, BinaryForm) else base
    if isinstance(lhs, BinaryForm):
        equal = lhs.coeffs == rhs.coeffs
    else:
        equal = lhs == rhs
    one = Fraction(1)
    return BoundReport(one, one, bool(equal), note=f"r={r}")


def _sylvester_resultant(p: Sequence, q: Sequence) -> Fraction:
    """Resultant of two binary forms given by ascending coefficient vectors.

    Formal degrees are taken from the vector lengths, so vanishing leading
    coefficients (roots at infinity) are handled correctly.
    """
    m = len(p) - 1
    n = len(q) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    pd = list(reversed([as_fraction(c) for c in p]))
    qd = list(reversed([as_fraction(c) for c in q]))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pd + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qd + [Fraction(0)] * (size - n - 1 - i))
    # fraction Gaussian elimination
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    if not (f.is_rational() and g.is_rational()):
        raise TypeError("resultant implemented for rational forms")
    return _sylvester_resultant(f.coeffs, g.coeffs)


def discriminant(f: BinaryForm) -> Fraction:
    """Discriminant of the form, zero iff f has a repeated projective root.

    Computed as (-1)^(d(d-1)/2) Res(df/dX, df/dZ); resultants of the formal
    degree-(d-1) partials keep track of multiplicity at [1:0] when the
    leading coefficients vanish, so degree-dropped inputs need no special
    casing.  The normalization differs from the monic-polynomial
    discriminant by a constant factor depending only on d.
    """
    if f.degree < 2:
        raise DegreeError("discriminant needs degree >= 2")
    if not f.is_rational():
        raise TypeError("discriminant implemented for rational forms")
    d = f.degree
    fx = _mixed_partial(f.coeffs, d, 1, 0)
    fz = _mixed_partial(f.coeffs, d, 0, 1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * _sylvester_resultant(fx, fz)


def _int_sylvester_det(p: Sequence[int], q: Sequence[int]) -> int:
    """Bareiss determinant of the Sylvester matrix for integer vectors."""
    m = len(p) - 1
    n = len(q) - 1
    size = m + n
    pd = list(reversed(list(p)))
    qd = list(reversed(list(q)))
    a = []
    for i in range(n):
        a.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        a.append([0] * i + qd + [0] * (size - n - 1 - i))
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if a[r][k]), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[size - 1][size - 1]


def int_sextic_discriminant(coeffs: Sequence[int]) -> int:
    """Fast integer discriminant of a degree-6 coefficient vector a0..a6."""
    if len(coeffs) != 7:
        raise DegreeError("expected 7 coefficients")
    d = 6
    fx = [coeffs[i + 1] * (i + 1) for i in range(d)]
    fz = [coeffs[i] * (d - i) for i in range(d)]
    return -_int_sylvester_det(fx, fz)
