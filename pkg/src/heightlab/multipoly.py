"""Sparse multivariate polynomials over Q.

A polynomial in ``nvars`` variables is a finite map from exponent vectors
(length ``nvars``, nonnegative entries) to nonzero rational coefficients.
All arithmetic is exact.  Instances are immutable by convention: the term
map is never mutated after construction.

Monomials are ordered graded-lexicographically with x0 > x1 > ... , which
fixes the coefficient vector used by embeddings and map heights.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatchError, ParseError

Exponent = tuple[int, ...]


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {x!r}") from exc
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def format_fraction(x: Fraction) -> str:
    """Render p/q with the denominator elided when it is 1."""
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | Iterable):
        if nvars < 1:
            raise DimensionMismatchError("need at least one variable")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatchError(
                    f"exponent vector {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            coef = as_fraction(coef)
            if coef:
                clean[exp] = clean.get(exp, Fraction(0)) + coef
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        c = as_fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "MultiPoly":
        if not 0 <= j < nvars:
            raise DimensionMismatchError(f"variable index {j} out of range")
        exp = tuple(1 if i == j else 0 for i in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "MultiPoly":
        """Polynomial sum(coeffs[i] * x^i) in one variable."""
        return cls(1, {(i,): as_fraction(c) for i, c in enumerate(coeffs) if as_fraction(c)})

    # -- ring structure --------------------------------------------------

    def _check_same_ring(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"mixed variable counts {self.nvars} and {other.nvars}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_ring(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            elif exp in out:
                del out[exp]
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -as_fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_ring(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                elif exp in out:
                    del out[exp]
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure queries ----------------------------------------------

    def total_degree(self) -> int:
        """Total degree; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self.terms)

    def degree_in(self, j: int) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(e[j] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def monomial_count(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lex order with x0 > x1 > ... (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def coefficients(self) -> list[Fraction]:
        return [c for _, c in self.sorted_terms()]

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, values: Sequence) -> Fraction:
        vals = [as_fraction(v) for v in values]
        if len(vals) != self.nvars:
            raise DimensionMismatchError(
                f"expected {self.nvars} values, got {len(vals)}")
        total = Fraction(0)
        for exp, coef in self.terms.items():
            term = coef
            for v, e in zip(vals, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def partial(self, j: int) -> "MultiPoly":
        if not 0 <= j < self.nvars:
            raise DimensionMismatchError(f"variable index {j} out of range")
        out = {}
        for exp, coef in self.terms.items():
            if exp[j]:
                new = list(exp)
                new[j] -= 1
                out[tuple(new)] = coef * exp[j]
        return MultiPoly(self.nvars, out)

    def substitute_linear(self, j: int, scale, offset) -> "MultiPoly":
        """Replace x_j by scale*x_j + offset, expanding exactly."""
        scale = as_fraction(scale)
        offset = as_fraction(offset)
        result = MultiPoly.zero(self.nvars)
        for exp, coef in self.terms.items():
            e = exp[j]
            base = list(exp)
            base[j] = 0
            # (s*x + o)^e expanded by the binomial theorem
            for k in range(e + 1):
                c = coef * comb(e, k) * scale ** k * offset ** (e - k)
                if not c:
                    continue
                new = list(base)
                new[j] = k
                result = result + MultiPoly(self.nvars, {tuple(new): c})
        return result

    def shift(self, b: Sequence) -> "MultiPoly":
        """f(x + b)."""
        if len(b) != self.nvars:
            raise DimensionMismatchError("shift vector has wrong length")
        out = self
        for j, bj in enumerate(b):
            out = out.substitute_linear(j, 1, bj)
        return out

    def scale(self, u: Sequence) -> "MultiPoly":
        """f(u1*x1, ..., un*xn)."""
        if len(u) != self.nvars:
            raise DimensionMismatchError("scale vector has wrong length")
        out = {}
        for exp, coef in self.terms.items():
            c = coef
            for uj, e in zip(u, exp):
                if e:
                    c *= as_fraction(uj) ** e
            if c:
                out[exp] = c
        return MultiPoly(self.nvars, out)

    def affine_substitute(self, u: Sequence, b: Sequence) -> "MultiPoly":
        """f(u*x + b) componentwise."""
        if len(u) != self.nvars or len(b) != self.nvars:
            raise DimensionMismatchError("substitution vectors have wrong length")
        out = self
        for j in range(self.nvars):
            out = out.substitute_linear(j, u[j], b[j])
        return out

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": format_fraction(c)}
                      for e, c in self.sorted_terms()],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        try:
            payload = json.loads(text)
            terms = {tuple(t["exp"]): as_fraction(t["coef"]) for t in payload["terms"]}
            return cls(int(payload["nvars"]), terms)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        names = ["x%d" % i for i in range(self.nvars)]
        parts = []
        for exp, coef in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(exp) if e)
            if mono:
                lead = "" if coef == 1 else ("-" if coef == -1 else format_fraction(coef) + "*")
                parts.append(lead + mono)
            else:
                parts.append(format_fraction(coef))
        s = " + ".join(parts).replace("+ -", "- ")
        return f"MultiPoly({s})"
