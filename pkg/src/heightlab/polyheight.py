"""Gauss norms at the places of Q, polynomial heights, and Mahler measure.

The places of Q are the real absolute value and one p-adic absolute value
per prime.  Only finitely many primes see any given polynomial, namely the
divisors of coefficient numerators and denominators, so every height is a
finite product evaluated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

import mpmath
import sympy

from .errors import (DimensionMismatchError, NotHomogeneousError, ResourceLimitError,
                     RootFindingError, ZeroPolynomialError)
from .multipoly import MultiPoly, as_fraction
from .report import BoundReport

FACTOR_DIGIT_BUDGET = 60  # refuse to factor integers bigger than this many digits


@dataclass(frozen=True)
class PlaceQ:
    """A place of Q: archimedean (p is None) or the p-adic place at a prime p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def archimedean(cls) -> "PlaceQ":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "PlaceQ":
        return cls(int(p))

    @property
    def is_archimedean(self) -> bool:
        return self.p is None

    def abs_value(self, x) -> Fraction:
        """|x|_v as an exact rational."""
        x = as_fraction(x)
        if self.is_archimedean:
            return abs(x)
        if x == 0:
            return Fraction(0)
        return Fraction(1, self.p) ** padic_valuation(x, self.p)

    def __repr__(self):
        return "PlaceQ(oo)" if self.is_archimedean else f"PlaceQ({self.p})"


def padic_valuation(x, p: int) -> int:
    """v_p(x) for a nonzero rational x."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("v_p(0) is undefined")
    v = 0
    n = abs(x.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _factor_primes(n: int) -> set[int]:
    n = abs(int(n))
    if n <= 1:
        return set()
    if len(str(n)) > FACTOR_DIGIT_BUDGET:
        raise ResourceLimitError(f"refusing to factor {len(str(n))}-digit integer")
    return set(sympy.factorint(n))


def _nonzero_coeffs(f: MultiPoly) -> list[Fraction]:
    if not f:
        raise ZeroPolynomialError("norms and heights of the zero polynomial are undefined")
    return list(f.terms.values())


def gauss_norm(f: MultiPoly, v: PlaceQ) -> Fraction:
    """|f|_v = max over coefficients of |a_i|_v."""
    return max(v.abs_value(c) for c in _nonzero_coeffs(f))


def contributing_primes(f: MultiPoly) -> set[int]:
    """Primes p with |f|_p != 1."""
    coeffs = _nonzero_coeffs(f)
    num_gcd = gcd(*(abs(c.numerator) for c in coeffs))
    den_lcm = lcm(*(c.denominator for c in coeffs))
    return _factor_primes(num_gcd) | _factor_primes(den_lcm)


def affine_height(f: MultiPoly) -> Fraction:
    """Product over all places of max(1, |f|_v)."""
    coeffs = _nonzero_coeffs(f)
    h = max(Fraction(1), max(abs(c) for c in coeffs))
    for p in _factor_primes(lcm(*(c.denominator for c in coeffs))):
        h *= max(Fraction(1), gauss_norm(f, PlaceQ.prime(p)))
    return h


def projective_height(f: MultiPoly) -> Fraction:
    """Product over all places of |f|_v; invariant under rescaling f."""
    h = gauss_norm(f, PlaceQ.archimedean())
    for p in contributing_primes(f):
        h *= gauss_norm(f, PlaceQ.prime(p))
    return h


def vector_projective_height(coeffs: Sequence) -> Fraction:
    """Projective height of a plain coefficient vector."""
    return projective_height(MultiPoly(1, {(i,): c for i, c in enumerate(coeffs)
                                           if as_fraction(c)}))


# -- Mahler measure ------------------------------------------------------


def complex_roots(coeffs: Sequence[Fraction], dps: int = 40, maxsteps: int = 200):
    """Roots of sum(coeffs[i] x^i) by simultaneous iteration, as mpmath complexes."""
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    with mpmath.workdps(dps):
        poly = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in reversed(cs)]
        try:
            return mpmath.polyroots(poly, maxsteps=maxsteps, extraprec=80)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootFindingError(f"polyroots did not converge: {exc}") from exc


def mahler_measure(f: MultiPoly, tol: float = 1e-10) -> float:
    """|lead(f)| times the product of max(1, |root|) over the complex roots."""
    if f.nvars != 1:
        raise DimensionMismatchError("Mahler measure implemented for univariate polynomials")
    coeffs = [Fraction(0)] * (f.total_degree() + 1)
    for (e,), c in f.terms.items():
        coeffs[e] = c
    if all(c == 0 for c in coeffs):
        raise ZeroPolynomialError("Mahler measure of the zero polynomial is undefined")
    dps = max(30, int(-mpmath.log10(tol)) + 20)
    with mpmath.workdps(dps):
        lead = next(c for c in reversed(coeffs) if c)
        m = abs(mpmath.mpf(lead.numerator) / mpmath.mpf(lead.denominator))
        for r in complex_roots(coeffs, dps=dps):
            m *= max(mpmath.mpf(1), abs(r))
        return float(m)


# -- inequality checkers --------------------------------------------------


def check_gauss_lemma(f: MultiPoly, g: MultiPoly, p: int) -> bool:
    """|fg|_p == |f|_p * |g|_p, evaluated exactly.  Always true (Gauss)."""
    v = PlaceQ.prime(p)
    return gauss_norm(f * g, v) == gauss_norm(f, v) * gauss_norm(g, v)


def _support_indicator(f: MultiPoly) -> MultiPoly:
    return MultiPoly(f.nvars, {e: Fraction(1) for e in f.terms})


def check_product_bound(fs: Sequence[MultiPoly]) -> BoundReport:
    """H_A(f1...fr) <= N * prod H_A(f_j), N the largest coefficient-collection length."""
    if not fs:
        raise ValueError("need at least one polynomial")
    prod_poly = fs[0]
    indicator = _support_indicator(fs[0])
    for f in fs[1:]:
        prod_poly = prod_poly * f
        indicator = indicator * _support_indicator(f)
    # N bounds how many products of coefficients collapse onto one monomial
    n_bound = max(indicator.terms.values())
    lhs = affine_height(prod_poly)
    rhs = n_bound
    for f in fs:
        rhs *= affine_height(f)
    return BoundReport(lhs, rhs, lhs <= rhs, note=f"N={n_bound}")


def check_sum_bound(fs: Sequence[MultiPoly]) -> BoundReport:
    """H_A(f1+...+fr) <= r * prod H_A(f_j); integer inputs also satisfy
    H_A(sum) <= r * max_j H_A(f_j)."""
    if not fs:
        raise ValueError("need at least one polynomial")
    total = fs[0]
    for f in fs[1:]:
        total = total + f
    r = Fraction(len(fs))
    if not total:
        return BoundReport(Fraction(0), r, True, note="zero sum")
    lhs = affine_height(total)
    rhs = r
    for f in fs:
        rhs *= affine_height(f)
    holds = lhs <= rhs
    note = ""
    integral = all(c.denominator == 1 for f in fs for c in f.terms.values())
    if integral:
        rhs_max = r * max(affine_height(f) for f in fs)
        holds = holds and lhs <= rhs_max
        note = f"integer variant rhs={rhs_max}"
    return BoundReport(lhs, rhs, holds, note=note)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man) * Fraction(2) ** exp
    return -val if sign else val


def _exp_bounds(k: int, dps: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= e^k <= hi via interval arithmetic."""
    with mpmath.workdps(dps):
        iv = mpmath.iv
        old = iv.dps
        iv.dps = dps
        try:
            val = iv.e ** k
            return _mpf_to_fraction(val.a), _mpf_to_fraction(val.b)
        finally:
            iv.dps = old


def check_gelfand(fs: Sequence[MultiPoly]) -> BoundReport:
    """prod H(f_i) <= e^(d_1+...+d_n) * H(f_1...f_r) with d_i = deg(prod, x_i).

    The right side is transcendental; it is certified with exact rational
    bounds on powers of e, escalating precision until the comparison is
    decided, so a true inequality is never reported as failing.
    """
    if not fs:
        raise ValueError("need at least one polynomial")
    prod_poly = fs[0]
    for f in fs[1:]:
        prod_poly = prod_poly * f
    if not prod_poly:
        raise ZeroPolynomialError("product vanishes; heights undefined")
    lhs = Fraction(1)
    for f in fs:
        lhs *= projective_height(f)
    d_total = sum(prod_poly.degree_in(i) for i in range(prod_poly.nvars))
    h_prod = projective_height(prod_poly)
    for dps in (30, 60, 120, 240):
        lo, hi = _exp_bounds(d_total, dps)
        if lhs <= lo * h_prod:
            return BoundReport(lhs, lo * h_prod, True, note=f"e^{d_total} certified at {dps} dps")
        if lhs > hi * h_prod:
            return BoundReport(lhs, hi * h_prod, False, note=f"exceeds upper bound at {dps} dps")
    return BoundReport(lhs, hi * h_prod, lhs <= hi * h_prod, note="precision cap reached")


def check_derivative_bound(f: MultiPoly, j: int, v: PlaceQ) -> BoundReport:
    """|df/dx_j|_v <= |deg f|_v * |f|_v."""
    df = f.partial(j)
    lhs = gauss_norm(df, v) if df else Fraction(0)
    rhs = v.abs_value(f.total_degree()) * gauss_norm(f, v)
    return BoundReport(lhs, rhs, lhs <= rhs)


def check_evaluation_bound(f: MultiPoly, b: Sequence, v: PlaceQ) -> BoundReport:
    """|f(b)|_v <= min(|2d|_v^n, |2|_v^d) * max(1,|b|_v)^d * |f|_v."""
    b = [as_fraction(x) for x in b]
    if len(b) != f.nvars:
        raise DimensionMismatchError("evaluation point has wrong length")
    d = f.total_degree()
    n = f.nvars
    lhs = v.abs_value(f.evaluate(b))
    b_norm = max((v.abs_value(x) for x in b), default=Fraction(0))
    const = min(v.abs_value(2 * d) ** n, v.abs_value(2) ** d)
    rhs = const * max(Fraction(1), b_norm) ** d * gauss_norm(f, v)
    return BoundReport(lhs, rhs, lhs <= rhs)


# -- shifted and scaled polynomials ---------------------------------------


def shift_poly(f: MultiPoly, b: Sequence) -> MultiPoly:
    """f(x + b)."""
    return f.shift([as_fraction(x) for x in b])


def scale_poly(f: MultiPoly, u: Sequence) -> MultiPoly:
    """f(u * x) componentwise."""
    return f.scale([as_fraction(x) for x in u])


def affine_subst(f: MultiPoly, u: Sequence, b: Sequence) -> MultiPoly:
    """f(u * x + b) componentwise."""
    return f.affine_substitute([as_fraction(x) for x in u], [as_fraction(x) for x in b])


def _vec_norm(vals: Sequence[Fraction], v: PlaceQ) -> Fraction:
    return max((v.abs_value(x) for x in vals), default=Fraction(0))


def check_shift_bound(f: MultiPoly, b: Sequence, v: PlaceQ) -> BoundReport:
    """|f(x+b)|_v <= |2|_v^(2d) * max(1,|b|_v)^d * |f|_v."""
    b = [as_fraction(x) for x in b]
    d = f.total_degree()
    lhs = gauss_norm(shift_poly(f, b), v)
    rhs = v.abs_value(2) ** (2 * d) * max(Fraction(1), _vec_norm(b, v)) ** d * gauss_norm(f, v)
    return BoundReport(lhs, rhs, lhs <= rhs)


def check_scale_bound(f: MultiPoly, u: Sequence, v: PlaceQ) -> BoundReport:
    """|f(ux)|_v <= max(1,|u|_v)^d * |f|_v."""
    u = [as_fraction(x) for x in u]
    g = scale_poly(f, u)
    d = f.total_degree()
    lhs = gauss_norm(g, v) if g else Fraction(0)
    rhs = max(Fraction(1), _vec_norm(u, v)) ** d * gauss_norm(f, v)
    return BoundReport(lhs, rhs, lhs <= rhs)


def check_affine_subst_bound(f: MultiPoly, u: Sequence, b: Sequence, v: PlaceQ) -> BoundReport:
    """|f(ux+b)|_v <= |2|_v^(2d) * max(1,|u|_v)^d * max(1,|b|_v)^d * |f|_v."""
    u = [as_fraction(x) for x in u]
    b = [as_fraction(x) for x in b]
    g = affine_subst(f, u, b)
    d = f.total_degree()
    lhs = gauss_norm(g, v) if g else Fraction(0)
    rhs = (v.abs_value(2) ** (2 * d)
           * max(Fraction(1), _vec_norm(u, v)) ** d
           * max(Fraction(1), _vec_norm(b, v)) ** d
           * gauss_norm(f, v))
    return BoundReport(lhs, rhs, lhs <= rhs)


def _affine_vector_height(vals: Sequence[Fraction]) -> Fraction:
    """Height of the point [1, v1, ..., vn]."""
    from .projpoint import height as point_height, normalize
    return Fraction(point_height(normalize([Fraction(1), *vals])))


def check_shift_height_bound(f: MultiPoly, b: Sequence) -> BoundReport:
    """H(f_b) <= 4^d * H(b)^d * H(f) with projective polynomial heights."""
    b = [as_fraction(x) for x in b]
    d = f.total_degree()
    lhs = projective_height(shift_poly(f, b))
    rhs = Fraction(4) ** d * _affine_vector_height(b) ** d * projective_height(f)
    return BoundReport(lhs, rhs, lhs <= rhs)


def check_scale_height_bound(f: MultiPoly, u: Sequence) -> BoundReport:
    """H(f_u) <= H(u)^d * H(f)."""
    u = [as_fraction(x) for x in u]
    g = scale_poly(f, u)
    if not g:
        raise ZeroPolynomialError("scaled polynomial vanished (zero scale factor)")
    d = f.total_degree()
    lhs = projective_height(g)
    rhs = _affine_vector_height(u) ** d * projective_height(f)
    return BoundReport(lhs, rhs, lhs <= rhs)


def eval_homogeneous(f: MultiPoly, alpha: Sequence) -> tuple[Fraction, BoundReport]:
    """Value of a homogeneous f at alpha, with the per-place bound report.

    Checks |f(a)|_v <= |c(d,n)|_v * max_j |a_j|_v^d * |f|_v at the real place
    and at every prime dividing the data; c(d,n) = binom(n+d, d) enters only
    at the real place.  The reported lhs/rhs are the real-place sides, and
    ``holds`` is the conjunction over all checked places.
    """
    alpha = [as_fraction(x) for x in alpha]
    if len(alpha) != f.nvars:
        raise DimensionMismatchError("evaluation point has wrong length")
    if not f.is_homogeneous():
        raise NotHomogeneousError("polynomial is not homogeneous")
    d = f.total_degree()
    n = f.nvars - 1
    c_dn = comb(n + d, d)
    value = f.evaluate(alpha)

    primes = set(contributing_primes(f))
    for x in alpha:
        if x:
            primes |= _factor_primes(x.numerator) | _factor_primes(x.denominator)
    if value:
        primes |= _factor_primes(value.numerator) | _factor_primes(value.denominator)

    arch = PlaceQ.archimedean()
    lhs = arch.abs_value(value)
    rhs = Fraction(c_dn) * _vec_norm(alpha, arch) ** d * gauss_norm(f, arch)
    holds = lhs <= rhs
    for p in sorted(primes):
        v = PlaceQ.prime(p)
        side = v.abs_value(value)
        bound = _vec_norm(alpha, v) ** d * gauss_norm(f, v)
        holds = holds and side <= bound
    return value, BoundReport(lhs, rhs, holds, note=f"places checked: oo and {len(primes)} primes")
