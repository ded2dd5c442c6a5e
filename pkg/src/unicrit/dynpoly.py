"""Dynamical polynomials of the family z^d + c.

Three constructions, all exact over Z[c]:

* critical-orbit polynomials: the images of the critical point 0 as
  polynomials in the parameter, built by the recurrence p_1 = c,
  p_{k+1} = p_k^d + c;
* Gleason polynomials: the Mobius product over critical-orbit polynomials
  whose roots are exactly the parameters where 0 is periodic of a given
  minimal period;
* Misiurewicz polynomials: the strictly-preperiodic analogue, isolated by
  exact division of p_{m+n} - p_m by every lower-profile factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exactpoly
from .errors import DegenerateEmptyError, ResourceLimitError
from .exactpoly import C, IntPolynomial, mobius

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "GleasonPoly",
    "MisiurewiczPoly",
    "critical_orbit_poly",
    "critical_orbit_values",
    "gleason",
    "gleason_degree",
    "gleason_value_at",
    "misiurewicz",
]

# Keeps exact constructions at desk scale: d^(n-1) <= 2^16.
DEFAULT_DEGREE_CAP = 1 << 16


def _check_family(d: int) -> None:
    if d < 2:
        raise ValueError("family degree d must be at least 2")


@lru_cache(maxsize=None)
def critical_orbit_poly(d: int, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> IntPolynomial:
    """The n-th image of the critical point, f_{d,c}^n(0), in Z[c].

    Monic of degree d^(n-1).  Raises ResourceLimitError when that degree
    exceeds degree_cap, which signals a runaway input rather than a result
    worth waiting for.
    """
    _check_family(d)
    if n < 1:
        raise ValueError("orbit index n must be at least 1")
    if d ** (n - 1) > degree_cap:
        raise ResourceLimitError(f"degree d^(n-1) = {d}^{n - 1} exceeds cap {degree_cap}")
    if n == 1:
        return C
    prev = critical_orbit_poly(d, n - 1, degree_cap)
    return prev**d + C


def gleason_degree(d: int, n: int) -> int:
    """Closed-form degree of the period-n Gleason polynomial."""
    _check_family(d)
    if n < 1:
        raise ValueError("period n must be at least 1")
    return sum(mobius(n // ell) * d ** (ell - 1) for ell in range(1, n + 1) if n % ell == 0)


@dataclass(frozen=True)
class GleasonPoly:
    """Monic polynomial whose roots make 0 periodic of minimal period n."""

    d: int
    n: int
    poly: IntPolynomial
    degree: int


@lru_cache(maxsize=None)
def gleason(d: int, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> GleasonPoly:
    """Construct the period-n Gleason polynomial of the degree-d family.

    Realized as (product of Mobius-positive orbit factors) exactly divided
    by (product of Mobius-negative factors).  The result is validated to be
    monic, of the closed-form degree, and squarefree.
    """
    _check_family(d)
    if n < 1:
        raise ValueError("period n must be at least 1")
    num = exactpoly.ONE
    den = exactpoly.ONE
    for ell in range(1, n + 1):
        if n % ell:
            continue
        mu = mobius(n // ell)
        if mu == 1:
            num = num * critical_orbit_poly(d, ell, degree_cap)
        elif mu == -1:
            den = den * critical_orbit_poly(d, ell, degree_cap)
    poly = num.exact_div(den)
    expected = gleason_degree(d, n)
    if not poly.is_monic or poly.degree != expected:
        raise AssertionError(f"Gleason construction broke its contract at (d={d}, n={n})")
    if not exactpoly.is_squarefree(poly):
        raise AssertionError(f"Gleason polynomial (d={d}, n={n}) is not squarefree")
    return GleasonPoly(d=d, n=n, poly=poly, degree=expected)


@dataclass(frozen=True)
class MisiurewiczPoly:
    """Monic polynomial whose roots give 0 a strictly preperiodic orbit.

    m is the tail length (m >= 2) and n the eventual period; roots satisfy
    f^(m+n)(0) = f^m(0) with no lower-profile orbit relation.
    """

    d: int
    m: int
    n: int
    poly: IntPolynomial


def _divide_out(poly: IntPolynomial, factor: IntPolynomial) -> IntPolynomial:
    """Strip the largest power of factor dividing poly."""
    if factor.degree < 1:
        return poly
    while True:
        q = exactpoly._try_exact_div(poly, factor)
        if q is None:
            return poly
        poly = q


@lru_cache(maxsize=None)
def misiurewicz(d: int, m: int, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> MisiurewiczPoly:
    """Construct the tail-m, period-n Misiurewicz polynomial.

    Starts from f^(m+n)(0) - f^m(0) and exact-divides by the largest powers
    of every lower-profile factor: Gleason polynomials of periods dividing
    n, and Misiurewicz polynomials with smaller tail (or equal tail and a
    proper divisor period).  Raises DegenerateEmptyError if nothing of the
    requested profile remains.
    """
    _check_family(d)
    if m < 2:
        raise ValueError("Misiurewicz tail m must be at least 2")
    if n < 1:
        raise ValueError("period n must be at least 1")
    poly = critical_orbit_poly(d, m + n, degree_cap) - critical_orbit_poly(d, m, degree_cap)
    divisor_periods = [ell for ell in range(1, n + 1) if n % ell == 0]
    for ell in divisor_periods:
        poly = _divide_out(poly, gleason(d, ell, degree_cap).poly)
    for m2 in range(2, m + 1):
        for n2 in divisor_periods:
            if (m2, n2) == (m, n):
                continue
            try:
                lower = misiurewicz(d, m2, n2, degree_cap)
            except DegenerateEmptyError:
                continue
            poly = _divide_out(poly, lower.poly)
    if poly.degree < 1:
        raise DegenerateEmptyError(
            f"no strictly preperiodic parameters with tail {m}, period {n} (d={d})"
        )
    if not poly.is_monic:
        raise AssertionError(f"Misiurewicz construction broke monicity at (d={d}, m={m}, n={n})")
    return MisiurewiczPoly(d=d, m=m, n=n, poly=poly)


def critical_orbit_values(d: int, alpha: Fraction, n: int) -> list[Fraction]:
    """Exact orbit values [f^1(0), ..., f^n(0)] at the parameter alpha."""
    _check_family(d)
    alpha = Fraction(alpha)
    values = [alpha]
    for _ in range(n - 1):
        values.append(values[-1] ** d + alpha)
    return values


def gleason_value_at(d: int, n: int, alpha: Fraction, degree_cap: int = DEFAULT_DEGREE_CAP) -> Fraction:
    """Exact value of the period-n Gleason polynomial at a rational parameter.

    Evaluates the Mobius product on orbit values, which avoids constructing
    the degree-d^(n-1) polynomial; only when an orbit value vanishes (alpha
    itself PCF) does it fall back to building and evaluating the polynomial.
    """
    _check_family(d)
    if n < 1:
        raise ValueError("period n must be at least 1")
    alpha = Fraction(alpha)
    orbit = critical_orbit_values(d, alpha, n)
    factors = []
    for ell in range(1, n + 1):
        if n % ell:
            continue
        mu = mobius(n // ell)
        if mu == 0:
            continue
        if orbit[ell - 1] == 0:
            # a vanishing orbit factor makes the product form 0/0-ambiguous
            return gleason(d, n, degree_cap).poly(alpha)
        factors.append((orbit[ell - 1], mu))
    value = Fraction(1)
    for base, mu in factors:
        value = value * base if mu == 1 else value / base
    return value
