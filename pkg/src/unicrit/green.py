"""Archimedean escape rates for the family z^d + c.

The escape rate of a point x under z -> z^d + c is the canonical local
height at the archimedean place; taking x = c gives the parameter-space
Green's function, zero exactly on the multibrot set.  Escape is detected
against a radius that certifies monotone divergence, and the limit is
evaluated with a geometrically convergent tail correction, so escaping
parameters get ~1e-15 accuracy after a handful of iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "GreenValue",
    "Exterior",
    "BoundedAtBudget",
    "escape_threshold",
    "green_arch",
    "local_height_arch",
    "membership",
]

_TAIL_CUTOFF = 1e-15
# beyond this modulus the remaining tail is below 1e-15 for any sane c
_HUGE = 1e30


@dataclass(frozen=True)
class GreenValue:
    """Escape rate in natural-log units; value is 0 for bounded orbits."""

    value: float
    escaped: bool
    iterations_used: int
    error_bound: float


@dataclass(frozen=True)
class Exterior:
    """Escape certified: the parameter lies outside the multibrot set."""

    green: GreenValue


@dataclass(frozen=True)
class BoundedAtBudget:
    """No escape within the iteration budget; membership stays undecided.

    Iteration can never certify that a parameter lies inside (or on the
    boundary of) the multibrot set, so this is deliberately not an
    "interior" verdict.
    """

    iterations: int


def escape_threshold(d: int, c: complex) -> float:
    """Any |z| above this grows monotonically to infinity under z^d + c."""
    return max(2.0 ** (1.0 / (d - 1)), abs(c))


def local_height_arch(
    d: int,
    c: complex,
    x: complex,
    max_iter: int = 200,
    escape_radius: float | None = None,
) -> GreenValue:
    """Escape rate of the point x under z -> z^d + c.

    Returns lim d^-n log max(1, |f^n(x)|): zero when the orbit stays within
    the escape radius for max_iter steps, otherwise the escape-time value
    d^-n log|f^n(x)| plus a tail correction summed until its increments
    drop below 1e-15.  error_bound is twice the first omitted increment
    (escaped) or the d^-max_iter envelope (bounded verdicts).
    """
    if d < 2:
        raise ValueError("family degree d must be at least 2")
    threshold = escape_threshold(d, c)
    if escape_radius is None:
        escape_radius = threshold + 1.0
    elif escape_radius < threshold:
        raise ValueError(
            f"escape radius {escape_radius} cannot certify escape; need >= {threshold}"
        )
    z = complex(x)
    n = 0
    while abs(z) <= escape_radius:
        if n >= max_iter:
            bound = (math.log(escape_radius) + math.log(2.0)) / d**max_iter
            return GreenValue(value=0.0, escaped=False, iterations_used=max_iter, error_bound=bound)
        z = z**d + c
        n += 1
    # |z| > escape_radius at step n: value = d^-n log|z| + tail
    value = math.log(abs(z)) / d**n
    k = n
    scale = 1.0 / d ** (n + 1)
    while k < max_iter:
        if abs(z) > _HUGE:
            break
        zd = z**d
        increment = scale * math.log(abs(1.0 + c / zd))
        value += increment
        z = zd + c
        k += 1
        scale /= d
        if abs(increment) < _TAIL_CUTOFF:
            break
    # first omitted increment, bounded via |log|1+w|| <= 2|w| for |w| <= 1/2
    if abs(z) > _HUGE:
        omitted = 0.0
    else:
        omitted = scale * 2.0 * abs(c) / abs(z) ** d
    return GreenValue(value=value, escaped=True, iterations_used=k, error_bound=2.0 * omitted)


def green_arch(
    d: int,
    c: complex,
    max_iter: int = 200,
    escape_radius: float | None = None,
) -> GreenValue:
    """Parameter-space Green's function: the escape rate of the critical value.

    Shares its code path with local_height_arch (x = c), so the two agree
    exactly by construction.
    """
    return local_height_arch(d, c, c, max_iter=max_iter, escape_radius=escape_radius)


def membership(d: int, c: complex, budget: int) -> Exterior | BoundedAtBudget:
    """Heuristic multibrot membership: Exterior, or still bounded at budget."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    gv = green_arch(d, c, max_iter=budget)
    if gv.escaped:
        return Exterior(green=gv)
    return BoundedAtBudget(iterations=budget)
