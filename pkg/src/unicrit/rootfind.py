"""Simultaneous complex root extraction for dynamical polynomials.

Ehrlich-Aberth iteration in double precision with synchronized (Jacobi)
sweeps, seeded from Newton-polygon radii with golden-angle phases, then
polished by Newton steps carried out in 80-bit extended precision.  The
residual reported for a root z is |p(z)| relative to sum |a_k||z|^k, i.e. a
backward-error measure that stays meaningful when coefficients span many
orders of magnitude (Gleason polynomials of degree 512 have 90-digit
coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NoConvergenceError
from .exactpoly import IntPolynomial, is_squarefree

__all__ = [
    "ComplexRootSet",
    "aberth_roots",
    "relative_residual",
    "roots_in_disk",
    "critical_orbit_complex",
    "gleason_roots",
    "refine_critical_orbit_root",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ComplexRootSet:
    """All roots of a squarefree polynomial plus a residual bound.

    max_residual bounds |p(root)| / sum_k |a_k| |root|^k over the listed
    roots, evaluated in extended precision.
    """

    source_degree: int
    roots: tuple[complex, ...]
    max_residual: float


def _scaled_coeffs(p: IntPolynomial) -> list[float]:
    """Coefficients as floats, globally scaled by a power of two.

    Scaling leaves the roots and the relative residual unchanged while
    keeping the largest coefficient near 1, so evaluation cannot overflow
    for the degrees this package works at.
    """
    bits = max(a.bit_length() for a in p.coeffs if a)
    shift = bits - 1
    return [float(Fraction(a, 1 << shift)) for a in p.coeffs]


def _horner_vec(coeffs, z):
    acc = np.zeros_like(z)
    for a in reversed(coeffs):
        acc = acc * z + a
    return acc


def _initial_points(coeffs: list[float], degree: int) -> np.ndarray:
    """Newton-polygon (upper convex hull) radii, golden-angle phases."""
    pts = [(i, math.log(abs(a))) for i, a in enumerate(coeffs) if a != 0.0]
    hull = [pts[0]]
    for pt in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x2) <= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    radii = np.empty(degree)
    # leading zero coefficients mean exact roots at the origin; seed those
    # iterates on a tiny circle
    pos = pts[0][0]
    radii[:pos] = 1e-6
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        r = math.exp((y1 - y2) / (k2 - k1))
        radii[pos : pos + (k2 - k1)] = r
        pos += k2 - k1
    angles = 2.0 * math.pi * ((_GOLDEN * np.arange(degree)) % 1.0) + 0.4
    return radii * np.exp(1j * angles)


def aberth_roots(
    p: IntPolynomial,
    tol: float = 1e-12,
    max_sweeps: int = 500,
    polish_steps: int = 4,
) -> ComplexRootSet:
    """All complex roots of a squarefree polynomial, simultaneously.

    Raises NoConvergenceError if the sweep budget runs out or the final
    relative residual exceeds tol; callers may retry at higher precision.
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree at least 1")
    if not is_squarefree(p):
        raise ValueError("aberth_roots requires a squarefree polynomial")
    coeffs = _scaled_coeffs(p)
    degree = p.degree
    dcoeffs = [k * a for k, a in enumerate(coeffs)][1:]

    z = _initial_points(coeffs, degree)
    _wander_cap = 2.0 * float(np.max(np.abs(z))) + 1.0
    abs_coeffs = np.abs(coeffs)
    eps = np.finfo(np.float64).eps
    active = np.ones(degree, dtype=bool)
    converged = False
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for _ in range(max_sweeps):
            val = _horner_vec(coeffs, z)
            scale = _horner_vec(abs_coeffs, np.abs(z))
            # freeze a root once |p(z)| sits at the double-precision noise floor
            active &= np.abs(val) > 4.0 * eps * scale
            if not active.any():
                converged = True
                break
            dval = _horner_vec(dcoeffs, z)
            dval = np.where(dval == 0, 1e-300, dval)
            w = val / dval
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            diff = np.where(diff == 0, 1e-300, diff)
            s = (1.0 / diff).sum(axis=1)
            denom = 1.0 - w * s
            denom = np.where(denom == 0, 1e-300, denom)
            delta = np.where(active, w / denom, 0.0)
            z = z - delta
            # keep wandering iterates inside the root bound so high powers of
            # |z| cannot overflow the evaluation
            far = np.abs(z) > _wander_cap
            if far.any():
                z = np.where(far, z * (_wander_cap / np.abs(z)), z)
            bad = ~np.isfinite(z)
            if bad.any():
                z = np.where(bad, _wander_cap * np.exp(2j * math.pi * _GOLDEN * np.arange(degree)), z)
            tiny = np.abs(delta) < 1e-15 * (1.0 + np.abs(z))
            active &= ~tiny
    if not converged and active.any():
        raise NoConvergenceError(f"Aberth did not settle within {max_sweeps} sweeps")

    # Newton polish in extended precision.  Steps are accepted only when
    # they decrease |p| AND stay local: coefficient evaluation of these
    # polynomials cancels heavily near the multibrot set, so an unbounded
    # Newton step can tunnel to a spurious |p| dip far from any root.
    cl = np.array(coeffs, dtype=np.clongdouble)
    dl = np.array(dcoeffs, dtype=np.clongdouble)
    zl = z.astype(np.clongdouble)
    val = _horner_vec(cl, zl)
    for _ in range(polish_steps):
        dval = _horner_vec(dl, zl)
        dval = np.where(dval == 0, np.clongdouble(1e-300), dval)
        step = val / dval
        local = np.abs(step) < 1e-3 * (1.0 + np.abs(zl))
        cand = np.where(local, zl - step, zl)
        cand_val = _horner_vec(cl, cand)
        better = local & (np.abs(cand_val) < np.abs(val))
        if not bool(better.any()):
            break
        zl = np.where(better, cand, zl)
        val = np.where(better, cand_val, val)

    scale = _horner_vec(np.abs(cl).real, np.abs(zl).real)
    # |p(z)| <= scale always, so a zero scale forces a zero value (root at 0)
    rel = np.abs(val).real / np.where(scale == 0, 1.0, scale)
    max_rel = float(rel.max())
    if max_rel > tol:
        raise NoConvergenceError(f"residual {max_rel:.3e} above tolerance {tol:.3e}")
    roots = sorted((complex(v) for v in zl), key=lambda v: (v.real, v.imag))
    return ComplexRootSet(source_degree=degree, roots=tuple(roots), max_residual=max_rel)


def relative_residual(p: IntPolynomial, z: complex) -> float:
    """|p(z)| / sum |a_k||z|^k evaluated in extended precision."""
    coeffs = np.array(_scaled_coeffs(p), dtype=np.clongdouble)
    val = _horner_vec(coeffs, np.clongdouble(z))
    scale = _horner_vec(np.abs(coeffs).real, np.longdouble(abs(z)))
    if scale == 0:
        return 0.0
    return float(np.abs(val).real / scale)


def roots_in_disk(rs: ComplexRootSet, center: complex, radius: float) -> int:
    """Count roots with |root - center| <= radius."""
    return sum(1 for r in rs.roots if abs(r - center) <= radius)


def critical_orbit_complex(d: int, c: complex, n: int) -> list[complex]:
    """Floating orbit [f^1(0), ..., f^n(0)] at parameter c."""
    out = [c]
    for _ in range(n - 1):
        out.append(out[-1] ** d + c)
    return out


def _orbit_newton_ratio(d: int, n: int, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (u, du) with u = f^n(0) and du = d u/dc at the parameters z.

    Escaping entries freeze once |u| passes a cutoff; their truncated
    Newton ratio still points back toward the bounded region.
    """
    u = z.astype(np.complex128, copy=True)
    du = np.ones_like(u)
    frozen = np.zeros(u.shape, dtype=bool)
    for _ in range(n - 1):
        frozen |= np.abs(u) > 1e30
        safe = np.where(frozen, 0.0, u)
        du = np.where(frozen, du, d * safe ** (d - 1) * du + 1.0)
        u = np.where(frozen, u, safe**d + z)
    return u, du


def _deflated_newton_candidates(d: int, n: int, frozen: np.ndarray) -> list[complex]:
    """Hunt unclaimed roots of f^n(0) by Newton iteration on the deflation.

    The field u'/u - sum 1/(z - r_f) over found roots r_f cancels every
    found root, so its Newton flow is attracted only by the vacancies.
    Seeds flood the neighborhood of each found root at half its
    nearest-neighbor gap; non-converged seeds are discarded.
    """
    if not len(frozen):
        return []
    gaps = np.abs(frozen[:, None] - frozen[None, :])
    np.fill_diagonal(gaps, np.inf)
    nn = gaps.min(axis=1)
    offsets = np.exp(2j * math.pi * np.arange(8) / 8.0 + 0.39j)
    seeds = (frozen[:, None] + 0.5 * nn[:, None] * offsets[None, :]).ravel()
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for _ in range(80):
            u, du = _orbit_newton_ratio(d, n, seeds)
            u = np.where(u == 0, 1e-300, u)
            g = du / u - (1.0 / (seeds[:, None] - frozen[None, :])).sum(axis=1)
            g = np.where(g == 0, 1e-300, g)
            step = 1.0 / g
            big = np.abs(step) > 0.5
            step = np.where(big, 0.5 * step / np.abs(step), step)
            seeds = seeds - step
        good = np.isfinite(seeds) & (np.abs(step) < 1e-10)
        u, _ = _orbit_newton_ratio(d, n, seeds)
        good &= np.abs(u) < 1e-8
        if len(frozen):
            good &= np.abs(seeds[:, None] - frozen[None, :]).min(axis=1) > 1e-7
    return [complex(s) for s in seeds[good]]


def _vacancy_candidates(d: int, n: int, frozen: np.ndarray, need: int) -> list[complex]:
    """Estimate locations of roots of f^n(0) not yet claimed by an iterate.

    Sources, in order of reliability: conjugates of found roots whose
    mirror partner is absent (the true root set is conjugation-symmetric),
    then deflated-Newton hunting around the found roots.  Returns at most
    `need` candidates, deterministically ordered.
    """
    candidates: list[complex] = []
    if len(frozen):
        mirror_gap = np.abs(frozen[:, None] - frozen[None, :].conj()).min(axis=1)
        for r in frozen[mirror_gap > 1e-6]:
            candidates.append(complex(r.conjugate()))
    if len(candidates) < need:
        candidates.extend(_deflated_newton_candidates(d, n, frozen))
    # dedupe, deterministic order
    unique: list[complex] = []
    for c in sorted(candidates, key=lambda v: (v.real, v.imag)):
        if all(abs(c - u) > 1e-9 for u in unique):
            unique.append(c)
    return unique[:need]


@lru_cache(maxsize=None)
def gleason_roots(
    d: int,
    n: int,
    tol: float = 1e-12,
    max_sweeps: int = 2000,
    period_tol: float = 1e-8,
) -> ComplexRootSet:
    """All roots of the period-n Gleason polynomial, at full double accuracy.

    Dense coefficient evaluation of these polynomials cancels so heavily
    near the multibrot set that double-precision Aberth on the coefficients
    stalls with root errors far above machine precision once the degree
    passes ~60.  This variant runs Ehrlich-Aberth on f^n(0), whose value
    and derivative come from the orbit recurrence (forward stable on the
    bounded region), finds all d^(n-1) period-dividing-n centers, then
    classifies each by minimal period and returns the slice of minimal
    period exactly n.  Per-divisor counts are validated against the
    closed-form Gleason degrees.
    """
    from .dynpoly import critical_orbit_poly, gleason, gleason_degree  # deferred: avoids import cycle

    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    total = d ** (n - 1)
    # seed from the Newton polygon of f^n(0) for graded spacing, clamped to
    # the disk |c| <= 2^(1/(d-1)) that contains every center
    bound = 2.0 ** (1.0 / (d - 1))
    z = _initial_points(_scaled_coeffs(critical_orbit_poly(d, n)), total)
    high = np.abs(z) > 1.2 * bound
    if high.any():
        # spread the clamped iterates over a thin annulus, keeping phases
        spread = 1.2 * bound + 0.08 * (np.arange(total) % 7)
        z = np.where(high, z * (spread / np.abs(z)), z)
    cap = bound + 0.5
    eps = np.finfo(np.float64).eps
    active = np.ones(total, dtype=bool)
    converged = False
    prev_delta = np.zeros_like(z)
    last_active = total + 1
    reseeds_left = 4
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for sweep in range(max_sweeps):
            u, du = _orbit_newton_ratio(d, n, z)
            du = np.where(du == 0, 1e-300, du)
            w = u / du
            active &= np.abs(w) > 2.0 * eps * (1.0 + np.abs(z))
            if not active.any():
                converged = True
                break
            if sweep % 100 == 99:
                # excess iterates can deadlock outside the crowded root
                # region: when no progress is being made, teleport them onto
                # vacancy estimates instead of waiting out the barrier
                if int(active.sum()) >= last_active and reseeds_left > 0:
                    reseeds_left -= 1
                    cand = _vacancy_candidates(d, n, z[~active], int(active.sum()))
                    if cand:
                        idx = np.where(active)[0]
                        for i, c in zip(idx, cand):
                            z[i] = c
                        prev_delta[:] = 0.0
                        continue
                last_active = int(active.sum())
            if total > 1:
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, np.inf)
                diff = np.where(diff == 0, 1e-300, diff)
                s = (1.0 / diff).sum(axis=1)
            else:
                s = np.zeros_like(z)
            denom = 1.0 - w * s
            denom = np.where(denom == 0, 1e-300, denom)
            delta = np.where(active, w / denom, 0.0)
            # damp steps that reverse the previous one: breaks the period-2
            # limit cycles the synchronized (Jacobi) update is prone to
            align = (delta * prev_delta.conj()).real
            osc = align < -0.25 * np.abs(delta) * np.abs(prev_delta)
            delta = np.where(osc, 0.5 * delta, delta)
            z = z - delta
            prev_delta = delta
            far = np.abs(z) > cap
            if far.any():
                z = np.where(far, z * (cap / np.abs(z)), z)
            active &= ~(np.abs(delta) < 1e-16 * (1.0 + np.abs(z)))
    if not converged and active.any():
        raise NoConvergenceError(f"orbit Aberth did not settle within {max_sweeps} sweeps")

    # classify by minimal period: first orbit index where f^l(0) returns to 0
    orbit = z.copy()
    minimal = np.zeros(total, dtype=int)
    for ell in range(1, n + 1):
        hit = (minimal == 0) & (np.abs(orbit) < period_tol)
        minimal[hit] = ell
        orbit = orbit**d + z
    for ell in range(1, n + 1):
        if n % ell:
            continue
        count = int((minimal == ell).sum())
        if count != gleason_degree(d, ell):
            raise NoConvergenceError(
                f"period-{ell} center count {count} != degree {gleason_degree(d, ell)}"
            )
    if int((~np.isin(minimal, [ell for ell in range(1, n + 1) if n % ell == 0])).sum()):
        raise NoConvergenceError("some centers classified with a period not dividing n")

    selected = z[minimal == n]
    selected = np.array([refine_critical_orbit_root(d, n, c, steps=3) for c in selected])
    poly = gleason(d, n).poly
    max_rel = max((relative_residual(poly, complex(c)) for c in selected), default=0.0)
    if max_rel > tol:
        raise NoConvergenceError(f"residual {max_rel:.3e} above tolerance {tol:.3e}")
    roots = sorted((complex(v) for v in selected), key=lambda v: (v.real, v.imag))
    return ComplexRootSet(source_degree=len(roots), roots=tuple(roots), max_residual=max_rel)


def refine_critical_orbit_root(d: int, n: int, c0: complex, steps: int = 10) -> complex:
    """Newton-refine c0 toward a root of f^n(0), iterating the orbit map.

    This evaluates the orbit recurrence directly (forward stable for
    bounded orbits), so it sharpens roots of Gleason polynomials well past
    what dense coefficient evaluation can resolve.
    """
    c = complex(c0)
    for _ in range(steps):
        u, du = c, 1.0 + 0j
        for _ in range(n - 1):
            du = d * u ** (d - 1) * du + 1.0
            u = u**d + c
        if du == 0:
            break
        step = u / du
        c = c - step
        if abs(step) < 1e-15 * (1.0 + abs(c)):
            break
    return c
