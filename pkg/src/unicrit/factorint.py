"""Integer factorization: trial division, Miller-Rabin, Brent-style Pollard rho.

Everything here is deterministic: fixed witness sets and a fixed sequence of
rho parameters, so repeated runs factor the same way.  Numbers that resist
the rho budget are returned as an explicit composite cofactor instead of
being silently dropped.
"""

from __future__ import annotations

import math

# Deterministic Miller-Rabin witness set: correct for all n < 3.3 * 10^24.
_MR_BASES_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_BOUND_SMALL = 3_317_044_064_679_887_385_961_981
# Beyond that, a fixed list of 40 prime bases (strong probable-prime test).
_MR_BASES_LARGE = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173,
)

DEFAULT_TRIAL_BOUND = 10**6
# Total rho iterations allowed per composite before giving up on it.
DEFAULT_RHO_BUDGET = 1 << 21


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test (deterministic for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES_SMALL if n < _MR_BOUND_SMALL else _MR_BASES_LARGE
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho_brent(n: int, budget: int) -> tuple[int, int]:
    """Search for a nontrivial factor of odd composite n.

    Returns (factor, iterations_spent); factor == 1 means the budget ran out.
    """
    spent = 0
    for c in range(1, 64):
        if spent >= budget:
            break
        y, m = 2 + c, 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                spent += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # Backtrack one step at a time to split the batched gcd.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(x - ys, n)
        if 1 < g < n:
            return g, spent
    return 1, spent


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> tuple[list[tuple[int, int]], int]:
    """Factor n >= 1 into (sorted prime powers, leftover cofactor).

    The cofactor is 1 on complete factorizations; otherwise it is a composite
    coprime to every listed prime, left unfactored because the rho budget ran
    out.  All listed primes are certified (or strong-probable) primes.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors: dict[int, int] = {}
    if n % 2 == 0:
        e = (n & -n).bit_length() - 1
        factors[2] = e
        n >>= e
    p = 3
    while p * p <= n and p <= trial_bound:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
        p += 2
    cofactor = 1
    stack = [n] if n > 1 else []
    budget = rho_budget
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= trial_bound * trial_bound or is_probable_prime(m):
            # Below the trial bound squared, a survivor of trial division is prime.
            factors[m] = factors.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        f, spent = _pollard_rho_brent(m, budget)
        budget -= spent
        if f == 1:
            cofactor *= m
        else:
            stack.extend((f, m // f))
    return sorted(factors.items()), cofactor
