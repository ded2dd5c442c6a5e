"""Dense univariate polynomials over arbitrary-precision integers.

Polynomials live in Z[c], with c the parameter of the family z^d + c.
Coefficients are stored ascending, trailing zeros trimmed, so the zero
polynomial has an empty coefficient tuple and degree -1.

The resultant is computed modulo a pool of word-sized primes whose product
exceeds twice the Hadamard bound, then reconstructed by Chinese
remaindering; this keeps the cost proportional to the answer rather than to
the coefficient blowup of a subresultant chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDivisibleError
from .factorint import is_probable_prime

__all__ = [
    "IntPolynomial",
    "ZERO",
    "ONE",
    "C",
    "mobius",
    "resultant",
    "is_squarefree",
    "log_abs",
    "poly_to_text",
    "poly_from_text",
]


@dataclass(init=False, eq=True)
class IntPolynomial:
    """A polynomial in Z[c], dense ascending coefficients.

    >>> IntPolynomial(0, 1) + IntPolynomial(1, 1)
    IntPolynomial('2c + 1')
    """

    coeffs: tuple[int, ...]

    def __init__(self, *coeffs: int):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        self.coeffs = tuple(int(a) for a in coeffs[:end])

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPolynomial":
        return cls(*coeffs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(
            *(a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0))
        )

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(
            *(a - b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0))
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(*(-a for a in self.coeffs))

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(*(a * other for a in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(*out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(*(i * a for i, a in enumerate(self.coeffs) if i > 0))

    def __call__(self, x):
        """Evaluate by Horner's scheme; exact for int and Fraction arguments."""
        acc = x * 0  # zero in the argument's arithmetic domain
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient q with self == other * q in Z[c].

        Raises NotDivisibleError when no such integer-coefficient quotient
        exists; that always signals a construction bug upstream.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = _try_exact_div(self, other)
        if q is None:
            raise NotDivisibleError(f"{other!r} does not divide {self!r}")
        return q

    def __repr__(self) -> str:
        return f"IntPolynomial('{_format(self.coeffs)}')"


def _format(coeffs: tuple[int, ...]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        sign = " + " if (a > 0 and parts) else (" - " if (a < 0 and parts) else ("" if a > 0 else "-"))
        mag = abs(a)
        term = "" if i == 0 else ("c" if i == 1 else f"c^{i}")
        coeff = str(mag) if (i == 0 or mag != 1) else ""
        parts.append(sign + coeff + term)
    return "".join(parts)


ZERO = IntPolynomial()
ONE = IntPolynomial(1)
C = IntPolynomial(0, 1)


def _try_exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial | None:
    """Greedy integer long division; None unless b divides a in Z[c]."""
    if a.is_zero():
        return ZERO
    da, db = a.degree, b.degree
    if da < db:
        return None
    rem = list(a.coeffs)
    lead = b.coeffs[-1]
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        step, residue = divmod(top, lead)
        if residue != 0:
            return None
        q[k] = step
        for j, bj in enumerate(b.coeffs):
            rem[k + j] -= step * bj
    if any(rem[:db] if db > 0 else rem):
        return None
    return IntPolynomial(*q)


def mobius(n: int) -> int:
    """Mobius function via trial division; n stays small here (n <= 64)."""
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


# --- resultants ------------------------------------------------------------

# Word-sized primes for the CRT evaluation, found by scanning downward from
# 2^62 (Miller-Rabin is deterministic in this range).  Extended on demand.
_PRIME_POOL: list[int] = []
_POOL_NEXT = (1 << 62) - 1


def _extend_prime_pool() -> None:
    global _POOL_NEXT
    n = _POOL_NEXT
    while True:
        if is_probable_prime(n):
            _PRIME_POOL.append(n)
            _POOL_NEXT = n - 2
            return
        n -= 2


def crt_primes():
    """Deterministic stream of distinct 62-bit primes."""
    i = 0
    while True:
        while i >= len(_PRIME_POOL):
            _extend_prime_pool()
        yield _PRIME_POOL[i]
        i += 1


def _poly_mod(coeffs: tuple[int, ...], p: int) -> list[int]:
    out = [a % p for a in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _resultant_mod(a: list[int], b: list[int], p: int) -> int:
    """Res(a, b) modulo p by the Euclidean recurrence; degrees must be exact."""
    da, db = len(a) - 1, len(b) - 1
    res = 1
    while db > 0:
        # divide a by b over GF(p), tracking only the remainder
        r = list(a)
        inv = pow(b[-1], p - 2, p)
        for k in range(da - db, -1, -1):
            top = r[k + db] % p
            if top:
                factor = top * inv % p
                for j in range(db + 1):
                    r[k + j] = (r[k + j] - factor * b[j]) % p
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) & 1:
            res = -res % p
        res = res * pow(b[-1], da - dr, p) % p
        a, b, da, db = b, r, db, dr
    return res * pow(b[0], da, p) % p


def resultant(a: IntPolynomial, b: IntPolynomial) -> int:
    """Exact resultant Res(a, b), equal to the Sylvester-matrix determinant.

    Evaluated modulo enough word-sized primes to exceed twice the Hadamard
    bound, then recombined by the Chinese remainder theorem with a symmetric
    lift.  Primes dividing either leading coefficient are skipped so every
    modular image has the true degrees.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined here")
    da, db = a.degree, b.degree
    if da == 0:
        return a.coeffs[0] ** db
    if db == 0:
        return b.coeffs[0] ** da
    # squared Hadamard bound: |Res|^2 <= (sum a_i^2)^db * (sum b_j^2)^da
    bound2 = 4 * sum(x * x for x in a.coeffs) ** db * sum(x * x for x in b.coeffs) ** da
    lead_product = a.leading * b.leading
    residues: list[int] = []
    primes: list[int] = []
    modulus2 = 1  # (prod primes)^2, compared against 4*B^2
    for p in crt_primes():
        if lead_product % p == 0:
            continue
        residues.append(_resultant_mod(_poly_mod(a.coeffs, p), _poly_mod(b.coeffs, p), p))
        primes.append(p)
        modulus2 *= p * p
        if modulus2 > bound2:
            break
    # incremental CRT
    value, modulus = 0, 1
    for r, p in zip(residues, primes):
        t = (r - value) * pow(modulus % p, p - 2, p) % p
        value += modulus * t
        modulus *= p
    if 2 * value > modulus:
        value -= modulus
    return value


# --- squarefreeness --------------------------------------------------------


def _gcd_degree_mod(a: list[int], b: list[int], p: int) -> int:
    while b:
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db] % p
            if top:
                factor = top * inv % p
                for j in range(db + 1):
                    r[k + j] = (r[k + j] - factor * b[j]) % p
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return len(a) - 1


def _primitive(p: IntPolynomial) -> IntPolynomial:
    g = 0
    for a in p.coeffs:
        g = math.gcd(g, a)
        if g == 1:
            return p if p.leading > 0 else -p
    if g == 0:
        return p
    sign = 1 if p.leading > 0 else -1
    return IntPolynomial(*(sign * a // g for a in p.coeffs))


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Remainder of lc(b)^(da-db+1) * a divided by b; exact in Z[c]."""
    da, db = a.degree, b.degree
    rem = [x * b.leading ** (da - db + 1) for x in a.coeffs]
    lead = b.leading
    for k in range(da - db, -1, -1):
        top = rem[k + db]
        if top == 0:
            continue
        step = top // lead  # exact by the pre-scaling
        for j, bj in enumerate(b.coeffs):
            rem[k + j] -= step * bj
    return IntPolynomial(*rem[:db])


def _gcd_degree_exact(a: IntPolynomial, b: IntPolynomial) -> int:
    """Degree of gcd over Q via the primitive pseudo-remainder sequence."""
    a, b = _primitive(a), _primitive(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return 0
        r = _primitive(_pseudo_rem(a, b))
        a, b = b, r
    return a.degree


def is_squarefree(p: IntPolynomial, certificates: int = 8) -> bool:
    """True iff p has no repeated complex roots (gcd(p, p') has degree 0).

    A modular gcd of degree zero at any good prime certifies squarefreeness
    outright; repeated failures fall back to an exact pseudo-remainder gcd.
    Cheap on the squarefree polynomials this package mostly sees.
    """
    if p.is_zero():
        raise ValueError("squarefreeness of the zero polynomial is undefined")
    if p.degree <= 1:
        return True
    dp = p.derivative()
    tried = 0
    for q in crt_primes():
        if tried >= certificates:
            break
        if p.leading % q == 0:
            continue
        tried += 1
        if _gcd_degree_mod(_poly_mod(p.coeffs, q), _poly_mod(dp.coeffs, q), q) == 0:
            return True
    return _gcd_degree_exact(p, dp) == 0


# --- misc ------------------------------------------------------------------


def log_abs(x) -> float:
    """Natural log of |x| for int or Fraction inputs of any size."""
    if isinstance(x, Fraction):
        return log_abs(x.numerator) - log_abs(x.denominator)
    n = abs(x)
    if n == 0:
        raise ValueError("log of zero")
    return math.log(n)


def poly_to_text(p: IntPolynomial) -> str:
    """Serialize in the interchange format: 'deg d' then ascending coefficients."""
    if p.is_zero():
        return "deg 0\n0\n"
    lines = [f"deg {p.degree}"]
    lines.extend(str(a) for a in p.coeffs)
    return "\n".join(lines) + "\n"


def poly_from_text(text: str) -> IntPolynomial:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("deg "):
        raise ValueError("polynomial text must start with a 'deg d' line")
    d = int(lines[0][4:])
    if d < 0:
        raise ValueError("degree must be nonnegative in the text format")
    coeffs = [int(ln) for ln in lines[1:]]
    if len(coeffs) != d + 1:
        raise ValueError(f"expected {d + 1} coefficients, found {len(coeffs)}")
    return IntPolynomial(*coeffs)
