"""Integer 2-adic (and general p-adic) helpers.

Everything here works on plain Python ints, which are arbitrary precision,
so no special big-number handling is needed anywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class _InfiniteValuation:
    """The valuation of zero.

    Compares strictly above every integer, absorbs addition, and prints as
    ``inf``.  A single shared instance (``INFINITE``) is used everywhere.
    """

    __slots__ = ()

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("quadval-infinite-valuation")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "_InfiniteValuation":
        return self

    __radd__ = __add__

    def __str__(self) -> str:
        return "inf"

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _InfiniteValuation()

Valuation = int | _InfiniteValuation

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def nu(p: int, n: int) -> Valuation:
    """p-adic valuation of the integer n, with nu(p, 0) == INFINITE.

    p must be prime; that is checked because a composite base would
    silently give a non-additive "valuation".
    """
    if not _is_prime(p):
        raise ValueError(f"valuation base must be prime, got {p}")
    if n == 0:
        return INFINITE
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def nu2(n: int) -> Valuation:
    """2-adic valuation of n.  nu2(0) == INFINITE.

    ``n & -n`` isolates the lowest set bit even for negative n, since
    Python ints behave as two's complement of unbounded width.
    """
    if n == 0:
        return INFINITE
    return (n & -n).bit_length() - 1


def nu_rational(p: int, q: Fraction) -> Valuation:
    """Valuation extended to rationals: nu(num) - nu(den)."""
    if q == 0:
        return INFINITE
    num = nu(p, q.numerator)
    den = nu(p, q.denominator)
    assert isinstance(num, int) and isinstance(den, int)
    return num - den


def nu_product_check(p: int, x: Fraction, y: Fraction) -> bool:
    """True when nu(x*y) == nu(x) + nu(y) for nonzero rationals x, y."""
    if x == 0 or y == 0:
        raise ValueError("additivity of valuations is stated for nonzero values")
    return nu_rational(p, x * y) == nu_rational(p, x) + nu_rational(p, y)


@dataclass(frozen=True)
class DiscFactorization:
    """A nonzero discriminant D written as 4**ell * delta with delta not
    divisible by 4, plus m = delta mod 8 (never 0 or 4 by construction).

    For D == 0 the fields ell, delta, m are meaningless and set to None.
    """

    is_zero: bool
    ell: int | None
    delta: int | None
    m: int | None


def factor_discriminant(d: int) -> DiscFactorization:
    """Split d as 4**ell * delta with 4 not dividing delta."""
    if d == 0:
        return DiscFactorization(True, None, None, None)
    e = nu2(d)
    assert isinstance(e, int)
    ell = e // 2
    delta = d // (4**ell)
    return DiscFactorization(False, ell, delta, delta % 8)


def is_square_in_Z2(a: int) -> bool:
    """Whether an odd integer is a square of a 2-adic integer.

    Odd squares are exactly the residues 1 mod 8.
    """
    if a % 2 == 0:
        raise ValueError("squareness test is for odd integers only")
    return a % 8 == 1


def inverse_mod_pow2(a: int, i: int) -> int:
    """Inverse of an odd a modulo 2**i (returns 0 when i == 0)."""
    if a % 2 == 0:
        raise ValueError(f"{a} is even, so it has no inverse modulo a power of 2")
    if i < 0:
        raise ValueError("modulus exponent must be nonnegative")
    return pow(a, -1, 1 << i) if i else 0
