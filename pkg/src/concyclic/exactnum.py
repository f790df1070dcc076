"""Exact integer and rational arithmetic primitives.

Everything operates on plain Python ints (arbitrary precision) and
``fractions.Fraction`` values.  Nothing in this module, or anywhere else in
the verification path, touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Optional

__all__ = [
    "Rational",
    "isqrt",
    "perfect_square_root",
    "is_prime",
    "primes",
    "kronecker",
    "squarefree_decompose",
    "floor_sqrt",
    "sqrt_upper_bound",
    "floor_add_sqrt",
    "ceil_sub_sqrt",
]

# Exact rationals are stdlib fractions: normalized on construction, positive
# denominator, exact equality.
Rational = Fraction


def isqrt(n: int) -> int:
    """Floor of the square root of a nonnegative integer."""
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def perfect_square_root(n: int) -> Optional[int]:
    """Return r >= 0 with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97,
)

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24,
# which covers the full 64-bit range this artifact promises.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (correct for every n below 2**64)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes(start: int = 2) -> Iterator[int]:
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    if n == 2:
        yield 2
        n = 3
    if n % 2 == 0:
        n += 1
    while True:
        if is_prime(n):
            yield n
        n += 2


def kronecker(a: int, m: int) -> int:
    """Kronecker symbol (a|m), extending the Jacobi and Legendre symbols.

    For an odd prime m this is the Legendre symbol: 1 when a is a nonzero
    square mod m, 0 when m | a, -1 otherwise.
    """
    if m == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if m < 0:
        m = -m
        if a < 0:
            sign = -1
    if m % 2 == 0:
        if a % 2 == 0:
            return 0
        twos = 0
        while m % 2 == 0:
            m //= 2
            twos += 1
        if twos % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # m is now odd and positive: ordinary Jacobi loop with reciprocity.
    a %= m
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    if m != 1:
        return 0
    return sign * result


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write m = d * s**2 with d squarefree; returns (d, s).

    Trial division only; intended for the small n = 4ac - b**2 values that
    arise from binary forms.
    """
    if m <= 0:
        raise ValueError("squarefree_decompose requires m >= 1")
    d = 1
    s = 1
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            if e % 2 == 1:
                d *= p
            s *= p ** (e // 2)
        p += 1 if p == 2 else 2
    d *= rest
    return d, s


# ---------------------------------------------------------------------------
# Exact floor/ceil of expressions involving square roots of rationals.  These
# power the lattice enumeration bounds; all comparisons are integer-exact.


def floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative rational x."""
    if x < 0:
        raise ValueError("floor_sqrt of negative rational")
    # sqrt(p/q) = sqrt(p*q)/q
    return math.isqrt(x.numerator * x.denominator) // x.denominator


def sqrt_upper_bound(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), x >= 0 (within 1/denominator)."""
    if x < 0:
        raise ValueError("sqrt_upper_bound of negative rational")
    q = x.denominator
    return Fraction(math.isqrt(x.numerator * q) + 1, q)


def _floor_linear_sqrt(a: int, b: int, c: int, d: int) -> int:
    """floor((a + b*sqrt(c)) / d) for integers with b >= 0, c >= 0, d > 0."""
    n = (a + b * math.isqrt(c)) // d
    # The isqrt guess is within one of the truth; nudge with exact checks.
    while True:
        lhs = d * (n + 1) - a
        if lhs <= 0 or lhs * lhs <= b * b * c:
            n += 1
        else:
            break
    while True:
        lhs = d * n - a
        if lhs > 0 and lhs * lhs > b * b * c:
            n -= 1
        else:
            break
    return n


def floor_add_sqrt(t: Fraction, u: Fraction) -> int:
    """floor(t + sqrt(u)) computed exactly, u >= 0."""
    if u < 0:
        raise ValueError("floor_add_sqrt needs u >= 0")
    tn, td = t.numerator, t.denominator
    un, ud = u.numerator, u.denominator
    # t + sqrt(u) = (tn*ud + td*sqrt(un*ud)) / (td*ud)
    return _floor_linear_sqrt(tn * ud, td, un * ud, td * ud)


def ceil_sub_sqrt(t: Fraction, u: Fraction) -> int:
    """ceil(t - sqrt(u)) computed exactly, u >= 0."""
    if u < 0:
        raise ValueError("ceil_sub_sqrt needs u >= 0")
    return -floor_add_sqrt(-t, u)
