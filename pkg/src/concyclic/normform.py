"""Exact solution of u**2 + n*v**2 = m over the integers.

This is the enumeration core that keeps very large shells tractable.  A
direct scan over v costs sqrt(m/n) iterations, which is hopeless once m is
a large prime power.  Instead the solver

  1. factors m (trial division, perfect-power detection, Pollard-Brent rho),
  2. computes every square root of -n modulo m/g**2 for each square divisor
     g**2 of m (Tonelli-Shanks plus Hensel lifting, CRT-combined),
  3. reads the solutions off a Lagrange-reduced basis of the sublattice
     { (u, v) : u = r*v mod m/g**2 } under the metric u**2 + n*v**2.

Every primitive solution (u, v) of u**2 + n*v**2 = m has v invertible
modulo m (a common prime divisor of v and m would divide u too), so u/v is
a square root of -n mod m and the solution lives in one of the sublattices
above.  In a reduced basis the second coordinate of any vector of norm m is
at most 1 in absolute value, so step 3 inspects only a handful of
candidates.  Imprimitive solutions are g times a primitive solution of
m/g**2, hence the loop over square divisors.

All arithmetic is integer-exact; runtime is polynomial in log m once m is
factored.
"""

from __future__ import annotations

from math import gcd

from .exactnum import is_prime, perfect_square_root
from .exactnum import isqrt as _isqrt

__all__ = ["factorize", "sqrts_mod", "solve_norm_form", "FactorizationError"]


class FactorizationError(RuntimeError):
    """Raised when the integer could not be factored within budget."""


_TRIAL_LIMIT = 100_000
_ROOT_CAP = 50_000  # safety valve for pathological root explosions


def _iroot(x: int, k: int) -> int:
    """Floor of the k-th root of x >= 0."""
    if x < 2:
        return x
    r = int(round(x ** (1.0 / k)))
    while r > 0 and r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _perfect_power(x: int) -> tuple[int, int] | None:
    """Return (b, k) with b**k == x and k >= 2, or None."""
    for k in range(2, x.bit_length() + 1):
        b = _iroot(x, k)
        if b < 2:
            break
        if b**k == x:
            return b, k
    return None


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            if r > 1 << 22:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationError(f"could not factor {n}")


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of m >= 1 as {prime: exponent}."""
    if m < 1:
        raise ValueError("factorize requires m >= 1")
    fac: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= m and p < _TRIAL_LIMIT:
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
        p += wheel[i]
        i = (i + 1) % 8
    if m == 1:
        return fac

    stack = [m]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            fac[x] = fac.get(x, 0) + 1
            continue
        pw = _perfect_power(x)
        if pw is not None:
            b, k = pw
            for _ in range(k):
                stack.append(b)
            continue
        d = _pollard_brent(x)
        stack.append(d)
        stack.append(x // d)
    return fac


# ---------------------------------------------------------------------------
# Square roots modulo prime powers.


def _tonelli_shanks(a: int, p: int) -> int | None:
    """A square root of a mod odd prime p, or None when a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        for i in range(1, m):
            t2 = t2 * t2 % p
            if t2 == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrts_mod_odd_prime_power(a: int, p: int, e: int) -> list[int]:
    """All t in [0, p**e) with t*t = a (mod p**e), p an odd prime."""
    pe = p**e
    a %= pe
    if a == 0:
        step = p ** ((e + 1) // 2)
        return list(range(0, pe, step))
    v = 0
    aa = a
    while aa % p == 0:
        aa //= p
        v += 1
    if v % 2 == 1:
        return []
    e1 = e - v
    r = _tonelli_shanks(aa % p, p)
    if r is None:
        return []
    # Hensel-lift r to a root of aa modulo p**e1.
    pk = p
    while pk < p**e1:
        pk = min(pk * pk, p**e1)
        r = (r + (aa - r * r) * pow(2 * r, -1, pk)) % pk
    half = p ** (v // 2)
    period = p**e1
    roots = []
    for base in {r % period, (-r) % period}:
        for j in range(p ** (v // 2)):
            roots.append(half * (base + j * period) % pe)
    return sorted(set(roots))


def _sqrts_mod_two_power(a: int, e: int) -> list[int]:
    """All t in [0, 2**e) with t*t = a (mod 2**e), by iterative lifting."""
    a %= 1 << e
    roots = [t for t in range(2) if (t * t - a) % 2 == 0]
    for j in range(1, e):
        mod = 1 << (j + 1)
        new = set()
        for r in roots:
            for c in (0, 1):
                t = r + (c << j)
                if (t * t - a) % mod == 0:
                    new.add(t % mod)
        roots = sorted(new)
        if len(roots) > _ROOT_CAP:
            raise FactorizationError("square-root class explosion mod 2**e")
    return roots


def sqrts_mod(a: int, fac: dict[int, int]) -> list[int]:
    """All t in [0, m) with t*t = a (mod m), m given by its factorization."""
    m = 1
    for p, e in fac.items():
        m *= p**e
    a %= m
    residues = [(0, 1)]
    for p, e in sorted(fac.items()):
        pe = p**e
        rs = _sqrts_mod_two_power(a, e) if p == 2 else _sqrts_mod_odd_prime_power(a, p, e)
        if not rs:
            return []
        combined = []
        for t, mod in residues:
            inv = pow(mod, -1, pe)
            for r in rs:
                combined.append(((t + mod * ((r - t) * inv % pe)) % (mod * pe), mod * pe))
        residues = combined
        if len(residues) > _ROOT_CAP:
            raise FactorizationError("square-root class explosion in CRT")
    return sorted(t for t, _ in residues)


# ---------------------------------------------------------------------------
# Lattice-reduction step.


def _lagrange_reduce(b1, b2, n):
    """Reduce a basis of a sublattice of Z^2 under <x,y> = x0*y0 + n*x1*y1."""

    def dot(x, y):
        return x[0] * y[0] + n * x[1] * y[1]

    while True:
        if dot(b1, b1) > dot(b2, b2):
            b1, b2 = b2, b1
        a = dot(b1, b1)
        t = dot(b1, b2)
        # nearest integer to t/a
        mu = (2 * t + a) // (2 * a)
        if mu == 0:
            return b1, b2
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])


def _norm_vectors(b1, b2, n, m):
    """All alpha*b1 + beta*b2 of norm exactly m in the reduced basis."""

    def dot(x, y):
        return x[0] * y[0] + n * x[1] * y[1]

    a = dot(b1, b1)
    h = dot(b1, b2)
    det = a * dot(b2, b2) - h * h
    out = []
    # beta**2 <= m*a/det, and reduction makes that bound tiny (<= 1).
    bmax = _isqrt(m * a // det) if det else 0
    while (bmax + 1) ** 2 * det <= m * a:
        bmax += 1
    for beta in range(-bmax, bmax + 1):
        disc = a * m - det * beta * beta
        s = perfect_square_root(disc)
        if s is None:
            continue
        for sg in {s, -s}:
            num = sg - h * beta
            if num % a == 0:
                alpha = num // a
                out.append((alpha * b1[0] + beta * b2[0], alpha * b1[1] + beta * b2[1]))
    return out


def _primitive_reps(n: int, m: int, fac: dict[int, int]) -> set[tuple[int, int]]:
    """Solutions of u**2 + n*v**2 = m with gcd(u, v) = 1."""
    out: set[tuple[int, int]] = set()
    for r in sqrts_mod(-n, fac):
        b1, b2 = _lagrange_reduce((r, 1), (m, 0), n)
        for u, v in _norm_vectors(b1, b2, n, m):
            if gcd(u, v) == 1:
                out.add((u, v))
                out.add((-u, -v))
    return out


def _square_divisors(fac: dict[int, int]):
    """All (g, factorization of m/g**2) with g**2 dividing m."""
    items = sorted(fac.items())

    def rec(i, g, rem):
        if i == len(items):
            yield g, dict(rem)
            return
        p, e = items[i]
        for j in range(e // 2 + 1):
            rem[p] = e - 2 * j
            if rem[p] == 0:
                del rem[p]
            yield from rec(i + 1, g * p**j, rem)
            rem[p] = e

    yield from rec(0, 1, {})


def solve_norm_form(n: int, m: int) -> list[tuple[int, int]]:
    """All integer pairs (u, v) with u**2 + n*v**2 = m, sorted.

    Requires n >= 1.  Raises FactorizationError when m resists the
    deterministic factoring budget (callers fall back to scanning).
    """
    if n < 1:
        raise ValueError("solve_norm_form requires n >= 1")
    if m < 0:
        return []
    if m == 0:
        return [(0, 0)]
    fac = factorize(m)
    sols: set[tuple[int, int]] = set()
    for g, fac_rem in _square_divisors(fac):
        m1 = m // (g * g)
        for u, v in _primitive_reps(n, m1, fac_rem):
            sols.add((g * u, g * v))
    return sorted(sols)
