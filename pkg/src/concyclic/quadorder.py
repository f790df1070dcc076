"""Arithmetic of the order Z[sqrt(-n)] inside K = Q(sqrt(-d)).

Covers discriminant/conductor bookkeeping, prime splitting classification,
and the generation and counting of elements of norm p**k.  The element
generator multiplies out q**i * conj(q)**(k-i); the brute-force scanner
`scan_reps` stays around as its independent oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .exactnum import is_prime, isqrt, kronecker, perfect_square_root, squarefree_decompose

__all__ = [
    "OrderParams",
    "OrderElement",
    "SplittingType",
    "order_params",
    "splitting_type",
    "scan_reps",
    "brute_count_reps",
    "generate_norm_elements",
    "canonical_sign",
    "theorem_main1_check",
    "Main1Report",
]


@dataclass(frozen=True)
class OrderParams:
    """The order Z[sqrt(-n)] = Z + f*O_K with -4n = f**2 * d_K."""

    n: int
    d: int
    d_K: int
    f: int
    wk_kind: str  # "sqrt" for w_K = sqrt(-d), "half" for (-1 + sqrt(-d))/2

    def __post_init__(self):
        if -4 * self.n != self.f * self.f * self.d_K:
            raise AssertionError("conductor relation -4n = f^2 d_K violated")


def order_params(n: int) -> OrderParams:
    """Discriminant and conductor data for Z[sqrt(-n)]."""
    if n <= 0:
        raise ValueError("order_params requires n >= 1")
    d, s = squarefree_decompose(n)
    if (-d) % 4 == 1:
        d_k = -d
        f = 2 * s
        kind = "half"
    else:
        d_k = -4 * d
        f = s
        kind = "sqrt"
    return OrderParams(n=n, d=d, d_K=d_k, f=f, wk_kind=kind)


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def _is_fundamental_discriminant(d_k: int) -> bool:
    if d_k >= 0:
        return False
    if d_k % 4 == 1:
        d, s = squarefree_decompose(-d_k)
        return s == 1
    if d_k % 4 == 0:
        m = d_k // 4
        d, s = squarefree_decompose(-m)
        return s == 1 and (-m) % 4 in (1, 2)
    return False


def splitting_type(d_k: int, p: int) -> SplittingType:
    """Behavior of the rational prime p in the field of discriminant d_k."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not _is_fundamental_discriminant(d_k):
        raise ValueError(f"{d_k} is not a fundamental imaginary discriminant")
    if p == 2:
        if d_k % 2 == 0:
            return SplittingType.RAMIFIED
        if d_k % 8 == 1:
            return SplittingType.SPLIT
        return SplittingType.INERT
    sym = kronecker(d_k, p)
    if sym == 1:
        return SplittingType.SPLIT
    if sym == -1:
        return SplittingType.INERT
    return SplittingType.RAMIFIED


@dataclass(frozen=True)
class OrderElement:
    """x + y*sqrt(-n) with integer coordinates."""

    x: int
    y: int
    n: int

    def norm(self) -> int:
        return self.x * self.x + self.n * self.y * self.y

    def conjugate(self) -> "OrderElement":
        return OrderElement(self.x, -self.y, self.n)

    def __neg__(self) -> "OrderElement":
        return OrderElement(-self.x, -self.y, self.n)

    def __mul__(self, other: "OrderElement") -> "OrderElement":
        if self.n != other.n:
            raise ValueError("elements live in different orders")
        return OrderElement(
            self.x * other.x - self.n * self.y * other.y,
            self.x * other.y + self.y * other.x,
            self.n,
        )

    def coords(self) -> tuple[int, int]:
        return (self.x, self.y)


def canonical_sign(el: OrderElement) -> OrderElement:
    """The representative of {el, -el} with x > 0, or x = 0 and y > 0."""
    if el.x > 0 or (el.x == 0 and el.y > 0):
        return el
    return -el


def scan_reps(n: int, m: int) -> list[tuple[int, int]]:
    """All (x, y) with x**2 + n*y**2 = m by exhaustive scan (the oracle)."""
    if n < 1:
        raise ValueError("scan_reps requires n >= 1")
    if m < 0:
        return []
    if m == 0:
        return [(0, 0)]
    out = []
    ymax = isqrt(m // n)
    for y in range(-ymax, ymax + 1):
        s = perfect_square_root(m - n * y * y)
        if s is None:
            continue
        out.append((s, y))
        if s:
            out.append((-s, y))
    return sorted(out)


def brute_count_reps(n: int, p: int, k: int) -> int:
    """#{(x, y) : x**2 + n*y**2 = p**k} by exhaustive scan."""
    if n < 1 or p < 2 or k < 0:
        raise ValueError("brute_count_reps requires n >= 1, p >= 2, k >= 0")
    return len(scan_reps(n, p**k))


def generate_norm_elements(q: OrderElement, k: int) -> list[OrderElement]:
    """The 2(k+1) elements +-q**i * conj(q)**(k-i) of norm(q)**k.

    q must have prime norm.  Under the counting-law hypotheses these are
    exactly the elements of that norm; callers verify against scan_reps.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not is_prime(q.norm()):
        raise ValueError(f"norm {q.norm()} of the generator is not prime")
    one = OrderElement(1, 0, q.n)
    qc = q.conjugate()
    pow_q = [one]
    pow_qc = [one]
    for _ in range(k):
        pow_q.append(pow_q[-1] * q)
        pow_qc.append(pow_qc[-1] * qc)
    out = []
    for i in range(k + 1):
        z = pow_q[i] * pow_qc[k - i]
        out.append(z)
        out.append(-z)
    return out


@dataclass(frozen=True)
class Main1Report:
    """Outcome of checking the norm-count law 2(k+1) for one (n, p)."""

    n: int
    p: int
    k_max: int
    hypotheses_met: bool
    unmet: tuple[str, ...]
    witness: tuple[int, int] | None
    counts: tuple[int, ...]
    expected: tuple[int, ...]
    generator_agrees: bool | None
    passed: bool


def _norm_p_witness(n: int, p: int) -> tuple[int, int] | None:
    """Smallest-y representation p = x**2 + n*y**2 with x, y >= 0."""
    ymax = isqrt(p // n)
    for y in range(0, ymax + 1):
        x = perfect_square_root(p - n * y * y)
        if x is not None:
            return (x, y)
    return None


def theorem_main1_check(n: int, p: int, k_max: int) -> Main1Report:
    """Verify hypotheses and the count law #{|z|^2 = p^k} = 2(k+1) for k <= k_max.

    Hypothesis failures are reported, not raised; an actual count mismatch
    under met hypotheses would mean the law itself failed and shows up as
    passed=False with the observed counts.
    """
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if n < 1:
        raise ValueError("n must be >= 1")

    unmet: list[str] = []
    if n == 1:
        unmet.append("n = 1 is excluded (four units break the count)")
    witness = _norm_p_witness(n, p) if n > 1 else None
    if n > 1 and witness is None:
        unmet.append(f"{p} is not of the form x^2 + {n}*y^2")
    params = order_params(n)
    if kronecker(params.d_K, p) != 1:
        unmet.append(f"kronecker({params.d_K}, {p}) != 1")
    if gcd(p, params.f) != 1:
        unmet.append(f"p shares a factor with the conductor {params.f}")

    counts = []
    gen_ok: bool | None = None
    hypotheses_met = not unmet
    if hypotheses_met:
        q = OrderElement(witness[0], witness[1], n)
        gen_ok = True
        for k in range(k_max + 1):
            brute = scan_reps(n, p**k)
            counts.append(len(brute))
            gen = sorted(z.coords() for z in generate_norm_elements(q, k))
            if gen != brute:
                gen_ok = False
    else:
        for k in range(k_max + 1):
            counts.append(brute_count_reps(n, p, k))

    expected = tuple(2 * (k + 1) for k in range(k_max + 1))
    passed = hypotheses_met and tuple(counts) == expected and bool(gen_ok)
    return Main1Report(
        n=n,
        p=p,
        k_max=k_max,
        hypotheses_met=hypotheses_met,
        unmet=tuple(unmet),
        witness=witness,
        counts=tuple(counts),
        expected=expected,
        generator_agrees=gen_ok,
        passed=passed,
    )
