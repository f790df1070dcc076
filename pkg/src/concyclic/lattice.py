"""Integral lattices presented by Gram matrices or binary quadratic forms,
with exact enumeration of lattice points on shells and in balls around
rational centers.

Two enumeration strategies coexist:

* a Fincke-Pohst style recursion over exact rational Cholesky data, used
  for every dimension and kept deliberately simple, and
* an arithmetic fast path for 2-dimensional shells whose coordinate ranges
  are too long to walk: the shell condition is cleared to an integral
  norm-form equation and handed to :mod:`concyclic.normform`.

A naive bounding-box scanner (`box_scan`) is retained as the independent
test oracle for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import normform
from .exactnum import ceil_sub_sqrt, floor_add_sqrt, perfect_square_root

__all__ = [
    "QuadForm",
    "GramMatrix",
    "ShellResult",
    "form_from_gram",
    "gauss_reduce",
    "enumerate_shell",
    "enumerate_ball",
    "form_shell",
    "box_scan",
]

# Above this many iterations in the outermost coordinate the 2-d recursion
# defers to the arithmetic solver.
_FP_INTERVAL_LIMIT = 100_000

RationalVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class QuadForm:
    """Integral binary quadratic form a*x**2 + b*x*y + c*y**2.

    Requires a > 0 and negative discriminant, hence positive definite.
    Odd b is allowed: the form itself is the squared length, covering
    half-integral Gram lattices such as x**2 + x*y + y**2.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not isinstance(v, int):
                raise ValueError("form coefficients must be integers")
        if self.a <= 0:
            raise ValueError("form must have a > 0")
        if self.discriminant >= 0:
            raise ValueError("form must have negative discriminant")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def n(self) -> int:
        """The positive integer 4ac - b**2 (minus the discriminant)."""
        return -self.discriminant

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def rational_matrix(self) -> list[list[Fraction]]:
        """The symmetric matrix of the form (off-diagonal b/2)."""
        h = Fraction(self.b, 2)
        return [[Fraction(self.a), h], [h, Fraction(self.c)]]

    def mirror(self) -> "QuadForm":
        """The form (a, -b, c): same lattice with the basis y -> -y."""
        return QuadForm(self.a, -self.b, self.c)


def _int_det(rows: list[list[int]]) -> int:
    """Determinant of a small integer matrix (fraction-free Bareiss)."""
    m = [row[:] for row in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class GramMatrix:
    """Integral symmetric positive-definite matrix of inner products."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        e = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", e)
        d = len(e)
        if d < 1 or any(len(row) != d for row in e):
            raise ValueError("gram matrix must be square")
        for row in e:
            for v in row:
                if not isinstance(v, int):
                    raise ValueError("gram matrix entries must be integers")
        for i in range(d):
            for j in range(i):
                if e[i][j] != e[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        # positive definite iff every leading principal minor is positive
        for k in range(1, d + 1):
            minor = _int_det([list(row[:k]) for row in e[:k]])
            if minor <= 0:
                raise ValueError(f"gram matrix is not positive definite (minor {k} = {minor})")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def leading(self, k: int) -> "GramMatrix":
        return GramMatrix(tuple(row[:k] for row in self.entries[:k]))

    def rational(self) -> list[list[Fraction]]:
        return [[Fraction(v) for v in row] for row in self.entries]

    def quadratic(self, vec: Sequence[Fraction]) -> Fraction:
        """v^T G v for a rational vector v."""
        total = Fraction(0)
        for i, vi in enumerate(vec):
            if vi == 0:
                continue
            row = self.entries[i]
            total += vi * sum(Fraction(row[j]) * vec[j] for j in range(len(vec)))
        return total


@dataclass(frozen=True)
class ShellResult:
    """Sorted, duplicate-free list of integer points plus their count."""

    points: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def form_from_gram(g: GramMatrix) -> QuadForm:
    """The quadratic form (G11, 2*G12, G22) of a 2x2 Gram matrix."""
    if g.dim != 2:
        raise ValueError("form_from_gram expects a 2x2 gram matrix")
    return QuadForm(g.entries[0][0], 2 * g.entries[0][1], g.entries[1][1])


def gauss_reduce(f: QuadForm) -> tuple[QuadForm, int]:
    """Classical reduction of a positive definite form.

    Returns the equivalent reduced form with |b| <= a <= c (and b >= 0
    when |b| = a or a = c) together with the content gcd(a, b, c).
    """
    a, b, c = f.a, f.b, f.c
    while True:
        if not (-a < b <= a):
            t = (a - b) // (2 * a)
            c = a * t * t + b * t + c
            b = b + 2 * a * t
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (b == -a or a == c):
        b = -b
    reduced = QuadForm(a, b, c)
    if reduced.discriminant != f.discriminant:
        raise AssertionError("reduction changed the discriminant")
    return reduced, f.content


# ---------------------------------------------------------------------------
# Rational enumeration core.


def _coerce_center(center: Sequence, dim: int) -> RationalVector:
    c = tuple(Fraction(v) for v in center)
    if len(c) != dim:
        raise ValueError("center dimension does not match lattice dimension")
    return c


def _cholesky(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Fincke-Pohst data: q[i][i] diagonal weights, q[i][j] (j>i) coefficients.

    Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)**2.
    """
    d = len(mat)
    q = [[Fraction(mat[i][j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        if q[i][i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, d):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, d):
            for l in range(k, d):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]
    return q


def _quad_value(mat: list[list[Fraction]], vec: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    d = len(vec)
    for i in range(d):
        if vec[i] == 0:
            continue
        total += vec[i] * sum(mat[i][j] * vec[j] for j in range(d))
    return total


def _fp_points(
    mat: list[list[Fraction]],
    center: RationalVector,
    r2: Fraction,
    shell: bool,
) -> list[tuple[int, ...]]:
    """All integer v with Q(v - center) = r2 (shell) or <= r2 (ball)."""
    d = len(mat)
    chol = _cholesky(mat)
    coords = [0] * d
    out: list[tuple[int, ...]] = []

    def rec(i: int, budget: Fraction):
        # offset of coordinate i induced by the already-fixed coordinates
        shift = sum(chol[i][j] * (coords[j] - center[j]) for j in range(i + 1, d))
        g = center[i] - shift
        u = budget / chol[i][i]
        if i == 0 and shell:
            # exact equation q00 * (v0 - g)**2 = budget
            num, den = u.numerator, u.denominator
            rn = perfect_square_root(num)
            rd = perfect_square_root(den)
            if rn is None or rd is None:
                return
            root = Fraction(rn, rd)
            for cand in {g + root, g - root}:
                if cand.denominator == 1:
                    coords[0] = int(cand)
                    out.append(tuple(coords))
            return
        lo = ceil_sub_sqrt(g, u)
        hi = floor_add_sqrt(g, u)
        for v in range(lo, hi + 1):
            coords[i] = v
            if i == 0:
                out.append(tuple(coords))
            else:
                delta = Fraction(v) - g
                rec(i - 1, budget - chol[i][i] * delta * delta)

    if r2 >= 0:
        rec(d - 1, r2)
    return sorted(out)


def _outer_interval_length(mat, center, r2) -> int:
    """Length of the outermost Fincke-Pohst coordinate range."""
    chol = _cholesky(mat)
    d = len(mat)
    u = r2 / chol[d - 1][d - 1]
    g = center[d - 1]
    return max(0, floor_add_sqrt(g, u) - ceil_sub_sqrt(g, u) + 1)


def _arith_shell_2d(
    mat: list[list[Fraction]],
    center: RationalVector,
    r2: Fraction,
) -> list[tuple[int, ...]]:
    """2-d shell via the integral norm-form solver.

    Clears denominators to F(w) = R over w = q*v - q*center, then uses
    4A*F(w) = (2A*w1 + B*w2)**2 + (4AC - B**2)*w2**2.
    """
    lam = lcm(mat[0][0].denominator, (2 * mat[0][1]).denominator, mat[1][1].denominator)
    a = int(mat[0][0] * lam)
    b = int(2 * mat[0][1] * lam)
    c = int(mat[1][1] * lam)
    q = lcm(center[0].denominator, center[1].denominator)
    u1, u2 = int(center[0] * q), int(center[1] * q)
    r_scaled = r2 * lam * q * q
    if r_scaled.denominator != 1:
        return []
    big_r = int(r_scaled)
    if big_r < 0:
        return []
    n_hat = 4 * a * c - b * b
    m_big = 4 * a * big_r
    out = []
    for big_u, w2 in normform.solve_norm_form(n_hat, m_big):
        num = big_u - b * w2
        if num % (2 * a) != 0:
            continue
        w1 = num // (2 * a)
        if (w1 + u1) % q != 0 or (w2 + u2) % q != 0:
            continue
        out.append(((w1 + u1) // q, (w2 + u2) // q))
    return sorted(out)


def _resolve_matrix(g) -> list[list[Fraction]]:
    if isinstance(g, GramMatrix):
        return g.rational()
    if isinstance(g, QuadForm):
        return g.rational_matrix()
    return [[Fraction(v) for v in row] for row in g]


def enumerate_shell(g, center: Sequence, r2, strategy: str = "auto") -> ShellResult:
    """All integer vectors v with Q(v - center) = r2, sorted lexicographically.

    ``g`` may be a GramMatrix, a QuadForm (its form value is the metric), or
    a raw symmetric rational matrix.  ``strategy`` is "auto", "fp" (pure
    recursion), or "arith" (force the 2-d norm-form path).
    """
    mat = _resolve_matrix(g)
    d = len(mat)
    c = _coerce_center(center, d)
    r2 = Fraction(r2)
    if r2 < 0:
        raise ValueError("r2 must be nonnegative")
    if strategy == "arith" or (
        strategy == "auto"
        and d == 2
        and _outer_interval_length(mat, c, r2) > _FP_INTERVAL_LIMIT
    ):
        if d != 2:
            raise ValueError("arith strategy only applies to 2-d shells")
        try:
            return ShellResult(tuple(_arith_shell_2d(mat, c, r2)))
        except normform.FactorizationError:
            if strategy == "arith":
                raise
    elif strategy not in ("auto", "fp"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return ShellResult(tuple(_fp_points(mat, c, r2, shell=True)))


def enumerate_ball(g, center: Sequence, r2_max) -> ShellResult:
    """All integer vectors v with Q(v - center) <= r2_max, sorted."""
    mat = _resolve_matrix(g)
    c = _coerce_center(center, len(mat))
    r2_max = Fraction(r2_max)
    if r2_max < 0:
        return ShellResult(())
    return ShellResult(tuple(_fp_points(mat, c, r2_max, shell=False)))


def form_shell(f: QuadForm, center: Sequence, r2, strategy: str = "auto") -> ShellResult:
    """Shell enumeration in the metric of a binary form (odd b welcome)."""
    return enumerate_shell(f, center, r2, strategy=strategy)


def box_scan(g, center: Sequence, r2_max) -> ShellResult:
    """Naive oracle: scan the axis-aligned box that must contain the ball.

    Coordinate bounds come from (v_i - c_i)**2 <= r2 * (G^-1)_ii, which is
    exact for positive definite G.
    """
    mat = _resolve_matrix(g)
    d = len(mat)
    c = _coerce_center(center, d)
    r2_max = Fraction(r2_max)
    if r2_max < 0:
        return ShellResult(())
    inv_diag = _inverse_diagonal(mat)
    ranges = []
    for i in range(d):
        u = r2_max * inv_diag[i]
        ranges.append(range(ceil_sub_sqrt(c[i], u), floor_add_sqrt(c[i], u) + 1))
    out = []
    import itertools

    for v in itertools.product(*ranges):
        diff = [Fraction(v[i]) - c[i] for i in range(d)]
        if _quad_value(mat, diff) <= r2_max:
            out.append(tuple(v))
    return ShellResult(tuple(sorted(out)))


def _inverse_diagonal(mat: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal of the inverse of a symmetric PD rational matrix."""
    d = len(mat)
    # Gauss-Jordan on [mat | I]
    aug = [[Fraction(mat[i][j]) for j in range(d)] + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for col in range(d):
        piv = next(r for r in range(col, d) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][d + i] for i in range(d)]
