"""Lifting a certified 2-d circle to a sphere in a d-dimensional lattice.

The chain of sublattices is fixed as the spans of basis prefixes.  At each
stage the center moves off the current span along the Gram-Schmidt
component w of the next basis vector, by a parameter s in (0, 1/2]:

    center' = center + s*w,   radius2' = radius2 + s**2 * |w|**2.

A lattice point v with last coordinate tau (its coefficient on w) lies on
the new sphere iff

    rho2 + tau**2*W - r2 = 2*tau*s*W,        W = |w|**2,

where rho2 is the squared in-span distance of v's projection to the old
center.  Points with tau = 0 reduce to the already-verified old sphere, so
only finitely many s values are bad.  Two ways to dodge them:

* enumerate every candidate in a safe ball, collect the bad values E, and
  take the largest s = 1/2**m not in E (the small-instance route, matching
  exhaustive verification by shell re-enumeration);
* for large instances, exploit denominators: the left side above times a
  fixed integer D is an integer, while the right side is tau*W*D / 2**(m-1);
  once 2**(m-1) > tau_max * W * D the equation has no solution with
  tau != 0 at all, which proves the sphere clean without enumerating
  anything.

Both routes produce a valid certificate; the second is exact arithmetic,
not an approximation, and is re-checked before the spec is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .concyclic2d import CircleSpec, build_circle, enumerate_circle_points
from .errors import ConsistencyError, TheoremViolationError
from .exactnum import floor_add_sqrt, perfect_square_root, sqrt_upper_bound
from .exactnum import isqrt as _isqrt
from .lattice import GramMatrix, ShellResult, enumerate_ball, enumerate_shell, form_from_gram

__all__ = [
    "LiftStep",
    "SphereSpec",
    "gram_schmidt_data",
    "lift_once",
    "build_sphere",
    "rectangular_integral_model",
    "z3_offset_sphere_points",
]

# Largest estimated candidate count for which the lift enumerates its
# exclusion set; beyond this the denominator argument takes over.
_BALL_LIMIT = 300_000


@dataclass(frozen=True)
class LiftStep:
    """Record of one lift stage (into dimension `stage`)."""

    stage: int
    w: tuple[Fraction, ...]
    w_norm2: Fraction
    excluded: tuple[Fraction, ...]  # bad parameter values found in (0, 1]
    chosen_s: Fraction
    mode: str  # "enumerated" or "denominator-bound"


@dataclass(frozen=True)
class SphereSpec:
    """A verified sphere through exactly n_points lattice points."""

    gram: GramMatrix
    center: tuple[Fraction, ...]
    radius2: Fraction
    points: ShellResult
    lift_trace: tuple[LiftStep, ...]
    base: CircleSpec


def _solve_rational(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve A x = b exactly (A square, nonsingular)."""
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def gram_schmidt_data(g: GramMatrix) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Orthogonal components of basis vectors 3..d against the prefix span.

    Returns, for each stage i in (3, ..., d), the vector w = e_i - mu with
    mu in the span of e_1..e_{i-1}, expressed in basis coordinates (length
    i, last entry 1), together with its squared norm.
    """
    d = g.dim
    out = []
    rat = g.rational()
    for stage in range(3, d + 1):
        i = stage - 1
        sub = [[rat[r][c] for c in range(i)] for r in range(i)]
        rhs = [rat[r][i] for r in range(i)]
        mu = _solve_rational(sub, rhs)
        w = tuple(-m for m in mu) + (Fraction(1),)
        norm2 = g.leading(stage).quadratic(w)
        if norm2 <= 0:
            raise ValueError("gram matrix is singular on the prefix chain")
        out.append((w, norm2))
    return out


def _ball_size_estimate(g: GramMatrix, bound: Fraction) -> int:
    """Overestimate of the number of lattice points in a ball (box count)."""
    from .lattice import _inverse_diagonal

    inv = _inverse_diagonal(g.rational())
    total = 1
    for v in inv:
        u = bound * v
        total *= 2 * (_isqrt(u.numerator * u.denominator) // u.denominator) + 3
        if total > 10**15:
            break
    return total


def _pick_power_offset(excluded: set[Fraction]) -> Fraction:
    """Smallest m >= 1 with 1/2**m not excluded (first candidate when free)."""
    m = 1
    cap = len(excluded) + 2
    while m <= cap:
        s = Fraction(1, 2**m)
        if s not in excluded:
            return s
        m += 1
    raise ConsistencyError("no admissible power-of-two offset found", witness=excluded)


def lift_once(
    gram: GramMatrix,
    prev: SphereSpec,
    w: tuple[Fraction, ...],
    w_norm2: Fraction,
    ball_limit: int = _BALL_LIMIT,
) -> SphereSpec:
    """Extend a stage-i sphere into stage i+1, preserving its point set."""
    i = prev.gram.dim
    stage = gram.dim
    if stage != i + 1 or len(w) != stage:
        raise ValueError("dimension mismatch in lift_once")
    if w[-1] != 1:
        raise ValueError("w must have last coordinate 1")
    r2 = prev.radius2
    big_w = w_norm2
    c_hat = prev.center + (Fraction(0),)
    mu = tuple(-w[j] for j in range(i))  # e_{i+1} = mu + w on the span

    bound = r2 + 2 * big_w + 2 * sqrt_upper_bound(r2 * big_w)
    if _ball_size_estimate(gram, bound) <= ball_limit:
        mode = "enumerated"
        sub = prev.gram
        excluded_all: set[Fraction] = set()
        for v in enumerate_ball(gram, c_hat, bound):
            tau = v[i]
            if tau == 0:
                continue
            inspan = [Fraction(v[j]) + tau * mu[j] - prev.center[j] for j in range(i)]
            rho2 = sub.quadratic(inspan)
            excluded_all.add((rho2 + tau * tau * big_w - r2) / (2 * tau * big_w))
        s = _pick_power_offset(excluded_all)
        excluded = tuple(sorted(e for e in excluded_all if 0 < e <= 1))
    else:
        mode = "denominator-bound"
        denom = lcm(
            *(c.denominator for c in prev.center),
            *(m.denominator for m in mu),
            1,
        )
        d_prime = lcm(denom * denom, big_w.denominator, r2.denominator)
        v_int = big_w * d_prime
        if v_int.denominator != 1:
            raise ConsistencyError("denominator bookkeeping failed", witness=(big_w, d_prime))
        tau_max = floor_add_sqrt(Fraction(1), r2 / big_w + 1) + 1
        threshold = tau_max * int(v_int)
        m = max(1, threshold.bit_length() + 1)
        if not 2 ** (m - 1) > threshold:
            raise ConsistencyError("offset exponent failed its own bound", witness=(m, threshold))
        s = Fraction(1, 2**m)
        excluded = ()

    new_center = tuple(c_hat[j] + s * w[j] for j in range(stage))
    new_r2 = r2 + s * s * big_w
    lifted = tuple(pt + (0,) for pt in prev.points)

    # verification: the new sphere must contain exactly the lifted points
    if mode == "enumerated":
        shell = enumerate_shell(gram, new_center, new_r2)
        if shell.points != lifted:
            raise ConsistencyError(
                "lift verification failed: shell changed",
                witness={"expected": lifted, "got": shell.points},
            )
    else:
        for pt in lifted:
            diff = [Fraction(pt[j]) - new_center[j] for j in range(stage)]
            if gram.quadratic(diff) != new_r2:
                raise ConsistencyError("lifted point left the sphere", witness=pt)

    step = LiftStep(
        stage=stage,
        w=w,
        w_norm2=big_w,
        excluded=excluded,
        chosen_s=s,
        mode=mode,
    )
    return SphereSpec(
        gram=gram,
        center=new_center,
        radius2=new_r2,
        points=ShellResult(lifted),
        lift_trace=prev.lift_trace + (step,),
        base=prev.base,
    )


def build_sphere(g: GramMatrix, n_points: int, prime_bound: int | None = None) -> SphereSpec:
    """A sphere through exactly n_points points of the lattice of g.

    The 2-d circle construction runs on the sublattice of the first two
    basis vectors; its points are carried into Gram coordinates by the
    y -> -y mirror (the complex embedding realizes the mirrored form), and
    the sphere is then lifted one basis vector at a time.
    """
    if g.dim < 2:
        raise ValueError("build_sphere needs dimension >= 2")
    g2 = g.leading(2)
    base_form = form_from_gram(g2)
    circ = build_circle(base_form, n_points, prime_bound)
    circle_pts = enumerate_circle_points(circ)
    mirrored = tuple(sorted((x, -y) for x, y in circle_pts))

    # independent confirmation in the Gram metric
    shell = enumerate_shell(g2, circ.center, circ.radius2)
    if shell.points != mirrored:
        raise ConsistencyError(
            "gram-metric shell disagrees with the circle construction",
            witness={"shell": shell.points, "circle": mirrored},
        )

    spec = SphereSpec(
        gram=g2,
        center=circ.center,
        radius2=circ.radius2,
        points=ShellResult(mirrored),
        lift_trace=(),
        base=circ,
    )
    for w, norm2 in gram_schmidt_data(g):
        spec = lift_once(g.leading(spec.gram.dim + 1), spec, w, norm2)

    if spec.points.count != n_points:
        raise TheoremViolationError(
            f"final sphere contains {spec.points.count} points, expected {n_points}",
            witness=spec,
        )
    return spec


def rectangular_integral_model(ratio) -> tuple[GramMatrix, str]:
    """Integral model for a rectangular lattice with rational squared ratio.

    For side ratio (alpha/beta)**2 = b/a in lowest terms, the lattice
    spanned by (a, 0) and (0, sqrt(a*b)) is integral and similar to the
    original by the factor alpha/a.  Certified circles for the model scale
    back by that similarity.
    """
    ratio = Fraction(ratio)
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    b_, a_ = ratio.numerator, ratio.denominator
    gram = GramMatrix(((a_ * a_, 0), (0, a_ * b_)))
    return gram, f"scale certified coordinates by alpha/{a_} (alpha = first side length)"


def z3_offset_sphere_points(k: int) -> list[tuple[int, int, int]]:
    """Z^3 points on the sphere (4x-1)^2 + (4y)^2 + (4z - sqrt(2))^2 = 17**k + 2.

    The irrational center offset forces z = 0 (the cross term -8*sqrt(2)*z
    must vanish), leaving the exact circle (4x-1)^2 + 16y^2 = 17**k, which
    holds exactly k+1 lattice points.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    target = 17**k
    out = []
    ymax = _isqrt(target // 16)
    for y in range(-ymax, ymax + 1):
        s = perfect_square_root(target - 16 * y * y)
        if s is None:
            continue
        for sg in {s, -s}:
            if (sg + 1) % 4 == 0:
                out.append(((sg + 1) // 4, y, 0))
    return sorted(set(out))
