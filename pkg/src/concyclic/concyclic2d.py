"""Circles through exactly n points of a 2-dimensional integral lattice.

Given a positive definite integral form (a, b, c) with n = 4ac - b**2, the
construction finds a prime p = x1**2 + n*y1**2 with y1 = 0 mod 4a, sets
j = x1**k mod 4a, and certifies that the circle

    |4*sqrt(a)*z - j|**2 = p**k,   z = sqrt(a)*x + alpha*y,
    alpha = (-b + sqrt(-n)) / (2*sqrt(a)),

meets the lattice in exactly k+1 points.  In coordinates the condition is
(4a*x - 2b*y - j)**2 + 4n*y**2 = p**k, and the embedding realizes the
mirrored metric (a, -b, c), which is the same lattice under y -> -y.

Point enumeration scans y directly while the range is small and otherwise
solves the norm-form equation exactly; the bijection checker maps the
points onto the norm-p**k elements with coordinate sum = -j (mod 4a) and
back, proving the count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import normform
from .errors import ConsistencyError, SearchBudgetExceeded, TheoremViolationError
from .exactnum import is_prime, isqrt, kronecker, perfect_square_root
from .lattice import QuadForm, ShellResult
from .quadorder import OrderElement, generate_norm_elements, order_params

__all__ = [
    "AdmissiblePrime",
    "CircleSpec",
    "BijectionReport",
    "find_admissible_prime",
    "compute_j",
    "build_circle",
    "enumerate_circle_points",
    "circle_metric",
    "ahat_sets",
    "bijection_check",
    "DEFAULT_PRIME_BOUND",
]

DEFAULT_PRIME_BOUND = 1_000_000

# y-scan is preferred below this many iterations; beyond it the norm-form
# solver takes over.
_SCAN_LIMIT = 1_000_000


@dataclass(frozen=True)
class AdmissiblePrime:
    """Prime p = x1**2 + n*y1**2 with y1 = 0 (mod 4a), plus context."""

    p: int
    x1: int
    y1: int
    n: int
    a: int

    def validate(self) -> None:
        """Check every certified invariant; failures are internal errors."""
        if not is_prime(self.p):
            raise ConsistencyError(f"{self.p} is not prime", witness=self)
        if self.p != self.x1 * self.x1 + self.n * self.y1 * self.y1:
            raise ConsistencyError("p != x1^2 + n*y1^2", witness=self)
        if self.y1 % (4 * self.a) != 0 or self.y1 < 4 * self.a:
            raise ConsistencyError("y1 is not a positive multiple of 4a", witness=self)
        if self.n % self.p == 0:
            raise ConsistencyError("p divides n", witness=self)
        if self.x1 % 2 == 0 or self.x1 < 1:
            raise ConsistencyError("x1 must be odd and positive", witness=self)
        if gcd(self.x1, 4 * self.a) != 1:
            raise ConsistencyError("gcd(x1, 4a) != 1", witness=self)
        params = order_params(self.n)
        if kronecker(params.d_K, self.p) != 1:
            raise ConsistencyError("kronecker(d_K, p) != 1", witness=self)
        if gcd(self.p, params.f) != 1:
            raise ConsistencyError("gcd(p, f) != 1", witness=self)


def find_admissible_prime(n: int, a: int, prime_bound: int | None = None) -> AdmissiblePrime:
    """Smallest prime p = x**2 + n*(4a*t)**2 with t >= 1.

    The search order is normative for reproducibility: primes ascending,
    then t ascending, then x (x is determined by t).  All invariants of
    the result are checked before returning.
    """
    if n < 3:
        raise ValueError("find_admissible_prime requires n >= 3")
    if a < 1:
        raise ValueError("find_admissible_prime requires a >= 1")
    bound = DEFAULT_PRIME_BOUND if prime_bound is None else prime_bound
    base = 16 * a * a * n

    def candidates():
        yield 2
        yield 3
        p = 5
        while True:
            yield p
            yield p + 2
            p += 6

    for p in candidates():
        if p > bound:
            raise SearchBudgetExceeded(
                f"no admissible prime for n={n}, a={a} below {bound}", bound=bound
            )
        if p <= base or not is_prime(p) or n % p == 0:
            continue
        t = 1
        while base * t * t < p:
            x = perfect_square_root(p - base * t * t)
            if x is not None:
                result = AdmissiblePrime(p=p, x1=x, y1=4 * a * t, n=n, a=a)
                result.validate()
                return result
            t += 1
    raise AssertionError("unreachable")


def compute_j(x1: int, a: int, k: int) -> int:
    """The unique j in [1, 4a-1] with j = x1**k (mod 4a)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if gcd(x1, 4 * a) != 1:
        raise ValueError("x1 must be coprime to 4a")
    j = pow(x1, k, 4 * a)
    if j == 0:
        raise ConsistencyError("x1^k = 0 (mod 4a) despite gcd(x1, 4a) = 1")
    return j


@dataclass(frozen=True)
class CircleSpec:
    """A fully determined circle certificate input.

    center and radius2 are in lattice-basis coordinates for the embedding
    above: an integer point (x, y) lies on the circle iff
    (4a*x - 2b*y - j)**2 + 4n*y**2 = p**k.
    """

    form: QuadForm
    n_points: int
    k: int
    prime: AdmissiblePrime
    j: int
    center: tuple[Fraction, Fraction]
    radius2: Fraction


def build_circle(form: QuadForm, n_points: int, prime_bound: int | None = None) -> CircleSpec:
    """Construct the circle through exactly n_points lattice points."""
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    k = n_points - 1
    a = form.a
    prime = find_admissible_prime(form.n, a, prime_bound)
    j = compute_j(prime.x1, a, k)
    return CircleSpec(
        form=form,
        n_points=n_points,
        k=k,
        prime=prime,
        j=j,
        center=(Fraction(j, 4 * a), Fraction(0)),
        radius2=Fraction(prime.p**k, 16 * a),
    )


def circle_metric(spec: CircleSpec) -> list[list[Fraction]]:
    """The rational metric realized by the embedding: the form (a, -b, c)."""
    return spec.form.mirror().rational_matrix()


def _scan_circle_points(spec: CircleSpec) -> list[tuple[int, int]]:
    a, b = spec.form.a, spec.form.b
    n, j = spec.form.n, spec.j
    target = spec.prime.p**spec.k
    out = []
    ymax = isqrt(target // (4 * n))
    for y in range(-ymax, ymax + 1):
        s = perfect_square_root(target - 4 * n * y * y)
        if s is None:
            continue
        for sg in {s, -s}:
            num = sg + 2 * b * y + j
            if num % (4 * a) == 0:
                out.append((num // (4 * a), y))
    return sorted(set(out))


def _solve_circle_points(spec: CircleSpec) -> list[tuple[int, int]]:
    a, b = spec.form.a, spec.form.b
    n, j = spec.form.n, spec.j
    target = spec.prime.p**spec.k
    out = []
    for u, y in normform.solve_norm_form(4 * n, target):
        num = u + 2 * b * y + j
        if num % (4 * a) == 0:
            out.append((num // (4 * a), y))
    return sorted(set(out))


def enumerate_circle_points(spec: CircleSpec, strategy: str = "auto") -> ShellResult:
    """All lattice points on the circle; the count must equal n_points.

    strategy "scan" walks y with 4n*y**2 <= p**k testing for perfect
    squares; "factor" solves the norm-form equation; "auto" picks by range.
    A count different from n_points raises TheoremViolationError with the
    full evidence, which certifies nothing less than the headline claim.
    """
    target = spec.prime.p**spec.k
    scan_range = isqrt(target // (4 * spec.form.n))
    if strategy == "auto":
        strategy = "scan" if scan_range <= _SCAN_LIMIT else "factor"
    if strategy == "scan":
        pts = _scan_circle_points(spec)
    elif strategy == "factor":
        pts = _solve_circle_points(spec)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if len(pts) != spec.n_points:
        raise TheoremViolationError(
            f"circle for {spec.form} with n_points={spec.n_points} "
            f"contains {len(pts)} lattice points",
            witness={"spec": spec, "points": pts},
        )
    return ShellResult(tuple(pts))


def ahat_sets(spec: CircleSpec) -> tuple[list[OrderElement], list[OrderElement]]:
    """The norm-p**k element set A and its congruence-filtered half.

    A is enumerated independently of the element generator (norm-form
    solver or scan).  Two claims are verified on every member rather than
    assumed: y = 0 (mod 4a) and x + y = +-j (mod 4a).  The filtered set
    keeps x + y = -j (mod 4a).
    """
    n, a, j = spec.form.n, spec.form.a, spec.j
    target = spec.prime.p**spec.k
    reps = normform.solve_norm_form(n, target)
    four_a = 4 * a
    a_set = [OrderElement(x, y, n) for x, y in reps]
    for z in a_set:
        if z.y % four_a != 0:
            raise TheoremViolationError(
                f"norm-{target} element {z.coords()} has y != 0 mod {four_a}",
                witness={"spec": spec, "element": z.coords()},
            )
        if (z.x + z.y) % four_a not in (j % four_a, (-j) % four_a):
            raise TheoremViolationError(
                f"norm-{target} element {z.coords()} has x+y != +-{j} mod {four_a}",
                witness={"spec": spec, "element": z.coords()},
            )
    ahat = [z for z in a_set if (z.x + z.y) % four_a == (-j) % four_a]
    return a_set, ahat


@dataclass(frozen=True)
class BijectionReport:
    """Evidence that phi: circle points -> filtered elements is a bijection."""

    ok: bool
    a_count: int
    ahat_count: int
    expected_a: int
    expected_ahat: int
    images: tuple[tuple[int, int], ...]
    generator_agrees: bool


def bijection_check(spec: CircleSpec, points: ShellResult | None = None) -> BijectionReport:
    """Verify the map z -> 4*sqrt(a)*z - j and its inverse on a circle spec.

    Checks, with exact arithmetic throughout:
      * each circle point maps to an element of norm p**k whose coordinate
        sum is -j (mod 4a) and whose y-coordinate is 0 (mod 4a);
      * the image set equals the independently computed filtered set;
      * the inverse formula ((x + b*y + j)/(4a), y/2) returns the point;
      * #A = 2(k+1) and #filtered = k+1;
      * the element generator reproduces A exactly.
    Any failure raises TheoremViolationError with witnesses.
    """
    if points is None:
        points = enumerate_circle_points(spec)
    a, b, n, j = spec.form.a, spec.form.b, spec.form.n, spec.j
    four_a = 4 * a
    target = spec.prime.p**spec.k

    a_set, ahat = ahat_sets(spec)
    images = []
    for x, y in points:
        w = OrderElement(4 * a * x - 2 * b * y - j, 2 * y, n)
        if w.norm() != target:
            raise TheoremViolationError(
                f"image of {(x, y)} has norm {w.norm()} != {target}",
                witness={"spec": spec, "point": (x, y)},
            )
        if (w.x + w.y) % four_a != (-j) % four_a or w.y % four_a != 0:
            raise TheoremViolationError(
                f"image of {(x, y)} violates the congruence conditions",
                witness={"spec": spec, "point": (x, y), "image": w.coords()},
            )
        # inverse: (x + b*y + j)/(4a) + (y/2)*alpha in basis coordinates
        ix_num = w.x + b * w.y + j
        if ix_num % four_a != 0 or w.y % 2 != 0:
            raise TheoremViolationError(
                "inverse formula produced non-integral coordinates",
                witness={"spec": spec, "image": w.coords()},
            )
        if (ix_num // four_a, w.y // 2) != (x, y):
            raise TheoremViolationError(
                "inverse formula did not return the original point",
                witness={"spec": spec, "point": (x, y), "image": w.coords()},
            )
        images.append(w.coords())

    image_set = set(images)
    ahat_set = {z.coords() for z in ahat}
    if len(image_set) != len(images) or image_set != ahat_set:
        raise TheoremViolationError(
            "the point-to-element map is not a bijection onto the filtered set",
            witness={"spec": spec, "images": sorted(image_set), "ahat": sorted(ahat_set)},
        )

    expected_a = 2 * (spec.k + 1)
    expected_ahat = spec.k + 1
    if len(a_set) != expected_a or len(ahat) != expected_ahat:
        raise TheoremViolationError(
            f"count law failed: #A={len(a_set)} (expect {expected_a}), "
            f"#filtered={len(ahat)} (expect {expected_ahat})",
            witness={"spec": spec},
        )

    q = OrderElement(spec.prime.x1, spec.prime.y1, n)
    gen = sorted(z.coords() for z in generate_norm_elements(q, spec.k))
    brute = sorted(z.coords() for z in a_set)
    gen_ok = gen == brute
    if not gen_ok:
        raise TheoremViolationError(
            "element generator disagrees with the independent enumeration",
            witness={"spec": spec, "generated": gen, "enumerated": brute},
        )

    return BijectionReport(
        ok=True,
        a_count=len(a_set),
        ahat_count=len(ahat),
        expected_a=expected_a,
        expected_ahat=expected_ahat,
        images=tuple(sorted(image_set)),
        generator_agrees=gen_ok,
    )
