"""Machine-readable certificates and their canonical JSON serialization.

Certificates are plain dicts with a fixed key order; rationals serialize
as "num/den" strings so exactness survives the wire.  Identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .concyclic2d import bijection_check, build_circle, circle_metric, enumerate_circle_points
from .errors import ConsistencyError
from .lattice import GramMatrix, QuadForm, enumerate_shell, form_from_gram
from .quadorder import brute_count_reps, splitting_type, theorem_main1_check
from .spherelift import SphereSpec, build_sphere

__all__ = [
    "format_fraction",
    "parse_fraction",
    "canonical_json",
    "circle_certificate",
    "sphere_certificate",
    "count_reps_payload",
    "prime_search_payload",
    "split_payload",
    "check_main1_payload",
    "verify_certificate",
]


def format_fraction(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def canonical_json(payload: dict) -> str:
    """Deterministic rendering: insertion order, two-space indent, newline."""
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def _metric_strings(mat) -> list[list[str]]:
    return [[format_fraction(v) for v in row] for row in mat]


def _gram_echo(g: GramMatrix) -> dict:
    return {"dim": g.dim, "entries": [list(row) for row in g.entries]}


def _prime_record(prime) -> dict:
    return {"p": prime.p, "x1": prime.x1, "y1": prime.y1, "n": prime.n, "a": prime.a}


def circle_certificate(
    form: QuadForm | None = None,
    gram: GramMatrix | None = None,
    n_points: int = 1,
    prime_bound: int | None = None,
) -> dict:
    """Build, verify, and serialize a circle certificate.

    The emitted points are coordinates in the embedding basis; the
    `metric` field carries the quadratic form matrix (the mirrored form
    (a, -b, c)) against which `center`/`radius2`/`points` re-verify.
    """
    if (form is None) == (gram is None):
        raise ValueError("provide exactly one of form or gram")
    if gram is not None:
        if gram.dim != 2:
            raise ValueError("circle certificates need a 2x2 gram matrix")
        form = form_from_gram(gram)
        echo = {"gram": _gram_echo(gram)}
    else:
        echo = {"form": [form.a, form.b, form.c]}

    spec = build_circle(form, n_points, prime_bound)
    points = enumerate_circle_points(spec)
    bijection_check(spec, points)

    metric = circle_metric(spec)
    confirm = enumerate_shell(metric, spec.center, spec.radius2)
    if confirm.points != points.points:
        raise ConsistencyError(
            "independent shell enumeration disagrees with the construction",
            witness={"shell": confirm.points, "construction": points.points},
        )

    return {
        "kind": "circle",
        "input": echo,
        "n_points": n_points,
        "k": spec.k,
        "prime": _prime_record(spec.prime),
        "j": spec.j,
        "center": [format_fraction(c) for c in spec.center],
        "radius2": format_fraction(spec.radius2),
        "metric": _metric_strings(metric),
        "points": [list(p) for p in points],
        "count": points.count,
        "verified": True,
    }


def _lift_trace_payload(spec: SphereSpec) -> list[dict]:
    out = []
    for step in spec.lift_trace:
        out.append(
            {
                "stage": step.stage,
                "w": [format_fraction(v) for v in step.w],
                "w_norm2": format_fraction(step.w_norm2),
                "excluded": [format_fraction(e) for e in step.excluded],
                "chosen_s": format_fraction(step.chosen_s),
                "mode": step.mode,
            }
        )
    return out


def sphere_certificate(
    gram: GramMatrix,
    n_points: int,
    prime_bound: int | None = None,
) -> dict:
    """Build, verify, and serialize a sphere certificate."""
    spec = build_sphere(gram, n_points, prime_bound)
    return {
        "kind": "sphere",
        "input": {"gram": _gram_echo(gram)},
        "n_points": n_points,
        "k": spec.base.k,
        "prime": _prime_record(spec.base.prime),
        "j": spec.base.j,
        "center": [format_fraction(c) for c in spec.center],
        "radius2": format_fraction(spec.radius2),
        "metric": _metric_strings(spec.gram.rational()),
        "points": [list(p) for p in spec.points],
        "count": spec.points.count,
        "verified": True,
        "lift_trace": _lift_trace_payload(spec),
    }


def count_reps_payload(n: int, p: int, k: int) -> dict:
    return {"count": brute_count_reps(n, p, k)}


def prime_search_payload(n: int, a: int, prime_bound: int | None = None) -> dict:
    from .concyclic2d import find_admissible_prime

    ap = find_admissible_prime(n, a, prime_bound)
    return {"n": ap.n, "a": ap.a, "p": ap.p, "x1": ap.x1, "y1": ap.y1}


def split_payload(d_k: int, p: int) -> dict:
    return {"type": splitting_type(d_k, p).value}


def check_main1_payload(n: int, p: int, k_max: int) -> dict:
    rep = theorem_main1_check(n, p, k_max)
    return {
        "n": rep.n,
        "p": rep.p,
        "k_max": rep.k_max,
        "hypotheses_met": rep.hypotheses_met,
        "unmet": list(rep.unmet),
        "witness": list(rep.witness) if rep.witness is not None else None,
        "counts": list(rep.counts),
        "expected": list(rep.expected),
        "generator_agrees": rep.generator_agrees,
        "pass": rep.passed,
    }


def verify_certificate(cert: dict, full: bool | None = None) -> bool:
    """Re-verify an emitted certificate from its own payload.

    Each point is checked exactly against metric/center/radius2; when
    feasible (always for circles, small radii for spheres) the whole shell
    is re-enumerated and compared.  ``full`` forces or forbids the shell
    re-enumeration.
    """
    metric = [[parse_fraction(v) for v in row] for row in cert["metric"]]
    center = [parse_fraction(c) for c in cert["center"]]
    r2 = parse_fraction(cert["radius2"])
    points = [tuple(p) for p in cert["points"]]
    dim = len(center)
    if len(points) != cert["count"]:
        return False
    for pt in points:
        diff = [Fraction(pt[i]) - center[i] for i in range(dim)]
        val = sum(diff[i] * metric[i][j] * diff[j] for i in range(dim) for j in range(dim))
        if val != r2:
            return False
    if full is None:
        full = dim == 2 or r2 <= 10**6
    if full:
        shell = enumerate_shell(metric, center, r2)
        if list(shell.points) != sorted(points):
            return False
    return True
