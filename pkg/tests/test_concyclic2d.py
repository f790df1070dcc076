from fractions import Fraction
from math import gcd

import pytest

from concyclic.concyclic2d import (
    AdmissiblePrime,
    CircleSpec,
    ahat_sets,
    bijection_check,
    build_circle,
    circle_metric,
    compute_j,
    enumerate_circle_points,
    find_admissible_prime,
)
from concyclic.errors import ConsistencyError, SearchBudgetExceeded, TheoremViolationError
from concyclic.exactnum import is_prime, kronecker
from concyclic.lattice import QuadForm, enumerate_shell
from concyclic.quadorder import order_params

CORPUS = [
    QuadForm(1, 0, 1),
    QuadForm(2, 2, 2),
    QuadForm(1, 1, 1),
    QuadForm(1, 0, 3),
    QuadForm(1, 0, 5),
    QuadForm(3, 2, 5),
    QuadForm(2, 1, 3),
]


class TestFindAdmissiblePrime:
    def test_examples(self):
        p = find_admissible_prime(4, 1)
        assert (p.p, p.x1, p.y1) == (73, 3, 4)
        p = find_admissible_prime(3, 1)
        assert (p.p, p.x1, p.y1) == (73, 5, 4)
        p = find_admissible_prime(12, 2)
        assert (p.p, p.x1, p.y1) == (769, 1, 8)

    def test_no_smaller_prime_oracle(self):
        # independent re-derivation of minimality for n=4, a=1
        for q in range(2, 73):
            if not is_prime(q):
                continue
            found = any(
                (q - 64 * t * t) >= 1 and int((q - 64 * t * t) ** 0.5 + 0.5) ** 2 == q - 64 * t * t
                for t in range(1, 4)
            )
            assert not found, q

    def test_budget_error(self):
        with pytest.raises(SearchBudgetExceeded):
            find_admissible_prime(3, 1, prime_bound=50)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            find_admissible_prime(2, 1)
        with pytest.raises(ValueError):
            find_admissible_prime(3, 0)

    @pytest.mark.parametrize("form", CORPUS)
    def test_invariants_on_corpus(self, form):
        ap = find_admissible_prime(form.n, form.a)
        assert ap.x1 % 2 == 1
        assert gcd(ap.x1, 4 * ap.a) == 1
        assert ap.y1 % (4 * ap.a) == 0 and ap.y1 >= 4 * ap.a
        params = order_params(ap.n)
        assert kronecker(params.d_K, ap.p) == 1
        assert gcd(ap.p, params.f) == 1
        ap.validate()

    def test_validate_catches_corruption(self):
        ap = find_admissible_prime(4, 1)
        bad = AdmissiblePrime(p=ap.p, x1=ap.x1 + 2, y1=ap.y1, n=ap.n, a=ap.a)
        with pytest.raises(ConsistencyError):
            bad.validate()


class TestComputeJ:
    def test_examples(self):
        assert compute_j(3, 1, 1) == 3
        assert compute_j(7, 1, 0) == 1
        assert compute_j(5, 1, 2) == 1

    def test_rejects_common_factor(self):
        with pytest.raises(ValueError):
            compute_j(2, 1, 1)


class TestBuildCircle:
    def test_z2_two_points(self):
        spec = build_circle(QuadForm(1, 0, 1), 2)
        assert spec.prime.p == 73
        assert spec.j == 3
        assert spec.center == (Fraction(3, 4), Fraction(0))
        assert spec.radius2 == Fraction(73, 16)

    def test_z2_one_point(self):
        spec = build_circle(QuadForm(1, 0, 1), 1)
        assert spec.k == 0 and spec.j == 1
        assert spec.center == (Fraction(1, 4), Fraction(0))
        assert spec.radius2 == Fraction(1, 16)
        assert enumerate_circle_points(spec).points == ((0, 0),)

    def test_rect3_three_points(self):
        spec = build_circle(QuadForm(1, 0, 3), 3)
        assert spec.prime.p == 193
        assert spec.j == 1
        assert spec.center == (Fraction(1, 4), Fraction(0))
        assert spec.radius2 == Fraction(37249, 16)
        assert enumerate_circle_points(spec).count == 3


class TestEnumerateCirclePoints:
    def test_z2_k1(self):
        spec = build_circle(QuadForm(1, 0, 1), 2)
        assert enumerate_circle_points(spec).points == ((0, -2), (0, 2))

    def test_hexagonal_k1(self):
        spec = build_circle(QuadForm(1, 1, 1), 2)
        assert spec.prime.x1 == 5 and spec.j == 1
        assert enumerate_circle_points(spec).points == ((-2, -2), (0, 2))

    def test_strategies_agree(self):
        for form in CORPUS:
            for n_points in (1, 2, 3, 4):
                spec = build_circle(form, n_points)
                scan = enumerate_circle_points(spec, strategy="scan")
                fact = enumerate_circle_points(spec, strategy="factor")
                assert scan.points == fact.points

    def test_count_mismatch_raises(self):
        good = build_circle(QuadForm(1, 0, 1), 3)
        bad = CircleSpec(
            form=good.form,
            n_points=4,
            k=good.k,
            prime=good.prime,
            j=good.j,
            center=good.center,
            radius2=good.radius2,
        )
        with pytest.raises(TheoremViolationError):
            enumerate_circle_points(bad)

    def test_matches_generic_shell_enumerator(self):
        for form in CORPUS[:4]:
            for n_points in (1, 2, 3):
                spec = build_circle(form, n_points)
                pts = enumerate_circle_points(spec)
                shell = enumerate_shell(circle_metric(spec), spec.center, spec.radius2)
                assert pts.points == shell.points


class TestBijection:
    def test_z2_k1_images(self):
        spec = build_circle(QuadForm(1, 0, 1), 2)
        rep = bijection_check(spec)
        assert rep.ok
        assert rep.images == ((-3, -4), (-3, 4))
        assert (rep.a_count, rep.ahat_count) == (4, 2)

    def test_hexagonal_k1_images(self):
        spec = build_circle(QuadForm(1, 1, 1), 2)
        rep = bijection_check(spec)
        assert rep.images == ((-5, -4), (-5, 4))

    def test_k0(self):
        spec = build_circle(QuadForm(1, 0, 1), 1)
        rep = bijection_check(spec)
        assert rep.images == ((-1, 0),)
        assert (rep.a_count, rep.ahat_count) == (2, 1)

    def test_ahat_sets_counts(self):
        spec = build_circle(QuadForm(2, 1, 3), 4)
        a_set, ahat = ahat_sets(spec)
        assert len(a_set) == 2 * (spec.k + 1)
        assert len(ahat) == spec.k + 1

    @pytest.mark.parametrize("form", CORPUS)
    def test_corpus_small(self, form):
        for n_points in (1, 2, 3, 4, 5):
            spec = build_circle(form, n_points)
            rep = bijection_check(spec)
            assert rep.ok and rep.generator_agrees
            assert rep.a_count == 2 * (spec.k + 1)
            assert rep.ahat_count == spec.k + 1
