import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concyclic.quadorder import (
    Main1Report,
    OrderElement,
    SplittingType,
    brute_count_reps,
    canonical_sign,
    generate_norm_elements,
    order_params,
    scan_reps,
    splitting_type,
    theorem_main1_check,
)


def splitting_oracle(d_k, p):
    """Residue scan: look at all t with t^2 = d_k (mod 4p)."""
    sols = [t for t in range(4 * p) if (t * t - d_k) % (4 * p) == 0]
    if any(t % p != 0 for t in sols):
        return SplittingType.SPLIT
    if sols:
        return SplittingType.RAMIFIED
    return SplittingType.INERT


class TestOrderParams:
    def test_examples(self):
        op = order_params(3)
        assert (op.d, op.d_K, op.f, op.wk_kind) == (3, -3, 2, "half")
        op = order_params(4)
        assert (op.d, op.d_K, op.f) == (1, -4, 2)
        op = order_params(5)
        assert (op.d, op.d_K, op.f) == (5, -20, 1)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            order_params(0)
        with pytest.raises(ValueError):
            order_params(-3)

    def test_conductor_relation_exhaustive(self):
        for n in range(1, 10_001):
            op = order_params(n)
            assert -4 * n == op.f**2 * op.d_K
            assert op.d_K in (-op.d, -4 * op.d)


class TestSplittingType:
    def test_examples(self):
        assert splitting_type(-3, 7) == SplittingType.SPLIT
        assert splitting_type(-3, 3) == SplittingType.RAMIFIED
        assert splitting_type(-7, 2) == SplittingType.SPLIT

    def test_two_cases(self):
        # -15 mod 8 == 1, so 2 splits in Q(sqrt(-15))
        assert splitting_type(-15, 2) == SplittingType.SPLIT
        assert splitting_type(-15, 2) == splitting_oracle(-15, 2)
        assert splitting_type(-20, 2) == SplittingType.RAMIFIED
        assert splitting_type(-3, 2) == SplittingType.INERT  # -3 mod 8 == 5

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            splitting_type(-3, 6)
        with pytest.raises(ValueError):
            splitting_type(-12, 5)  # -12 = 4*(-3), -3 = 1 mod 4: not fundamental
        with pytest.raises(ValueError):
            splitting_type(5, 3)  # positive

    @pytest.mark.parametrize("d_k", [-3, -4, -7, -8, -20])
    def test_matches_residue_oracle(self, d_k):
        from concyclic.exactnum import primes

        it = primes()
        while True:
            p = next(it)
            if p > 200:
                break
            assert splitting_type(d_k, p) == splitting_oracle(d_k, p), (d_k, p)


class TestBruteCount:
    def test_examples(self):
        assert brute_count_reps(3, 7, 1) == 4
        assert brute_count_reps(3, 7, 0) == 2
        assert brute_count_reps(4, 73, 1) == 4
        assert sorted(scan_reps(4, 73)) == [(-3, -4), (-3, 4), (3, -4), (3, 4)]

    def test_count_law_small(self):
        for k in range(0, 7):
            assert brute_count_reps(3, 7, k) == 2 * (k + 1)


class TestOrderElement:
    def test_multiplication(self):
        q = OrderElement(2, 1, 3)
        assert (q * q).coords() == (1, 4)
        assert (q * q.conjugate()).coords() == (7, 0)

    @given(
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=-50, max_value=50),
        st.integers(min_value=1, max_value=30),
    )
    @settings(max_examples=200)
    def test_norm_multiplicative(self, x1, y1, x2, y2, n):
        a = OrderElement(x1, y1, n)
        b = OrderElement(x2, y2, n)
        assert (a * b).norm() == a.norm() * b.norm()

    def test_canonical_sign(self):
        assert canonical_sign(OrderElement(-3, 4, 4)).coords() == (3, -4)
        assert canonical_sign(OrderElement(0, -2, 3)).coords() == (0, 2)
        assert canonical_sign(OrderElement(5, 1, 3)).coords() == (5, 1)


class TestGenerateNormElements:
    def test_examples(self):
        q = OrderElement(2, 1, 3)  # norm 7
        k1 = {z.coords() for z in generate_norm_elements(q, 1)}
        assert k1 == {(2, 1), (-2, -1), (2, -1), (-2, 1)}
        k2 = {z.coords() for z in generate_norm_elements(q, 2)}
        assert k2 == {(1, 4), (-1, -4), (7, 0), (-7, 0), (1, -4), (-1, 4)}
        k0 = {z.coords() for z in generate_norm_elements(q, 0)}
        assert k0 == {(1, 0), (-1, 0)}

    def test_rejects_composite_norm(self):
        # (3, 0) has norm 9
        with pytest.raises(ValueError):
            generate_norm_elements(OrderElement(3, 0, 3), 1)

    @pytest.mark.parametrize(
        "n,p,witness",
        [(3, 7, (2, 1)), (3, 73, (5, 4)), (4, 73, (3, 4)), (5, 89, (3, 4)), (12, 769, (1, 8))],
    )
    def test_matches_brute_force(self, n, p, witness):
        q = OrderElement(witness[0], witness[1], n)
        assert q.norm() == p
        for k in range(0, 5):
            gen = sorted(z.coords() for z in generate_norm_elements(q, k))
            brute = scan_reps(n, p**k)
            assert gen == brute
            assert len(gen) == 2 * (k + 1)


class TestTheoremMain1Check:
    def test_passes(self):
        rep = theorem_main1_check(3, 7, 5)
        assert rep.hypotheses_met and rep.passed
        assert rep.counts == (2, 4, 6, 8, 10, 12)
        assert rep.generator_agrees

    def test_hypotheses_not_met(self):
        rep = theorem_main1_check(3, 5, 3)
        assert not rep.hypotheses_met
        assert not rep.passed
        assert any("form" in u for u in rep.unmet)

    def test_passes_n4(self):
        rep = theorem_main1_check(4, 73, 3)
        assert rep.passed
        assert rep.counts == (2, 4, 6, 8)

    def test_n1_excluded(self):
        rep = theorem_main1_check(1, 5, 2)
        assert not rep.hypotheses_met
        # observed counts still reported: z[i] has 4 units
        assert rep.counts[0] == 4

    def test_gcd_conductor_hypothesis(self):
        # n = 4: f = 2; p = 2 shares a factor with f (2 is also not odd-split)
        rep = theorem_main1_check(4, 2, 2)
        assert not rep.hypotheses_met

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            theorem_main1_check(3, 6, 2)
