from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from cyclometric import (
    Automorphism,
    BadAutomorphismIndex,
    ModulusMismatch,
    SearchExhausted,
    apply_automorphism,
    conjugates,
    dist_sq,
    from_rational,
    krasner_check,
    make_element,
    mul,
    norm_sq,
    primitive_element_search,
    subfield_contains,
    subfield_profile,
)

from conftest import element_pairs, elements, small_rationals


def el(p, *c):
    return make_element(p, list(c))


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TestAutomorphism:
    def test_sigma2_w(self):
        assert apply_automorphism(el(3, 1, 0), 2) == el(3, 0, 1)

    def test_rationals_fixed(self):
        assert apply_automorphism(el(3, F(1, 2), F(1, 2)), 2) == el(3, F(1, 2), F(1, 2))

    @given(elements())
    def test_identity(self, a):
        assert apply_automorphism(a, 1) == a

    @given(elements(), st.data())
    def test_composition(self, a, data):
        k = data.draw(st.integers(1, a.p - 1))
        l = data.draw(st.integers(1, a.p - 1))
        assert apply_automorphism(apply_automorphism(a, l), k) == apply_automorphism(a, k * l % a.p)
        assert Automorphism(a.p, k).compose(Automorphism(a.p, l))(a) == apply_automorphism(a, k * l % a.p)

    @pytest.mark.parametrize("k", [0, 3, -1, 7])
    def test_bad_index(self, k):
        with pytest.raises(BadAutomorphismIndex):
            apply_automorphism(el(3, 1, 0), k)

    @given(elements(), st.data())
    def test_permutes_coefficients(self, a, data):
        k = data.draw(st.integers(1, a.p - 1))
        assert sorted(apply_automorphism(a, k).coeffs) == sorted(a.coeffs)


class TestInvariance:
    @given(element_pairs(), st.data())
    def test_distance_invariant(self, ab, data):
        a, b = ab
        k = data.draw(st.integers(1, a.p - 1))
        assert dist_sq(apply_automorphism(a, k), apply_automorphism(b, k)) == dist_sq(a, b)

    @given(elements(), st.data())
    def test_norm_invariant(self, a, data):
        k = data.draw(st.integers(1, a.p - 1))
        assert norm_sq(apply_automorphism(a, k)) == norm_sq(a)

    @settings(max_examples=50)
    @given(element_pairs(primes=(3, 5, 7)), st.data())
    def test_ring_homomorphism(self, ab, data):
        a, b = ab
        k = data.draw(st.integers(1, a.p - 1))
        s = lambda x: apply_automorphism(x, k)  # noqa: E731
        assert s(mul(a, b)) == mul(s(a), s(b))


class TestProfile:
    def test_primitive(self):
        prof = subfield_profile(el(5, 1, 0, 0, 0))
        assert prof.stabilizer == {1}
        assert prof.degree == 4

    def test_real_subfield(self):
        prof = subfield_profile(el(5, 1, 0, 0, 1))
        assert prof.stabilizer == {1, 4}
        assert prof.degree == 2

    @given(st.sampled_from([3, 5, 7, 11]), small_rationals())
    def test_rational(self, p, q):
        prof = subfield_profile(from_rational(p, q))
        assert prof.stabilizer == set(range(1, p))
        assert prof.degree == 1

    @given(elements())
    def test_stabilizer_is_subgroup(self, a):
        prof = subfield_profile(a)
        stab = prof.stabilizer
        assert 1 in stab
        assert all(x * y % a.p in stab for x in stab for y in stab)
        assert (a.p - 1) % prof.degree == 0
        assert len(conjugates(a)) == prof.degree

    def test_gaussian_period_p7(self):
        # w + w^2 + w^4 is fixed by the squares {1, 2, 4}
        prof = subfield_profile(el(7, 1, 1, 0, 1, 0, 0))
        assert prof.stabilizer == {1, 2, 4}
        assert prof.degree == 2


class TestContains:
    def test_rational_in_anything(self):
        assert subfield_contains(from_rational(3, F(-1, 2)), el(3, 1, 0))

    def test_remark_counterexample(self):
        assert not subfield_contains(el(3, 1, 0), from_rational(3, F(-1, 2)))

    def test_real_subfield_in_k(self):
        assert subfield_contains(el(5, 1, 0, 0, 1), el(5, 1, 0, 0, 0))

    def test_mismatch(self):
        with pytest.raises(ModulusMismatch):
            subfield_contains(el(3, 1, 0), el(5, 1, 0, 0, 0))


class TestKrasner:
    def test_half_is_optimal(self):
        rep = krasner_check(el(3, 1, 0), from_rational(3, F(-1, 2)))
        assert rep.margin == 0
        assert rep.hypothesis_holds is False
        assert rep.conclusion_holds is False
        assert rep.dist_sq == F(9, 2)
        assert rep.min_conjugate_dist_sq == 18

    def test_close_perturbation(self):
        a = el(3, 1, 0)
        b = a + from_rational(3, F(1, 10))
        rep = krasner_check(a, b)
        assert rep.dist_sq == F(1, 50)
        assert rep.margin == 18 - F(4, 50)
        assert rep.hypothesis_holds and rep.conclusion_holds

    @given(st.sampled_from([3, 5, 7]), small_rationals(), st.data())
    def test_rational_is_vacuous(self, p, q, data):
        b = data.draw(elements(p=p))
        rep = krasner_check(from_rational(p, q), b)
        assert rep.hypothesis_holds and rep.conclusion_holds
        assert rep.margin is None

    @settings(max_examples=300)
    @given(element_pairs(primes=(3, 5, 7, 11)))
    def test_hypothesis_implies_conclusion(self, ab):
        a, b = ab
        rep = krasner_check(a, b)
        if rep.hypothesis_holds:
            assert rep.conclusion_holds

    @settings(max_examples=100)
    @given(element_pairs(primes=(5, 7, 11, 13)))
    def test_near_pairs(self, ab):
        a, delta = ab
        conj = conjugates(a)
        assume(len(conj) > 1 and not delta.is_zero())
        m = min(dist_sq(a, c) for c in conj[1:])
        # smallest K with 4 ||delta/K||^2 < m
        K = 1
        while 4 * norm_sq(delta) >= m * K * K:
            K += 1
        rep = krasner_check(a, a + delta * F(1, K))
        assert rep.hypothesis_holds
        assert rep.conclusion_holds

    @given(elements(primes=(5, 7, 11)))
    def test_conjugates_separated(self, a):
        conj = conjugates(a)
        assume(len(conj) > 1)
        r2 = min(dist_sq(a, c) for c in conj[1:])
        for i, x in enumerate(conj):
            for y in conj[i + 1:]:
                assert dist_sq(x, y) >= r2


class TestPrimitive:
    def test_real_plus_w(self):
        res = primitive_element_search(el(5, 1, 0, 0, 1), el(5, 1, 0, 0, 0), 10)
        assert res.n == 1
        assert res.gamma == el(5, 2, 0, 0, 1)
        assert res.degree == 4

    def test_rationals(self):
        res = primitive_element_search(from_rational(7, 2), from_rational(7, F(1, 3)), 5)
        assert res.n == 1 and res.degree == 1

    def test_same(self):
        res = primitive_element_search(el(3, 1, 0), el(3, 1, 0), 5)
        assert res.n == 1
        assert res.gamma == el(3, 2, 0)
        assert res.degree == 2

    def test_needs_n_above_one(self):
        a = el(5, 1, 0, 0, 0)
        res = primitive_element_search(a, -a, 10)
        # gamma_1 = 0 has degree 1; gamma_2 = w/2 is primitive
        assert res.n == 2
        assert res.gamma == el(5, F(1, 2), 0, 0, 0)
        assert res.degree == 4

    def test_exhausted(self):
        with pytest.raises(SearchExhausted):
            primitive_element_search(el(5, 1, 0, 0, 0), el(5, -1, 0, 0, 0), 1)

    @settings(max_examples=80)
    @given(element_pairs(primes=(5, 7, 11, 13)))
    def test_degree_is_lcm(self, ab):
        a, b = ab
        res = primitive_element_search(a, b, 200)
        da, db = subfield_profile(a).degree, subfield_profile(b).degree
        assert res.degree % da == 0 and res.degree % db == 0
        assert res.degree in divisors(a.p - 1)
        assert subfield_contains(a, res.gamma) and subfield_contains(b, res.gamma)
