from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from cyclometric import make_element
from cyclometric.metric import trace_vector_direct

SMALL_PRIMES = [3, 5, 7, 11, 13]


def small_rationals(bound: int = 20, max_den: int = 12):
    return st.builds(
        Fraction,
        st.integers(-bound, bound),
        st.integers(1, max_den),
    )


@st.composite
def elements(draw, p=None, primes=(3, 5, 7, 11)):
    p = draw(st.sampled_from(primes)) if p is None else p
    coeffs = draw(st.lists(small_rationals(), min_size=p - 1, max_size=p - 1))
    return make_element(p, coeffs)


@st.composite
def element_pairs(draw, primes=(3, 5, 7, 11)):
    p = draw(st.sampled_from(primes))
    return draw(elements(p=p)), draw(elements(p=p))


@st.composite
def element_triples(draw, primes=(3, 5, 7)):
    p = draw(st.sampled_from(primes))
    return draw(elements(p=p)), draw(elements(p=p)), draw(elements(p=p))


def definitional_dist_sq(a, b):
    """d(a,b)^2 straight from the trace vectors, with traces taken on products in the ring."""
    va = trace_vector_direct(a).entries
    vb = trace_vector_direct(b).entries
    return sum(((x - y) ** 2 for x, y in zip(va, vb)), Fraction(0))


def literal_pair_sums(p: int, N: int):
    """Walk every ordered pair of B(p,N) and return (#pairs, sum d^2, sum d^4, raw double-square sum).

    Only meant for tiny boxes; uses the definition of the metric, not the coordinate formula.
    """
    pts = [make_element(p, c) for c in product(range(-N, N + 1), repeat=p - 1)]
    vecs = [trace_vector_direct(a).entries for a in pts]
    n = s2 = s4 = dss = 0
    for a, va in zip(pts, vecs):
        for b, vb in zip(pts, vecs):
            d2 = sum((x - y) ** 2 for x, y in zip(va, vb))
            e = sum((x - y) ** 2 for x, y in zip(a.coeffs, b.coeffs))
            n += 1
            s2 += d2
            s4 += d2 * d2
            dss += e * e
    return n, Fraction(s2), Fraction(s4), Fraction(dss)


@pytest.fixture(scope="session")
def literal_sums():
    cache = {}

    def get(p, N):
        if (p, N) not in cache:
            cache[(p, N)] = literal_pair_sums(p, N)
        return cache[(p, N)]

    return get
