"""Galois action on Q(w) and what the metric says about subfields.

Gal(Q(w)/Q) is cyclic of order p-1; sigma_k is the automorphism with
w -> w^k. Because the group is cyclic there is exactly one subfield of each
degree dividing p-1, so Q(a) is a subfield of Q(b) iff deg(a) divides deg(b).
Everything here leans on that and compares squared distances exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import CycloElement, _same_p, add, scalar_mul
from .errors import BadAutomorphismIndex, SearchExhausted
from .metric import dist_sq


@dataclass(frozen=True)
class Automorphism:
    p: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.p - 1:
            raise BadAutomorphismIndex(f"k must lie in 1..{self.p - 1}, got {self.k}")

    def __call__(self, a: CycloElement) -> CycloElement:
        return apply_automorphism(a, self.k)

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other."""
        return Automorphism(self.p, self.k * other.k % self.p)


@dataclass(frozen=True)
class SubfieldProfile:
    element: CycloElement
    stabilizer: frozenset[int]
    degree: int


@dataclass(frozen=True)
class KrasnerReport:
    hypothesis_holds: bool
    conclusion_holds: bool
    # min conjugate dist^2 minus 4 d(a,b)^2; None when a has no other conjugates
    margin: Fraction | None
    dist_sq: Fraction
    min_conjugate_dist_sq: Fraction | None


@dataclass(frozen=True)
class PrimitiveResult:
    n: int
    gamma: CycloElement
    degree: int


def apply_automorphism(a: CycloElement, k: int) -> CycloElement:
    """sigma_k(a): the coefficient of w^i moves to w^(k*i mod p). No folding needed."""
    p = a.p
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= p - 1:
        raise BadAutomorphismIndex(f"k must lie in 1..{p - 1}, got {k!r}")
    out = [Fraction(0)] * (p - 1)
    for i, c in enumerate(a.coeffs, start=1):
        out[k * i % p - 1] = c
    return CycloElement(p, tuple(out))


def stabilizer(a: CycloElement) -> frozenset[int]:
    return frozenset(k for k in range(1, a.p) if apply_automorphism(a, k) == a)


def subfield_profile(a: CycloElement) -> SubfieldProfile:
    stab = stabilizer(a)
    return SubfieldProfile(a, stab, (a.p - 1) // len(stab))


def degree(a: CycloElement) -> int:
    return subfield_profile(a).degree


def conjugates(a: CycloElement) -> list[CycloElement]:
    """Distinct Galois conjugates of a, starting with a itself."""
    seen = {a: None}
    for k in range(2, a.p):
        seen.setdefault(apply_automorphism(a, k), None)
    return list(seen)


def subfield_contains(a: CycloElement, b: CycloElement) -> bool:
    """Is Q(a) a subfield of Q(b)?"""
    _same_p(a, b)
    return degree(b) % degree(a) == 0


def krasner_check(a: CycloElement, b: CycloElement) -> KrasnerReport:
    """Test d(a,b) < d(a, a_i)/2 for every conjugate a_i != a, and Q(a) <= Q(b).

    Decided on squares: 4 d(a,b)^2 < min d(a,a_i)^2. Equality counts as failure.
    """
    _same_p(a, b)
    d2 = dist_sq(a, b)
    others = conjugates(a)[1:]
    conclusion = subfield_contains(a, b)
    if not others:
        return KrasnerReport(True, conclusion, None, d2, None)
    m = min(dist_sq(a, c) for c in others)
    margin = m - 4 * d2
    return KrasnerReport(margin > 0, conclusion, margin, d2, m)


def primitive_element_search(a: CycloElement, b: CycloElement, max_n: int = 1000) -> PrimitiveResult:
    """Smallest n <= max_n with Q(a + b/n) = Q(a, b).

    Q(a, b) is the unique subfield of degree lcm(deg a, deg b).
    """
    _same_p(a, b)
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    da, db = degree(a), degree(b)
    target = da * db // gcd(da, db)
    for n in range(1, max_n + 1):
        gamma = add(a, scalar_mul(Fraction(1, n), b))
        dg = degree(gamma)
        if dg == target:
            return PrimitiveResult(n, gamma, dg)
    raise SearchExhausted(f"no n <= {max_n} gives a generator of degree {target}")
