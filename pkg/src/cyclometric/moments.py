"""Closed forms for the distance moments over the box B(p, N).

All values are exact Fractions. With ``n = #B(p,N)^2 = (2N+1)^(2p-2)`` ordered
pairs, ``M_k = (1/n) * sum d(a,b)^k``. The reference point for concentration
is ``mu = (2/3) p^3 N^2``, the leading term of M_2, and
``R = (1/n) * sum (d^2 - mu)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import RationalLike, to_rational
from .errors import NonPositiveEpsilon, UnsupportedExponent
from .metric import BoxSpec


@dataclass(frozen=True)
class MomentReport:
    box: BoxSpec
    m2: Fraction
    m4: Fraction
    mu: Fraction
    r_moment: Fraction
    source: str  # "closed_form" or "brute_force"


def power_sum(r: int, N: int) -> Fraction:
    """sum(a^r for a in -N..N), r in 0..4, via Faulhaber."""
    if not 0 <= r <= 4:
        raise UnsupportedExponent(f"power sums are only provided for 0 <= r <= 4, got {r}")
    if r == 0:
        return Fraction(2 * N + 1)
    if r % 2:
        return Fraction(0)
    if r == 2:
        return Fraction(N * (N + 1) * (2 * N + 1), 3)
    return Fraction(N * (N + 1) * (2 * N + 1) * (3 * N * N + 3 * N - 1), 15)


def m2_closed(box: BoxSpec) -> Fraction:
    p, N = box.p, box.N
    return Fraction(2, 3) * (p**3 - 2 * p**2 + 1) * N * (N + 1)


def double_square_sum_normalized(box: BoxSpec) -> Fraction:
    """Average over ordered pairs of (sum_i (a_i - b_i)^2)^2.

    The raw double sum is this times (2N+1)^(2p-2).
    """
    p, N = box.p, box.N
    return Fraction(2, 45) * N * (N + 1) * (p - 1) * (10 * N**2 * p + 4 * N**2 + 10 * N * p + 4 * N - 3)


def m4_closed(box: BoxSpec) -> Fraction:
    p, N = box.p, box.N
    inner = (2 * N**2 + 2 * N) * (5 * p**5 - 8 * p**4 + p**3 + 8 * p**2 - 21 * p - 18) - 3 * (p**2 - p - 1) ** 2
    return Fraction(2, 45) * N * (N + 1) * (p - 1) * inner


def mu(box: BoxSpec) -> Fraction:
    return Fraction(2, 3) * box.p**3 * box.N**2


def r_moment_closed(box: BoxSpec) -> Fraction:
    m = mu(box)
    return m4_closed(box) - 2 * m * m2_closed(box) + m * m


def r_growth_ratio(box: BoxSpec) -> Fraction:
    """R(p,N) / (p^5 N^4 + p^6 N^3); stays bounded as p and N grow."""
    p, N = box.p, box.N
    return r_moment_closed(box) / (p**5 * N**4 + p**6 * N**3)


def concentration_bound(epsilon: RationalLike | float, box: BoxSpec) -> Fraction:
    """Chebyshev bound R / (6 eps^2 mu^2) on the fraction of pairs with
    |d / (2 N p^(3/2)) - 1/sqrt(6)| > eps.
    """
    eps = to_rational(epsilon)
    if eps <= 0:
        raise NonPositiveEpsilon(f"epsilon must be positive, got {eps}")
    m = mu(box)
    return r_moment_closed(box) / (6 * eps * eps * m * m)


def moment_report(box: BoxSpec) -> MomentReport:
    return MomentReport(box, m2_closed(box), m4_closed(box), mu(box), r_moment_closed(box), "closed_form")
