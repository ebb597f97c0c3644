"""Trace map, trace-vector norm and the induced metric on Q(w).

The norm of a is the Euclidean length of its trace vector
``v_a = (Tr(a w), Tr(a w^2), ..., Tr(a w^(p-1)))``. In coordinates this
collapses to ``p^2 * sum(a_j^2) - (p+1) * Tr(a)^2``, which is what
:func:`norm_sq` evaluates; :func:`norm_sq_from_trace_vector` keeps the
definition around as an independent route.

Squared quantities are exact Fractions. Square roots are only taken at the
edge (:func:`dist`, :func:`normalized_dist`) and are correctly rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt

from .core import CycloElement, _same_p, check_modulus, make_element, mul_by_root_power, sub
from .errors import ModulusMismatch, OutOfBox


@dataclass(frozen=True)
class TraceVector:
    p: int
    entries: tuple[Fraction, ...]

    def norm_sq(self) -> Fraction:
        return sum((e * e for e in self.entries), Fraction(0))

    def to_json(self) -> list[str]:
        return [str(e) for e in self.entries]


@dataclass(frozen=True)
class BoxSpec:
    """The hypercube B(p, N): integer coefficients in [-N, N]."""

    p: int
    N: int

    def __post_init__(self) -> None:
        check_modulus(self.p)
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")

    @property
    def dim(self) -> int:
        return self.p - 1

    def contains(self, a: CycloElement) -> bool:
        return a.p == self.p and all(c.denominator == 1 and abs(c) <= self.N for c in a.coeffs)


class Normalization(str, Enum):
    DIAMETER = "diameter"  # divide by 2 N p sqrt(p-1); diameter of the box becomes 1
    P32 = "p32"  # divide by 2 N p^(3/2)


def sqrt_float(q: Fraction | int) -> float:
    """Correctly rounded IEEE double of sqrt(q) for an exact nonnegative q."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return 0.0
    n, d = q.numerator, q.denominator
    # enough fractional bits that the integer root carries >= 64 significant bits
    k = max(0, 66 - (n.bit_length() - d.bit_length()) // 2)
    scaled_num = n << (2 * k)
    m = isqrt(scaled_num // d)
    if m * m * d == scaled_num:
        return float(Fraction(m, 1 << k))
    # inexact: append a sticky bit so the final rounding sees "strictly above m"
    return float(Fraction(2 * m + 1, 1 << (k + 1)))


def trace(a: CycloElement) -> Fraction:
    """Tr(a) = -(a_1 + ... + a_(p-1)), since Tr(1) = p-1 and Tr(w^j) = -1."""
    return -sum(a.coeffs, Fraction(0))


def trace_vector(a: CycloElement) -> TraceVector:
    """Entry j is Tr(a w^j) = Tr(a) + p * a_(p-j)."""
    t = trace(a)
    p = a.p
    return TraceVector(p, tuple(t + p * a.coeff(p - j) for j in range(1, p)))


def trace_vector_direct(a: CycloElement) -> TraceVector:
    """Same vector, built by forming a*w^j in the ring and tracing it."""
    return TraceVector(a.p, tuple(trace(mul_by_root_power(a, j)) for j in range(1, a.p)))


def euclidean_norm_sq(a: CycloElement) -> Fraction:
    """Plain coefficient-space length: sum(a_j^2)."""
    return sum((c * c for c in a.coeffs), Fraction(0))


def norm_sq(a: CycloElement) -> Fraction:
    t = trace(a)
    return a.p * a.p * euclidean_norm_sq(a) - (a.p + 1) * t * t


def norm_sq_from_trace_vector(a: CycloElement) -> Fraction:
    return trace_vector(a).norm_sq()


def norm(a: CycloElement) -> float:
    return sqrt_float(norm_sq(a))


def dist_sq(a: CycloElement, b: CycloElement) -> Fraction:
    return norm_sq(sub(a, b))


def dist(a: CycloElement, b: CycloElement) -> float:
    return sqrt_float(dist_sq(a, b))


def diameter_sq(box: BoxSpec) -> int:
    """(2 N p sqrt(p-1))^2 = 4 N^2 p^2 (p-1)."""
    return 4 * box.N**2 * box.p**2 * (box.p - 1)


def diameter_pair(box: BoxSpec) -> tuple[CycloElement, CycloElement]:
    """N(w - w^2 + w^3 - ... - w^(p-1)) and its negative; their distance is the diameter."""
    alpha = make_element(box.p, [box.N * (-1) ** i for i in range(box.p - 1)])
    return alpha, -alpha


def normalizer_sq(box: BoxSpec, mode: Normalization | str = Normalization.DIAMETER) -> int:
    mode = Normalization(mode)
    if mode is Normalization.DIAMETER:
        return diameter_sq(box)
    return 4 * box.N**2 * box.p**3


def _check_in_box(a: CycloElement, box: BoxSpec) -> None:
    if a.p != box.p:
        raise ModulusMismatch(f"element has p={a.p}, box has p={box.p}")
    for j, c in enumerate(a.coeffs, start=1):
        if c.denominator != 1 or abs(c) > box.N:
            raise OutOfBox(f"coefficient of w^{j} is {c}, outside the integers in [-{box.N}, {box.N}]")


def normalized_dist_sq(
    a: CycloElement, b: CycloElement, box: BoxSpec, mode: Normalization | str = Normalization.DIAMETER
) -> Fraction:
    _same_p(a, b)
    _check_in_box(a, box)
    _check_in_box(b, box)
    return dist_sq(a, b) / normalizer_sq(box, mode)


def normalized_dist(
    a: CycloElement, b: CycloElement, box: BoxSpec, mode: Normalization | str = Normalization.DIAMETER
) -> float:
    return sqrt_float(normalized_dist_sq(a, b, box, mode))
