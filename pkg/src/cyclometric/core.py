"""Exact arithmetic in the p-th cyclotomic field Q(w), p an odd prime.

Elements are stored as coefficient vectors over the integral basis
w, w^2, ..., w^(p-1). The constant 1 is not a basis vector: it is folded
eagerly using 1 = -(w + w^2 + ... + w^(p-1)), so every element has exactly one
representation and equality is plain tuple equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Any, Iterable, Sequence, Union

from .errors import DimensionMismatch, ModulusMismatch, NonPrimeModulus

RationalLike = Union[int, Fraction, str]


def to_rational(x: RationalLike | float) -> Fraction:
    """Coerce ints, ``"a/b"`` strings, Fractions and floats to an exact Fraction.

    Floats convert through their exact binary expansion, so ``0.1`` does not
    become ``1/10``.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction, float)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


@lru_cache(maxsize=256)
def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    for f in range(3, isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


def check_modulus(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_odd_prime(p):
        raise NonPrimeModulus(f"p must be an odd prime, got {p!r}")
    return p


@dataclass(frozen=True)
class CycloElement:
    """sum(coeffs[j-1] * w^j for j in 1..p-1). Immutable and hashable."""

    p: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        check_modulus(self.p)
        if len(self.coeffs) != self.p - 1:
            raise DimensionMismatch(
                f"expected {self.p - 1} coefficients for p={self.p}, got {len(self.coeffs)}"
            )

    def coeff(self, j: int) -> Fraction:
        """Coefficient of w^j, 1 <= j <= p-1."""
        return self.coeffs[j - 1]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __add__(self, other: CycloElement) -> CycloElement:
        return add(self, other)

    def __sub__(self, other: CycloElement) -> CycloElement:
        return add(self, neg(other))

    def __neg__(self) -> CycloElement:
        return neg(self)

    def __mul__(self, other: CycloElement | RationalLike) -> CycloElement:
        if isinstance(other, CycloElement):
            return mul(self, other)
        return scalar_mul(other, self)

    def __rmul__(self, other: RationalLike) -> CycloElement:
        return scalar_mul(other, self)

    def __str__(self) -> str:
        terms = [f"({c})*w^{j}" for j, c in enumerate(self.coeffs, start=1) if c]
        return " + ".join(terms) if terms else "0"


def make_element(p: int, coeffs: Sequence[RationalLike | float]) -> CycloElement:
    check_modulus(p)
    return CycloElement(p, tuple(to_rational(c) for c in coeffs))


def zero(p: int) -> CycloElement:
    check_modulus(p)
    return CycloElement(p, (Fraction(0),) * (p - 1))


def from_rational(p: int, q: RationalLike | float) -> CycloElement:
    """The rational q as an element of K: q = -q*(w + ... + w^(p-1))."""
    check_modulus(p)
    q = to_rational(q)
    return CycloElement(p, (-q,) * (p - 1))


def root_power(p: int, j: int) -> CycloElement:
    """w^j for any integer j (j = 0 mod p gives 1)."""
    check_modulus(p)
    j %= p
    if j == 0:
        return from_rational(p, 1)
    c = [Fraction(0)] * (p - 1)
    c[j - 1] = Fraction(1)
    return CycloElement(p, tuple(c))


def _same_p(a: CycloElement, b: CycloElement) -> int:
    if a.p != b.p:
        raise ModulusMismatch(f"elements live in different fields (p={a.p} vs p={b.p})")
    return a.p


def _fold(p: int, full: Sequence[Fraction]) -> CycloElement:
    # full[e] is the coefficient of w^e for e in 0..p-1
    c0 = full[0]
    return CycloElement(p, tuple(full[e] - c0 for e in range(1, p)))


def add(a: CycloElement, b: CycloElement) -> CycloElement:
    p = _same_p(a, b)
    return CycloElement(p, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: CycloElement) -> CycloElement:
    return CycloElement(a.p, tuple(-x for x in a.coeffs))


def sub(a: CycloElement, b: CycloElement) -> CycloElement:
    return add(a, neg(b))


def scalar_mul(q: RationalLike | float, a: CycloElement) -> CycloElement:
    q = to_rational(q)
    return CycloElement(a.p, tuple(q * x for x in a.coeffs))


def mul_by_root_power(a: CycloElement, j: int) -> CycloElement:
    """a * w^j: shift exponents by j mod p, then fold whatever lands on w^0."""
    p = a.p
    j %= p
    if j == 0:
        return a
    full = [Fraction(0)] * p
    for i, c in enumerate(a.coeffs, start=1):
        full[(i + j) % p] = c
    return _fold(p, full)


def mul(a: CycloElement, b: CycloElement) -> CycloElement:
    p = _same_p(a, b)
    full = [Fraction(0)] * p
    for i, x in enumerate(a.coeffs, start=1):
        if not x:
            continue
        for k, y in enumerate(b.coeffs, start=1):
            if y:
                full[(i + k) % p] += x * y
    return _fold(p, full)


# -- JSON wire format ------------------------------------------------------


def rational_pair(q: Fraction) -> list[str]:
    return [str(q.numerator), str(q.denominator)]


def rational_str(q: Fraction | int) -> str:
    """Render as num/den, dropping the denominator when it is 1."""
    return str(Fraction(q))


def _parse_coeff(item: Any) -> Fraction:
    if isinstance(item, (list, tuple)):
        if len(item) != 2:
            raise ValueError(f"coefficient pair must have two entries, got {item!r}")
        num, den = (int(str(x).strip()) for x in item)
        if den == 0:
            raise ValueError("zero denominator")
        return Fraction(num, den)
    if isinstance(item, float):
        raise ValueError("float coefficients are not accepted in JSON; use strings")
    return to_rational(item)


def element_to_json(a: CycloElement) -> dict[str, Any]:
    return {"p": a.p, "coeffs": [rational_pair(c) for c in a.coeffs]}


def element_from_json(obj: Any, p: int | None = None) -> CycloElement:
    """Parse ``{"p": P, "coeffs": [[num, den], ...]}``.

    A bare coefficient list is accepted when ``p`` is supplied separately.
    Strings are decoded as JSON first.
    """
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    if isinstance(obj, dict):
        if p is not None and obj.get("p", p) != p:
            raise ModulusMismatch(f"element has p={obj['p']}, expected p={p}")
        p = obj["p"]
        items: Iterable[Any] = obj["coeffs"]
    elif isinstance(obj, list):
        if p is None:
            raise ValueError("a bare coefficient list needs p")
        items = obj
    else:
        raise ValueError(f"unrecognised element encoding: {obj!r}")
    return make_element(p, [_parse_coeff(x) for x in items])
