"""Brute-force oracles over B(p,N)^2 and Monte Carlo concentration runs.

Enumeration never walks the (2N+1)^(2(p-1)) ordered pairs literally. For
box points a, b only the difference vector delta = a - b matters, and each
delta in [-2N, 2N]^(p-1) arises from exactly prod(2N+1 - |delta_i|) pairs.
For integer delta, d^2 = p^2 * e - (p+1) * t^2 with e = sum(delta_i^2) and
t = sum(delta_i), so the enumeration is reduced to a table of pair counts keyed
by (e, t). Every oracle below is an exact weighted sum over that table.

Outlier classification compares the integer d^2 against the irrational
endpoints mu * (1 +- eps*sqrt(6))^2 using exact sign tests for a + b*sqrt(6).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, isqrt

import numpy as np

from .core import CycloElement, RationalLike, make_element, to_rational
from .errors import BudgetExceeded, NonPositiveEpsilon, OddMomentUnsupported
from .metric import BoxSpec, diameter_sq
from .moments import concentration_bound, mu

DEFAULT_BUDGET = 10**9
BUDGET_ENV = "CYCLOMETRIC_BUDGET"
BLOCK_SIZE = 1024
_CHUNK = 1 << 16


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def box_size(box: BoxSpec) -> int:
    return (2 * box.N + 1) ** (box.p - 1)


def pair_count(box: BoxSpec) -> int:
    return box_size(box) ** 2


def difference_vector_count(box: BoxSpec) -> int:
    return (4 * box.N + 1) ** (box.p - 1)


# -- exact arithmetic with sqrt(6) ------------------------------------------


def sign_surd(a: Fraction | int, b: Fraction | int, n: int = 6) -> int:
    """Sign of a + b*sqrt(n) for rationals a, b and non-square n > 0."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: whichever has the larger square wins
    lhs, rhs = a * a, n * b * b
    return sa if lhs > rhs else sb


def floor_surd(a: Fraction, b: Fraction, n: int = 6) -> int:
    """floor(a + b*sqrt(n)), exactly."""
    a, b = Fraction(a), Fraction(b)
    root = isqrt(n * b.numerator**2)  # floor(|b_num| sqrt n)
    approx = a + (root if b >= 0 else -root) / Fraction(b.denominator)
    m = floor(approx)
    while sign_surd(a - m, b, n) < 0:
        m -= 1
    while sign_surd(a - (m + 1), b, n) >= 0:
        m += 1
    return m


@dataclass(frozen=True)
class OutlierThresholds:
    """Integer cut-offs for d^2 equivalent to |d/(2Np^(3/2)) - 1/sqrt6| > eps.

    A pair with integer squared distance D is an outlier iff D >= upper, or
    lower is not None and D <= lower.
    """

    epsilon: Fraction
    center: Fraction  # mu (1 + 6 eps^2)
    spread: Fraction  # 2 eps mu; endpoints are center +- spread*sqrt(6)
    upper: int
    lower: int | None

    def is_outlier(self, d2: Fraction | int) -> bool:
        """Exact test for any rational squared distance."""
        d2 = Fraction(d2)
        if sign_surd(d2 - self.center, -self.spread) > 0:
            return True
        if 6 * self.epsilon**2 < 1 and sign_surd(d2 - self.center, self.spread) < 0:
            return True
        return False


def outlier_thresholds(box: BoxSpec, epsilon: RationalLike | float) -> OutlierThresholds:
    eps = to_rational(epsilon)
    if eps <= 0:
        raise NonPositiveEpsilon(f"epsilon must be positive, got {eps}")
    m = mu(box)
    center = m * (1 + 6 * eps * eps)
    spread = 2 * eps * m
    # endpoints are irrational, so no integer D sits exactly on one
    upper = floor_surd(center, spread) + 1
    # d < sqrt(mu)(1 - eps sqrt6) has no solutions once eps sqrt6 >= 1
    lower = floor_surd(center, -spread) if 6 * eps * eps < 1 else None
    return OutlierThresholds(eps, center, spread, upper, lower)


# -- difference-vector enumeration -----------------------------------------


def _check_budget(box: BoxSpec, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    need = difference_vector_count(box)
    if need > budget:
        raise BudgetExceeded(
            f"B({box.p},{box.N}) needs {need} difference-vector evaluations, budget is {budget}"
        )


@lru_cache(maxsize=32)
def _difference_table(p: int, N: int) -> tuple[tuple[int, int, int], ...]:
    """((e, t, pairs), ...) summed over all difference vectors of B(p,N)."""
    dim = p - 1
    base = 4 * N + 1
    total = base**dim
    acc: dict[tuple[int, int], int] = {}
    powers = base ** np.arange(dim, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        delta = (idx[:, None] // powers[None, :]) % base - 2 * N
        e = np.sum(delta * delta, axis=1)
        t = np.sum(delta, axis=1)
        w = np.prod(2 * N + 1 - np.abs(delta), axis=1)
        keys = np.stack([e, t], axis=1)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        sums = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(sums, inv.reshape(-1), w)
        for (ek, tk), s in zip(uniq.tolist(), sums.tolist()):
            acc[(ek, tk)] = acc.get((ek, tk), 0) + s
    return tuple((e, t, c) for (e, t), c in sorted(acc.items()))


def difference_table(box: BoxSpec, budget: int | None = None) -> tuple[tuple[int, int, int], ...]:
    _check_budget(box, budget)
    return _difference_table(box.p, box.N)


def distance_distribution(box: BoxSpec, budget: int | None = None) -> dict[int, int]:
    """Map each attained d^2 to the number of ordered pairs in B(p,N)^2 at that distance."""
    p = box.p
    out: dict[int, int] = {}
    for e, t, c in difference_table(box, budget):
        d2 = p * p * e - (p + 1) * t * t
        out[d2] = out.get(d2, 0) + c
    return dict(sorted(out.items()))


def brute_moment(box: BoxSpec, k: int, budget: int | None = None) -> Fraction:
    """Exact M_k for even k >= 2, by enumeration."""
    if k % 2:
        raise OddMomentUnsupported("odd moments involve irrational distances")
    if k < 2:
        raise ValueError(f"k must be a positive even integer, got {k}")
    half = k // 2
    total = sum(c * d2**half for d2, c in distance_distribution(box, budget).items())
    return Fraction(total, pair_count(box))


def brute_r_moment(box: BoxSpec, budget: int | None = None) -> Fraction:
    m = mu(box)
    total = sum(c * (d2 - m) ** 2 for d2, c in distance_distribution(box, budget).items())
    return total / pair_count(box)


def brute_double_square_sum(box: BoxSpec, normalized: bool = True, budget: int | None = None) -> Fraction:
    """sum over pairs of sum_{i,j} (a_i-b_i)^2 (a_j-b_j)^2, optionally divided by #pairs."""
    raw = sum(c * e * e for e, _, c in difference_table(box, budget))
    return Fraction(raw, pair_count(box)) if normalized else Fraction(raw)


def brute_diameter_sq(box: BoxSpec, budget: int | None = None) -> int:
    return max(distance_distribution(box, budget))


def brute_diameter_witness(box: BoxSpec, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """(max d^2, a difference vector achieving it), first in enumeration order."""
    _check_budget(box, budget)
    p, N, dim = box.p, box.N, box.p - 1
    best, arg = -1, None
    base = 4 * N + 1
    powers = base ** np.arange(dim, dtype=np.int64)
    total = base**dim
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        delta = (idx[:, None] // powers[None, :]) % base - 2 * N
        d2 = p * p * np.sum(delta * delta, axis=1) - (p + 1) * np.sum(delta, axis=1) ** 2
        i = int(np.argmax(d2))
        if int(d2[i]) > best:
            best, arg = int(d2[i]), tuple(int(x) for x in delta[i])
    return best, arg


# -- sampling ----------------------------------------------------------------


def block_rng(seed: int, block: int) -> np.random.Generator:
    """Independent counter-based stream for one block of samples."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def sample_pair(box: BoxSpec, stream: np.random.Generator) -> tuple[CycloElement, CycloElement]:
    draws = stream.integers(-box.N, box.N, size=(2, box.p - 1), endpoint=True)
    return make_element(box.p, draws[0].tolist()), make_element(box.p, draws[1].tolist())


def _sample_block(box: BoxSpec, seed: int, block: int, count: int, th: OutlierThresholds) -> tuple[int, int]:
    rng = block_rng(seed, block)
    p = box.p
    draws = rng.integers(-box.N, box.N, size=(count, 2, p - 1), endpoint=True)
    delta = draws[:, 0, :] - draws[:, 1, :]
    big = diameter_sq(box) * count >= 2**62
    if big:
        delta = delta.astype(object)
    d2 = p * p * np.sum(delta * delta, axis=1) - (p + 1) * np.sum(delta, axis=1) ** 2
    mask = d2 >= th.upper
    if th.lower is not None:
        mask |= d2 <= th.lower
    return int(np.count_nonzero(mask)), int(np.sum(d2))


@dataclass(frozen=True)
class ConcentrationReport:
    box: BoxSpec
    epsilon: Fraction
    mode: str  # "exhaustive" or "monte_carlo"
    samples: int | None
    seed: int | None
    outlier_count: int
    total: int
    outlier_fraction: Fraction | float
    mean_normsq: float
    chebyshev_bound: Fraction


def concentration_experiment(
    box: BoxSpec,
    epsilon: RationalLike | float,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    workers: int | None = None,
    budget: int | None = None,
) -> ConcentrationReport:
    """Fraction of pairs with |d/(2Np^(3/2)) - 1/sqrt(6)| > epsilon.

    ``exhaustive`` counts every ordered pair and returns an exact Fraction.
    ``monte_carlo`` (alias ``mc``) draws ``samples`` uniform pairs in
    fixed-size blocks, each from its own Philox stream keyed by (seed, block),
    so the result does not depend on ``workers``.
    """
    th = outlier_thresholds(box, epsilon)
    bound = concentration_bound(th.epsilon, box)
    scale = 4 * box.N**2 * box.p**3

    if mode == "exhaustive":
        dist = distance_distribution(box, budget)
        total = pair_count(box)
        count = sum(c for d2, c in dist.items() if d2 >= th.upper or (th.lower is not None and d2 <= th.lower))
        d2_sum = sum(c * d2 for d2, c in dist.items())
        return ConcentrationReport(
            box, th.epsilon, "exhaustive", None, None, count, total,
            Fraction(count, total), float(Fraction(d2_sum, total * scale)), bound,
        )

    if mode not in ("monte_carlo", "mc"):
        raise ValueError(f"unknown mode {mode!r}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    sizes = [min(BLOCK_SIZE, samples - s) for s in range(0, samples, BLOCK_SIZE)]
    workers = workers or os.cpu_count() or 1
    if workers == 1:
        parts = [_sample_block(box, seed, b, n, th) for b, n in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda bn: _sample_block(box, seed, bn[0], bn[1], th), enumerate(sizes)))
    count = sum(c for c, _ in parts)
    d2_sum = sum(s for _, s in parts)
    return ConcentrationReport(
        box, th.epsilon, "monte_carlo", samples, seed, count, samples,
        count / samples, float(Fraction(d2_sum, samples * scale)), bound,
    )
