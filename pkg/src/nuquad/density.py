"""Limit densities of the 4-rank and the derived exclusion-bound constants.

The limiting proportion of imaginary quadratic fields with 4-rank r is

    d_inf(r) = 2^(-r^2) * prod_{k>=1}(1 - 2^-k) / (prod_{k=1}^r (1 - 2^-k))^2

(the squared denominator reproduces the reported cumulative constants
0.866364, 0.994714, 0.999953; a single product does not).  Finite-n
constants are shipped as reported fixtures; empirical estimators are fed
by survey field records and kept in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class EmptyBucket(ValueError):
    """No surveyed fields with the requested 2-rank."""


_EULER_TAIL = 64  # 2^-64 tail, far below every tolerance used


def _euler_product() -> float:
    out = 1.0
    for k in range(1, _EULER_TAIL + 1):
        out *= 1.0 - 2.0 ** -k
    return out


_C_INF = _euler_product()


def gerth_limit(r: int) -> float:
    """Limit density of 4-rank r over imaginary quadratic fields."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    den = 1.0
    for k in range(1, r + 1):
        den *= 1.0 - 2.0 ** -k
    return 2.0 ** (-r * r) * _C_INF / (den * den)


def fm_bracket_bound(i: int) -> float:
    """Lower bound for the density of fields excluding uniform quotients of
    dimension > i + n/2: the 4-rank mass at r <= 2i - 2."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return sum(gerth_limit(r) for r in range(2 * i - 1))


def fm_nd_bound(n: int, d: int, dnr: Mapping[int, float]) -> float:
    """Partial sum of finite-n densities up to r = 2d - n - 1 (0 if empty)."""
    top = 2 * d - n - 1
    if top < 0:
        return 0.0
    return float(sum(dnr.get(r, 0.0) for r in range(top + 1)))


# Reported finite-n exclusion constants, keyed (n, d): the bound for the
# proportion of 2-rank-n fields with no uniform quotient of dimension > d.
# d = 3 rows decide the conjecture outright (FAb needs dimension >= 3).
PAPER_FM_ND = {
    (3, 3): 0.992187,
    (4, 3): 0.874268,
    (4, 4): 0.999695,
    (5, 3): 0.331299,
    (5, 4): 0.990624,
    (5, 5): 0.9999943,
    (6, 4): 0.867183,
    (6, 5): 0.999255,
    (6, 6): 1 - 5.2e-8,
}


@dataclass(frozen=True)
class DensityTable:
    d_inf: dict[int, float]
    paper_fixtures: dict[tuple[int, int], float] = field(
        default_factory=lambda: dict(PAPER_FM_ND))


def density_table(r_max: int = 12) -> DensityTable:
    return DensityTable(d_inf={r: gerth_limit(r) for r in range(r_max + 1)})


def empirical_dnr(records: Iterable, n: int,
                  case_a_only: bool = False) -> dict[int, Fraction]:
    """Empirical 4-rank distribution among fields with 2-rank n.

    Accepts any iterable of objects with .n, .four_rank and .case_a
    (FieldRecord works).  Proportions are exact rationals, summing to 1.
    """
    counts: dict[int, int] = {}
    total = 0
    for rec in records:
        if rec.n != n:
            continue
        if case_a_only and not rec.case_a:
            continue
        counts[rec.four_rank] = counts.get(rec.four_rank, 0) + 1
        total += 1
    if total == 0:
        raise EmptyBucket(f"no fields with 2-rank {n}")
    return {r: Fraction(c, total) for r, c in sorted(counts.items())}


def dnr_from_counts(by_r: Mapping[int, int]) -> dict[int, Fraction]:
    """Same estimator from precounted (r -> count) survey buckets."""
    total = sum(by_r.values())
    if total == 0:
        raise EmptyBucket("empty bucket")
    return {r: Fraction(c, total) for r, c in sorted(by_r.items())}
