"""Repelling-force tables on lattice balls and their exhaustive verification.

For each supported exclusion threshold d2 there is a rational force table
f(q) on squared distances q inside a finite ball. The defining property,
checked exhaustively here, is that the maximum total force collected at the
ball center over ALL admissible occupancy patterns of the ball is exactly 1,
and the patterns achieving 1 are the locally densest ones.

All arithmetic is fractions.Fraction; nothing here is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .lattice import ORIGIN, Site, ball_sites, is_admissible, sq_dist

# Squared ball radius (strict bound) per exclusion threshold. A force table
# is supported on squared distances 0 .. radius-1.
BALL_RADIUS_SQ: dict[int, int] = {
    2: 2,
    3: 3,
    4: 4,
    5: 3,
    6: 6,
    8: 7,
    9: 7,
    10: 7,
    12: 7,
}

_F = Fraction

FORCE_TABLES: dict[int, dict[int, Fraction]] = {
    2: {0: _F(1), 1: _F(1, 6)},
    3: {0: _F(1), 1: _F(1, 6), 2: _F(1, 6)},
    4: {0: _F(1), 1: _F(1, 2), 2: _F(1, 4), 3: _F(1, 8)},
    5: {0: _F(1), 1: _F(2, 3), 2: _F(1, 3)},
    6: {0: _F(1), 1: _F(2, 3), 2: _F(1, 3), 3: _F(1, 8), 4: _F(1, 6), 5: _F(1, 24)},
    8: {0: _F(1), 1: _F(1, 2), 2: _F(1, 4), 3: _F(1, 4), 4: _F(1, 6), 5: _F(1, 8), 6: _F(1, 8)},
    9: {0: _F(1), 1: _F(2, 3), 2: _F(1, 2), 3: _F(1, 4), 4: _F(1, 6), 5: _F(1, 6), 6: _F(1, 12)},
    10: {0: _F(1), 1: _F(5, 6), 2: _F(1, 2), 3: _F(1, 2), 4: _F(1, 3), 5: _F(1, 6), 6: _F(1, 6)},
    12: {0: _F(1), 1: _F(1), 2: _F(3, 4), 3: _F(1, 2), 4: _F(1, 2), 5: _F(1, 4), 6: _F(1, 8)},
}

SUPPORTED_D2 = tuple(sorted(FORCE_TABLES))


class UnsupportedThresholdError(ValueError):
    """Raised for exclusion thresholds with no known repelling-force table."""


@dataclass(frozen=True)
class ForceTable:
    """A rational force profile f(q) on the ball of a given exclusion threshold."""

    d2: int
    ball_radius_sq: int
    values: tuple[tuple[int, Fraction], ...]  # (squared distance, force), ascending

    def force(self, q: int) -> Fraction:
        """Force at squared distance q; zero outside the supported range."""
        for dist, f in self.values:
            if dist == q:
                return f
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.values)


def force_table(d2: int) -> ForceTable:
    if d2 not in FORCE_TABLES:
        raise UnsupportedThresholdError(
            f"no repelling-force table known for d2={d2}; supported: {SUPPORTED_D2}"
        )
    table = FORCE_TABLES[d2]
    return ForceTable(d2, BALL_RADIUS_SQ[d2], tuple(sorted(table.items())))


def normalization_constant(d2: int) -> Fraction:
    """Total force collected over the whole ball: sum of f(sq_dist) over ball sites."""
    ft = force_table(d2)
    return sum((ft.force(sq_dist(s, ORIGIN)) for s in ball_sites(ft.ball_radius_sq)), Fraction(0))


def total_force(d2: int, occupied: Iterable[Site], center: Site = ORIGIN) -> Fraction:
    """Force collected at `center` from the occupied sites of its ball.

    Raises if an occupied site lies outside the ball or the occupied set
    violates the hard-core rule.
    """
    ft = force_table(d2)
    pts = sorted(set(occupied))
    for y in pts:
        if sq_dist(y, center) >= ft.ball_radius_sq:
            raise ValueError(f"occupied site {y} lies outside the ball around {center}")
    if not is_admissible(pts, d2):
        raise ValueError("occupied set violates the hard-core exclusion rule")
    return sum((ft.force(sq_dist(y, center)) for y in pts), Fraction(0))


def enumerate_ball_acs(
    d2: int, visitor: Optional[Callable[[tuple[Site, ...]], None]] = None
) -> int:
    """Enumerate every admissible occupancy pattern of the d2-ball.

    Patterns are subsets of the ball (the empty set included) whose pairwise
    squared distances are all >= d2. The visitor, if given, is called once
    per pattern with the sites in lexicographic order. Returns the count.
    """
    ft = force_table(d2)
    sites = ball_sites(ft.ball_radius_sq)
    n = len(sites)
    conflict = _conflict_masks(sites, d2)
    count = 0

    def rec(avail: int, chosen: tuple[Site, ...]) -> None:
        nonlocal count
        count += 1
        if visitor is not None:
            visitor(chosen)
        m = avail
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            rec(m & ~conflict[i], chosen + (sites[i],))

    rec((1 << n) - 1, ())
    return count


def _conflict_masks(sites: list[Site], d2: int) -> list[int]:
    n = len(sites)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if sq_dist(sites[i], sites[j]) < d2:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


@dataclass(frozen=True)
class BallSearchReport:
    """Outcome of the exhaustive force search over one ball."""

    d2: int
    config_count: int
    fstar: Fraction
    second_max: Fraction
    max_occupancy: int
    signatures: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def verify_forces(d2: int) -> BallSearchReport:
    """Exhaustively search the ball and report the force extremes.

    fstar is the maximum total force over all admissible patterns,
    second_max the largest strictly smaller total, max_occupancy the largest
    pattern size, and signatures the sorted squared-distance multisets of
    the patterns whose total force equals 1 exactly.
    """
    ft = force_table(d2)
    sites = ball_sites(ft.ball_radius_sq)
    n = len(sites)
    conflict = _conflict_masks(sites, d2)
    dists = [sq_dist(s, ORIGIN) for s in sites]
    fvals = [ft.force(q) for q in dists]
    one = Fraction(1)

    count = 0
    best = Fraction(0)  # force of the empty pattern
    second = None
    max_occ = 0
    sigs: set[tuple[int, ...]] = set()

    def note(total: Fraction) -> None:
        nonlocal best, second
        if total > best:
            second = best
            best = total
        elif total != best and (second is None or total > second):
            second = total

    def rec(avail: int, depth: int, total: Fraction, sig: tuple[int, ...]) -> None:
        nonlocal count, max_occ
        count += 1
        if depth > max_occ:
            max_occ = depth
        note(total)
        if total == one:
            sigs.add(tuple(sorted(sig)))
        m = avail
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            rec(m & ~conflict[i], depth + 1, total + fvals[i], sig + (dists[i],))

    rec((1 << n) - 1, 0, Fraction(0), ())
    assert second is not None  # the empty pattern guarantees at least two totals
    return BallSearchReport(
        d2=d2,
        config_count=count,
        fstar=best,
        second_max=second,
        max_occupancy=max_occ,
        signatures=tuple(sorted(sigs)),
    )


def maximal_signatures(d2: int) -> tuple[tuple[int, ...], ...]:
    """Sorted squared-distance multisets of the ball patterns with total force 1."""
    return verify_forces(d2).signatures


def peierls_gap(d2: int) -> Fraction:
    """1 minus the second largest total force; the energy cost per deficient site."""
    return Fraction(1) - verify_forces(d2).second_max
