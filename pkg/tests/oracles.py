"""Independent oracles: slow, simple recomputations used to cross-check
the library and to freeze golden expectations.

Nothing here shares search machinery with the package. Balls come from a
cube scan, admissible patterns from a plain-list DFS, densities from
counting occupied sites in an exact box.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from latticegas.configs import PeriodicConfiguration
from latticegas.forces import force_table

Site = tuple[int, int, int]


def brute_ball(bound_sq: int, center: Site = (0, 0, 0)) -> list[Site]:
    """All sites strictly closer than sqrt(bound_sq) to the center, cube scan."""
    r = math.isqrt(bound_sq)
    cx, cy, cz = center
    out = []
    for dx, dy, dz in product(range(-r, r + 1), repeat=3):
        if dx * dx + dy * dy + dz * dz < bound_sq:
            out.append((cx + dx, cy + dy, cz + dz))
    return sorted(out)


def pairwise_admissible(sites: list[Site], d2: int) -> bool:
    for i, a in enumerate(sites):
        for b in sites[i + 1:]:
            d = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
            if d < d2:
                return False
    return True


def force_extremes(d2: int):
    """Plain-list DFS over all admissible ball patterns.

    Returns (config_count, fstar, second_max, max_occupancy, signatures)
    with the empty pattern included in the count, exactly like the library
    claims to do.
    """
    ft = force_table(d2)
    sites = brute_ball(ft.ball_radius_sq)
    fvals = [ft.force(s[0] ** 2 + s[1] ** 2 + s[2] ** 2) for s in sites]
    dists = [s[0] ** 2 + s[1] ** 2 + s[2] ** 2 for s in sites]
    n = len(sites)

    count = 0
    best = Fraction(0)
    second: Fraction | None = None
    max_occ = 0
    sigs: set[tuple[int, ...]] = set()

    def compatible(i: int, chosen: list[int]) -> bool:
        a = sites[i]
        for j in chosen:
            b = sites[j]
            if (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2 < d2:
                return False
        return True

    def rec(start: int, chosen: list[int], total: Fraction) -> None:
        nonlocal count, best, second, max_occ
        count += 1
        if len(chosen) > max_occ:
            max_occ = len(chosen)
        if total > best:
            second = best
            best = total
        elif total != best and (second is None or total > second):
            second = total
        if total == 1:
            sigs.add(tuple(sorted(dists[j] for j in chosen)))
        for i in range(start, n):
            if compatible(i, chosen):
                chosen.append(i)
                rec(i + 1, chosen, total + fvals[i])
                chosen.pop()

    rec(0, [], Fraction(0))
    return count, best, second, max_occ, tuple(sorted(sigs))


def box_side(pc: PeriodicConfiguration) -> int:
    side = 1
    for i in range(3):
        side = side * pc.basis[i][i] // math.gcd(side, pc.basis[i][i])
    return side


def naive_density(pc: PeriodicConfiguration) -> Fraction:
    """Occupied fraction of an exact period box, counted one site at a time."""
    n = box_side(pc)
    count = sum(
        1 for p in product(range(n), repeat=3) if pc.contains(p)
    )
    return Fraction(count, n ** 3)


def box_admissible(pc: PeriodicConfiguration, d2: int) -> bool:
    """Hard-core check on a 2-period box, pairwise and unoptimized."""
    n = 2 * box_side(pc)
    occ = [p for p in product(range(n), repeat=3) if pc.contains(p)]
    half = [p for p in occ if all(c < n // 2 for c in p)]
    for a in half:
        for b in occ:
            if a == b:
                continue
            d = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
            if d < d2:
                return False
    return True


def r3_naive(n: int) -> int:
    """Representations of n as an ordered sum of three squares, triple loop."""
    r = math.isqrt(n)
    count = 0
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            rest = n - x * x - y * y
            if rest < 0:
                continue
            z = math.isqrt(rest)
            if z * z == rest:
                count += 1 if z == 0 else 2
    return count
