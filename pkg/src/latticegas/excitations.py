"""Insertion and removal excitations over perfect configurations.

Energies are exact integers, excesses exact rationals. The classification
of single insertions (types I, IIa, IIb, IIc) applies to the layered
families whose occupied sites form triangular meshes stacked along a main
diagonal; it is detected from the configuration itself, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .configs import MAIN_DIAGONALS, PeriodicConfiguration, is_perfect
from .forces import force_table, normalization_constant, peierls_gap, verify_forces
from .lattice import Site, ball_sites, is_admissible, sq_dist


def _dot(a: Site, b: Site) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class InsertionSet:
    """A finite collection of extra particles placed into vacant sites."""

    pc: PeriodicConfiguration
    d2: int
    sites: tuple[Site, ...]

    def __post_init__(self) -> None:
        sites = tuple(sorted(set(self.sites)))
        if len(sites) != len(self.sites):
            raise ValueError("insertion sites must be distinct")
        object.__setattr__(self, "sites", sites)
        for s in sites:
            if self.pc.contains(s):
                raise ValueError(f"insertion site {s} is occupied")
        if not is_admissible(sites, self.d2):
            raise ValueError("insertion sites are not pairwise admissible")


@dataclass(frozen=True)
class RemovalSet:
    """A finite collection of particles deleted from the configuration."""

    pc: PeriodicConfiguration
    d2: int
    sites: tuple[Site, ...]

    def __post_init__(self) -> None:
        sites = tuple(sorted(set(self.sites)))
        if len(sites) != len(self.sites):
            raise ValueError("removal sites must be distinct")
        object.__setattr__(self, "sites", sites)
        for s in sites:
            if not self.pc.contains(s):
                raise ValueError(f"removal site {s} is vacant")


def make_insertion(pc: PeriodicConfiguration, d2: int, sites: Iterable[Site]) -> InsertionSet:
    return InsertionSet(pc, d2, tuple(sites))


def gamma1(pc: PeriodicConfiguration, d2: int, site: Optional[Site] = None) -> RemovalSet:
    """Deletion of a single particle; energy 1."""
    return RemovalSet(pc, d2, (site if site is not None else pc.offsets[0],))


def gamma2(
    pc: PeriodicConfiguration, d2: int, sites: Optional[tuple[Site, Site]] = None
) -> RemovalSet:
    """Deletion of two particles; energy 2."""
    if sites is None:
        first = pc.offsets[0]
        near = sorted(
            (s for s in pc.occupied_near(first, 4 * d2) if s != first),
            key=lambda s: (sq_dist(first, s), s),
        )
        if not near:
            raise ValueError("no second particle found near the first")
        sites = (first, near[0])
    return RemovalSet(pc, d2, sites)


def repelled_set(pc: PeriodicConfiguration, insertion: InsertionSet, d2: int) -> list[Site]:
    """Occupied sites strictly within distance sqrt(d2) of some inserted site."""
    out = set()
    for x in insertion.sites:
        if pc.contains(x):
            raise ValueError(f"insertion site {x} is occupied")
        out.update(pc.occupied_near(x, d2))
    return sorted(out)


class InsertionType:
    """Taxonomy of single insertions into a layered configuration."""

    I = "I"
    IIA = "IIa"
    IIB = "IIb"
    IIC = "IIc"
    ALL = (I, IIA, IIB, IIC)


@dataclass(frozen=True)
class ExcitationReport:
    inserted_count: int
    repelled: tuple[Site, ...]
    energy: int
    excesses: dict[Site, Fraction] = field(compare=False)
    type: Optional[str] = None
    background_perfect: bool = True


def excitation_report(
    pc: PeriodicConfiguration,
    insertion: Optional[InsertionSet] = None,
    d2: Optional[int] = None,
    removal: Optional[RemovalSet] = None,
) -> ExcitationReport:
    """Energy and per-site excess bookkeeping for an insertion and/or removal.

    The repelled collection is every occupied site within reach of an
    inserted one, plus any explicitly removed sites. For a perfect
    background the identity energy = sum of excesses holds exactly and is
    asserted; otherwise the report is flagged.
    """
    if insertion is None and removal is None:
        raise ValueError("need an insertion, a removal, or both")
    if d2 is None:
        d2 = insertion.d2 if insertion is not None else removal.d2
    ft = force_table(d2)
    xi: tuple[Site, ...] = insertion.sites if insertion is not None else ()
    eta = set(repelled_set(pc, insertion, d2)) if insertion is not None else set()
    if removal is not None:
        eta.update(removal.sites)
    eta_sorted = tuple(sorted(eta))
    excesses: dict[Site, Fraction] = {}
    for y in eta_sorted:
        pulled = Fraction(0)
        for x in xi:
            q = sq_dist(x, y)
            if q < ft.ball_radius_sq:
                pulled += ft.force(q)
        excesses[y] = 1 - pulled
    energy = len(eta_sorted) - len(xi)
    perfect = is_perfect(pc, d2)
    if perfect:
        assert sum(excesses.values(), Fraction(0)) == energy, "excess identity violated"
        assert all(e >= 0 for e in excesses.values()), "negative excess on perfect background"
    kind = None
    if insertion is not None and removal is None and len(xi) == 1:
        try:
            kind = classify_insertion(pc, xi[0], d2)
        except ValueError:
            kind = None
    return ExcitationReport(
        inserted_count=len(xi),
        repelled=eta_sorted,
        energy=energy,
        excesses=excesses,
        type=kind,
        background_perfect=perfect,
    )


# --- layering detection and the single-insertion taxonomy ---------------------


def _detect_layering(pc: PeriodicConfiguration, d2: int) -> tuple[Site, int, int]:
    """Find a main diagonal e and spacing h so occupied levels are h-periodic.

    Returns (e, h, mesh_edge_sq). Raises when the configuration is not
    layered at this threshold.
    """
    if d2 == 5:
        h, edge_sq = 3, 6
    else:
        half, rem = divmod(d2, 2)
        l = math.isqrt(half)
        if rem or l * l != half or l < 1:
            raise ValueError(f"no layered taxonomy at d2={d2}")
        h, edge_sq = 2 * l, 2 * l * l
    for e in MAIN_DIAGONALS:
        if all(_dot(r, e) % h == 0 for r in pc.basis) and all(
            _dot(o, e) % h == 0 for o in pc.offsets
        ):
            return e, h, edge_sq
    raise ValueError("configuration is not layered along any main diagonal")


def classify_insertion(pc: PeriodicConfiguration, site: Site, d2: int) -> str:
    """Type of the single insertion at `site` into a layered configuration."""
    e, h, edge_sq = _detect_layering(pc, d2)
    if pc.contains(site):
        raise ValueError(f"site {site} is occupied")
    level = _dot(site, e)
    eta = pc.occupied_near(site, d2)
    by_level: dict[int, list[Site]] = {}
    for y in eta:
        by_level.setdefault(_dot(y, e), []).append(y)
    if level % h:
        below = h * (level // h)
        above = below + h
        if (
            len(eta) == 4
            and len(by_level.get(below, ())) == 2
            and len(by_level.get(above, ())) == 2
        ):
            return InsertionType.I
        raise ValueError(
            f"between-mesh site {site} repels {len(eta)} particles "
            f"(levels {sorted(by_level)}), not a 2+2 tetrahedron"
        )
    plane = by_level.get(level, [])
    if len(plane) != 3:
        raise ValueError(f"in-plane site {site} repels {len(plane)} mesh particles, not 3")
    for i in range(3):
        if sq_dist(site, plane[i]) * 3 != edge_sq:
            raise ValueError(f"site {site} is not a mesh triangle center")
        for j in range(i + 1, 3):
            if sq_dist(plane[i], plane[j]) != edge_sq:
                raise ValueError(f"site {site} is not a mesh triangle center")
    up = len(by_level.get(level + h, ()))
    down = len(by_level.get(level - h, ()))
    extra = len(eta) - 3
    if extra != up + down or up > 1 or down > 1:
        raise ValueError(
            f"triangle-center site {site} has unexpected neighbor-mesh repulsions "
            f"(up={up}, down={down}, total={len(eta)})"
        )
    if extra == 0:
        return InsertionType.IIA
    if extra == 1:
        return InsertionType.IIB
    return InsertionType.IIC


def iia_census(
    pc: PeriodicConfiguration, l: Optional[int] = None
) -> tuple[int, Fraction]:
    """Count of lowest-type in-plane insertion sites per cell, and their density."""
    d2 = 5 if l is None else 2 * l * l
    if l is not None and l % 3:
        raise ValueError("in-plane triangle centers are integral only when 3 divides l")
    e, h, _ = _detect_layering(pc, d2)
    count = 0
    for x in pc.cell_sites():
        if pc.contains(x) or _dot(x, e) % h:
            continue
        try:
            kind = classify_insertion(pc, x, d2)
        except ValueError:
            continue
        if kind == InsertionType.IIA:
            count += 1
    return count, Fraction(count, pc.det)


# --- reduction -----------------------------------------------------------------


def reduce_insertions(
    pc: PeriodicConfiguration, insertion: InsertionSet, d2: int
) -> InsertionSet:
    """Shrink the insertion while some repelled particle has a unique repeller.

    Deterministic: among removable insertion sites the lexicographically
    smallest goes first. A single insertion whose type is IIa is returned
    unchanged (it is the terminal low-energy case); any other single
    insertion with a uniquely repelled particle reduces to the empty set.
    """
    sites = list(insertion.sites)
    while sites:
        if len(sites) == 1:
            try:
                if classify_insertion(pc, sites[0], d2) == InsertionType.IIA:
                    break
            except ValueError:
                pass
        repellers: dict[Site, list[Site]] = {}
        for x in sites:
            for y in pc.occupied_near(x, d2):
                repellers.setdefault(y, []).append(x)
        removable = sorted({xs[0] for xs in repellers.values() if len(xs) == 1})
        if not removable:
            break
        sites.remove(removable[0])
    return InsertionSet(pc, d2, tuple(sites))


# --- the contour-bound spot check ------------------------------------------------


def peierls_check(
    pc: PeriodicConfiguration,
    insertion: Optional[InsertionSet] = None,
    d2: Optional[int] = None,
    removal: Optional[RemovalSet] = None,
) -> tuple[bool, Fraction]:
    """Verify the force-deficit bound on the excited configuration.

    The excited configuration X drops the repelled and removed particles and
    gains the inserted ones. H(X) is the total force deficit over all ball
    centers, v(X) the number of centers with any deficit. The bound checked
    is H(X) >= gap * v(X) / |ball|; returns (holds, exact slack).
    """
    if insertion is None and removal is None:
        raise ValueError("need an insertion, a removal, or both")
    if d2 is None:
        d2 = insertion.d2 if insertion is not None else removal.d2
    ft = force_table(d2)
    rsq = ft.ball_radius_sq
    xi = set(insertion.sites) if insertion is not None else set()
    eta = set(repelled_set(pc, insertion, d2)) if insertion is not None else set()
    if removal is not None:
        eta.update(removal.sites)
    changed = xi | eta
    candidates = set()
    for y in changed:
        candidates.update(ball_sites(rsq, y))
    ham = Fraction(0)
    support = 0
    one = Fraction(1)
    for x in sorted(candidates):
        total = Fraction(0)
        for z in pc.occupied_near(x, rsq):
            if z not in eta:
                total += ft.force(sq_dist(x, z))
        for z in xi:
            q = sq_dist(x, z)
            if q < rsq:
                total += ft.force(q)
        if total != one:
            support += 1
            ham += one - total
    c = normalization_constant(d2)
    energy = len(eta) - len(xi)
    assert ham == c * energy, "force-deficit total disagrees with the excitation energy"
    ball_size = len(ball_sites(rsq))
    bound = peierls_gap(d2) * support / ball_size
    slack = ham - bound
    return slack >= 0, slack


# --- bounded-window census --------------------------------------------------------


@dataclass(frozen=True)
class WindowCensus:
    window_sites: int
    sets_scanned: int
    low_energy_terminal: tuple[tuple[Site, ...], ...]
    all_terminal_iia: bool


def window_census(
    pc: PeriodicConfiguration,
    d2: int = 5,
    layers: int = 2,
    radius_sq: int = 8,
    center: Site = (0, 0, 0),
) -> WindowCensus:
    """Exhaust all admissible insertion sets in a bounded window.

    Every nonempty set of energy <= 2 is reduced; the census records the
    reduced nonempty survivors. The expected outcome on a layered perfect
    background is that each survivor is a single lowest-type in-plane
    insertion.
    """
    e, h, _ = _detect_layering(pc, d2)
    lo, hi = 0, h * (layers - 1)
    window = [
        x
        for x in ball_sites(radius_sq + 1, center)
        if lo <= _dot(x, e) <= hi and not pc.contains(x)
    ]
    window.sort()
    n = len(window)
    conflict = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if sq_dist(window[i], window[j]) < d2:
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    repelled_by = [frozenset(pc.occupied_near(x, d2)) for x in window]

    survivors: list[tuple[Site, ...]] = []
    scanned = 0

    def rec(start: int, avail: int, chosen: list[int], eta: frozenset) -> None:
        nonlocal scanned
        for i in range(start, n):
            if not (avail >> i) & 1:
                continue
            chosen.append(i)
            eta2 = eta | repelled_by[i]
            scanned += 1
            energy = len(eta2) - len(chosen)
            if energy <= 2:
                ins = InsertionSet(pc, d2, tuple(window[k] for k in chosen))
                red = reduce_insertions(pc, ins, d2)
                if red.sites:
                    survivors.append(red.sites)
            rec(i + 1, avail & ~conflict[i], chosen, eta2)
            chosen.pop()

    rec(0, (1 << n) - 1, [], frozenset())
    uniq = sorted(set(survivors))
    all_iia = all(
        len(s) == 1 and classify_insertion(pc, s[0], d2) == InsertionType.IIA for s in uniq
    )
    return WindowCensus(
        window_sites=n,
        sets_scanned=scanned,
        low_energy_terminal=tuple(uniq),
        all_terminal_iia=all_iia,
    )
