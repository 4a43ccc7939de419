"""Periodic configurations of Z^3: canonical form, perfection, saturation.

A periodic configuration is a full-rank integer lattice (stored as a
Hermite-Normal-Form row basis) plus a sorted list of occupied offsets
reduced into the fundamental cell. Canonical form extends the basis by
every translation that maps the occupied set onto itself, so two
descriptions of the same infinite point set always compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .forces import force_table
from .lattice import Site, SignedPermutation, sq_dist

Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

# Main space diagonals (1, s2(i), s3(i)) and the non-main diagonals used by
# the layered mesh families.
MAIN_DIAGONALS: tuple[Site, ...] = ((1, 1, 1), (1, -1, 1), (1, -1, -1), (1, 1, -1))
NON_MAIN_DIAGONALS: tuple[Site, ...] = (
    (1, 1, 0),
    (-1, 1, 0),
    (1, 0, 1),
    (-1, 0, 1),
    (0, 1, 1),
    (0, -1, 1),
)


def det3(m: Sequence[Sequence[int]]) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate3(m: Sequence[Sequence[int]]) -> Matrix:
    """Adjugate: m @ adjugate3(m) == det3(m) * identity."""
    c = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    for i in range(3):
        for j in range(3):
            a = [k for k in range(3) if k != i]
            b = [k for k in range(3) if k != j]
            minor = m[a[0]][b[0]] * m[a[1]][b[1]] - m[a[0]][b[1]] * m[a[1]][b[0]]
            c[j][i] = (-1) ** (i + j) * minor  # transposed cofactor
    return tuple(tuple(row) for row in c)  # type: ignore[return-value]


def hnf(generators: Iterable[Sequence[int]]) -> Matrix:
    """Row-style Hermite Normal Form of a rank-3 generating set.

    Result is upper triangular with positive diagonal; entries above each
    pivot are reduced into [0, pivot). Raises on rank deficiency.
    """
    work = [list(map(int, g)) for g in generators if any(g)]
    pivots: list[list[int]] = []
    for col in range(3):
        while True:
            cand = [r for r in work if r[col] != 0]
            if len(cand) <= 1:
                break
            cand.sort(key=lambda r: abs(r[col]))
            base = cand[0]
            for r in cand[1:]:
                q = r[col] // base[col]
                for t in range(3):
                    r[t] -= q * base[t]
        cand = [r for r in work if r[col] != 0]
        if not cand:
            raise ValueError("generators do not span a rank-3 lattice")
        p = cand[0]
        work.remove(p)
        if p[col] < 0:
            p = [-x for x in p]
        pivots.append(p)
        work = [r for r in work if any(r)]
    # reduce entries above each pivot
    for i in (1, 2):
        for j in range(i):
            q = pivots[j][i] // pivots[i][i]
            for t in range(3):
                pivots[j][t] -= q * pivots[i][t]
    return tuple(tuple(r) for r in pivots)  # type: ignore[return-value]


def _reduce_site(site: Site, basis: Matrix) -> Site:
    """Canonical residue of a site modulo an HNF basis (greedy triangular reduction)."""
    x = list(site)
    for i in (0, 1, 2):
        q = x[i] // basis[i][i]
        if q:
            for t in range(3):
                x[t] -= q * basis[i][t]
    return (x[0], x[1], x[2])


def _crange(lo: int, hi: int, base: int, step: int) -> range:
    """Integers c with lo <= base + c*step <= hi (step > 0)."""
    return range(-((base - lo) // step), (hi - base) // step + 1)


@dataclass(frozen=True)
class PeriodicConfiguration:
    """An infinite periodic occupied set: lattice basis rows + cell offsets."""

    basis: Matrix
    offsets: tuple[Site, ...]
    context_d2: Optional[int] = None

    @property
    def det(self) -> int:
        return self.basis[0][0] * self.basis[1][1] * self.basis[2][2]

    def reduce(self, site: Site) -> Site:
        return _reduce_site(site, self.basis)

    def contains(self, site: Site) -> bool:
        return self.reduce(site) in set(self.offsets)

    def cell_sites(self) -> list[Site]:
        """One transversal of Z^3 modulo the basis (the HNF box)."""
        d0, d1, d2 = (self.basis[i][i] for i in range(3))
        return [(i, j, k) for i in range(d0) for j in range(d1) for k in range(d2)]

    def occupied_in_box(self, lo: Sequence[int], hi: Sequence[int]) -> list[Site]:
        """All occupied sites s with lo[t] <= s[t] <= hi[t], exactly.

        The HNF basis is upper triangular, so coordinate t of a site depends
        only on coefficients 0..t; the coefficient ranges are exact and no
        post-filtering is needed.
        """
        b = self.basis
        out: list[Site] = []
        for o in self.offsets:
            for c0 in _crange(lo[0], hi[0], o[0], b[0][0]):
                y1 = o[1] + c0 * b[0][1]
                for c1 in _crange(lo[1], hi[1], y1, b[1][1]):
                    y2 = o[2] + c0 * b[0][2] + c1 * b[1][2]
                    for c2 in _crange(lo[2], hi[2], y2, b[2][2]):
                        out.append((o[0] + c0 * b[0][0], y1 + c1 * b[1][1], y2 + c2 * b[2][2]))
        return out

    def occupied_near(self, center: Site, radius_sq: int) -> list[Site]:
        """All occupied sites within squared distance < radius_sq of center."""
        if radius_sq < 1:
            return []
        r = math.isqrt(radius_sq - 1)
        lo = [center[t] - r for t in range(3)]
        hi = [center[t] + r for t in range(3)]
        return sorted(
            s for s in self.occupied_in_box(lo, hi) if sq_dist(s, center) < radius_sq
        )

    def translate(self, v: Site) -> "PeriodicConfiguration":
        offs = sorted(self.reduce((o[0] + v[0], o[1] + v[1], o[2] + v[2])) for o in self.offsets)
        return replace(self, offsets=tuple(offs))

    def transform(self, g: SignedPermutation) -> "PeriodicConfiguration":
        """Image under a signed permutation, re-normalized to HNF."""
        rows = [g.apply(r) for r in self.basis]  # type: ignore[arg-type]
        offs = [g.apply(o) for o in self.offsets]
        return make_config(rows, offs, self.context_d2)

    def canonical_key(self) -> tuple:
        return (self.basis, self.offsets)

    def to_json_dict(self) -> dict:
        return {
            "basis": [list(r) for r in self.basis],
            "offsets": [list(o) for o in self.offsets],
            "d2": self.context_d2,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "PeriodicConfiguration":
        return make_config(
            d["basis"], [tuple(o) for o in d["offsets"]], d.get("d2")
        )


def make_config(
    basis_rows: Iterable[Sequence[int]],
    offsets: Iterable[Sequence[int]],
    context_d2: Optional[int] = None,
) -> PeriodicConfiguration:
    """Build a configuration: HNF the basis, reduce offsets, sort, dedupe."""
    b = hnf(basis_rows)
    offs = sorted({_reduce_site((o[0], o[1], o[2]), b) for o in offsets})
    if not offs:
        raise ValueError("a periodic configuration needs at least one offset")
    pc = PeriodicConfiguration(b, tuple(offs), context_d2)
    if context_d2 is not None and not is_admissible_config(pc, context_d2):
        raise ValueError(f"configuration violates the d2={context_d2} hard-core rule")
    return pc


def min_positive_sq_dist(pc: PeriodicConfiguration, cap: int) -> int:
    """Smallest positive squared distance between occupied sites if < cap, else cap.

    Scanning a ball around each offset covers every translation class of
    occupied pairs, so the result is exact below the cap.
    """
    best = cap
    for o in pc.offsets:
        for s in pc.occupied_near(o, best):
            if s != o:
                d = sq_dist(s, o)
                if d < best:
                    best = d
    return best


def is_admissible_config(pc: PeriodicConfiguration, d2: int) -> bool:
    return min_positive_sq_dist(pc, d2) >= d2


def density(pc: PeriodicConfiguration) -> Fraction:
    return Fraction(len(pc.offsets), pc.det)


def canonicalize(pc: PeriodicConfiguration) -> PeriodicConfiguration:
    """Extend the basis by every self-translation of the occupied set.

    The constructor basis may be a proper sublattice of the configuration's
    true translation group (layered builds often are); the canonical form is
    the HNF of the full group with offsets re-reduced. Idempotent: any
    translation of the configuration is congruent to an offset difference,
    and all of those are tested.
    """
    offs = set(pc.offsets)
    extra: list[Site] = []
    o0 = pc.offsets[0]
    for o in pc.offsets[1:]:
        d = (o[0] - o0[0], o[1] - o0[1], o[2] - o0[2])
        shifted = {pc.reduce((s[0] + d[0], s[1] + d[1], s[2] + d[2])) for s in offs}
        if shifted == offs:
            extra.append(d)
    if not extra:
        return pc
    return make_config(list(pc.basis) + extra, pc.offsets, pc.context_d2)


def shift_count(pc: PeriodicConfiguration) -> int:
    """Number of distinct translates; equals the canonical basis determinant."""
    return canonicalize(pc).det


def configs_equal(a: PeriodicConfiguration, b: PeriodicConfiguration) -> bool:
    return canonicalize(a).canonical_key() == canonicalize(b).canonical_key()


def is_perfect(pc: PeriodicConfiguration, d2: int) -> bool:
    """True iff the total force equals 1 at EVERY site of one fundamental cell.

    Vacant sites count as much as occupied ones. Raises (rather than
    returning False) if the configuration is not even admissible for d2.
    """
    if d2 == 1:
        # distinct sites always satisfy the hard-core rule; force is the
        # indicator of occupation, so perfect means fully occupied
        return len(pc.offsets) == pc.det
    ft = force_table(d2)
    if not is_admissible_config(pc, d2):
        raise ValueError(f"configuration is not d2={d2} admissible; perfection undefined")
    one = Fraction(1)
    for x in pc.cell_sites():
        total = Fraction(0)
        for y in pc.occupied_near(x, ft.ball_radius_sq):
            total += ft.force(sq_dist(x, y))
        if total != one:
            return False
    return True


def is_saturated(pc: PeriodicConfiguration, d2: int) -> bool:
    """True iff no vacant cell site can be occupied without breaking the hard-core rule."""
    occ = set(pc.offsets)
    for x in pc.cell_sites():
        if x in occ:
            continue
        if not pc.occupied_near(x, d2):
            return False
    return True


FAMILY_TAGS = (
    "d5-triangular",
    "d6-triangular",
    "d6-rhombic",
    "d9-square",
    "d10-triangular",
    "2l2-triangular",
)

_FAMILY_ALPHABETS: dict[str, tuple[int, ...]] = {
    "d5-triangular": (0, 1, 2),
    "d6-triangular": (0, 1, 2, 3, 4, 5, 6),
    "d6-rhombic": (0, 1, 2),
    "d9-square": (0, 1),
    "d10-triangular": (0, 1, 2),
    "2l2-triangular": (0, 1, 2),
}


@dataclass(frozen=True)
class LayerSequence:
    """A periodic word of layer labels for one of the layered families."""

    family: str
    diagonal: int
    digits: tuple[int, ...]
    periodic: bool = True

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_ALPHABETS:
            raise ValueError(f"unknown layer family {self.family!r}")
        if not self.digits:
            raise ValueError("empty digit sequence")
        alpha = set(_FAMILY_ALPHABETS[self.family])
        if not set(self.digits) <= alpha:
            raise ValueError(f"digits outside the {self.family} alphabet")
        if self.digits[0] != 0:
            raise ValueError("layer sequences start at label 0")
        n = len(self.digits)
        if self.periodic and n == 1:
            # a period-1 word repeats its single label forever
            raise ValueError("consecutive layer labels must differ")
        for k in range(n if self.periodic else n - 1):
            if self.digits[k] == self.digits[(k + 1) % n]:
                raise ValueError("consecutive layer labels must differ")

    @staticmethod
    def parse(family: str, diagonal: int, word: str, periodic: bool = True) -> "LayerSequence":
        return LayerSequence(family, diagonal, tuple(int(c) for c in word), periodic)


@dataclass(frozen=True)
class MeshSpec:
    """One planar mesh: an affine 2D sublattice with a rational offset.

    Sites are offset_num/offset_den + m*g1 + n*g2; the offset must be
    integral for the mesh to live in Z^3 (checked on construction).
    """

    kind: str  # "main" | "non-main" | "axis"
    index: int
    level: int
    label: int
    generators: tuple[Site, Site]
    offset_num: Site
    offset_den: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("main", "non-main", "axis"):
            raise ValueError(f"unknown mesh kind {self.kind!r}")
        if any(c % self.offset_den for c in self.offset_num):
            raise ValueError(
                f"mesh offset {self.offset_num}/{self.offset_den} is not an integer site"
            )

    @property
    def offset(self) -> Site:
        d = self.offset_den
        return (self.offset_num[0] // d, self.offset_num[1] // d, self.offset_num[2] // d)
