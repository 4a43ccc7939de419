"""Integer lattice geometry: sites, balls, admissibility, signed permutations.

Everything here is exact integer arithmetic on Z^3. A "ball" is the set of
lattice sites strictly closer (in squared Euclidean distance) to its center
than a given bound; strictness matters because hard-core exclusion is an
open condition on the squared distance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Site = tuple[int, int, int]

ORIGIN: Site = (0, 0, 0)


def sq_dist(a: Site, b: Site) -> int:
    """Squared Euclidean distance between two sites."""
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2


def ball_sites(bound_sq: int, center: Site = ORIGIN) -> list[Site]:
    """All sites y with sq_dist(y, center) < bound_sq, in lexicographic order.

    The bound is strict: ball_sites(1) is just the center, ball_sites(2)
    adds the six axis neighbours, and so on.
    """
    if bound_sq < 1:
        return []
    r = math.isqrt(bound_sq - 1)
    out: list[Site] = []
    for dx in range(-r, r + 1):
        for dy in range(-r, r + 1):
            for dz in range(-r, r + 1):
                if dx * dx + dy * dy + dz * dz < bound_sq:
                    out.append((center[0] + dx, center[1] + dy, center[2] + dz))
    return out


def is_admissible(sites: Iterable[Site], d2: int) -> bool:
    """True iff all pairwise squared distances are >= d2 (hard-core rule)."""
    pts = list(sites)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if sq_dist(pts[i], pts[j]) < d2:
                return False
    return True


@dataclass(frozen=True)
class SignedPermutation:
    """An element of the full cubic symmetry group acting on Z^3.

    apply() sends x to y with y[i] = signs[i] * x[perm[i]]; the 48 such maps
    form the symmetry group of the cube, 24 of them orientation-preserving.
    """

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    def apply(self, site: Site) -> Site:
        p, s = self.perm, self.signs
        return (s[0] * site[p[0]], s[1] * site[p[1]], s[2] * site[p[2]])

    def matrix(self) -> tuple[tuple[int, int, int], ...]:
        rows = []
        for i in range(3):
            row = [0, 0, 0]
            row[self.perm[i]] = self.signs[i]
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def det(self) -> int:
        p = self.perm
        parity = 1 if (p[0], p[1], p[2]) in _EVEN_PERMS else -1
        return parity * self.signs[0] * self.signs[1] * self.signs[2]

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other: (self.compose(other)).apply(x) == self.apply(other.apply(x))."""
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(3))
        return SignedPermutation(perm, signs)  # type: ignore[arg-type]


_EVEN_PERMS = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def oh_elements() -> list[SignedPermutation]:
    """The 48 signed permutations in a fixed deterministic order.

    The identity comes first; exactly 24 elements have det +1.
    """
    out = []
    for perm in itertools.permutations((0, 1, 2)):
        for signs in itertools.product((1, -1), repeat=3):
            out.append(SignedPermutation(perm, signs))
    return out


def rotation_elements() -> list[SignedPermutation]:
    """The 24 orientation-preserving signed permutations."""
    return [g for g in oh_elements() if g.det == 1]


def apply_to_sites(g: SignedPermutation, sites: Sequence[Site]) -> list[Site]:
    return sorted(g.apply(s) for s in sites)
