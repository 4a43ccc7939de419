"""Constructors for the dense-packing families, their censuses, and sliding.

Each builder returns a canonicalized PeriodicConfiguration whose context_d2
is set when the family is tied to a specific exclusion threshold. Layered
builders validate the sequence alphabet, the per-level integrality of the
mesh offsets, and the displayed transition rules; violations raise instead
of being silently repaired.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from .configs import (
    MAIN_DIAGONALS,
    NON_MAIN_DIAGONALS,
    LayerSequence,
    MeshSpec,
    PeriodicConfiguration,
    canonicalize,
    configs_equal,
    is_admissible_config,
    is_perfect,
    make_config,
)
from .lattice import Site, oh_elements, sq_dist

SeqLike = Union[str, LayerSequence]

COUNTABLE_MARKER = "ℵ₀"  # countable-infinity marker for continuum rows


def _add(a: Site, b: Site) -> Site:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _scale(c: int, v: Site) -> Site:
    return (c * v[0], c * v[1], c * v[2])


def _neg(v: Site) -> Site:
    return (-v[0], -v[1], -v[2])


def _cross(a: Site, b: Site) -> Site:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _div_exact(v: Site, d: int, what: str) -> Site:
    if any(c % d for c in v):
        raise ValueError(f"{what}: {v} is not divisible by {d}; non-integral site")
    return (v[0] // d, v[1] // d, v[2] // d)


def _in_span2(t: Site, u: Site, v: Site) -> bool:
    """Is t an integer combination of the independent vectors u and v?"""
    n = _cross(u, v)
    if t[0] * n[0] + t[1] * n[1] + t[2] * n[2] != 0:
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            d = u[i] * v[j] - u[j] * v[i]
            if d:
                m_num = t[i] * v[j] - t[j] * v[i]
                n_num = u[i] * t[j] - u[j] * t[i]
                return m_num % d == 0 and n_num % d == 0
    raise ValueError("degenerate mesh generators")


def _coerce_seq(family: str, i: int, seq: SeqLike) -> LayerSequence:
    if isinstance(seq, LayerSequence):
        if seq.family != family:
            raise ValueError(f"sequence family {seq.family!r} does not match {family!r}")
        if not seq.periodic:
            raise ValueError("only periodic layer sequences are representable")
        return seq
    return LayerSequence.parse(family, i, seq)


# --- cubic / close-packed / body-centered lattices -------------------------


def build_cubic(l: int) -> PeriodicConfiguration:
    if l < 1:
        raise ValueError("side must be >= 1")
    return make_config([(l, 0, 0), (0, l, 0), (0, 0, l)], [(0, 0, 0)])


def build_fcc(l: int) -> PeriodicConfiguration:
    """The face-centered l-sublattice: all sites with coordinate sum even, scaled by l."""
    if l < 1:
        raise ValueError("scale must be >= 1")
    rows = [(0, l, l), (l, 0, l), (l, l, 0)]
    return make_config(rows, [(0, 0, 0)], context_d2=2 * l * l)


def build_bcc(side: int) -> PeriodicConfiguration:
    """Body-centered cubic with the given (even) cube side."""
    if side < 2 or side % 2:
        raise ValueError("side must be even and >= 2")
    h = side // 2
    return make_config([(side, 0, 0), (0, side, 0), (h, h, h)], [(0, 0, 0)])


# --- layered family at threshold 5 ------------------------------------------


def _d5_mesh_data(i: int) -> tuple[Site, Site, Site, dict[int, Site]]:
    e = MAIN_DIAGONALS[i]
    s2, s3 = e[1], e[2]
    u = (1, -2 * s2, s3)
    v = (-1, -s2, 2 * s3)
    deltas = {0: (0, 0, 0), 1: (0, s2, -s3), 2: (0, -s2, s3)}
    return e, u, v, deltas


def build_layered_d5(i: int, seq: SeqLike) -> PeriodicConfiguration:
    """Union of triangular meshes stacked along main diagonal i, one per level."""
    if not 0 <= i <= 3:
        raise ValueError("diagonal index must be in 0..3")
    ls = _coerce_seq("d5-triangular", i, seq)
    e, u, v, deltas = _d5_mesh_data(i)
    p = len(ls.digits)
    offsets = [_add(_scale(k, e), deltas[ls.digits[k]]) for k in range(p)]
    pc = make_config([u, v, _scale(p, e)], offsets, context_d2=5)
    return canonicalize(pc)


def hcp_census() -> int:
    """Distinct 2-periodic layered packings at threshold 5, counting translates."""
    seen = set()
    for i in range(4):
        for word in ("01", "02"):
            pc = build_layered_d5(i, word)
            for t in pc.cell_sites():
                seen.add(canonicalize(pc.translate(t)).canonical_key())
    return len(seen)


# --- layered families at threshold 6 -----------------------------------------


def _d6_tri_mesh_data(i: int) -> tuple[Site, dict[int, Site]]:
    e = MAIN_DIAGONALS[i]
    s2, s3 = e[1], e[2]
    w1 = (1, -2 * s2, s3)
    w2 = (-1, -s2, 2 * s3)
    w3 = (-2, s2, s3)
    w = {0: (0, 0, 0), 1: w1, 2: w2, 3: w3, 4: _neg(w1), 5: _neg(w2), 6: _neg(w3)}
    return e, w


def build_layered_d6_tri(i: int, seq: SeqLike) -> PeriodicConfiguration:
    """Triangular-mesh stack along main diagonal i with 7 sub-mesh labels per level."""
    if not 0 <= i <= 3:
        raise ValueError("diagonal index must be in 0..3")
    ls = _coerce_seq("d6-triangular", i, seq)
    e, w = _d6_tri_mesh_data(i)
    u, v = w[1], w[2]
    p = len(ls.digits)
    if p % 3:
        raise ValueError("period must be a multiple of 3 for integral wrap-around")
    offsets = []
    for k, j in enumerate(ls.digits):
        num = _add(_scale(4 * k, e), w[j])
        offsets.append(_div_exact(num, 3, f"level {k} label {j}"))
        # displayed step rule: the jump to the next mesh is one third of a
        # w-vector with an even label, modulo the mesh lattice
        jn = ls.digits[(k + 1) % p]
        ok = False
        for jp in (2, 4, 6):
            diff = tuple(w[jn][t] - w[j][t] - w[jp][t] for t in range(3))
            if all(c % 3 == 0 for c in diff) and _in_span2(
                (diff[0] // 3, diff[1] // 3, diff[2] // 3), u, v
            ):
                ok = True
                break
        if not ok:
            raise ValueError(f"transition {j} -> {jn} violates the mesh step rule")
    pc = make_config([u, v, _scale(4 * p // 3, e)], offsets, context_d2=6)
    return canonicalize(pc)


def _d6_rhombic_mesh_data(i: int) -> tuple[Site, Site, Site, dict[int, Site]]:
    s = NON_MAIN_DIAGONALS[i]
    s1, s2, s3 = s
    a = (1 - abs(s1), 1 - abs(s2), 1 - abs(s3))
    tb = (  # twice the half-integer shift vector
        s2 - s2 * abs(s3) - s3 + s3 * abs(s2),
        s3 - s3 * abs(s1) - s1 + s1 * abs(s3),
        s1 - s1 * abs(s2) - s2 + s2 * abs(s1),
    )
    g1 = _add(_scale(2, a), tb)
    g2 = _add(_scale(2, a), _neg(tb))
    doubled = {0: (0, 0, 0), 1: g1, 2: g2}  # numerators of 0, a+b, a-b over 2
    return s, g1, g2, doubled


def build_layered_d6_rhombic(i: int, seq: SeqLike) -> PeriodicConfiguration:
    """Rhombic-mesh stack along non-main diagonal i with 3 sub-mesh labels."""
    if not 0 <= i <= 5:
        raise ValueError("diagonal index must be in 0..5")
    ls = _coerce_seq("d6-rhombic", i, seq)
    s, g1, g2, doubled = _d6_rhombic_mesh_data(i)
    p = len(ls.digits)
    if p % 2:
        raise ValueError("period must be even for integral wrap-around")
    offsets = []
    for k, j in enumerate(ls.digits):
        num = _add(_scale(3 * k, s), doubled[j])
        offsets.append(_div_exact(num, 2, f"level {k} label {j}"))
        jn = ls.digits[(k + 1) % p]
        ok = False
        for jp in (1, 2):
            diff = tuple(doubled[jn][t] - doubled[j][t] - doubled[jp][t] for t in range(3))
            if all(c % 2 == 0 for c in diff) and _in_span2(
                (diff[0] // 2, diff[1] // 2, diff[2] // 2), g1, g2
            ):
                ok = True
                break
        if not ok:
            raise ValueError(f"transition {j} -> {jn} violates the mesh step rule")
    pc = make_config([g1, g2, _scale(3 * p // 2, s)], offsets, context_d2=6)
    return canonicalize(pc)


# --- deformed close-packed lattices at thresholds 9 and 10 -------------------


def build_phi9(i: int, l: int) -> PeriodicConfiguration:
    """One of the six congruent threshold-9 lattices (axis i, chirality l)."""
    if i not in (1, 2, 3) or l not in (0, 1):
        raise ValueError("axis index in {1,2,3}, chirality in {0,1}")
    base = {
        0: ((0, 3, 1), (0, -1, 3), (2, 1, 2)),
        1: ((0, 3, -1), (0, -1, -3), (2, 1, -2)),
    }[l]
    rows = [tuple(r) for r in base]
    if i == 2:
        # quarter turn about the third axis
        rows = [(-r[1], r[0], r[2]) for r in rows]
    elif i == 3:
        # quarter turn about the second axis
        rows = [(r[2], r[1], -r[0]) for r in rows]
    return make_config(rows, [(0, 0, 0)], context_d2=9)


def build_phi10(i: int, l: int) -> PeriodicConfiguration:
    """One of the eight congruent threshold-10 lattices (diagonal i, chirality l)."""
    if not 0 <= i <= 3 or l not in (0, 1):
        raise ValueError("diagonal index in 0..3, chirality in {0,1}")
    s2, s3 = MAIN_DIAGONALS[i][1], MAIN_DIAGONALS[i][2]
    if l == 0:
        rows = [(-1, -3 * s2, 4 * s3), (3, -4 * s2, s3), (0, 3 * s2, -s3)]
    else:
        rows = [(-1, 4 * s2, -3 * s3), (3, s2, -4 * s3), (0, -s2, 3 * s3)]
    return make_config(rows, [(0, 0, 0)], context_d2=10)


# --- layered family at thresholds 2*l^2 --------------------------------------


def build_layered_2l2(l: int, i: int, seq: SeqLike) -> PeriodicConfiguration:
    """Triangular sqrt(2)*l-mesh stack along main diagonal i at threshold 2*l^2.

    Per-level offsets are integral only when the label at level k is k mod 3,
    unless l is divisible by 3, in which case every label pattern is integral.
    Violations raise.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if not 0 <= i <= 3:
        raise ValueError("diagonal index must be in 0..3")
    ls = _coerce_seq("2l2-triangular", i, seq)
    e = MAIN_DIAGONALS[i]
    s2, s3 = e[1], e[2]
    u = (l, -l * s2, 0)
    v = (l, 0, -l * s3)
    delta_num = {0: (0, 0, 0), 1: (-2 * l, l * s2, l * s3), 2: (2 * l, -l * s2, -l * s3)}
    p = len(ls.digits)
    if (2 * l * p) % 3:
        raise ValueError("period incompatible with the diagonal step; wrap-around not integral")
    offsets = []
    for k, j in enumerate(ls.digits):
        num = _add(_scale(2 * l * k, e), delta_num[j])
        offsets.append(_div_exact(num, 3, f"level {k} label {j}"))
    d2 = 2 * l * l
    pc = make_config([u, v, _scale(2 * l * p // 3, e)], offsets, context_d2=d2)
    return canonicalize(pc)


# --- threshold-4 structures ---------------------------------------------------


def build_d4_family(
    direction: int = 2,
    parity: int = 0,
    pattern2d: Optional[tuple[int, str]] = None,
    column_shifts: Optional[Sequence[str]] = None,
) -> PeriodicConfiguration:
    """A threshold-4 perfect configuration from planar patterns and column shifts.

    The occupied planes sit at coordinate `direction` congruent to `parity`
    mod 2. Each plane carries a square 2-mesh in which every line with mask
    bit 1 is shifted by one unit along the line (pattern2d = (line_direction,
    mask)); column_shifts is a periodic 0/1 grid lifting whole columns by one
    unit. The result is checked to be admissible and perfect; combinations
    that fail raise.
    """
    if direction not in (0, 1, 2):
        raise ValueError("direction must be 0, 1, or 2")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    line_dir, mask = pattern2d if pattern2d is not None else (0, "0")
    if line_dir not in (0, 1):
        raise ValueError("pattern2d line direction must be 0 or 1")
    if not mask or any(c not in "01" for c in mask):
        raise ValueError("pattern2d mask must be a nonempty 0/1 string")
    grid = list(column_shifts) if column_shifts else ["0"]
    if not grid or any(not row or any(c not in "01" for c in row) for row in grid):
        raise ValueError("column_shifts must be nonempty 0/1 strings")
    width = len(grid[0])
    if any(len(row) != width for row in grid):
        raise ValueError("column_shifts rows must share one width")

    m = len(mask)
    rows_n = len(grid)
    lines = _lcm(m, rows_n)
    # local coordinates: (along-line, across-lines, stacking)
    axes = [a for a in range(3) if a != direction]
    u_ax, v_ax = (axes[0], axes[1]) if line_dir == 0 else (axes[1], axes[0])
    w_ax = direction

    def to_global(local: tuple[int, int, int]) -> Site:
        g = [0, 0, 0]
        g[u_ax], g[v_ax], g[w_ax] = local
        return (g[0], g[1], g[2])

    offsets = []
    for j in range(lines):  # line index, across direction
        for pos in range(width):  # position along the line
            uu = 2 * pos + int(mask[j % m])
            vv = 2 * j
            ww = parity + int(grid[j % rows_n][pos % width])
            offsets.append(to_global((uu, vv, ww)))
    basis = [to_global((2 * width, 0, 0)), to_global((0, 2 * lines, 0)), to_global((0, 0, 2))]
    pc = make_config(basis, offsets, context_d2=4)
    if not is_perfect(pc, 4):
        raise ValueError("inadmissible combination: the assembled pattern is not perfect")
    return canonicalize(pc)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# --- censuses and the density table ------------------------------------------


def pc_census(d2: int) -> Union[int, str]:
    """Number of distinct perfect configurations at threshold d2.

    For d2 in {4, 5, 6} the family is infinite (countably many periodic
    members); the countable marker string is returned instead of a number.
    """
    if d2 in (4, 5, 6):
        return COUNTABLE_MARKER
    seeds = _census_seeds(d2)
    seen = set()
    for pc in seeds:
        for g in oh_elements():
            img = canonicalize(pc.transform(g))
            for t in img.cell_sites():
                seen.add(canonicalize(img.translate(t)).canonical_key())
    return len(seen)


def _census_seeds(d2: int) -> list[PeriodicConfiguration]:
    if d2 == 2:
        return [build_fcc(1)]
    if d2 == 3:
        return [build_bcc(2)]
    if d2 == 8:
        return [build_fcc(2)]
    if d2 == 9:
        return [build_phi9(i, l) for i in (1, 2, 3) for l in (0, 1)]
    if d2 == 10:
        return [build_phi10(i, l) for i in range(4) for l in (0, 1)]
    if d2 == 12:
        return [build_bcc(4)]
    raise ValueError(f"no finite census is implemented for d2={d2}")


def densest_density(d2: int) -> Fraction:
    """Packing density of the perfect configurations at threshold d2."""
    from .configs import density

    rep = {
        2: lambda: build_fcc(1),
        3: lambda: build_bcc(2),
        4: lambda: build_d4_family(),
        5: lambda: build_layered_d5(0, "01"),
        6: lambda: build_layered_d6_tri(0, "021"),
        8: lambda: build_fcc(2),
        9: lambda: build_phi9(1, 0),
        10: lambda: build_phi10(0, 0),
        12: lambda: build_bcc(4),
    }
    if d2 in rep:
        return density(rep[d2]())
    # thresholds 2*l^2: the close-packed l-sublattice, or its layered sibling
    l2, rem = divmod(d2, 2)
    l = math.isqrt(l2)
    if rem == 0 and l * l == l2 and l >= 1:
        if l % 3 == 0:
            return density(build_layered_2l2(l, 0, "01"))
        return density(build_fcc(l))
    raise ValueError(f"no density known for d2={d2}")


def census_marker(d2: int) -> Union[int, str]:
    """Census size, or the countable marker for infinite families."""
    if d2 in (2, 3, 8, 9, 10, 12):
        return pc_census(d2)
    if d2 in (4, 5, 6):
        return COUNTABLE_MARKER
    l2, rem = divmod(d2, 2)
    l = math.isqrt(l2)
    if rem == 0 and l * l == l2:
        if l % 3 == 0:
            return COUNTABLE_MARKER
        from .sublattices import fcc_census

        return fcc_census(l).pcs_total  # type: ignore[return-value]
    raise ValueError(f"no census known for d2={d2}")


# --- the sliding witness -------------------------------------------------------


def sliding_witness(l: int, n: int) -> int:
    """Size of the removal set when a shifted block is glued into the plain packing.

    The ambient packing is 2Z^3; the block configuration lifts every column
    over the l-by-l even square by one unit. Gluing the block restricted to a
    height-n parallelepiped into the ambient packing breaks admissibility on
    a bounded set of ambient sites; the function counts them by direct scan.
    """
    if l < 1 or n < 1:
        raise ValueError("l and n must be >= 1")
    top = 2 * (l - 1)
    s_cols = {(2 * a, 2 * b) for a in range(l) for b in range(l)}

    def in_box(s: Site) -> bool:
        return 0 <= s[0] <= top and 0 <= s[1] <= top and 0 <= s[2] <= n

    # block sites inside the parallelepiped: shifted columns only
    inside: list[Site] = []
    for (x, y) in s_cols:
        for z in range(1, n + 1, 2):
            inside.append((x, y, z))
    removed = set()
    for x in inside:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    y = (x[0] + dx, x[1] + dy, x[2] + dz)
                    if y == x or sq_dist(x, y) >= 4:
                        continue
                    if any(c % 2 for c in y):
                        continue  # not an ambient site
                    if not in_box(y):
                        removed.add(y)
    return len(removed)
