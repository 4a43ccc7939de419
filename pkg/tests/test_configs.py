"""Periodic configurations: HNF canonical form, density, perfection."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latticegas.configs import (
    PeriodicConfiguration,
    canonicalize,
    configs_equal,
    density,
    det3,
    hnf,
    is_admissible_config,
    is_perfect,
    is_saturated,
    make_config,
    shift_count,
)
from latticegas.families import build_bcc, build_cubic, build_fcc, build_layered_d5
from oracles import box_admissible, naive_density

entry = st.integers(-9, 9)
row = st.tuples(entry, entry, entry)


@st.composite
def nonsingular_rows(draw):
    rows = [draw(row) for _ in range(3)]
    if det3(rows) == 0:
        # nudge into general position along the diagonal
        rows = [
            (rows[0][0] + 1, rows[0][1], rows[0][2]),
            (rows[1][0], rows[1][1] + 2, rows[1][2]),
            (rows[2][0], rows[2][1], rows[2][2] + 3),
        ]
    if det3(rows) == 0:
        rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return rows


def _in_lattice(site, basis) -> bool:
    # integer coordinates in the basis iff the adjugate image is divisible by det
    from latticegas.configs import adjugate3

    d = det3(basis)
    adj = adjugate3(basis)
    for col in range(3):
        c = sum(site[r] * adj[r][col] for r in range(3))
        if c % d:
            return False
    return True


@given(rows=nonsingular_rows())
def test_hnf_is_canonical_form_of_the_same_lattice(rows):
    h = hnf(rows)
    assert h[1][0] == h[2][0] == h[2][1] == 0
    assert h[0][0] > 0 and h[1][1] > 0 and h[2][2] > 0
    assert 0 <= h[0][1] < h[1][1] and 0 <= h[0][2] < h[2][2] and 0 <= h[1][2] < h[2][2]
    assert det3(h) == abs(det3(rows))
    for r in rows:
        assert _in_lattice(r, h)
    for r in h:
        assert _in_lattice(r, rows)
    assert hnf(h) == h


def test_hnf_rejects_rank_deficient_generators():
    with pytest.raises(ValueError):
        hnf([(1, 0, 0), (2, 0, 0), (3, 0, 0)])


def test_make_config_reduces_and_dedupes_offsets():
    pc = make_config(
        [(2, 0, 0), (0, 2, 0), (0, 0, 2)],
        [(0, 0, 0), (2, 2, 2), (4, 0, 0)],
    )
    assert pc.offsets == ((0, 0, 0),)
    assert pc.det == 8


def test_make_config_validates_hard_core_rule():
    with pytest.raises(ValueError):
        make_config([(2, 0, 0), (0, 2, 0), (0, 0, 2)], [(0, 0, 0), (1, 0, 0)], context_d2=4)


def test_redundant_cell_canonicalizes_away():
    fcc = build_fcc(1)
    fat = make_config(
        [(2, 0, 0), (0, 2, 0), (0, 0, 2)],
        [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)],
        context_d2=2,
    )
    assert fat.det == 8 and len(fat.offsets) == 4
    slim = canonicalize(fat)
    assert slim.det == 2 and len(slim.offsets) == 1
    assert configs_equal(slim, fcc)
    assert canonicalize(slim) == slim


def test_shift_count_equals_cell_volume():
    for pc in (build_fcc(1), build_bcc(2), build_layered_d5(0, "01")):
        assert shift_count(pc) == canonicalize(pc).det


@pytest.mark.parametrize(
    "build, d2",
    [
        (lambda: build_fcc(1), 2),
        (lambda: build_bcc(2), 3),
        (lambda: build_layered_d5(0, "01"), 5),
        (lambda: build_fcc(2), 8),
    ],
)
def test_density_and_admissibility_match_oracles(build, d2):
    pc = build()
    assert density(pc) == naive_density(pc)
    assert is_admissible_config(pc, d2)
    assert box_admissible(pc, d2)


def test_membership_after_reduction():
    pc = build_fcc(1)
    assert pc.contains((0, 0, 0))
    assert pc.contains((1, 1, 0))
    assert pc.contains((13, -7, 0))
    assert not pc.contains((1, 0, 0))


def test_occupied_in_box_exact():
    pc = build_layered_d5(0, "01")
    lo, hi = (-4, -4, -4), (4, 4, 4)
    brute = [
        (x, y, z)
        for x in range(lo[0], hi[0] + 1)
        for y in range(lo[1], hi[1] + 1)
        for z in range(lo[2], hi[2] + 1)
        if pc.contains((x, y, z))
    ]
    assert sorted(pc.occupied_in_box(lo, hi)) == brute


def test_perfection_basics():
    z3 = build_cubic(1)
    assert is_perfect(z3, 1)
    assert is_perfect(build_fcc(1), 2)
    assert is_perfect(build_bcc(2), 3)
    # admissible at the lower threshold but too thin to be perfect there
    assert not is_perfect(build_bcc(2), 2)


def test_perfection_undefined_below_the_packing_distance():
    # the question only makes sense for admissible configurations
    with pytest.raises(ValueError):
        is_perfect(build_cubic(1), 2)
    with pytest.raises(ValueError):
        is_perfect(build_fcc(1), 3)


def test_sparse_config_is_not_perfect():
    thin = make_config([(4, 0, 0), (0, 4, 0), (0, 0, 4)], [(0, 0, 0)], context_d2=2)
    assert not is_perfect(thin, 2)
    assert not is_saturated(thin, 2)


def test_saturation_of_the_dense_packing():
    assert is_saturated(build_fcc(1), 2)
    assert density(build_fcc(1)) == Fraction(1, 2)


def test_configs_equal_ignores_representation():
    a = make_config([(1, 1, 0), (0, 2, 0), (0, 0, 2)], [(0, 0, 0)])
    b = make_config([(2, 0, 0), (1, 1, 0), (1, 1, 2)], [(2, 2, 2)])
    assert configs_equal(a, b)


def test_context_round_trip():
    pc = PeriodicConfiguration(((2, 0, 0), (0, 2, 0), (0, 0, 2)), ((0, 0, 0),), 4)
    assert pc.context_d2 == 4
    assert pc.reduce((5, -3, 2)) == (1, 1, 0)
