"""Geometry primitives: balls, distances, the cube symmetry group."""

from hypothesis import given
from hypothesis import strategies as st

from latticegas.lattice import (
    ORIGIN,
    SignedPermutation,
    apply_to_sites,
    ball_sites,
    is_admissible,
    oh_elements,
    rotation_elements,
    sq_dist,
)
from oracles import brute_ball, pairwise_admissible
from reference_data import BALL_COUNTS

sites_st = st.tuples(
    st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)
)


def test_ball_cardinalities():
    for rsq, expected in BALL_COUNTS.items():
        assert len(ball_sites(rsq)) == expected


def test_ball_matches_cube_scan():
    for rsq in (1, 2, 3, 4, 5, 6, 7, 9, 12):
        assert sorted(ball_sites(rsq)) == brute_ball(rsq)


@given(center=sites_st, rsq=st.integers(1, 9))
def test_ball_translation_equivariant(center, rsq):
    shifted = sorted(ball_sites(rsq, center))
    assert shifted == sorted(
        (s[0] + center[0], s[1] + center[1], s[2] + center[2])
        for s in ball_sites(rsq)
    )


@given(a=sites_st, b=sites_st)
def test_sq_dist_symmetric_nonnegative(a, b):
    assert sq_dist(a, b) == sq_dist(b, a) >= 0
    assert (sq_dist(a, b) == 0) == (a == b)


def test_group_orders():
    assert len(oh_elements()) == 48
    assert len(rotation_elements()) == 24
    assert len({g for g in oh_elements()}) == 48


@given(a=sites_st, b=sites_st, idx=st.integers(0, 47))
def test_group_preserves_distance(a, b, idx):
    g = oh_elements()[idx]
    assert sq_dist(g.apply(a), g.apply(b)) == sq_dist(a, b)


def test_group_closed_under_composition():
    elements = oh_elements()
    table = set(elements)
    probe = ball_sites(6)
    for g in elements[:8]:
        for h in elements[:8]:
            image = tuple(h.apply(g.apply(s)) for s in probe)
            assert any(
                image == tuple(k.apply(s) for s in probe) for k in table
            )


def test_apply_to_sites_matches_pointwise():
    g = oh_elements()[5]
    pts = ball_sites(4)
    assert apply_to_sites(g, pts) == sorted(g.apply(p) for p in pts)


@given(
    pts=st.lists(sites_st, min_size=0, max_size=6, unique=True),
    d2=st.sampled_from([2, 3, 4, 5, 6, 8, 9, 10, 12]),
)
def test_is_admissible_matches_pairwise_oracle(pts, d2):
    assert is_admissible(pts, d2) == pairwise_admissible(list(pts), d2)


def test_origin_is_origin():
    assert ORIGIN == (0, 0, 0)
    assert ORIGIN in ball_sites(1)
