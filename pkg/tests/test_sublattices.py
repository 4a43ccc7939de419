"""Cubic sublattices: quaternion parametrization, counting formulas,
symmetry classes, and the close-packed doubling."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latticegas.configs import det3, hnf
from latticegas.families import pc_census
from latticegas.sublattices import (
    Quaternion,
    classify_classes,
    class_size_histogram,
    compare_class_counts,
    enumerate_cubic_sublattices,
    euler_rodrigues,
    fcc_census,
    fcc_from_cubic,
    is_cubic_basis,
    predicted_class_bases,
    quadruples,
    quaternion_coverage,
    quaternions_of_norm,
    r3_brute,
    r3_formula,
    r_residual,
    s2,
    s2_hat,
    s2_tilde,
)
from oracles import r3_naive
from reference_data import CLASS_HISTOGRAMS, MISMATCH_LS, STABILIZER_ORDERS

quat_component = st.integers(-6, 6)


@given(a=quat_component, b=quat_component, c=quat_component, d=quat_component)
def test_rotation_rows_are_orthogonal_with_norm_squared(a, b, c, d):
    if a == b == c == d == 0:
        return
    q = Quaternion(a, b, c, d)
    rows = euler_rodrigues(q)
    n = q.norm_sq
    for i in range(3):
        assert sum(x * x for x in rows[i]) == n * n
        for j in range(i + 1, 3):
            assert sum(rows[i][k] * rows[j][k] for k in range(3)) == 0
    assert det3(list(rows)) == n ** 3


@given(
    a=quat_component, b=quat_component, c=quat_component, d=quat_component,
    e=quat_component, f=quat_component, g=quat_component, h=quat_component,
)
def test_quaternion_norm_is_multiplicative(a, b, c, d, e, f, g, h):
    if (a == b == c == d == 0) or (e == f == g == h == 0):
        return
    p, q = Quaternion(a, b, c, d), Quaternion(e, f, g, h)
    assert (p * q).norm_sq == p.norm_sq * q.norm_sq


def test_conjugation_gives_the_norm():
    q = Quaternion(2, -1, 3, 0)
    prod = q * q.conjugate()
    assert (prod.a, prod.b, prod.c, prod.d) == (q.norm_sq, 0, 0, 0)


def test_quadruples_count_matches_r3():
    for l in (1, 2, 3, 5, 9):
        assert len(quadruples(l)) == r3_brute(l * l)


def test_r3_brute_matches_naive_oracle():
    for n in (1, 2, 4, 9, 25, 49, 81, 100):
        assert r3_brute(n) == r3_naive(n)


def test_r3_formula_matches_brute():
    for l in range(1, 26):
        assert r3_formula(l) == r3_brute(l * l), l


def test_class_count_helpers():
    assert s2(5) == 2
    assert s2_hat(7) == 2
    assert s2_tilde(11) == 2
    assert s2(3) == 0
    assert r_residual(9) == -72


def test_cubic_basis_predicate():
    assert is_cubic_basis(((3, 0, 0), (0, 3, 0), (0, 0, 3)))
    assert is_cubic_basis(((2, 2, 1), (-2, 1, 2), (1, -2, 2)))
    assert not is_cubic_basis(((1, 0, 0), (0, 1, 0), (0, 0, 2)))


def test_fcc_from_cubic_doubles_the_cell():
    m = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
    doubled = hnf(list(fcc_from_cubic(m)))
    assert det3(list(doubled)) == 2 * det3(list(m))


def test_enumeration_counts():
    assert len(enumerate_cubic_sublattices(1)) == 1
    assert len(enumerate_cubic_sublattices(3)) == 5
    assert len(enumerate_cubic_sublattices(5)) == 7
    assert len(enumerate_cubic_sublattices(7)) == 9


def test_class_structure_at_the_sample_norms():
    for l, expected in CLASS_HISTOGRAMS.items():
        assert class_size_histogram(l) == expected, l
    seen = set()
    for l in CLASS_HISTOGRAMS:
        for cl in classify_classes(l):
            seen.add(cl.stabilizer_order)
            assert cl.size * cl.stabilizer_order == 48
    assert seen == STABILIZER_ORDERS


def test_parameters_annotated_on_predicted_classes():
    by_size = {cl.size: cl for cl in classify_classes(5)}
    assert by_size[6].parameters == (2, 1, 1)
    by_size = {cl.size: cl for cl in classify_classes(7)}
    assert by_size[8].parameters == (3, 1, 1)
    by_size = {cl.size: cl for cl in classify_classes(11)}
    assert by_size[12].parameters == (3, 1, 1)


def test_predicted_bases_solve_their_equations():
    for l in (3, 5, 7, 9, 11, 13):
        for size, params, basis in predicted_class_bases(l):
            assert size in (4, 6, 8, 12)
            assert abs(det3(list(basis))) == l ** 3
            assert is_cubic_basis(tuple(tuple(r) for r in basis))


# per-class new-solution counts: the axis class owns 6 quadruples, each
# further class size brings a fixed block of fresh ones
ACCOUNTING_COEFF = {1: 6, 4: 24, 6: 24, 8: 48, 12: 72}


def test_solution_accounting_identity():
    for l in (3, 5, 7, 9, 11):
        hist = class_size_histogram(l)
        total = sum(ACCOUNTING_COEFF[size] * count for size, count in hist.items())
        assert total == r3_formula(l), l


def test_every_quadruple_extends_to_an_orthogonal_triple():
    from latticegas.sublattices import _orthogonal_triples

    for l in (1, 2, 3, 5, 7, 9):
        firsts = {t[0] for t in _orthogonal_triples(l)}
        assert firsts == set(quadruples(l))


def test_formula_vs_oracle_mismatch_set():
    for l in range(1, 22):
        cmp = compare_class_counts(l)
        assert bool(cmp.mismatched_sizes) == (l in MISMATCH_LS), l
        assert cmp.oracle == class_size_histogram(l)


def test_quaternion_coverage_of_small_norms():
    for l in range(1, 9):
        assert quaternion_coverage(l), l


def test_quaternions_of_norm():
    for l in (1, 2, 3, 4, 5):
        qs = quaternions_of_norm(l)
        assert qs and all(q.norm_sq == l for q in qs)


def test_fcc_census_joins_the_pc_census():
    assert fcc_census(1).pcs_total == 2 == pc_census(2)
    assert fcc_census(2).pcs_total == 16 == pc_census(8)
    assert fcc_census(4).pcs_total == 128
    flagged = fcc_census(3)
    assert flagged.flagged_layered_continuum
    assert flagged.pcs_total is None
    assert flagged.fcc_sublattices == 5
