"""Tests for presentation matrices, ranks, Fitting ideals and the minors criteria"""

import pytest

from errors import MixedDegreeColumnError, ParameterRangeError
from modpres import (
    PresentationMatrix, check_Gs, check_last_rows_minors_criterion, fitting_ideal, generic_rank,
    identity_matrix, inverse_mod_p, minors, pivot_columns, rank_mod_p, rank_of_module,
)
from polycore import Ideal, PolyRing, ideal_equal

XY = PolyRing.polynomial_ring(["x", "y"])
P = XY.p


def test_mod_p_linear_algebra():
    rows = [[1, 2, 3], [2, 4, 6]]
    assert rank_mod_p(rows, P) == 1
    assert pivot_columns([[0, 1, 2], [0, 0, 1]], P) == (1, 2)
    M = [[2, 1], [1, 1]]
    inv = inverse_mod_p(M, P)
    product = [[sum(M[i][k] * inv[k][j] for k in range(2)) % P for j in range(2)] for i in range(2)]
    assert product == identity_matrix(2)


def test_column_degrees(load_phi):
    assert load_phi("FIX-B").column_degrees == (1, 1)
    assert load_phi("FIX-C").column_degrees == (1, 2)
    assert load_phi("FIX-C").d == 2


def test_mixed_degree_column_rejected():
    with pytest.raises(MixedDegreeColumnError):
        PresentationMatrix.parse(XY, [["y", "0"], ["-x", "y^2"], ["0", "-x"]])


def test_zero_column_counts_as_linear():
    phi = PresentationMatrix.parse(XY, [["0", "x"], ["0", "y"]])
    assert phi.column_degrees == (1, 1)


def test_generic_rank(load_phi):
    assert generic_rank(load_phi("FIX-A")) == 1
    assert generic_rank(load_phi("FIX-B")) == 2
    assert generic_rank(PresentationMatrix.parse(XY, [["x", "y"], ["x", "y"]])) == 1


@pytest.mark.parametrize("name", ["FIX-A", "FIX-B", "FIX-C", "FIX-D"])
def test_module_data(load_phi, manifest, name):
    info = rank_of_module(load_phi(name))
    expected = manifest[name]
    assert info.rank_e == expected["rank"]
    assert info.mu == expected["mu"]
    assert info.is_pd1 == expected["pd1"]
    assert info.almost_linear_m == expected["m"]


@pytest.mark.parametrize("name", ["FIX-B", "FIX-C"])
def test_fitting_ideal(load_phi, manifest, name):
    phi = load_phi(name)
    assert ideal_equal(fitting_ideal(phi, 1), Ideal.parse(XY, manifest[name]["fitting_1"]))
    assert fitting_ideal(phi, 0).is_zero()
    with pytest.raises(ParameterRangeError):
        fitting_ideal(phi, -1)


def test_Gs(load_phi):
    assert check_Gs(load_phi("FIX-B"), 2).holds
    assert check_Gs(load_phi("FIX-C"), 2).holds
    report = check_Gs(load_phi("FIX-D"), 2)
    assert report.holds
    assert report.entries[0].fitting_index == 2


@pytest.mark.parametrize("name", ["FIX-A", "FIX-B", "FIX-C", "FIX-D"])
def test_fitting_ideals_ascend(load_phi, name):
    phi = load_phi(name)
    for j in range(phi.n):
        assert fitting_ideal(phi, j + 1).contains_ideal(fitting_ideal(phi, j)), j
    assert fitting_ideal(phi, phi.n).is_unit()


@pytest.mark.parametrize("name", ["FIX-B", "FIX-C", "FIX-D"])
def test_Gs_is_inherited_by_smaller_s(load_phi, name):
    phi = load_phi(name)
    holds = [check_Gs(phi, s).holds for s in range(1, 5)]
    for s in range(1, len(holds)):
        assert holds[s - 1] or not holds[s], holds


def test_Gs_fails_in_three_variables():
    xyz = PolyRing.polynomial_ring(["x", "y", "z"])
    phi = PresentationMatrix.parse(xyz, [["y", "0"], ["-x", "y"], ["0", "-x"]])
    report = check_Gs(phi, 3)
    assert not report.holds
    assert [e.ok for e in report.entries] == [True, False]


def test_last_rows_criterion_needs_row_operations(load_phi):
    phi = load_phi("FIX-B")
    assert not check_last_rows_minors_criterion(phi, 2, row_transform=identity_matrix(3))
    assert check_last_rows_minors_criterion(phi, 2)


def test_last_rows_criterion_cases(load_phi):
    diagonal = PresentationMatrix.parse(XY, [["0", "0"], ["x", "0"], ["0", "x"]])
    assert check_last_rows_minors_criterion(diagonal, 1, row_transform=identity_matrix(3))
    assert check_last_rows_minors_criterion(load_phi("FIX-D"), 3)
    assert check_last_rows_minors_criterion(load_phi("FIX-A"), 2)
    with pytest.raises(ParameterRangeError):
        check_last_rows_minors_criterion(load_phi("FIX-A"), 3)


def test_transform_and_select_rows(load_phi):
    phi = load_phi("FIX-B")
    swapped = phi.transform([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert swapped.dump()[0] == ["-x", "y"]
    assert phi.select_rows([2]).dump() == [["0", "-x"]]


def test_minors_are_listed_row_major(load_phi):
    listing = minors(load_phi("FIX-C"), 2)
    assert [(rows, cols) for rows, cols, _ in listing] == [((0, 1), (0, 1)), ((0, 2), (0, 1)), ((1, 2), (0, 1))]
    assert [str(m) for _, _, m in listing] == ["y^3", "-x^2*y", "x^3"]
