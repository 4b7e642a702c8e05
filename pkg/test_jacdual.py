"""Tests for Jacobian duals, their iterated towers and colon candidates"""

import pytest

from errors import JacobianDualError, ParameterRangeError
from models import VariableBlockEnum
from modpres import PresentationMatrix
from jacdual import (
    build_tower, colon_candidate, default_max_levels, jacobian_dual, kpu_exponent, split, stabilize,
    stabilized_ideal, y_times,
)
from polycore import Ideal, PolyRing, ideal_equal, ideal_of_minors
from reescore import rees_ring

FIXTURES = ["FIX-A", "FIX-B", "FIX-C", "FIX-D"]


def test_split_sends_terms_to_smallest_variable():
    ring = rees_ring(PolyRing.polynomial_ring(["x", "y"]), 2)
    y_idx = ring.indices(VariableBlockEnum.Y)
    parts = split(ring.parse("x*y*T_1 + y^2*T_2"), y_idx)
    assert [str(p) for p in parts] == ["y*T_1", "y*T_2"]
    with pytest.raises(JacobianDualError):
        split(ring.parse("T_1"), y_idx)


@pytest.mark.parametrize("name", FIXTURES)
def test_jacobian_dual_matrix(load_phi, manifest, name):
    tower = jacobian_dual(load_phi(name))
    assert tower.dump_matrix(1) == manifest[name]["B"]
    YB = y_times(tower.ring, tower.B, tower.y_indices)
    assert ideal_equal(Ideal(tower.ring, YB), tower.YB)


def test_jacobian_dual_rejects_unit_entries():
    xy = PolyRing.polynomial_ring(["x", "y"])
    phi = PresentationMatrix.parse(xy, [["1", "x"], ["0", "y"]])
    with pytest.raises(JacobianDualError):
        jacobian_dual(phi)


@pytest.mark.parametrize("name", FIXTURES)
def test_cramer_containment(load_phi, rees_data, name):
    tower = jacobian_dual(load_phi(name))
    rd = rees_data(name)
    assert rd.J.contains_ideal(tower.ideal_chain[0])


@pytest.mark.parametrize("name", ["FIX-B", "FIX-C", "FIX-D"])
def test_stabilization_level(load_phi, manifest, name):
    tower = stabilize(load_phi(name))
    assert tower.stabilized_at == manifest[name]["stabilized_at"]
    assert tower.stabilized_at <= default_max_levels(load_phi(name))


def test_fix_c_first_iteration_adds_a_column(load_phi):
    tower = build_tower(load_phi("FIX-C"), 2)
    assert len(tower.levels) == 2
    assert len(tower.levels[1][0]) > len(tower.levels[0][0])
    ring = tower.ring
    assert tower.minors_ideal(1).contains(ring.parse("x*T_1*T_3 - y*T_2^2"))


def test_tower_chain_ascends(load_phi):
    tower = build_tower(load_phi("FIX-C"), 3)
    for lower, upper in zip(tower.ideal_chain, tower.ideal_chain[1:]):
        assert upper.contains_ideal(lower)


@pytest.mark.parametrize("name", FIXTURES)
def test_stabilized_ideal_is_rees_ideal(load_phi, rees_data, name):
    assert ideal_equal(stabilized_ideal(load_phi(name)), rees_data(name).J)


@pytest.mark.parametrize("name", ["FIX-B", "FIX-C", "FIX-D"])
def test_colon_candidate(load_phi, rees_data, manifest, name):
    phi = load_phi(name)
    m = manifest[name]["m"]
    J = rees_data(name).J
    assert ideal_equal(colon_candidate(phi, m), J)
    assert ideal_equal(colon_candidate(phi, kpu_exponent(phi)), J)


def test_colon_chain_is_contained_in_rees_ideal(load_phi, rees_data):
    phi = load_phi("FIX-C")
    J = rees_data("FIX-C").J
    first = colon_candidate(phi, 1)
    assert J.contains_ideal(first)
    assert colon_candidate(phi, 2).contains_ideal(first)


@pytest.mark.parametrize("name", FIXTURES)
def test_kpu_exponent(load_phi, manifest, name):
    assert kpu_exponent(load_phi(name)) == manifest[name]["kpu_exponent"]


def test_parameter_checks(load_phi):
    with pytest.raises(ParameterRangeError):
        colon_candidate(load_phi("FIX-B"), 0)
    with pytest.raises(ParameterRangeError):
        build_tower(load_phi("FIX-B"), 0)


def test_minors_of_dual_for_fix_b(load_phi):
    tower = jacobian_dual(load_phi("FIX-B"))
    ring = tower.ring
    assert ideal_equal(ideal_of_minors(ring, tower.B, 2), Ideal.parse(ring, ["T_1*T_3 - T_2^2"]))


def test_each_level_lies_in_its_colon_candidate(load_phi):
    phi = load_phi("FIX-C")
    tower = build_tower(phi, 3)
    for level, chain_ideal in enumerate(tower.ideal_chain, start=1):
        assert colon_candidate(phi, level, tower.ring).contains_ideal(chain_ideal), level
