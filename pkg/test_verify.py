"""Tests for depth probes and the theorem reports"""

import pytest

from models import AssertionStatusEnum, CMClassEnum
from polycore import Ideal, PolyRing
from reescore import ReductionSpec
from verify import (
    ALMOST_LINEAR_ASSERTIONS, check_relation_bound, classify_cm, compare_bourbaki_modes, depth_probe, fingerprints,
    is_cm, verify_almost_linear_rees, verify_bourbaki_transfer, verify_dual_transfer, verify_fibercone_cm_transfer,
)

XY = PolyRing.polynomial_ring(["x", "y"])

# ============ DEPTH ============

def test_polynomial_ring_is_cm():
    report = depth_probe(Ideal(XY))
    assert report.dim == 2
    assert report.depth_lower_bound == 2
    assert report.classification == CMClassEnum.CM
    assert len(report.sequence) == 2


def test_maximal_ideal_quotient_has_depth_zero():
    report = depth_probe(Ideal.parse(XY, ["x", "y"]))
    assert report.dim == 0
    assert report.gap == 0
    assert report.sequence == []


def test_non_cm_quotient():
    # k[x,y]/(x^2, xy) has dimension 1 and depth 0
    report = depth_probe(Ideal.parse(XY, ["x^2", "x*y"]))
    assert report.dim == 1
    assert report.depth_lower_bound == 0
    assert report.classification == CMClassEnum.ALMOST_CM


@pytest.mark.parametrize("name", ["FIX-A", "FIX-B", "FIX-C", "FIX-D"])
def test_rees_algebra_classification(rees_data, manifest, name):
    rd = rees_data(name)
    assert classify_cm(rd.J).value == manifest[name]["rees_cm"]
    assert classify_cm(rd.I_fib).value == manifest[name]["fiber_cm"]


def test_fix_c_rees_algebra_is_almost_cm(rees_data):
    report = depth_probe(rees_data("FIX-C").J, seed=3)
    assert report.dim == 3
    assert report.depth_lower_bound == 2
    assert not is_cm(rees_data("FIX-C").J)


def test_depth_probe_is_seed_deterministic(rees_data):
    J = rees_data("FIX-B").J
    assert depth_probe(J, seed=5).sequence == depth_probe(J, seed=5).sequence

# ============ RELATION BOUND ============

def test_relation_bound(rees_data, manifest):
    I_fib = rees_data("FIX-C").I_fib
    bound = manifest["FIX-C"]["relation_bound"]
    assert check_relation_bound(I_fib, bound["count"], bound["degree"]) == bound["holds"]
    assert not check_relation_bound(I_fib, 2, 2)
    assert not check_relation_bound(I_fib, 0, 3)
    assert check_relation_bound(rees_data("FIX-A").I_fib, 0, 0)


def test_fingerprints_identify_ideals(rees_data):
    rd = rees_data("FIX-B")
    prints = fingerprints(L=rd.L, J=rd.J)
    assert prints == fingerprints(L=rd.L, J=rd.J)
    assert prints["L"] != prints["J"]
    assert len(prints["J"]) == 16

# ============ ALMOST LINEAR PRESENTATIONS ============

@pytest.mark.parametrize("name", ["FIX-B", "FIX-C", "FIX-D"])
def test_almost_linear_rees_passes(load_phi, manifest, name):
    report = verify_almost_linear_rees(load_phi(name), seed=1)
    assert report.verdict, report.statuses()
    assert [a.name for a in report.assertions] == list(ALMOST_LINEAR_ASSERTIONS)
    assert report.details["m"] == manifest[name]["m"]
    assert report.details["kpu_exponent"] == manifest[name]["kpu_exponent"]
    assert report.numerics["ell"] == manifest[name]["ell"]


def test_almost_linear_rees_fix_c_details(load_phi):
    report = verify_almost_linear_rees(load_phi("FIX-C"))
    assert report.details["stabilized_at"] == 2
    assert report.numerics["dim"] == 3
    assert report.numerics["depth_lb"] == 2
    assert set(report.fingerprints) == {"L", "J", "I_fib"}


def test_almost_linear_rees_skips_when_hypotheses_fail(load_phi):
    report = verify_almost_linear_rees(load_phi("FIX-A"))
    assert report.skipped
    assert not report.verdict
    assert set(report.statuses().values()) == {AssertionStatusEnum.SKIPPED.value}
    assert report.details["hypotheses"]["n = d + e"] is False

# ============ BOURBAKI TRANSFER ============

def test_bourbaki_transfer_rank_one(load_phi):
    report = verify_bourbaki_transfer(load_phi("FIX-B"), seed=1)
    statuses = report.statuses()
    assert statuses["R(E) is CM iff R(I) is CM"] == AssertionStatusEnum.PASS.value
    assert statuses["E fiber type iff I fiber type"] == AssertionStatusEnum.PASS.value
    assert report.details["U"]


def test_bourbaki_transfer_reports_reduction_numbers(load_phi, rees_data):
    U = ReductionSpec.parse(rees_data("FIX-B").fiber_ring, ["T_1", "T_3"])
    report = verify_bourbaki_transfer(load_phi("FIX-B"), seed=1, reduction=U)
    assert report.numerics["r"] == 1
    assert report.numerics["r_I"] == 1
    assert report.numerics["ell"] == 2


def test_fiber_cone_transfer_rank_one(load_phi, rees_data):
    phi = load_phi("FIX-B")
    U = ReductionSpec.parse(rees_data("FIX-B").fiber_ring, ["T_1", "T_3"])
    report = verify_fibercone_cm_transfer(phi, seed=1, reduction=U)
    assert report.verdict, report.statuses()
    assert report.details["G_(l-e+1)"] is True
    assert report.details["relation_bound"]["r"] == 1
    assert report.numerics["r"] == 1


@pytest.mark.slow
def test_bourbaki_transfer_rank_two(load_phi):
    report = verify_bourbaki_transfer(load_phi("FIX-D"), seed=1)
    assert report.verdict, report.statuses()
    assert report.numerics["r"] == report.numerics["r_I"]
    assert report.details["context"]


@pytest.mark.slow
def test_fiber_cone_transfer_rank_two(load_phi):
    report = verify_fibercone_cm_transfer(load_phi("FIX-D"), seed=1)
    assert report.verdict, report.statuses()


@pytest.mark.slow
def test_dual_transfer(load_phi):
    report = verify_dual_transfer(load_phi("FIX-D"), seed=1)
    assert report.verdict, report.statuses()
    assert [a.name for a in report.assertions] == [
        "level 1 ideals agree modulo X", "level 2 ideals agree modulo X",
    ]


@pytest.mark.slow
def test_compare_bourbaki_modes(load_phi):
    report = compare_bourbaki_modes(load_phi("FIX-D"), seed=1, budget=4)
    assert report.verdict, report.statuses()
