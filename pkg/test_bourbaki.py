"""Tests for generic Bourbaki ideals"""

import pytest

from errors import BourbakiError, HilbertBurchError
from models import AssertionStatusEnum, BourbakiModeEnum
from modpres import PresentationMatrix
from bourbaki import (
    bourbaki_pipeline, generic_bourbaki, minimal_generator_count, realize_ideal_hilbert_burch,
    symbolic_invariants, transport,
)
from polycore import Ideal, PolyRing, height, ideal_equal
from reescore import ReductionSpec, random_reduction, rees_ideal
from utils import rng_stream

XY = PolyRing.polynomial_ring(["x", "y"])


def test_hilbert_burch_ideal_of_fix_b(load_phi):
    I = realize_ideal_hilbert_burch(load_phi("FIX-B"))
    assert [str(g) for g in I.generators] == ["x^2", "x*y", "y^2"]


def test_hilbert_burch_rejects_wrong_shape_and_height():
    with pytest.raises(HilbertBurchError):
        realize_ideal_hilbert_burch(PresentationMatrix.parse(XY, [["x", "y"], ["y", "x"]]))
    with pytest.raises(HilbertBurchError):
        realize_ideal_hilbert_burch(PresentationMatrix.parse(XY, [["x*y"], ["x^2"]]))


def test_single_row_gives_unit_ideal():
    psi = PresentationMatrix.build(XY, [[]])
    assert realize_ideal_hilbert_burch(psi).is_unit()


def test_rank_one_context_is_the_identity(load_phi):
    phi = load_phi("FIX-C")
    ctx = generic_bourbaki(phi)
    assert ctx.rank_e == 1
    assert ctx.psi.dump() == phi.dump()
    assert ctx.x_forms == ()
    assert ideal_equal(ctx.I, Ideal.parse(XY, ["x^3", "x^2*y", "y^3"]))


def test_rank_zero_and_non_pd1_rejected():
    with pytest.raises(BourbakiError):
        generic_bourbaki(PresentationMatrix.parse(XY, [["x"], ["y"]]), e=0)
    phi = PresentationMatrix.parse(XY, [["x", "y", "x"], ["y", "x", "y"], ["x", "x", "y"]])
    with pytest.raises(BourbakiError):
        generic_bourbaki(phi, e=1)


def test_fix_d_randomized_context(load_phi, manifest):
    phi = load_phi("FIX-D")
    ctx = generic_bourbaki(phi, seed=1)
    expected = manifest["FIX-D"]["bourbaki"]
    assert ctx.psi.n == 3 and ctx.psi.s == 2
    assert ctx.psi.is_linear()
    assert len(ctx.x_forms) == 1
    assert minimal_generator_count(ctx.I) == expected["mu"]
    assert height(ctx.I) == expected["height"]
    assert list(ctx.psi.column_degrees) == expected["column_degrees"]


def test_fix_d_context_is_seed_deterministic(load_phi):
    phi = load_phi("FIX-D")
    a = generic_bourbaki(phi, seed=7)
    b = generic_bourbaki(phi, seed=7)
    assert a.Z_values == b.Z_values
    assert a.psi.dump() == b.psi.dump()


def test_symbolic_budget(load_phi):
    with pytest.raises(BourbakiError):
        generic_bourbaki(load_phi("FIX-D"), mode=BourbakiModeEnum.SYMBOLIC, budget=3)


@pytest.mark.slow
def test_symbolic_and_randomized_invariants_agree(load_phi):
    phi = load_phi("FIX-D")
    symbolic = generic_bourbaki(phi, mode=BourbakiModeEnum.SYMBOLIC, budget=4)
    randomized = generic_bourbaki(phi, seed=1)
    assert symbolic.Z_names == (("Z_1_1", "Z_1_2", "Z_1_3", "Z_1_4"),)
    assert symbolic_invariants(symbolic) == symbolic_invariants(randomized)


def test_transport_maps_into_module_coordinates(load_phi):
    phi = load_phi("FIX-D")
    ctx = generic_bourbaki(phi, seed=1)
    rd_I = rees_ideal(ctx.psi)
    moved = transport(ctx, rd_I.L)
    assert moved.ring == ctx.rees_ring_E
    rd_E = rees_ideal(phi)
    assert ideal_equal(rd_E.L.plus(ctx.x_forms), moved.plus(ctx.x_forms))


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2])
def test_fix_d_invariant_report(load_phi, manifest, seed):
    phi = load_phi("FIX-D")
    rd_E = rees_ideal(phi)
    U = random_reduction(rd_E, rd_E.ell, rng_stream(seed, "test-reduction"))
    ctx, rd_E, rd_I, report = bourbaki_pipeline(phi, seed, U, rd_E)
    assert report.verdict, report.statuses()
    assert rd_I.ell == manifest["FIX-D"]["bourbaki"]["ell"]
    assert len(ctx.K_forms.generators) == rd_E.ell


def test_rank_one_report_without_reduction_skips_reduction_law(load_phi):
    ctx, rd_E, rd_I, report = bourbaki_pipeline(load_phi("FIX-B"), 1)
    statuses = report.statuses()
    assert statuses["r_K(I) = r_U(E)"] == AssertionStatusEnum.SKIPPED.value
    assert statuses["mu(I) = n - e + 1"] == AssertionStatusEnum.PASS.value
    assert statuses["R(E)/(X) is torsion free"] == AssertionStatusEnum.PASS.value


def test_rank_one_reduction_is_carried_over(load_phi):
    phi = load_phi("FIX-B")
    rd_E = rees_ideal(phi)
    U = ReductionSpec.parse(rd_E.fiber_ring, ["T_1", "T_3"])
    ctx, _, rd_I, report = bourbaki_pipeline(phi, 1, U, rd_E)
    assert ctx.K_forms.dump() == ["T_1", "T_3"]
    assert report.statuses()["r_K(I) = r_U(E)"] == AssertionStatusEnum.PASS.value


@pytest.mark.slow
def test_fix_d_invariants_do_not_depend_on_seed(load_phi):
    phi = load_phi("FIX-D")
    rd_E = rees_ideal(phi)
    U = random_reduction(rd_E, rd_E.ell, rng_stream(1, "test-reduction"))
    outcomes = []
    for seed in (1, 2):
        ctx, _, rd_I, report = bourbaki_pipeline(phi, seed, U, rd_E)
        outcomes.append((
            report.statuses(), minimal_generator_count(ctx.I), height(ctx.I), rd_I.ell, report.numerics["r"],
        ))
    assert outcomes[0] == outcomes[1]
    assert outcomes[0][3] == 2
