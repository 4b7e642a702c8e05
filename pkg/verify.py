"""
Depth probes, Cohen-Macaulay classification and end-to-end theorem reports

Depth is bounded from below by a regular sequence of random linear forms:
a form l is regular on ring/I exactly when I : l = I. After each step the
largest-index variable of l is eliminated by substitution, so the next form
lives in a smaller ring. The sequence is re-checked in the original ring
before it is reported.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from config import DEFAULT_SEED, DEPTH_TRIALS, SYMBOLIC_VARIABLE_BUDGET
from errors import InternalConsistencyError
from models import BourbakiModeEnum, CMClassEnum, DepthReport, MonomialOrderEnum, TheoremReport
from bourbaki import (
    DEFORMATION, BourbakiContext, bourbaki_pipeline, generic_bourbaki, record_check, symbolic_invariants, transport,
)
from jacdual import build_tower, colon_candidate, kpu_exponent, stabilize
from modpres import PresentationMatrix, check_Gs, check_last_rows_minors_criterion, rank_of_module
from polycore import Ideal, Poly, PolyRing, height, ideal_equal, ideal_quotient, krull_dimension, minimal_generators_by_degree
from reescore import (
    ReductionSpec, ReesData, is_fiber_type, random_reduction, rees_ideal, reduction_number,
)
from utils import fingerprint, rng_stream

logger = logging.getLogger(__name__)

# ============ DEPTH ============

def _random_linear_form(ring: PolyRing, rng) -> Poly:
    p = ring.p
    acc = ring.zero()
    for name in ring.names:
        acc = acc + ring.gen(name).scale(rng.randrange(1, p))
    return acc


def _cut(I: Ideal, form: Poly) -> Ideal:
    """Image of I in ring/(form), eliminating the last variable the form involves"""
    ring = I.ring
    pivot = max(i for i in range(ring.nvars) if any(exp[i] for exp, _ in form.terms))
    name = ring.names[pivot]
    a = form.coefficient(ring.gen(name).lm())
    smaller = ring.without([name])
    rest = form - ring.gen(name).scale(a)
    image = rest.scale(-pow(a, ring.p - 2, ring.p)).lift(smaller)
    return I.substitute(smaller, {name: image})


def _is_regular(I: Ideal, form: Poly) -> bool:
    return ideal_equal(ideal_quotient(I, Ideal(I.ring, [form])), I)


def depth_probe(I: Ideal, trials: int = DEPTH_TRIALS, seed: int = DEFAULT_SEED) -> DepthReport:
    flat_ring = I.ring.with_order(MonomialOrderEnum.GREVLEX)
    flat = I.lift(flat_ring)
    dim = krull_dimension(flat)
    rng = rng_stream(seed, "depth-probe")
    sequence: List[Poly] = []
    current = flat
    while len(sequence) < dim:
        found = None
        for _ in range(trials):
            form = _random_linear_form(current.ring, rng)
            if _is_regular(current, form):
                found = form
                break
        if found is None:
            logger.debug(f"No regular form found after {trials} trials at step {len(sequence) + 1}")
            break
        sequence.append(found)
        current = _cut(current, found)

    # re-check the sequence against the original ideal
    acc = flat
    for form in sequence:
        lifted = form.lift(flat_ring)
        if not _is_regular(acc, lifted):
            raise InternalConsistencyError("certified linear form is not regular in the original ring",
                                           {"form": str(lifted)})
        acc = acc.plus([lifted])

    depth = len(sequence)
    gap = dim - depth
    classification = CMClassEnum.CM if gap == 0 else CMClassEnum.ALMOST_CM if gap == 1 else CMClassEnum.OTHER
    logger.info(f"Depth probe: dim={dim}, depth>={depth}, {classification.value}")
    return DepthReport(
        dim=dim, depth_lower_bound=depth, trials=trials, classification=classification,
        gap=gap, sequence=[str(f.lift(flat_ring)) for f in sequence],
    )


def classify_cm(I: Ideal, trials: int = DEPTH_TRIALS, seed: int = DEFAULT_SEED) -> CMClassEnum:
    return depth_probe(I, trials, seed).classification


def is_cm(I: Ideal, seed: int = DEFAULT_SEED) -> bool:
    return classify_cm(I, seed=seed) == CMClassEnum.CM

# ============ HELPERS ============

def fingerprints(**ideals: Ideal) -> Dict[str, str]:
    """Hash of each reduced Groebner basis, for independent recomputation"""
    return {name: fingerprint(I.dump()) for name, I in ideals.items()}


def check_relation_bound(I_fib: Ideal, count_bound: int, degree_bound: int) -> bool:
    """At most count_bound minimal generators, all of degree <= degree_bound"""
    if I_fib.is_zero():
        return True
    counts = minimal_generators_by_degree(I_fib)
    return sum(counts.values()) <= count_bound and all(deg <= degree_bound for deg in counts)


def _assertion_ok(report: TheoremReport, name: str) -> Optional[bool]:
    for a in report.assertions:
        if a.name == name:
            return a.passed
    return None

# ============ ALMOST LINEAR PRESENTATIONS ============

ALMOST_LINEAR_ASSERTIONS = (
    "Rees ideal = colon ideal = stabilized Jacobian dual ideal",
    "R(E) is CM iff m = 1, else almost CM",
    "F(E) is CM",
)


def verify_almost_linear_rees(phi: PresentationMatrix, seed: int = DEFAULT_SEED) -> TheoremReport:
    """Rees ideal of an almost linear pd-1 presentation with n = d + e satisfying G_d"""
    report = TheoremReport(theorem="almost-linear-rees", seed=seed)
    info = rank_of_module(phi)
    d, e, n, m = phi.d, info.rank_e, phi.n, info.almost_linear_m
    gs = check_Gs(phi, d, e)
    hypotheses = {"pd1": info.is_pd1, "n = d + e": n == d + e, "almost linear": m is not None, "G_d": gs.holds}
    report.details["hypotheses"] = hypotheses
    if not all(hypotheses.values()):
        logger.warning(f"⚠️ Hypotheses not met: {hypotheses}")
        for name in ALMOST_LINEAR_ASSERTIONS:
            report.add(name, None, hypotheses=hypotheses)
        return report

    rd = rees_ideal(phi)
    rees_depth = depth_probe(rd.J, seed=seed)
    fiber_depth = depth_probe(rd.I_fib, seed=seed)

    def equality_check():
        colon = colon_candidate(phi, m, rd.ring)
        tower = stabilize(phi)
        stable = tower.ideal_chain[tower.stabilized_at - 1]
        report.details["stabilized_at"] = tower.stabilized_at
        ok = ideal_equal(rd.J, colon) and ideal_equal(rd.J, stable)
        return ok, {"m": m, "stabilized_at": tower.stabilized_at,
                    "fingerprints": fingerprints(J=rd.J, colon=colon, stabilized=stable)}

    def rees_cm_check():
        expected = CMClassEnum.CM if m == 1 else CMClassEnum.ALMOST_CM
        return rees_depth.classification == expected, {
            "classification": rees_depth.classification.value, "dim": rees_depth.dim,
            "depth_lower_bound": rees_depth.depth_lower_bound, "sequence": rees_depth.sequence}

    def fiber_cm_check():
        return fiber_depth.classification == CMClassEnum.CM, {
            "classification": fiber_depth.classification.value, "dim": fiber_depth.dim,
            "depth_lower_bound": fiber_depth.depth_lower_bound}

    for name, check in zip(ALMOST_LINEAR_ASSERTIONS, (equality_check, rees_cm_check, fiber_cm_check)):
        record_check(report, name, check)
    report.ideals = {"L": rd.L.dump(), "J": rd.J.dump(), "I_fib": rd.I_fib.dump()}
    report.fingerprints = fingerprints(L=rd.L, J=rd.J, I_fib=rd.I_fib)
    report.numerics = {"dim": rees_depth.dim, "depth_lb": rees_depth.depth_lower_bound, "ell": rd.ell}
    report.details.update({"m": m, "kpu_exponent": kpu_exponent(phi)})
    logger.info(f"{'✅' if report.verdict else '❌'} Almost linear Rees ideal: {report.statuses()}")
    return report

# ============ BOURBAKI TRANSFER ============

def bourbaki_setup(
    phi: PresentationMatrix, seed: int, reduction: Optional[ReductionSpec]
) -> Tuple[BourbakiContext, ReesData, ReesData, TheoremReport, ReductionSpec]:
    rd_E = rees_ideal(phi)
    U = reduction or random_reduction(rd_E, rd_E.ell, rng_stream(seed, "reduction"))
    ctx, rd_E, rd_I, invariants = bourbaki_pipeline(phi, seed, U, rd_E)
    return ctx, rd_E, rd_I, invariants, U


def verify_bourbaki_transfer(
    phi: PresentationMatrix, seed: int = DEFAULT_SEED, reduction: Optional[ReductionSpec] = None
) -> TheoremReport:
    """Properties shared by E and its generic Bourbaki ideal"""
    ctx, rd_E, rd_I, invariants, U = bourbaki_setup(phi, seed, reduction)
    report = TheoremReport(theorem="bourbaki-transfer", seed=seed)

    def same(prop_E: bool, prop_I: bool) -> Tuple[bool, Dict[str, object]]:
        return prop_E == prop_I, {"E": prop_E, "I": prop_I}

    record_check(report, "R(E) is CM iff R(I) is CM", lambda: same(is_cm(rd_E.J, seed), is_cm(rd_I.J, seed)))
    record_check(report, "F(E) is CM iff F(I) is CM", lambda: same(is_cm(rd_E.I_fib, seed), is_cm(rd_I.I_fib, seed)))
    record_check(report, "E fiber type iff I fiber type", lambda: same(is_fiber_type(rd_E), is_fiber_type(rd_I)))
    report.assertions.extend(invariants.assertions)
    report.ideals = {"I": ctx.I.dump(), "J_E": rd_E.J.dump(), "J_I": rd_I.J.dump()}
    report.fingerprints = fingerprints(I=ctx.I, J_E=rd_E.J, J_I=rd_I.J, I_fib_E=rd_E.I_fib, I_fib_I=rd_I.I_fib)
    report.numerics = {"ell": rd_E.ell, "ell_I": rd_I.ell}
    report.numerics.update({k: invariants.numerics.get(k) for k in ("r", "r_I")})
    report.details = {"context": ctx.summary(), "U": U.dump(), "K": ctx.K_forms.dump() if ctx.K_forms else []}
    logger.info(f"{'✅' if report.verdict else '❌'} Bourbaki transfer: {report.statuses()}")
    return report


def verify_fibercone_cm_transfer(
    phi: PresentationMatrix, seed: int = DEFAULT_SEED, reduction: Optional[ReductionSpec] = None
) -> TheoremReport:
    """Fiber cone CM statements: Bourbaki transfer, pd-1 with G_(l-e+1), minors criterion, relation bound

    Implications whose hypotheses fail pass vacuously; the witness records it.
    """
    ctx, rd_E, rd_I, invariants, U = bourbaki_setup(phi, seed, reduction)
    report = TheoremReport(theorem="fiber-cone-cm", seed=seed)
    info = rank_of_module(phi)
    e, n, ell = rd_E.rank_e, phi.n, rd_E.ell
    rees_E = is_cm(rd_E.J, seed)
    fiber_E = is_cm(rd_E.I_fib, seed)
    gs = check_Gs(phi, ell - e + 1, e)
    deformation = _assertion_ok(invariants, DEFORMATION)
    report.details["G_(l-e+1)"] = gs.holds

    def deformation_check():
        return deformation, {}

    def transfer_check():
        if not deformation:
            return None, {"reason": "deformation does not hold"}
        fiber_I = is_cm(rd_I.I_fib, seed)
        return fiber_E == fiber_I, {"F(E)": fiber_E, "F(I)": fiber_I}

    def pd1_check():
        hyp = info.is_pd1 and gs.holds and rees_E
        return (fiber_E if hyp else True), {"hypotheses_met": hyp, "R(E)": rees_E, "F(E)": fiber_E}

    def criterion_check():
        if not (info.is_pd1 and gs.holds):
            return True, {"hypotheses_met": False}
        criterion = check_last_rows_minors_criterion(phi, ell, seed=seed)
        return criterion == rees_E, {"hypotheses_met": True, "criterion": criterion, "R(E)": rees_E}

    def relation_check():
        g = height(ctx.I)
        r = reduction_number(rd_E, U)
        if n >= ell + 2:
            degree_bound = max(r, ell - e - g + 1)
        elif n == ell + 1:
            degree_bound = ell - e - g + 1
        else:
            degree_bound = None
        bound_ok = degree_bound is not None and check_relation_bound(rd_E.I_fib, 2, degree_bound)
        hyp = gs.holds and ell - e + 1 >= 2 and bound_ok and rees_E
        report.details["relation_bound"] = {"g": g, "r": r, "degree_bound": degree_bound, "holds": bound_ok}
        return (fiber_E if hyp else True), {"hypotheses_met": hyp, "degree_bound": degree_bound, "F(E)": fiber_E}

    record_check(report, DEFORMATION, deformation_check)
    record_check(report, "F(E) is CM iff F(I) is CM", transfer_check)
    record_check(report, "pd 1, G_(l-e+1) and R(E) CM imply F(E) CM", pd1_check)
    record_check(report, "last rows minors criterion iff R(E) CM", criterion_check)
    record_check(report, "relation bound and R(E) CM imply F(E) CM", relation_check)
    report.ideals = {"I_fib_E": rd_E.I_fib.dump(), "I_fib_I": rd_I.I_fib.dump()}
    report.fingerprints = fingerprints(I_fib_E=rd_E.I_fib, I_fib_I=rd_I.I_fib)
    report.numerics = {"ell": ell, "r": report.details.get("relation_bound", {}).get("r")}
    logger.info(f"{'✅' if report.verdict else '❌'} Fiber cone CM transfer: {report.statuses()}")
    return report

# ============ JACOBIAN DUAL TRANSFER ============

def verify_dual_transfer(
    phi: PresentationMatrix, seed: int = DEFAULT_SEED, levels: Sequence[int] = (1, 2)
) -> TheoremReport:
    """(Y.B(phi)) + I_d(B_i(phi)) + (X) against (Y.B(psi)) + I_d(B_i(psi)) in the module's coordinates"""
    report = TheoremReport(theorem="dual-transfer", seed=seed)
    ctx = generic_bourbaki(phi, seed=seed)
    top = max(levels)
    tower_E = build_tower(phi, top)
    tower_I = build_tower(ctx.psi, top)
    X = list(ctx.x_forms)
    for i in levels:
        def check(i=i):
            lhs = (tower_E.YB + tower_E.minors_ideal(i)).plus(X)
            rhs = transport(ctx, tower_I.YB + tower_I.minors_ideal(i)).plus(X)
            return ideal_equal(lhs, rhs), {"level": i, "fingerprints": fingerprints(module=lhs, ideal=rhs)}
        record_check(report, f"level {i} ideals agree modulo X", check)
    report.details = {"context": ctx.summary(), "levels": list(levels)}
    return report

# ============ MODE AGREEMENT ============

def compare_bourbaki_modes(
    phi: PresentationMatrix, seed: int = DEFAULT_SEED, budget: int = SYMBOLIC_VARIABLE_BUDGET
) -> TheoremReport:
    """mu, height and column degrees agree between symbolic and randomized contexts"""
    report = TheoremReport(theorem="bourbaki-modes", seed=seed)
    randomized = generic_bourbaki(phi, seed=seed)
    symbolic = generic_bourbaki(phi, mode=BourbakiModeEnum.SYMBOLIC, budget=budget)
    a, b = symbolic_invariants(randomized), symbolic_invariants(symbolic)
    report.add("symbolic and randomized invariants agree", a == b, randomized=a, symbolic=b)
    report.details = {"randomized": randomized.summary(), "symbolic": symbolic.summary()}
    return report
