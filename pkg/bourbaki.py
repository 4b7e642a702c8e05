"""
Generic Bourbaki ideals

A module E of rank e with generators a_1..a_n is rebased so that the first
e - 1 new generators are generic combinations x_j = sum_i Z_ji a_i. The new
basis is a' = a * P with P = [Z^T | unit vectors for the non-pivot indices],
so the relations become Q * phi with Q = P^-1. The bottom n - e + 1 rows
(psi) present E/F, realized as an ideal I through its signed maximal minors.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from config import BOURBAKI_RETRIES, DEFAULT_SEED, SYMBOLIC_VARIABLE_BUDGET
from errors import BourbakiError, HilbertBurchError, InternalConsistencyError, ReesLabError
from models import BourbakiModeEnum, MonomialOrderEnum, TheoremReport, VariableBlockEnum
from modpres import (
    PresentationMatrix, generic_rank, identity_matrix, inverse_mod_p, pivot_columns, rank_of_module,
)
from polycore import (
    Ideal, Poly, PolyRing, determinant, height, ideal_equal, minimal_generators_by_degree,
)
from reescore import (
    ReductionSpec, ReesData, is_linear_type, rees_ideal, rees_ring, reduction_number, t_linear_form,
    torsion_free_quotient_check,
)
from utils import rng_stream

logger = logging.getLogger(__name__)

ScalarMatrix = Tuple[Tuple[int, ...], ...]

DEFORMATION = "R(E)/(X) is torsion free"

# ============ CONTEXT ============

class BourbakiContext(BaseModel):
    """Generic elements, the rebased presentation [A over psi] and the realized ideal"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mode: BourbakiModeEnum
    phi: PresentationMatrix
    rank_e: int
    seed: Optional[int] = None
    Z_values: ScalarMatrix = ()
    Z_names: Tuple[Tuple[str, ...], ...] = ()
    pivots: Tuple[int, ...] = ()
    P: ScalarMatrix = ()
    row_transform: ScalarMatrix = ()
    rees_ring_E: PolyRing
    x_forms: Tuple[Poly, ...] = ()
    A: Tuple[Tuple[Poly, ...], ...] = ()
    psi: PresentationMatrix
    I: Ideal
    K_forms: Optional[ReductionSpec] = None

    @property
    def n(self) -> int:
        return self.phi.n

    def summary(self) -> Dict[str, object]:
        return {
            "mode": self.mode.value,
            "rank_e": self.rank_e,
            "seed": self.seed,
            "Z": [list(r) for r in self.Z_values] or [list(r) for r in self.Z_names],
            "pivots": list(self.pivots),
            "x_forms": [str(x) for x in self.x_forms],
            "psi": self.psi.dump(),
            "column_degrees": list(self.psi.column_degrees),
        }

# ============ HILBERT-BURCH ============

def realize_ideal_hilbert_burch(psi: PresentationMatrix, parameters: Sequence[VariableBlockEnum] = ()) -> Ideal:
    """Signed maximal minors of an n' x (n'-1) matrix with rank n'-1 and height 2"""
    ring = psi.ring
    n_rows = psi.n
    if psi.s != n_rows - 1:
        raise HilbertBurchError(f"need an n' x (n'-1) matrix, got {n_rows}x{psi.s}")
    if n_rows == 1:
        return Ideal.unit(ring)
    gens = []
    for i in range(n_rows):
        rows = [psi.entries[r] for r in range(n_rows) if r != i]
        delta = determinant(ring, rows)
        gens.append(delta if i % 2 == 0 else -delta)
    for j in range(psi.s):
        acc = ring.zero()
        for i in range(n_rows):
            acc = acc + gens[i] * psi.entries[i][j]
        if acc:
            raise InternalConsistencyError(f"column {j + 1} is not a syzygy of the minors")
    if generic_rank(psi) != n_rows - 1:
        raise HilbertBurchError("matrix does not have rank n' - 1")
    I = Ideal(ring, gens)
    h = height(I, parameters)
    if h is not None and h < 2:
        raise HilbertBurchError(f"ideal of maximal minors has height {h} < 2")
    logger.info(f"✅ Hilbert-Burch ideal with {len(gens)} generators")
    return I

# ============ CONSTRUCTION ============

def _rebase(phi: PresentationMatrix, Z: Sequence[Sequence[int]], e: int, pivots: Sequence[int]):
    n, p = phi.n, phi.ring.p
    others = [i for i in range(n) if i not in pivots]
    P = [[0] * n for _ in range(n)]
    for k in range(e - 1):
        for i in range(n):
            P[i][k] = Z[k][i] % p
    for r, i in enumerate(others):
        P[i][e - 1 + r] = 1
    Q = inverse_mod_p(P, p)
    moved = phi.transform(Q)
    return P, Q, moved


def _reduction_image(Q: Sequence[Sequence[int]], reduction: ReductionSpec, e: int, fiber_ring: PolyRing) -> ReductionSpec:
    """Images u -> sum_r (Q c)_{e-1+r} T_r of the reduction in the Bourbaki ideal's coordinates"""
    p = fiber_ring.p
    rows = []
    for c in reduction.coefficients():
        v = [sum(q * x for q, x in zip(qrow, c)) % p for qrow in Q]
        rows.append(v[e - 1:])
    return ReductionSpec.from_coefficients(fiber_ring, rows)


def generic_bourbaki(
    phi: PresentationMatrix,
    e: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    mode: BourbakiModeEnum = BourbakiModeEnum.RANDOMIZED,
    reduction: Optional[ReductionSpec] = None,
    budget: int = SYMBOLIC_VARIABLE_BUDGET,
    retries: int = BOURBAKI_RETRIES,
) -> BourbakiContext:
    e = rank_of_module(phi).rank_e if e is None else e
    if e < 1:
        raise BourbakiError(f"Bourbaki ideals need positive rank, got e={e}")
    n = phi.n
    if phi.s != n - e:
        raise BourbakiError("realization unsupported: psi would not have Hilbert-Burch shape",
                            {"n": n, "s": phi.s, "e": e})
    if mode == BourbakiModeEnum.SYMBOLIC:
        return _symbolic_bourbaki(phi, e, budget)
    ring_E = rees_ring(phi.ring, n)
    fiber_I = rees_ring(phi.ring, n - e + 1).without(phi.ring.names)
    if e == 1:
        ident = tuple(tuple(r) for r in identity_matrix(n))
        K = _reduction_image(ident, reduction, 1, fiber_I) if reduction else None
        return BourbakiContext(
            mode=mode, phi=phi, rank_e=e, seed=seed, P=ident, row_transform=ident,
            rees_ring_E=ring_E, psi=phi, I=realize_ideal_hilbert_burch(phi), K_forms=K,
        )
    p = phi.ring.p
    rng = rng_stream(seed, "bourbaki")
    last_error: Optional[Exception] = None
    for attempt in range(retries):
        if reduction is not None:
            C = reduction.coefficients()
            W = [[rng.randrange(1, p) for _ in C] for _ in range(e - 1)]
            Z = [[sum(w * row[i] for w, row in zip(Wrow, C)) % p for i in range(n)] for Wrow in W]
        else:
            Z = [[rng.randrange(1, p) for _ in range(n)] for _ in range(e - 1)]
        pivots = pivot_columns(Z, p)
        if len(pivots) < e - 1:
            logger.warning(f"⚠️ Singular generic coefficients on attempt {attempt + 1}, redrawing")
            continue
        P, Q, moved = _rebase(phi, Z, e, pivots)
        psi = PresentationMatrix.build(phi.ring, moved.entries[e - 1:])
        try:
            I = realize_ideal_hilbert_burch(psi)
        except HilbertBurchError as err:
            logger.warning(f"⚠️ Non-generic specialization on attempt {attempt + 1}: {err}")
            last_error = err
            continue
        x_forms = tuple(t_linear_form(ring_E, Z[k]) for k in range(e - 1))
        K = _reduction_image(Q, reduction, e, fiber_I) if reduction else None
        logger.info(f"✅ Generic Bourbaki ideal (seed {seed}, attempt {attempt + 1}): pivots {list(pivots)}")
        return BourbakiContext(
            mode=mode, phi=phi, rank_e=e, seed=seed,
            Z_values=tuple(tuple(r) for r in Z), pivots=tuple(pivots),
            P=tuple(tuple(r) for r in P), row_transform=tuple(tuple(r) for r in Q),
            rees_ring_E=ring_E, x_forms=x_forms, A=moved.entries[:e - 1], psi=psi, I=I, K_forms=K,
        )
    raise BourbakiError(f"no generic specialization found in {retries} attempts", {"last": str(last_error)})


def _adjugate(ring: PolyRing, P: Sequence[Sequence[Poly]]) -> List[List[Poly]]:
    n = len(P)
    adj = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[P[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = determinant(ring, sub)
            adj[i][j] = cof if (i + j) % 2 == 0 else -cof
    return adj


def _symbolic_bourbaki(phi: PresentationMatrix, e: int, budget: int) -> BourbakiContext:
    n = phi.n
    count = (e - 1) * n
    if count > budget:
        raise BourbakiError(f"symbolic mode needs {count} coefficient variables, budget is {budget}")
    names = tuple(tuple(f"Z_{j + 1}_{i + 1}" for i in range(n)) for j in range(e - 1))
    flat = [name for row in names for name in row]
    base = phi.ring.extended(flat, [VariableBlockEnum.Z] * count, MonomialOrderEnum.GREVLEX)
    lifted = phi.lift(base)
    # pivots are the first e - 1 columns; adj(P) replaces P^-1 over k(Z)
    P = [[base.zero()] * n for _ in range(n)]
    for k in range(e - 1):
        for i in range(n):
            P[i][k] = base.gen(names[k][i])
    for i in range(e - 1, n):
        P[i][i] = base.one()
    moved = lifted.transform_poly(_adjugate(base, P))
    psi = PresentationMatrix.build(base, moved.entries[e - 1:])
    I = realize_ideal_hilbert_burch(psi, parameters=(VariableBlockEnum.Z,))
    ring_E = rees_ring(base, n)
    x_forms = tuple(
        sum((ring_E.gen(names[k][i]) * ring_E.gen(f"T_{i + 1}") for i in range(n)), ring_E.zero())
        for k in range(e - 1)
    )
    logger.info(f"✅ Symbolic Bourbaki ideal over {count} coefficient variables")
    return BourbakiContext(
        mode=BourbakiModeEnum.SYMBOLIC, phi=phi, rank_e=e, Z_names=names, pivots=tuple(range(e - 1)),
        rees_ring_E=ring_E, x_forms=x_forms, A=moved.entries[:e - 1], psi=psi, I=I,
    )

# ============ TRANSPORT ============

def transport(ctx: BourbakiContext, ideal: Ideal) -> Ideal:
    """Move an ideal of the Bourbaki ideal's Rees ring into E's Rees ring: T'_r -> sum_i P[i][e-1+r] T_i"""
    if ctx.mode != BourbakiModeEnum.RANDOMIZED:
        raise BourbakiError("transport is defined for randomized contexts")
    target = ctx.rees_ring_E
    e = ctx.rank_e
    images = {}
    for r in range(ctx.n - e + 1):
        column = [ctx.P[i][e - 1 + r] for i in range(ctx.n)]
        images[f"T_{r + 1}"] = t_linear_form(target, column)
    return ideal.substitute(target, images)

# ============ INVARIANTS ============

def minimal_generator_count(I: Ideal) -> int:
    return sum(minimal_generators_by_degree(I).values())


def symbolic_invariants(ctx: BourbakiContext) -> Dict[str, object]:
    """mu, height and column degrees of I over the coefficient field k(Z)"""
    params = (VariableBlockEnum.Z,) if ctx.mode == BourbakiModeEnum.SYMBOLIC else ()
    ring = ctx.I.ring
    if ctx.mode == BourbakiModeEnum.SYMBOLIC:
        y_idx = ring.indices(VariableBlockEnum.Y)
        monomials = sorted({tuple(exp[i] for i in y_idx) for g in ctx.I.generators for exp, _ in g.terms})
        rows = []
        for g in ctx.I.generators:
            row = {m: {} for m in monomials}
            for exp, coeff in g.terms:
                ym = tuple(exp[i] for i in y_idx)
                zexp = tuple(0 if i in y_idx else exp[i] for i in range(ring.nvars))
                row[ym][zexp] = coeff
            rows.append([Poly.from_dict(ring, row[m]) for m in monomials])
        mu = generic_rank(PresentationMatrix.build(ring, rows))
    else:
        mu = minimal_generator_count(ctx.I)
    return {"mu": mu, "height": height(ctx.I, params), "column_degrees": list(ctx.psi.column_degrees)}


def first_nonzero_generator(I: Ideal) -> Poly:
    for g in I.generators:
        if g:
            return g
    raise BourbakiError("the Bourbaki ideal is zero")


def record_check(report: TheoremReport, name: str, check: Callable[[], Tuple[Optional[bool], Dict[str, object]]]) -> Optional[bool]:
    """Run one check; library errors become failed assertions"""
    try:
        ok, witness = check()
    except ReesLabError as err:
        logger.warning(f"❌ {name}: {err}")
        report.add(name, False, error=str(err))
        return False
    report.add(name, ok, **witness)
    if ok is False:
        logger.warning(f"❌ {name} failed: {witness}")
    return ok


def verify_bourbaki_invariants(
    ctx: BourbakiContext,
    rd_E: ReesData,
    rd_I: ReesData,
    U: Optional[ReductionSpec] = None,
) -> TheoremReport:
    report = TheoremReport(theorem="bourbaki-invariants", seed=ctx.seed)
    n, e = ctx.n, ctx.rank_e

    def mu_check():
        mu = minimal_generator_count(ctx.I)
        return mu == n - e + 1, {"mu_I": mu, "expected": n - e + 1}

    def nonzero_check():
        return not ctx.I.gb.is_zero(), {"generators": [str(g) for g in ctx.I.generators]}

    def height_check():
        h = height(ctx.I)
        return h == 2, {"height": h}

    def degree_check():
        return ctx.psi.column_degrees == ctx.phi.column_degrees, {
            "psi": list(ctx.psi.column_degrees), "phi": list(ctx.phi.column_degrees)}

    def spread_check():
        return rd_I.ell == rd_E.ell - e + 1, {"ell_I": rd_I.ell, "ell_E": rd_E.ell}

    deformation: Dict[str, Optional[bool]] = {"ok": None}

    def deformation_check():
        c = first_nonzero_generator(ctx.I)
        ok = torsion_free_quotient_check(rd_E, ctx.x_forms, c)
        deformation["ok"] = ok
        return ok, {"c": str(c), "x_forms": [str(x) for x in ctx.x_forms]}

    def transport_check():
        X = list(ctx.x_forms)
        lhs = rd_E.J.plus(X)
        rhs = transport(ctx, rd_I.J).plus(X)
        return ideal_equal(lhs, rhs), {"lhs": len(lhs.gb), "rhs": len(rhs.gb)}

    reduction_numbers: Dict[str, Optional[int]] = {"r": None, "r_I": None}

    def reduction_check():
        if U is None or ctx.K_forms is None:
            return None, {"reason": "no reduction supplied"}
        if not deformation["ok"]:
            return None, {"reason": "deformation does not hold"}
        r_E = reduction_number(rd_E, U)
        r_I = reduction_number(rd_I, ctx.K_forms)
        reduction_numbers.update(r=r_E, r_I=r_I)
        return r_E == r_I, {"r_U_E": r_E, "r_K_I": r_I, "K": ctx.K_forms.dump()}

    def linear_type_check():
        linear_I = is_linear_type(rd_I)
        if not linear_I:
            return True, {"linear_type_I": False}
        linear_E = is_linear_type(rd_E)
        return linear_E and bool(deformation["ok"]), {"linear_type_I": True, "linear_type_E": linear_E}

    record_check(report, "mu(I) = n - e + 1", mu_check)
    record_check(report, "I is nonzero", nonzero_check)
    record_check(report, "height(I) = 2", height_check)
    record_check(report, "psi column degrees equal phi column degrees", degree_check)
    record_check(report, "ell(I) = ell(E) - e + 1", spread_check)
    record_check(report, DEFORMATION, deformation_check)
    record_check(report, "J_E + (X) = transported J_I + (X)", transport_check)
    record_check(report, "r_K(I) = r_U(E)", reduction_check)
    record_check(report, "I linear type implies E linear type", linear_type_check)
    report.numerics = {"ell": rd_E.ell, "ell_I": rd_I.ell, **reduction_numbers}
    logger.info(f"{'✅' if report.verdict else '❌'} Bourbaki invariants: {report.statuses()}")
    return report


def bourbaki_pipeline(
    phi: PresentationMatrix,
    seed: int = DEFAULT_SEED,
    reduction: Optional[ReductionSpec] = None,
    rd_E: Optional[ReesData] = None,
) -> Tuple[BourbakiContext, ReesData, ReesData, TheoremReport]:
    """Context, both Rees data and the invariant report in one pass"""
    rd_E = rd_E or rees_ideal(phi)
    ctx = generic_bourbaki(phi, rd_E.rank_e, seed=seed, reduction=reduction)
    rd_I = rees_ideal(ctx.psi)
    report = verify_bourbaki_invariants(ctx, rd_E, rd_I, reduction)
    return ctx, rd_E, rd_I, report
