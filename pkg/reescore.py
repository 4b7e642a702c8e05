"""
Symmetric algebra, Rees algebra and fiber cone of a module given by a presentation

The Rees ideal J is the c-saturation of the symmetric ideal L, where c is the
first nonzero maximal minor of phi of size n - e in row-major order. Away
from c the module is free, so all torsion of the symmetric algebra is
c-power torsion.
"""

import logging
import random
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from config import REDUCTION_R_MAX
from errors import InternalConsistencyError, ParameterRangeError, RankError, ReductionNumberError
from models import MonomialOrderEnum, VariableBlockEnum
from modpres import PresentationMatrix, minors, rank_of_module
from polycore import (
    Ideal, Poly, PolyRing, eliminate, groebner, ideal_equal, krull_dimension, monomials_of_degree, saturate,
)

logger = logging.getLogger(__name__)

# ============ RINGS ============

def t_names(n: int, stem: str = "T") -> List[str]:
    return [f"{stem}_{i}" for i in range(1, n + 1)]


def rees_ring(base: PolyRing, n: int, stem: str = "T") -> PolyRing:
    """base[T_1..T_n] with the bigraded order"""
    return base.extended(t_names(n, stem), [VariableBlockEnum.T] * n, MonomialOrderEnum.BIGRADED, ())


def t_linear_form(ring: PolyRing, coefficients: Sequence[int], stem: str = "T") -> Poly:
    acc = {}
    for i, c in enumerate(coefficients):
        if c % ring.p:
            exp = [0] * ring.nvars
            exp[ring.index(f"{stem}_{i + 1}")] = 1
            acc[tuple(exp)] = c
    return Poly.from_dict(ring, acc)

# ============ DATA ============

class ReesData(BaseModel):
    """Defining ideals of Sym(E), R(E) and F(E) with derived invariants"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: PresentationMatrix
    ring: PolyRing
    L: Ideal
    J: Ideal
    I_fib: Ideal
    c: Poly
    ell: int
    dim_rees: int
    rank_e: int

    @model_validator(mode='after')
    def check_rings(self):
        if self.L.ring != self.ring or self.J.ring != self.ring or self.c.ring != self.ring:
            raise ValueError("L, J and c must live in the Rees ring")
        if self.I_fib.ring.indices(VariableBlockEnum.Y):
            raise ValueError("the fiber ideal lives in the T-subring")
        return self

    @property
    def fiber_ring(self) -> PolyRing:
        return self.I_fib.ring

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def d(self) -> int:
        return self.phi.d


class ReductionSpec(BaseModel):
    """T-linear, Y-free forms in the fiber ring: the images of a reduction U"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ring: PolyRing
    generators: Tuple[Poly, ...]

    @model_validator(mode='after')
    def check_forms(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("reduction form outside the fiber ring")
            if g and (g.degree_in(VariableBlockEnum.Y) > 0 or not g.is_homogeneous(VariableBlockEnum.T)
                      or g.degree_in(VariableBlockEnum.T) != 1 or g.degree_in(VariableBlockEnum.Z) > 0):
                raise ValueError(f"{g} is not a T-linear form")
        return self

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "ReductionSpec":
        return cls(ring=ring, generators=tuple(ring.parse(t) for t in texts))

    @classmethod
    def from_coefficients(cls, ring: PolyRing, rows: Sequence[Sequence[int]]) -> "ReductionSpec":
        return cls(ring=ring, generators=tuple(t_linear_form(ring, row) for row in rows))

    def coefficients(self) -> List[List[int]]:
        """Coefficient vectors (one per form) in T_1..T_n"""
        t_idx = self.ring.indices(VariableBlockEnum.T)
        rows = []
        for g in self.generators:
            row = [0] * len(t_idx)
            for exp, coeff in g.terms:
                for pos, i in enumerate(t_idx):
                    if exp[i]:
                        row[pos] = coeff
            rows.append(row)
        return rows

    def dump(self) -> List[str]:
        return [str(g) for g in self.generators]

# ============ DEFINING IDEALS ============

def row_vector(phi: PresentationMatrix, ring: PolyRing) -> List[Poly]:
    """Entries of [T_1..T_n] * phi, zero entries included"""
    T = [ring.gen(name) for name in t_names(phi.n)]
    gens = []
    for j in range(phi.s):
        acc = ring.zero()
        for i in range(phi.n):
            entry = phi.entries[i][j]
            if entry:
                acc = acc + T[i] * entry.lift(ring)
        gens.append(acc)
    return gens


def symmetric_ideal(phi: PresentationMatrix, ring: Optional[PolyRing] = None) -> Ideal:
    """L generated by the entries of [T_1..T_n] * phi"""
    ring = ring or rees_ring(phi.ring, phi.n)
    return Ideal(ring, row_vector(phi, ring))


def saturating_element(phi: PresentationMatrix, rank_e: int) -> Poly:
    """First nonzero (n-e)-minor in row-major order"""
    t = phi.n - rank_e
    if t <= 0:
        return phi.ring.one()
    for _, _, m in minors(phi, t):
        if m:
            return m
    raise RankError(f"I_{t}(phi) is zero; the module has no rank {rank_e} structure")


def _fiber_from(J: Ideal) -> Ideal:
    return eliminate(J, [VariableBlockEnum.Y])


def rees_ideal(phi: PresentationMatrix, saturating: Optional[Poly] = None) -> ReesData:
    info = rank_of_module(phi)
    e = info.rank_e
    if e == 0:
        raise RankError("the Rees algebra needs a module of positive rank")
    ring = rees_ring(phi.ring, phi.n)
    L = symmetric_ideal(phi, ring)
    c = saturating if saturating is not None else saturating_element(phi, e)
    c = c.lift(ring)
    if not c:
        raise RankError("saturating element must be nonzero")
    J = saturate(L, Ideal(ring, [c]))
    I_fib = _fiber_from(J)
    ell = _spread(I_fib, e, phi.d)
    dim_rees = krull_dimension(J)
    logger.info(f"✅ Rees ideal: {len(groebner(J))} basis elements, ell={ell}, dim={dim_rees}")
    return ReesData(phi=phi, ring=ring, L=L, J=J, I_fib=I_fib, c=c, ell=ell, dim_rees=dim_rees, rank_e=e)


def fiber_ideal(rd: ReesData) -> Ideal:
    return rd.I_fib


def _spread(I_fib: Ideal, e: int, d: int) -> int:
    ell = krull_dimension(I_fib)
    if not e <= ell <= d + e - 1:
        raise InternalConsistencyError("analytic spread outside [e, d + e - 1]", {"ell": ell, "e": e, "d": d})
    return ell


def analytic_spread(rd: ReesData) -> int:
    return _spread(rd.I_fib, rd.rank_e, rd.d)

# ============ TYPE TESTS ============

def is_linear_type(rd: ReesData) -> bool:
    linear = ideal_equal(rd.L, rd.J)
    if linear and not rd.I_fib.is_zero() and not rd.I_fib.gb.is_zero():
        raise InternalConsistencyError("linear type module with a nonzero fiber ideal")
    return linear


def is_fiber_type(rd: ReesData) -> bool:
    return ideal_equal(rd.J, rd.L + rd.I_fib.lift(rd.ring))

# ============ REDUCTIONS ============

def is_reduction(rd: ReesData, U: ReductionSpec) -> bool:
    """F(E) is finite over the image of U: dim k[T]/(I_fib + U) = 0"""
    forms = [g.lift(rd.fiber_ring) for g in U.generators]
    return krull_dimension(rd.I_fib.plus(forms)) == 0


def reduction_number(rd: ReesData, U: ReductionSpec, r_max: int = REDUCTION_R_MAX) -> int:
    """Least r with every T-monomial of degree r+1 in J + (U)"""
    if not is_reduction(rd, U):
        raise ParameterRangeError("U is not a reduction of E", {"U": U.dump()})
    gb = groebner(rd.J.plus(g.lift(rd.ring) for g in U.generators))
    t_idx = rd.ring.indices(VariableBlockEnum.T)

    def vanishes(degree: int) -> bool:
        return all(gb.contains(rd.ring.monomial(m)) for m in monomials_of_degree(rd.ring, degree, t_idx))

    for r in range(r_max + 1):
        if vanishes(r + 1):
            if not vanishes(r + 2):
                raise InternalConsistencyError("reduction vanishing is not monotone", {"r": r})
            logger.info(f"Reduction number r_U = {r}")
            return r
    raise ReductionNumberError(f"no reduction number up to r_max={r_max}", {"U": U.dump()})


def random_reduction(rd: ReesData, size: int, rng: random.Random) -> ReductionSpec:
    """`size` random T-linear forms; size = ell gives a minimal reduction generically"""
    p = rd.ring.p
    rows = [[rng.randrange(1, p) for _ in range(rd.n)] for _ in range(size)]
    return ReductionSpec.from_coefficients(rd.fiber_ring, rows)

# ============ DEFORMATION ============

def torsion_free_quotient_check(rd: ReesData, X_forms: Sequence[Poly], c: Poly) -> bool:
    """R(E)/(X) is R-torsion free, tested as (J + X) : c^∞ = J + X"""
    K = rd.J.plus(x.lift(rd.ring) for x in X_forms)
    return ideal_equal(saturate(K, Ideal(rd.ring, [c.lift(rd.ring)])), K)
