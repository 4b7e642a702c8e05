"""
Jacobian duals and iterated Jacobian duals

Split rule: a term divisible by some ring variable is written as Y_k * rest
with k the smallest such index. The resulting ideals do not depend on the
choice, which the cross-checks against the Rees ideal exercise.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from config import LEVELS_SLACK
from errors import InternalConsistencyError, JacobianDualError, ParameterRangeError, StabilizationError
from models import VariableBlockEnum
from modpres import PresentationMatrix, rank_of_module
from polycore import (
    Ideal, Poly, PolyRing, groebner, hilbert_function, ideal_equal, ideal_of_minors, ideal_quotient, intersect,
)
from reescore import rees_ring, row_vector, symmetric_ideal

logger = logging.getLogger(__name__)

PolyMatrix = Tuple[Tuple[Poly, ...], ...]

# ============ SPLIT RULE ============

def split(g: Poly, y_idx: Sequence[int]) -> List[Poly]:
    """Coefficients c with sum_k Y_k * c_k = g, each term going to its smallest Y divisor"""
    ring = g.ring
    parts: List[dict] = [{} for _ in y_idx]
    for exp, coeff in g.terms:
        for k, i in enumerate(y_idx):
            if exp[i]:
                rest = list(exp)
                rest[i] -= 1
                parts[k][tuple(rest)] = coeff
                break
        else:
            raise JacobianDualError(f"term of {g} has no ring variable factor")
    return [Poly.from_dict(ring, part) for part in parts]


def y_times(ring: PolyRing, matrix: Sequence[Sequence[Poly]], y_idx: Sequence[int]) -> List[Poly]:
    """Entries of the row vector [Y] * matrix"""
    Y = [ring.gen(ring.names[i]) for i in y_idx]
    cols = len(matrix[0]) if matrix else 0
    out = []
    for j in range(cols):
        acc = ring.zero()
        for k, y in enumerate(Y):
            if matrix[k][j]:
                acc = acc + y * matrix[k][j]
        out.append(acc)
    return out


def _hstack(left: PolyMatrix, right: Sequence[Sequence[Poly]]) -> PolyMatrix:
    return tuple(tuple(l) + tuple(r) for l, r in zip(left, right))

# ============ TOWER ============

class JacDualTower(BaseModel):
    """B(phi) with the chain B_1 ⊆ B_2 ⊆ ... and its ideals (Y·B) + I_d(B_i)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: PresentationMatrix
    ring: PolyRing
    B: PolyMatrix
    levels: Tuple[PolyMatrix, ...]
    C_blocks: Tuple[PolyMatrix, ...] = ()
    ideal_chain: Tuple[Ideal, ...]
    stabilized_at: Optional[int] = None

    @property
    def d(self) -> int:
        return len(self.B)

    @property
    def y_indices(self) -> List[int]:
        return self.ring.indices(VariableBlockEnum.Y)

    @property
    def YB(self) -> Ideal:
        return Ideal(self.ring, y_times(self.ring, self.B, self.y_indices))

    def minors_ideal(self, level: int) -> Ideal:
        """I_d(B_level), levels counted from 1"""
        return ideal_of_minors(self.ring, self.levels[level - 1], self.d)

    def dump_matrix(self, level: int = 1) -> List[List[str]]:
        return [[str(e) for e in row] for row in self.levels[level - 1]]


def jacobian_dual(phi: PresentationMatrix, ring: Optional[PolyRing] = None) -> JacDualTower:
    ring = ring or rees_ring(phi.ring, phi.n)
    base_y = phi.ring.indices(VariableBlockEnum.Y)
    for row in phi.entries:
        for entry in row:
            if any(not any(exp[i] for i in base_y) for exp, _ in entry.terms):
                raise JacobianDualError(f"entry {entry} is not in the ideal of the ring variables")
    y_idx = ring.indices(VariableBlockEnum.Y)
    vector = row_vector(phi, ring)
    columns = [split(f, y_idx) if f else [ring.zero()] * len(y_idx) for f in vector]
    B = tuple(tuple(columns[j][k] for j in range(phi.s)) for k in range(len(y_idx)))
    if y_times(ring, B, y_idx) != vector:
        raise InternalConsistencyError("[Y]*B differs from [T]*phi")
    L = Ideal(ring, vector)
    tower = JacDualTower(phi=phi, ring=ring, B=B, levels=(B,), ideal_chain=(L + ideal_of_minors(ring, B, len(y_idx)),))
    logger.info(f"Jacobian dual: {len(y_idx)}x{phi.s}")
    return tower


def iterate(tower: JacDualTower) -> JacDualTower:
    """Append C_i so that (Y·B_i) + (I_d(B_i) ∩ (Y)) = (Y·B_i) + (Y·C_i)"""
    ring = tower.ring
    y_idx = tower.y_indices
    d = tower.d
    current = tower.levels[-1]
    level = len(tower.levels)
    minors_ideal = ideal_of_minors(ring, current, d)
    y_ideal = Ideal.variables(ring, VariableBlockEnum.Y)
    meet = intersect(minors_ideal, y_ideal) if not minors_ideal.is_zero() else Ideal(ring)
    yb_i = Ideal(ring, y_times(ring, current, y_idx))
    gb = groebner(yb_i)
    new_columns = []
    for g in meet.generators:
        r = gb.reduce(g)
        if not r:
            continue
        column = split(r, y_idx)
        if y_times(ring, [[c] for c in column], y_idx)[0] != r:
            raise InternalConsistencyError("split column does not reproduce its generator")
        new_columns.append(column)
    C = tuple(tuple(col[k] for col in new_columns) for k in range(d))
    lhs = yb_i + meet
    rhs = yb_i.plus(y_times(ring, C, y_idx)) if new_columns else yb_i
    if not ideal_equal(lhs, rhs):
        raise InternalConsistencyError(f"defining equality of level {level + 1} fails")
    nxt = _hstack(current, C) if new_columns else current
    chain_entry = tower.YB + ideal_of_minors(ring, nxt, d)
    stabilized = tower.stabilized_at
    if stabilized is None and ideal_equal(tower.ideal_chain[-1], chain_entry):
        stabilized = level
    logger.info(f"Jacobian dual level {level + 1}: {len(new_columns)} new columns, stabilized_at={stabilized}")
    return JacDualTower(
        phi=tower.phi, ring=ring, B=tower.B,
        levels=tower.levels + (nxt,), C_blocks=tower.C_blocks + (C,),
        ideal_chain=tower.ideal_chain + (chain_entry,), stabilized_at=stabilized,
    )


def build_tower(phi: PresentationMatrix, levels: int) -> JacDualTower:
    """Tower with B_1 .. B_levels"""
    if levels < 1:
        raise ParameterRangeError(f"levels must be at least 1, got {levels}")
    tower = jacobian_dual(phi)
    while len(tower.levels) < levels:
        tower = iterate(tower)
    return tower


def default_max_levels(phi: PresentationMatrix) -> int:
    m = rank_of_module(phi).almost_linear_m or max(phi.column_degrees, default=1)
    return m + LEVELS_SLACK


def stabilize(phi: PresentationMatrix, max_levels: Optional[int] = None) -> JacDualTower:
    max_levels = default_max_levels(phi) if max_levels is None else max_levels
    tower = jacobian_dual(phi)
    while tower.stabilized_at is None:
        if len(tower.levels) > max_levels:
            data = [
                {"level": i + 1, "basis": len(groebner(I)), "hilbert": [hilbert_function(I, k) for k in range(4)]}
                for i, I in enumerate(tower.ideal_chain)
            ]
            raise StabilizationError(f"chain did not stabilize within {max_levels} levels", {"chain": data})
        tower = iterate(tower)
    return tower


def stabilized_ideal(phi: PresentationMatrix, max_levels: Optional[int] = None) -> Ideal:
    """(Y·B(phi)) + I_d(B_N(phi)) for the first N where the chain stops growing"""
    tower = stabilize(phi, max_levels)
    return tower.ideal_chain[tower.stabilized_at - 1]

# ============ COLON CANDIDATES ============

def colon_candidate(phi: PresentationMatrix, exponent: int, ring: Optional[PolyRing] = None) -> Ideal:
    """(Y·B(phi)) : (Y)^exponent as an iterated colon by (Y)"""
    if exponent < 1:
        raise ParameterRangeError(f"exponent must be at least 1, got {exponent}")
    ring = ring or rees_ring(phi.ring, phi.n)
    current = symmetric_ideal(phi, ring)
    y_ideal = Ideal.variables(ring, VariableBlockEnum.Y)
    for _ in range(exponent):
        current = ideal_quotient(current, y_ideal)
    return current


def kpu_exponent(phi: PresentationMatrix) -> int:
    """N = 1 + sum of (delta_j - 1) over the columns"""
    return 1 + sum(deg - 1 for deg in phi.column_degrees)
