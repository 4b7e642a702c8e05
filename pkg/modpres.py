"""
Presentation matrices of graded modules: ranks, Fitting ideals, G_s and minors criteria
"""

import logging
import random
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import FF
from sympy.polys.matrices import DomainMatrix

from config import DEFAULT_SEED, RANK_TRIALS, ROW_SEARCH_TRIALS
from errors import MixedDegreeColumnError, ParameterRangeError, RingMismatchError
from models import FieldSpec, GsEntry, GsReport, InputDocument, ModuleInfo, MonomialOrderEnum, VariableBlockEnum
from polycore import Ideal, Poly, PolyRing, height, ideal_equal, ideal_of_minors, minors as _minors
from utils import rng_stream

logger = logging.getLogger(__name__)

# ============ LINEAR ALGEBRA OVER GF(p) ============

def _to_domain(rows: Sequence[Sequence[int]], p: int) -> DomainMatrix:
    return DomainMatrix.from_list([list(r) for r in rows], FF(p))


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    return _to_domain(rows, p).rank()


def pivot_columns(rows: Sequence[Sequence[int]], p: int) -> Tuple[int, ...]:
    """Pivot columns of the reduced row echelon form"""
    if not rows or not rows[0]:
        return ()
    _, pivots = _to_domain(rows, p).rref()
    return tuple(pivots)


def inverse_mod_p(rows: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    inv = _to_domain(rows, p).inv()
    return [[int(x) % p for x in row] for row in inv.to_list()]


def random_invertible(rng: random.Random, n: int, p: int) -> List[List[int]]:
    while True:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if rank_mod_p(rows, p) == n:
            return rows


def identity_matrix(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]

# ============ PRESENTATION MATRIX ============

def _column_degree(ring: PolyRing, column: Sequence[Poly], j: int) -> int:
    degrees = set()
    for entry in column:
        if not entry:
            continue
        if not entry.is_homogeneous(VariableBlockEnum.Y):
            raise MixedDegreeColumnError(f"entry {entry} of column {j + 1} is not homogeneous")
        degrees.add(entry.degree_in(VariableBlockEnum.Y))
    if len(degrees) > 1:
        raise MixedDegreeColumnError(f"column {j + 1} mixes degrees {sorted(degrees)}")
    # a zero column carries no degree information; treat it as linear
    return degrees.pop() if degrees else 1


class PresentationMatrix(BaseModel):
    """n x s matrix phi with column degrees; its cokernel is the module E"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ring: PolyRing
    entries: Tuple[Tuple[Poly, ...], ...]
    column_degrees: Tuple[int, ...]

    @model_validator(mode='after')
    def check_entries(self):
        if not self.entries:
            raise ValueError("a presentation needs at least one row")
        widths = {len(row) for row in self.entries}
        if len(widths) != 1:
            raise ValueError("rows must have equal length")
        if len(self.column_degrees) != self.s:
            raise ValueError("one degree per column")
        for row in self.entries:
            for entry in row:
                if entry.ring != self.ring:
                    raise RingMismatchError("matrix entry outside the matrix ring")
        for j in range(self.s):
            if _column_degree(self.ring, self.column(j), j) != self.column_degrees[j]:
                raise MixedDegreeColumnError(f"column {j + 1} does not have degree {self.column_degrees[j]}")
        return self

    @classmethod
    def build(cls, ring: PolyRing, rows: Sequence[Sequence[Poly]]) -> "PresentationMatrix":
        entries = tuple(tuple(row) for row in rows)
        s = len(entries[0]) if entries else 0
        degrees = tuple(_column_degree(ring, [row[j] for row in entries], j) for j in range(s))
        return cls(ring=ring, entries=entries, column_degrees=degrees)

    @classmethod
    def parse(cls, ring: PolyRing, rows: Sequence[Sequence[str]]) -> "PresentationMatrix":
        return cls.build(ring, [[ring.parse(t) for t in row] for row in rows])

    @classmethod
    def from_document(cls, doc: InputDocument) -> "PresentationMatrix":
        field = FieldSpec(characteristic=doc.field.char)
        ring = PolyRing(doc.variables, [VariableBlockEnum.Y] * len(doc.variables),
                        MonomialOrderEnum.GREVLEX, field)
        return cls.parse(ring, doc.matrix)

    # ---------- shape ----------

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def s(self) -> int:
        return len(self.entries[0])

    @property
    def d(self) -> int:
        """Number of ring variables"""
        return len(self.ring.indices(VariableBlockEnum.Y))

    def column(self, j: int) -> List[Poly]:
        return [row[j] for row in self.entries]

    def rows(self) -> List[List[Poly]]:
        return [list(row) for row in self.entries]

    def is_linear(self) -> bool:
        return all(deg == 1 for deg in self.column_degrees)

    # ---------- transformations ----------

    def transform(self, Q: Sequence[Sequence[int]]) -> "PresentationMatrix":
        """Q * phi for a scalar matrix Q"""
        ring = self.ring
        out = []
        for qrow in Q:
            row = []
            for j in range(self.s):
                acc = ring.zero()
                for i, q in enumerate(qrow):
                    if q % ring.p:
                        acc = acc + self.entries[i][j].scale(q)
                row.append(acc)
            out.append(row)
        return PresentationMatrix.build(ring, out)

    def transform_poly(self, Q: Sequence[Sequence[Poly]]) -> "PresentationMatrix":
        """Q * phi for a matrix Q over the same ring (degree-zero entries)"""
        ring = self.ring
        out = []
        for qrow in Q:
            row = []
            for j in range(self.s):
                acc = ring.zero()
                for i, q in enumerate(qrow):
                    if q:
                        acc = acc + q * self.entries[i][j]
                row.append(acc)
            out.append(row)
        return PresentationMatrix.build(ring, out)

    def select_rows(self, indices: Sequence[int]) -> "PresentationMatrix":
        return PresentationMatrix.build(self.ring, [self.entries[i] for i in indices])

    def lift(self, target: PolyRing) -> "PresentationMatrix":
        return PresentationMatrix.build(target, [[e.lift(target) for e in row] for row in self.entries])

    def dump(self) -> List[List[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.dump()) + "]"

# ============ RANK ============

def generic_rank(phi: PresentationMatrix, trials: int = RANK_TRIALS, seed: int = DEFAULT_SEED) -> int:
    """Rank over the fraction field: random evaluations, then confirmed by vanishing minors"""
    ring = phi.ring
    p = ring.p
    top = min(phi.n, phi.s)
    rng = rng_stream(seed, "generic-rank")
    rank = 0
    for trial in range(trials):
        point = [rng.randrange(p) for _ in range(ring.nvars)]
        values = [[e.evaluate(point) for e in row] for row in phi.entries]
        rank = max(rank, rank_mod_p(values, p))
        if rank == top:
            break
    while rank < top and not ideal_of_minors(ring, phi.entries, rank + 1).is_zero():
        logger.debug(f"Random evaluation underestimated the rank; nonzero {rank + 1}-minor found")
        rank += 1
    return rank


def rank_of_module(phi: PresentationMatrix) -> ModuleInfo:
    rank_phi = generic_rank(phi)
    e = phi.n - rank_phi
    is_pd1 = phi.s == phi.n - e and rank_phi == phi.s
    m = None
    if phi.s >= 1 and all(deg == 1 for deg in phi.column_degrees[:-1]) and phi.column_degrees[-1] >= 1:
        m = phi.column_degrees[-1]
    info = ModuleInfo(rank_e=e, mu=phi.n, is_pd1=is_pd1, almost_linear_m=m)
    logger.info(f"Module data: n={phi.n}, s={phi.s}, e={e}, pd1={is_pd1}, m={m}")
    return info

# ============ MINORS AND FITTING IDEALS ============

def minors(phi: PresentationMatrix, t: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], Poly]]:
    return _minors(phi.ring, phi.entries, t)


def fitting_ideal(phi: PresentationMatrix, j: int) -> Ideal:
    """Fitt_j(E) = I_{n-j}(phi)"""
    if j < 0:
        raise ParameterRangeError(f"Fitting index must be non-negative, got {j}")
    return ideal_of_minors(phi.ring, phi.entries, phi.n - j)


def check_Gs(phi: PresentationMatrix, s_bound: int, rank_e: Optional[int] = None) -> GsReport:
    """G_s through Fitting heights: ht Fitt_{e+j-1}(E) > j for 1 <= j <= s-1"""
    e = rank_of_module(phi).rank_e if rank_e is None else rank_e
    entries = []
    for j in range(1, s_bound):
        index = e + j - 1
        h = height(fitting_ideal(phi, index))
        entries.append(GsEntry(j=j, fitting_index=index, height=h, required=j, ok=h is None or h > j))
    report = GsReport(s_bound=s_bound, rank_e=e, entries=entries, holds=all(x.ok for x in entries))
    logger.info(f"{'✅' if report.holds else '❌'} G_{s_bound}: heights {[x.height for x in entries]}")
    return report


def check_last_rows_minors_criterion(
    phi: PresentationMatrix,
    ell: int,
    row_transform: Optional[Sequence[Sequence[int]]] = None,
    trials: int = ROW_SEARCH_TRIALS,
    seed: int = DEFAULT_SEED,
) -> bool:
    """I_{n-ell}(phi) equals the maximal minors of the last n-ell rows, after a row operation

    With an explicit transform only that one is tried; otherwise the identity
    and then `trials` random invertible row operations.
    """
    n = phi.n
    if not 0 <= ell <= n:
        raise ParameterRangeError(f"ell must lie in [0, {n}], got {ell}")
    if ell == n:
        return True
    t = n - ell
    target = ideal_of_minors(phi.ring, phi.entries, t)
    p = phi.ring.p
    if row_transform is not None:
        candidates = [row_transform]
    else:
        rng = rng_stream(seed, "row-search")
        candidates = [identity_matrix(n)] + [random_invertible(rng, n, p) for _ in range(trials)]
    for attempt, Q in enumerate(candidates):
        moved = phi.transform(Q)
        last = moved.entries[n - t:]
        if ideal_equal(ideal_of_minors(phi.ring, last, t), target):
            logger.debug(f"Last-rows criterion holds after row operation #{attempt}")
            return True
    return False
