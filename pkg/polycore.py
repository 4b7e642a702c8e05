"""
Exact multivariate polynomials over GF(p), monomial orders and the Groebner engine

Polynomials are sparse and immutable; every ideal operation (quotients,
saturation, intersection, elimination, dimension) goes through a reduced
Groebner basis computed by Buchberger's algorithm with the Gebauer-Moeller
pair criteria and the normal selection strategy.
"""

import heapq
import io
import logging
import tokenize
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Poly as SympyPoly, Symbol
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor
from sympy.polys.polyerrors import PolynomialError

from config import FIELD_CHARACTERISTIC
from errors import NotHomogeneousError, PolynomialParseError, RingMismatchError
from models import FieldSpec, MonomialOrderEnum, VariableBlockEnum

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Term = Tuple[Exponent, int]

_BIDEGREE = {
    VariableBlockEnum.Y: (1, 0),
    VariableBlockEnum.T: (0, 1),
    VariableBlockEnum.Z: (0, 0),
    VariableBlockEnum.AUX: (0, 0),
}

_TRANSFORMATIONS = standard_transformations + (convert_xor,)

# polynomial text: integers, ring variables and these operators only
_ALLOWED_OPS = frozenset({"+", "-", "*", "/", "^", "**", "(", ")"})
_LAYOUT_TOKENS = frozenset({tokenize.NEWLINE, tokenize.NL, tokenize.ENDMARKER})


def _check_polynomial_text(text: str, names: Iterable[str]) -> None:
    """Reject anything outside the polynomial grammar before it reaches the sympy parser"""
    if any(ch in text for ch in "\n\r;") or not text.strip():
        raise PolynomialParseError(f"not a polynomial: {text!r}")
    allowed_names = set(names)
    try:
        tokens = list(tokenize.generate_tokens(io.StringIO(text.strip()).readline))
    except (tokenize.TokenError, SyntaxError) as e:
        raise PolynomialParseError(f"cannot tokenize {text!r}: {e}") from e
    for tok in tokens:
        if tok.type in _LAYOUT_TOKENS:
            continue
        if tok.type == tokenize.NUMBER and tok.string.isdigit():
            continue
        if tok.type == tokenize.NAME and tok.string in allowed_names:
            continue
        if tok.type == tokenize.OP and tok.string in _ALLOWED_OPS:
            continue
        raise PolynomialParseError(f"unexpected token {tok.string!r} in {text!r}")

# ============ MONOMIAL HELPERS ============

def _grevlex(exp: Sequence[int]) -> Tuple[int, ...]:
    return (sum(exp),) + tuple(-e for e in reversed(exp))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _inverse(c: int, p: int) -> int:
    return pow(c, p - 2, p)

# ============ RINGS ============

class PolyRing:
    """Polynomial ring over GF(p) with named variables grouped into blocks

    The order key maps an exponent vector to a tuple; a larger tuple is a
    larger monomial.
    """

    __slots__ = ("names", "blocks", "order", "field", "elim_blocks", "_index", "_keys", "_keyfn", "_symbols", "_id")

    def __init__(
        self,
        names: Sequence[str],
        blocks: Sequence[VariableBlockEnum],
        order: MonomialOrderEnum = MonomialOrderEnum.BIGRADED,
        field: Optional[FieldSpec] = None,
        elim_blocks: Iterable[VariableBlockEnum] = (),
    ):
        if len(names) != len(blocks):
            raise ValueError("every variable needs exactly one block")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {list(names)}")
        self.names: Tuple[str, ...] = tuple(names)
        self.blocks: Tuple[VariableBlockEnum, ...] = tuple(VariableBlockEnum(b) for b in blocks)
        self.order = MonomialOrderEnum(order)
        self.field = field or FieldSpec(characteristic=FIELD_CHARACTERISTIC)
        self.elim_blocks: Tuple[VariableBlockEnum, ...] = tuple(
            sorted({VariableBlockEnum(b) for b in elim_blocks}, key=lambda b: b.value)
        )
        if self.order == MonomialOrderEnum.ELIM and not self.elim_blocks:
            raise ValueError("elimination order needs at least one block")
        self._index = {name: i for i, name in enumerate(self.names)}
        self._keys: Dict[Exponent, Tuple[int, ...]] = {}
        self._keyfn = self._make_key()
        self._symbols = None
        self._id = (self.names, self.blocks, self.order, self.p, self.elim_blocks)

    @classmethod
    def polynomial_ring(cls, names: Sequence[str], p: Optional[int] = None,
                        order: MonomialOrderEnum = MonomialOrderEnum.GREVLEX) -> "PolyRing":
        """k[names] with all variables in the Y-block"""
        field = FieldSpec(characteristic=p) if p is not None else None
        return cls(names, [VariableBlockEnum.Y] * len(names), order=order, field=field)

    def _make_key(self):
        if self.order == MonomialOrderEnum.LEX:
            return tuple
        if self.order == MonomialOrderEnum.GREVLEX:
            return _grevlex
        if self.order == MonomialOrderEnum.BIGRADED:
            y_idx = self.indices(VariableBlockEnum.Y)
            t_idx = self.indices(VariableBlockEnum.T)

            def bigraded(exp):
                return (sum(exp[i] for i in t_idx), sum(exp[i] for i in y_idx)) + _grevlex(exp)
            return bigraded
        elim = [i for i, b in enumerate(self.blocks) if b in self.elim_blocks]
        rest = [i for i, b in enumerate(self.blocks) if b not in self.elim_blocks]

        def product(exp):
            return _grevlex([exp[i] for i in elim]) + _grevlex([exp[i] for i in rest])
        return product

    @property
    def p(self) -> int:
        return self.field.characteristic

    @property
    def nvars(self) -> int:
        return len(self.names)

    def key(self, exp: Exponent) -> Tuple[int, ...]:
        k = self._keys.get(exp)
        if k is None:
            k = self._keyfn(exp)
            self._keys[exp] = k
        return k

    def indices(self, *blocks: VariableBlockEnum) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if b in blocks]

    def names_in(self, *blocks: VariableBlockEnum) -> List[str]:
        return [self.names[i] for i in self.indices(*blocks)]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingMismatchError(f"variable {name} is not in the ring", {"ring": self.names}) from None

    def has(self, name: str) -> bool:
        return name in self._index

    def bidegree_of(self, i: int) -> Tuple[int, int]:
        return _BIDEGREE[self.blocks[i]]

    # ---------- constructors ----------

    def zero(self) -> "Poly":
        return Poly(self, ())

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, (((0,) * self.nvars, c),) if c else ())

    def gen(self, name: str) -> "Poly":
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Poly(self, ((tuple(exp), 1),))

    def gens(self, *blocks: VariableBlockEnum) -> List["Poly"]:
        names = self.names_in(*blocks) if blocks else list(self.names)
        return [self.gen(n) for n in names]

    def monomial(self, exp: Exponent, coeff: int = 1) -> "Poly":
        return Poly.from_dict(self, {tuple(exp): coeff})

    def parse(self, text: str) -> "Poly":
        """Parse integer-coefficient polynomial text such as '-3*x^2*T_1 + y*T_2'"""
        if self._symbols is None:
            self._symbols = {name: Symbol(name) for name in self.names}
        text = str(text)
        _check_polynomial_text(text, self.names)
        try:
            expr = parse_expr(text, local_dict=dict(self._symbols), transformations=_TRANSFORMATIONS)
        except Exception as e:
            raise PolynomialParseError(f"cannot parse {text!r}: {e}") from e
        unknown = {str(s) for s in getattr(expr, "free_symbols", set())} - set(self.names)
        if unknown:
            raise PolynomialParseError(f"unknown variables in {text!r}", {"unknown": sorted(unknown)})
        gens = [self._symbols[n] for n in self.names]
        try:
            sp = SympyPoly(expr, *gens, domain="QQ") if gens else None
        except PolynomialError as e:
            raise PolynomialParseError(f"{text!r} is not a polynomial: {e}") from e
        p = self.p
        if sp is None:
            try:
                value = int(expr)
            except TypeError as e:
                raise PolynomialParseError(f"{text!r} is not a constant") from e
            return self.const(value)
        terms: Dict[Exponent, int] = {}
        for monom, coeff in sp.terms():
            num, den = int(coeff.p), int(coeff.q)
            if den % p == 0:
                raise PolynomialParseError(f"denominator {den} vanishes modulo {p}")
            terms[tuple(monom)] = num * _inverse(den % p, p)
        return Poly.from_dict(self, terms)

    # ---------- derived rings ----------

    def with_order(self, order: MonomialOrderEnum, elim_blocks: Iterable[VariableBlockEnum] = ()) -> "PolyRing":
        return PolyRing(self.names, self.blocks, order, self.field, elim_blocks)

    def without(self, names: Iterable[str], order: Optional[MonomialOrderEnum] = None) -> "PolyRing":
        drop = set(names)
        keep = [i for i, n in enumerate(self.names) if n not in drop]
        new_order = order or self.order
        elim = self.elim_blocks
        if new_order == MonomialOrderEnum.ELIM:
            remaining = {self.blocks[i] for i in keep}
            elim = tuple(b for b in elim if b in remaining)
            if not elim:
                new_order = MonomialOrderEnum.GREVLEX
        return PolyRing([self.names[i] for i in keep], [self.blocks[i] for i in keep], new_order, self.field, elim)

    def extended(self, names: Sequence[str], blocks: Sequence[VariableBlockEnum],
                 order: Optional[MonomialOrderEnum] = None,
                 elim_blocks: Iterable[VariableBlockEnum] = ()) -> "PolyRing":
        return PolyRing(self.names + tuple(names), self.blocks + tuple(blocks),
                        order or self.order, self.field, elim_blocks or self.elim_blocks)

    def fresh_name(self, stem: str) -> str:
        k = 0
        while f"{stem}{k}" in self._index:
            k += 1
        return f"{stem}{k}"

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, PolyRing) and self._id == other._id)

    def __hash__(self) -> int:
        return hash(self._id)

    def __repr__(self) -> str:
        return f"PolyRing(GF({self.p})[{', '.join(self.names)}], {self.order.value})"

# ============ POLYNOMIALS ============

class Poly:
    """Immutable sparse polynomial; terms are sorted by decreasing monomial"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Tuple[Term, ...]):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_dict(cls, ring: PolyRing, terms: Dict[Exponent, int]) -> "Poly":
        p = ring.p
        cleaned = [(e, c % p) for e, c in terms.items() if c % p]
        cleaned.sort(key=lambda t: ring.key(t[0]), reverse=True)
        return cls(ring, tuple(cleaned))

    # ---------- predicates ----------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def _check(self, other: "Poly") -> None:
        if other.ring != self.ring:
            raise RingMismatchError("polynomials live in different rings", {"left": self.ring, "right": other.ring})

    # ---------- leading data ----------

    def lm(self) -> Exponent:
        return self.terms[0][0]

    def lc(self) -> int:
        return self.terms[0][1]

    def monic(self) -> "Poly":
        if not self.terms or self.terms[0][1] == 1:
            return self
        return self.scale(_inverse(self.terms[0][1], self.ring.p))

    # ---------- arithmetic ----------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Poly.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = self.ring.p
        return Poly(self.ring, tuple((e, p - c) for e, c in self.terms))

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _add(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return Poly.from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, tuple((e, (v * c) % p) for e, v in self.terms))

    def mul_term(self, exp: Exponent, coeff: int = 1) -> "Poly":
        p = self.ring.p
        coeff %= p
        if not coeff:
            return self.ring.zero()
        # multiplying by a monomial preserves the order of terms
        return Poly(self.ring, tuple((_add(e, exp), (c * coeff) % p) for e, c in self.terms))

    def divide_exact(self, g: "Poly") -> "Poly":
        """Quotient f / g, raising when g does not divide f"""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ring.p
        inv = _inverse(g.lc(), p)
        glm = g.lm()
        quotient: Dict[Exponent, int] = {}
        rest = self
        while rest:
            e, c = rest.terms[0]
            if not _divides(glm, e):
                raise ArithmeticError(f"{g} does not divide {self}")
            q = _sub(e, glm)
            qc = (c * inv) % p
            quotient[q] = qc
            rest = rest - g.mul_term(q, qc)
        return Poly.from_dict(self.ring, quotient)

    # ---------- degrees ----------

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, *blocks: VariableBlockEnum) -> int:
        idx = self.ring.indices(*blocks)
        return max((sum(e[i] for i in idx) for e, _ in self.terms), default=-1)

    def bidegrees(self) -> set:
        y_idx = self.ring.indices(VariableBlockEnum.Y)
        t_idx = self.ring.indices(VariableBlockEnum.T)
        return {(sum(e[i] for i in y_idx), sum(e[i] for i in t_idx)) for e, _ in self.terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def is_homogeneous(self, *blocks: VariableBlockEnum) -> bool:
        idx = self.ring.indices(*blocks) if blocks else range(self.ring.nvars)
        return len({sum(e[i] for i in idx) for e, _ in self.terms}) <= 1

    def coefficient(self, exp: Exponent) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    # ---------- ring changes ----------

    def lift(self, target: PolyRing) -> "Poly":
        """Same polynomial read in another ring that has all its variables"""
        if target == self.ring:
            return self
        if target.p != self.ring.p:
            raise RingMismatchError("rings have different characteristics")
        src = self.ring
        used = [i for i in range(src.nvars) if any(e[i] for e, _ in self.terms)]
        pos = {i: target.index(src.names[i]) for i in used}
        acc: Dict[Exponent, int] = {}
        for e, c in self.terms:
            new = [0] * target.nvars
            for i in used:
                new[pos[i]] = e[i]
            acc[tuple(new)] = c
        return Poly.from_dict(target, acc)

    def substitute(self, target: PolyRing, images: Dict[str, "Poly"]) -> "Poly":
        """Ring map sending each variable to its image (default: same name in target)"""
        src = self.ring
        cache: Dict[Tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            if (i, k) not in cache:
                name = src.names[i]
                base = images[name] if name in images else target.gen(name)
                if base.ring != target:
                    raise RingMismatchError(f"image of {name} is not in the target ring")
                cache[(i, k)] = base ** k
            return cache[(i, k)]

        acc: Dict[Exponent, int] = {}
        for e, c in self.terms:
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms:
                acc[te] = acc.get(te, 0) + tc
        return Poly.from_dict(target, acc)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v = (v * pow(x, k, p)) % p
            total += v
        return total % p

    # ---------- protocol ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        p = self.ring.p
        parts = []
        for e, c in self.terms:
            c = c - p if c > p // 2 else c
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k]
            mag = abs(c)
            body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({self})"

# ============ GROEBNER ENGINE ============

def _heap_key(ring: PolyRing, exp: Exponent) -> Tuple[int, ...]:
    return tuple(-k for k in ring.key(exp))


def _reduce(ring: PolyRing, terms: Dict[Exponent, int], basis: Sequence[Poly]) -> Dict[Exponent, int]:
    """Full normal form of a term dict modulo monic polynomials"""
    p = ring.p
    work = {e: c % p for e, c in terms.items() if c % p}
    heap = [(_heap_key(ring, e), e) for e in work]
    heapq.heapify(heap)
    remainder: Dict[Exponent, int] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, 0)
        if not c:
            continue
        for g in basis:
            glm = g.terms[0][0]
            if _divides(glm, e):
                q = _sub(e, glm)
                for ge, gc in g.terms[1:]:
                    ne = _add(ge, q)
                    nc = (work.get(ne, 0) - c * gc) % p
                    if nc:
                        if ne not in work:
                            heapq.heappush(heap, (_heap_key(ring, ne), ne))
                        work[ne] = nc
                    else:
                        work.pop(ne, None)
                break
        else:
            remainder[e] = c
    return remainder


def _spoly(f: Poly, g: Poly) -> Dict[Exponent, int]:
    lcm = _lcm(f.lm(), g.lm())
    qf, qg = _sub(lcm, f.lm()), _sub(lcm, g.lm())
    acc: Dict[Exponent, int] = {}
    for e, c in f.terms[1:]:
        ne = _add(e, qf)
        acc[ne] = acc.get(ne, 0) + c
    for e, c in g.terms[1:]:
        ne = _add(e, qg)
        acc[ne] = acc.get(ne, 0) - c
    return acc


class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, sorted by decreasing leading monomial"""

    __slots__ = ("ring", "elements")

    def __init__(self, ring: PolyRing, elements: Sequence[Poly]):
        self.ring = ring
        self.elements: Tuple[Poly, ...] = tuple(elements)

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        if not f or not self.elements:
            return f
        return Poly.from_dict(self.ring, _reduce(self.ring, dict(f.terms), self.elements))

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def is_zero(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> List[Exponent]:
        return [g.lm() for g in self.elements]

    def is_groebner(self) -> bool:
        """Buchberger criterion: every S-polynomial reduces to zero"""
        for f, g in combinations(self.elements, 2):
            if _reduce(self.ring, _spoly(f, g), self.elements):
                return False
        return True

    def dump(self) -> List[str]:
        return [str(g) for g in self.elements]

    def __eq__(self, other) -> bool:
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.elements == other.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(ring: PolyRing, generators: Sequence[Poly]) -> GroebnerBasis:
    polys: List[Poly] = []
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []

    def lcm_of(i: int, j: int) -> Exponent:
        return _lcm(polys[i].lm(), polys[j].lm())

    def update(h: int) -> None:
        nonlocal active, pairs
        hlm = polys[h].lm()
        candidates = [(h, g) for g in active]
        kept: List[Tuple[int, int]] = []
        while candidates:
            pair = candidates.pop(0)
            l1 = lcm_of(*pair)
            if _coprime(hlm, polys[pair[1]].lm()) or (
                not any(_divides(lcm_of(*other), l1) for other in candidates)
                and not any(_divides(lcm_of(*other), l1) for other in kept)
            ):
                kept.append(pair)
        fresh = [pr for pr in kept if not _coprime(hlm, polys[pr[1]].lm())]
        survivors = []
        for i, j in pairs:
            lij = lcm_of(i, j)
            if (not _divides(hlm, lij)) or lcm_of(i, h) == lij or lcm_of(h, j) == lij:
                survivors.append((i, j))
        pairs = survivors + fresh
        active = [g for g in active if not _divides(hlm, polys[g].lm())] + [h]

    seeds = sorted((g.monic() for g in generators if g), key=lambda g: ring.key(g.lm()))
    for g in seeds:
        polys.append(g)
        update(len(polys) - 1)
        if g.is_constant():
            return GroebnerBasis(ring, [ring.one()])

    processed = 0
    while pairs:
        best = min(range(len(pairs)), key=lambda k: ring.key(lcm_of(*pairs[k])))
        i, j = pairs.pop(best)
        processed += 1
        rem = _reduce(ring, _spoly(polys[i], polys[j]), [polys[k] for k in active])
        if not rem:
            continue
        h = Poly.from_dict(ring, rem).monic()
        if h.is_constant():
            return GroebnerBasis(ring, [ring.one()])
        polys.append(h)
        update(len(polys) - 1)

    minimal: List[Poly] = []
    for g in sorted((polys[k] for k in active), key=lambda g: ring.key(g.lm())):
        if not any(_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    basis = minimal[::-1]
    reduced: List[Poly] = []
    for idx, g in enumerate(basis):
        others = [h for k, h in enumerate(basis) if k != idx]
        tail = _reduce(ring, dict(g.terms[1:]), others)
        tail[g.lm()] = 1
        reduced.append(Poly.from_dict(ring, tail))
        basis[idx] = reduced[-1]
    logger.debug(f"Groebner basis: {len(reduced)} elements from {len(generators)} generators, {processed} pairs")
    return GroebnerBasis(ring, reduced)

# ============ IDEALS ============

class Ideal:
    """Ideal given by generators; the Groebner basis is computed once and cached"""

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: PolyRing, generators: Iterable[Poly] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError("generator does not belong to the ideal's ring", {"generator": str(g)})
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[Poly, ...] = tuple(gens)
        self._gb: Optional[GroebnerBasis] = None

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def variables(cls, ring: PolyRing, *blocks: VariableBlockEnum) -> "Ideal":
        return cls(ring, ring.gens(*blocks))

    @property
    def gb(self) -> GroebnerBasis:
        return groebner(self)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Poly) -> bool:
        return self.gb.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        self._same_ring(other)
        return all(self.contains(g) for g in other.generators)

    def _same_ring(self, other: "Ideal") -> None:
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._same_ring(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._same_ring(other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def plus(self, polys: Iterable[Poly]) -> "Ideal":
        return Ideal(self.ring, self.generators + tuple(polys))

    def lift(self, target: PolyRing) -> "Ideal":
        return Ideal(target, [g.lift(target) for g in self.generators])

    def substitute(self, target: PolyRing, images: Dict[str, Poly]) -> "Ideal":
        return Ideal(target, [g.substitute(target, images) for g in self.generators])

    def is_homogeneous(self, *blocks: VariableBlockEnum) -> bool:
        return all(g.is_homogeneous(*blocks) for g in self.generators)

    def dump(self) -> List[str]:
        """Reduced Groebner basis as text"""
        return self.gb.dump()

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"


def groebner(I: Ideal) -> GroebnerBasis:
    if I._gb is None:
        I._gb = buchberger(I.ring, I.generators)
    return I._gb


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.reduce(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    I._same_ring(J)
    return groebner(I) == groebner(J)

# ============ IDEAL OPERATIONS ============

def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as the t-free part of t·I + (1 - t)·J"""
    I._same_ring(J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    t_name = ring.fresh_name("AUX_t")
    big = ring.extended([t_name], [VariableBlockEnum.AUX], MonomialOrderEnum.ELIM, (VariableBlockEnum.AUX,))
    t = big.gen(t_name)
    gens = [t * f.lift(big) for f in I.generators] + [(1 - t) * g.lift(big) for g in J.generators]
    gb = groebner(Ideal(big, gens))
    t_idx = big.index(t_name)
    return Ideal(ring, [g.lift(ring) for g in gb.elements if g.lm()[t_idx] == 0])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J, intersecting I : (g) = (I ∩ (g)) / g over the generators g of J"""
    I._same_ring(J)
    ring = I.ring
    result: Optional[Ideal] = None
    for g in J.generators:
        if I.contains(g):
            continue
        meet = intersect(I, Ideal(ring, [g]))
        part = Ideal(ring, [h.divide_exact(g) for h in meet.generators])
        result = part if result is None else intersect(result, part)
    return Ideal.unit(ring) if result is None else result


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞ by iterated quotients until the ideal stops growing"""
    current = I
    rounds = 0
    while True:
        rounds += 1
        nxt = ideal_quotient(current, J)
        if ideal_equal(nxt, current):
            logger.debug(f"Saturation stable after {rounds} rounds")
            return current
        current = nxt


def eliminate(I: Ideal, blocks: Iterable[VariableBlockEnum]) -> Ideal:
    """I ∩ k[variables outside the blocks], presented in the smaller ring"""
    ring = I.ring
    blocks = tuple(VariableBlockEnum(b) for b in blocks)
    names = ring.names_in(*blocks)
    if not names:
        return I
    elim_ring = ring.with_order(MonomialOrderEnum.ELIM, blocks)
    gb = groebner(I.lift(elim_ring))
    sub = ring.without(names)
    idx = elim_ring.indices(*blocks)
    keep = [g for g in gb.elements if not any(g.lm()[i] for i in idx)]
    return Ideal(sub, [g.lift(sub) for g in keep])


def _max_independent_size(nvars: int, supports: List[int]) -> int:
    if not supports:
        return nvars
    for size in range(nvars, -1, -1):
        for combo in combinations(range(nvars), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            if not any(s & ~mask == 0 for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal, parameters: Iterable[VariableBlockEnum] = ()) -> int:
    """dim of ring/I from leading monomials; -1 for the unit ideal

    With parameter blocks, the dimension is taken over the fraction field of
    the parameter variables.
    """
    ring = I.ring
    params = tuple(VariableBlockEnum(b) for b in parameters)
    if params and ring.indices(*params):
        main_blocks = tuple({b for b in ring.blocks if b not in params})
        gb = groebner(I.lift(ring.with_order(MonomialOrderEnum.ELIM, main_blocks)))
        idx = [i for i, b in enumerate(ring.blocks) if b not in params]
    else:
        gb = groebner(I)
        idx = list(range(ring.nvars))
    supports = []
    for g in gb.elements:
        lm = g.lm()
        mask = 0
        for pos, i in enumerate(idx):
            if lm[i]:
                mask |= 1 << pos
        if mask == 0:
            return -1
        supports.append(mask)
    return _max_independent_size(len(idx), supports)


def monomials_of_degree(ring: PolyRing, degree: int, indices: Optional[Sequence[int]] = None) -> List[Exponent]:
    idx = list(range(ring.nvars)) if indices is None else list(indices)
    out = []
    for combo in combinations_with_replacement(idx, degree):
        exp = [0] * ring.nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return out


def _leading_count(gb: GroebnerBasis, degree: int) -> int:
    """dim_k of the degree part of the leading-term ideal"""
    lms = gb.leading_monomials()
    return sum(1 for m in monomials_of_degree(gb.ring, degree) if any(_divides(l, m) for l in lms))


def hilbert_function(I: Ideal, degree: int) -> int:
    """dim_k (ring/I)_degree for the standard grading"""
    total = len(monomials_of_degree(I.ring, degree))
    return total - _leading_count(groebner(I), degree)


def minimal_generators_by_degree(I: Ideal) -> Dict[int, int]:
    """Counts of a minimal homogeneous generating set per total degree (graded Nakayama)"""
    if not I.is_homogeneous():
        raise NotHomogeneousError("minimal generator counts need a homogeneous ideal", {"ideal": repr(I)})
    degrees = sorted({g.total_degree() for g in I.generators})
    full = groebner(I)
    counts: Dict[int, int] = {}
    for D in degrees:
        lower = [g for g in I.generators if g.total_degree() < D]
        have = _leading_count(groebner(Ideal(I.ring, lower)), D) if lower else 0
        count = _leading_count(full, D) - have
        if count:
            counts[D] = count
    return counts

# ============ MATRICES ============

Matrix = List[List[Poly]]


def determinant(ring: PolyRing, rows: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the rows, memoized on column subsets"""
    k = len(rows)
    if k == 0:
        return ring.one()
    memo: Dict[Tuple[int, ...], Poly] = {}

    def minor(cols: Tuple[int, ...]) -> Poly:
        r = k - len(cols)
        if r == k:
            return ring.one()
        if cols in memo:
            return memo[cols]
        total = ring.zero()
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            term = entry * minor(cols[:pos] + cols[pos + 1:])
            total = total + term if pos % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(tuple(range(len(rows[0]))))


def minors(ring: PolyRing, matrix: Sequence[Sequence[Poly]], t: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], Poly]]:
    """All t-minors in row-major order: row subsets outer, column subsets inner"""
    n = len(matrix)
    s = len(matrix[0]) if n else 0
    out = []
    for rs in combinations(range(n), t):
        for cs in combinations(range(s), t):
            out.append((rs, cs, determinant(ring, [[matrix[r][c] for c in cs] for r in rs])))
    return out


def ideal_of_minors(ring: PolyRing, matrix: Sequence[Sequence[Poly]], t: int) -> Ideal:
    """I_t(matrix): unit ideal for t <= 0, zero ideal when t exceeds the size"""
    n = len(matrix)
    s = len(matrix[0]) if n else 0
    if t <= 0:
        return Ideal.unit(ring)
    if t > min(n, s):
        return Ideal(ring)
    return Ideal(ring, [m for _, _, m in minors(ring, matrix, t)])


def ring_map(f: Poly, target: PolyRing, images: Dict[str, Poly]) -> Poly:
    return f.substitute(target, images)


def height(I: Ideal, parameters: Iterable[VariableBlockEnum] = ()) -> Optional[int]:
    """dim R - dim R/I; None stands for the unit ideal (infinite height)"""
    params = tuple(parameters)
    dim_q = krull_dimension(I, params)
    if dim_q < 0:
        return None
    nvars = len([b for b in I.ring.blocks if b not in params])
    return nvars - dim_q
