"""Recurrences among reduced matrix elements of a rank-1 tensor operator.

A commutator identity ``[T_qa, T_qb] = sum_g c_g G_g`` is sandwiched between
two concrete states; a complete set of intermediate states is inserted into
each operator product, every matrix element is factored by the Wigner-Eckart
theorem, and the result is an exact linear identity among products of
reduced elements ``R(l_bra, l_ket)``.  The engine works at fixed numeric
``l``; statements "for all l" are checked by sweeping.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cg import cg
from .conventions import Convention
from .errors import DomainError, InconsistencyError, OracleInconsistencyError, UndefinedExtractionError
from .exact import ExactSum, sqrt_of_rational, sum_from_json, sum_to_json
from .halfint import HalfInt, HalfIntLike, check_pair

__all__ = [
    "ReducedSymbol",
    "RelationTerm",
    "Relation",
    "CommutatorSpec",
    "StatePair",
    "CheckResult",
    "SweepRow",
    "T_PLUS_T_MINUS",
    "stretched_states",
    "matrix_element_expansion",
    "rhs_matrix_element",
    "derive_relation",
    "symmetrize",
    "substitute_and_check",
    "printed_ratio_residual",
    "implied_diagonal_ratio",
    "default_oracle_spec",
    "verify_closed_form",
    "relation_to_json",
    "relation_from_json",
    "format_relation",
    "sweep_json",
]

State = tuple[HalfInt, HalfInt]
_SQRT_HALF = sqrt_of_rational(Fraction(1, 2))


@dataclass(frozen=True, order=True)
class ReducedSymbol:
    """``R(l_bra, l_ket)``, the reduced element between multiplets."""

    l_bra: HalfInt
    l_ket: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "l_bra", HalfInt.of(self.l_bra))
        object.__setattr__(self, "l_ket", HalfInt.of(self.l_ket))
        if abs(self.l_bra.twice - self.l_ket.twice) > 2:
            raise DomainError(f"R({self.l_bra},{self.l_ket}) cannot be rank 1")

    def __str__(self):
        return f"R({self.l_bra},{self.l_ket})"


@dataclass(frozen=True)
class RelationTerm:
    coefficient: ExactSum
    factors: tuple[ReducedSymbol, ...]

    def __str__(self):
        return f"({self.coefficient})*" + "*".join(map(str, self.factors))


@dataclass(frozen=True)
class Relation:
    """``sum(terms) = rhs``; ``contributions`` keeps the unmerged pieces."""

    terms: tuple[RelationTerm, ...]
    rhs: ExactSum
    contributions: tuple[RelationTerm, ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, pieces: Iterable[RelationTerm], rhs: ExactSum,
              contributions: Sequence[RelationTerm] | None = None) -> "Relation":
        pieces = list(pieces)
        merged: dict[tuple[ReducedSymbol, ...], ExactSum] = {}
        for t in pieces:
            merged[t.factors] = merged.get(t.factors, ExactSum()) + t.coefficient
        terms = tuple(RelationTerm(c, f) for f, c in sorted(merged.items()) if c)
        kept = tuple(contributions if contributions is not None else pieces)
        return cls(terms, rhs, kept)

    def symbols(self) -> list[ReducedSymbol]:
        return sorted({s for t in self.terms for s in t.factors})

    def factor_sets(self) -> set[tuple[ReducedSymbol, ...]]:
        return {t.factors for t in self.terms}

    def coefficient(self, *factors: ReducedSymbol) -> ExactSum:
        for t in self.terms:
            if t.factors == tuple(factors):
                return t.coefficient
        return ExactSum()


@dataclass(frozen=True)
class CommutatorSpec:
    """``[T_qa, T_qb] = sum(coef * G)`` with ``G`` in ``J0``, ``J+1``, ``J-1``."""

    q_a: int
    q_b: int
    rhs_combo: tuple[tuple[str, ExactSum], ...]

    def __post_init__(self):
        if self.q_a not in (-1, 0, 1) or self.q_b not in (-1, 0, 1):
            raise DomainError("spherical indices must lie in {-1, 0, 1}")
        for name, _ in self.rhs_combo:
            if name not in ("J0", "J+1", "J-1"):
                raise DomainError(f"unknown generator {name!r}")


T_PLUS_T_MINUS = CommutatorSpec(1, -1, (("J0", ExactSum(-1)),))


@dataclass(frozen=True)
class StatePair:
    bra: State
    ket: State

    def __post_init__(self):
        bra = (HalfInt.of(self.bra[0]), HalfInt.of(self.bra[1]))
        ket = (HalfInt.of(self.ket[0]), HalfInt.of(self.ket[1]))
        check_pair(*bra, what="l")
        check_pair(*ket, what="l")
        object.__setattr__(self, "bra", bra)
        object.__setattr__(self, "ket", ket)


def stretched_states(l: HalfIntLike) -> StatePair:
    """``<l-1, l-1|`` and ``|l, l-1>``."""
    l = HalfInt.of(l)
    return StatePair((l - 1, l - 1), (l, l - 1))


def _state(s) -> State:
    return HalfInt.of(s[0]), HalfInt.of(s[1])


def matrix_element_expansion(bra, q: int, ket, convention: Convention | str = Convention.STANDARD
                             ) -> tuple[ExactSum, ReducedSymbol | None]:
    """Split ``<bra| T_q |ket>`` into a coupling coefficient and a reduced symbol.

    Returns ``(0, None)`` when the multiplets are more than one unit apart.
    """
    convention = Convention(convention)
    (lb, mb), (lk, mk) = _state(bra), _state(ket)
    if abs(lb.twice - lk.twice) > 2:
        return ExactSum(), None
    symbol = ReducedSymbol(lb, lk)
    if convention is Convention.STANDARD:
        if mb != mk + q:
            return ExactSum(), symbol
        return cg(lk, mk, 1, q, lb, mb), symbol
    if mk != mb + q:
        return ExactSum(), symbol
    return cg(lb, mb, 1, q, lk, mk), symbol


def _generator_element(name: str, bra: State, ket: State) -> ExactSum:
    (lb, mb), (lk, mk) = bra, ket
    if lb != lk:
        return ExactSum()
    l, m = lk.value, mk.value
    if name == "J0":
        return ExactSum(m) if mb == mk else ExactSum()
    if name == "J+1":
        if mb != mk + 1:
            return ExactSum()
        return -_SQRT_HALF * sqrt_of_rational((l - m) * (l + m + 1))
    if mb != mk - 1:
        return ExactSum()
    return _SQRT_HALF * sqrt_of_rational((l + m) * (l - m + 1))


def rhs_matrix_element(spec: CommutatorSpec, states: StatePair) -> ExactSum:
    """``<bra| sum(coef * G) |ket>`` using exact ladder factors."""
    total = ExactSum()
    for name, coef in spec.rhs_combo:
        total = total + coef * _generator_element(name, states.bra, states.ket)
    return total


def _intermediate_ls(lb: HalfInt, lk: HalfInt, m: HalfInt) -> list[HalfInt]:
    out = []
    for t in range(lb.twice - 2, lb.twice + 3, 2):
        if t < 0 or abs(t - lk.twice) > 2 or abs(m.twice) > t:
            continue
        out.append(HalfInt(t))
    return out


def _product_pieces(x: int, y: int, states: StatePair, convention: Convention, sign: int
                    ) -> list[RelationTerm]:
    """Terms of ``sign * sum_{l',m'} <bra|T_x|l'm'><l'm'|T_y|ket>``."""
    (lb, mb), (lk, mk) = states.bra, states.ket
    if convention is Convention.STANDARD:
        mid_m = mk + y
        if mb != mid_m + x:
            return []
    else:
        mid_m = mb + x
        if mk - y != mid_m:
            return []
    pieces = []
    for lp in _intermediate_ls(lb, lk, mid_m):
        mid = (lp, mid_m)
        c1, s1 = matrix_element_expansion(states.bra, x, mid, convention)
        if convention is Convention.STANDARD:
            c2, s2 = matrix_element_expansion(mid, y, states.ket, convention)
        else:
            # right-hand factor reflected onto the ket: <l'm'|T_y|ket> -> <ket|T_-y|l'm'>*
            c2, s2 = matrix_element_expansion(states.ket, -y, mid, convention)
        coef = c1 * c2
        if coef:
            pieces.append(RelationTerm(coef if sign > 0 else -coef, (s1, s2)))
    return pieces


def derive_relation(spec: CommutatorSpec, states: StatePair,
                    convention: Convention | str = Convention.STANDARD) -> Relation:
    """Exact relation from sandwiching ``spec`` between ``states``."""
    convention = Convention(convention)
    pieces = (_product_pieces(spec.q_a, spec.q_b, states, convention, +1)
              + _product_pieces(spec.q_b, spec.q_a, states, convention, -1))
    rhs = rhs_matrix_element(spec, states)
    if not pieces and rhs:
        raise InconsistencyError(
            f"no intermediate states connect {states.bra} and {states.ket}, but the right side is {rhs}"
        )
    return Relation.build(pieces, rhs)


def _canonical(sym: ReducedSymbol) -> ReducedSymbol:
    if sym.l_bra <= sym.l_ket:
        return sym
    return ReducedSymbol(sym.l_ket, sym.l_bra)


def symmetrize(r: Relation) -> Relation:
    """Identify ``R(a, b)`` with ``R(b, a)`` by rewriting to ``R(min, max)``."""
    def canon(t: RelationTerm) -> RelationTerm:
        return RelationTerm(t.coefficient, tuple(_canonical(s) for s in t.factors))

    return Relation.build((canon(t) for t in r.terms), r.rhs,
                          tuple(canon(t) for t in r.contributions))


@dataclass(frozen=True)
class CheckResult:
    passes: bool
    residual: ExactSum

    def __bool__(self):
        return self.passes


def substitute_and_check(r: Relation, values: Mapping[ReducedSymbol, ExactSum]) -> CheckResult:
    total = ExactSum()
    for t in r.terms:
        prod = t.coefficient
        for s in t.factors:
            if s not in values:
                raise DomainError(f"no value supplied for {s}")
            prod = prod * values[s]
        total = total + prod
    residual = total - r.rhs
    return CheckResult(residual.is_zero(), residual)


def printed_ratio_residual(l: HalfIntLike, values: Mapping[ReducedSymbol, ExactSum]) -> ExactSum:
    """``R(l,l) - sqrt((2l-1)/(2l+1)) R(l-1,l-1)``, the published closed form."""
    l = HalfInt.of(l)
    L = l.value
    ratio = sqrt_of_rational((2 * L - 1) / (2 * L + 1))
    return values[ReducedSymbol(l, l)] - ratio * values[ReducedSymbol(l - 1, l - 1)]


def implied_diagonal_ratio(r: Relation, l: HalfIntLike) -> ExactSum | None:
    """``R(l,l) / R(l-1,l-1)`` forced by a two-term relation sharing one off-diagonal factor.

    Returns None when the relation does not have that shape, e.g. when the
    two terms carry ``R(l-1,l)`` and ``R(l,l-1)`` separately.
    """
    l = HalfInt.of(l)
    low, high = ReducedSymbol(l - 1, l - 1), ReducedSymbol(l, l)
    if len(r.terms) != 2 or r.rhs:
        return None
    partner = {}
    for t in r.terms:
        rest = list(t.factors)
        for d in (low, high):
            if d in rest:
                rest.remove(d)
                if len(rest) == 1 and d not in partner:
                    partner[d] = (t.coefficient, rest[0])
                break
    if len(partner) != 2 or partner[low][1] != partner[high][1]:
        return None
    return -partner[low][0] / partner[high][0]


def default_oracle_spec(l: HalfIntLike):
    """Smallest irrep with ``j1 - j2 = 1`` whose multiplets are ``1..l``."""
    from .oracle import IrrepSpec

    l = HalfInt.of(l)
    if not l.is_integer() or l.twice < 2:
        raise DomainError(f"default oracle irrep needs an integer l >= 1, got {l}")
    n = l.twice // 2
    return IrrepSpec(HalfInt(n + 1), HalfInt(n - 1))


SKIPPED = "skipped"
PASS = "pass"
FAIL = "fail"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SweepRow:
    l: HalfInt
    spec: str
    relation: Relation
    engine_vs_oracle: str
    printed_ratio: str
    implied_ratio: ExactSum | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "l": str(self.l),
            "spec": self.spec,
            "relation": relation_to_json(self.relation),
            "engine_vs_oracle": self.engine_vs_oracle,
            "printed_ratio": self.printed_ratio,
            "implied_ratio": None if self.implied_ratio is None else sum_to_json(self.implied_ratio),
            "note": self.note,
        }


def verify_closed_form(l_min: int, l_max: int, convention: Convention | str = Convention.STANDARD,
                       symmetrized: bool = False, spec=None) -> list[SweepRow]:
    """Per-l comparison of the derived relation and the published ratio with the oracle.

    ``spec`` fixes one irrep for every row; by default each row uses
    :func:`default_oracle_spec`.
    """
    from .oracle import build_vector_operators, oracle_values

    convention = Convention(convention)
    if not (1 <= l_min <= l_max):
        raise DomainError(f"need 1 <= l_min <= l_max, got {l_min}, {l_max}")
    rows = []
    ops_cache = {}
    for l in range(l_min, l_max + 1):
        L = HalfInt.of(l)
        relation = derive_relation(T_PLUS_T_MINUS, stretched_states(L), convention)
        if symmetrized:
            relation = symmetrize(relation)
        irrep = spec if spec is not None else default_oracle_spec(L)
        if irrep not in ops_cache:
            ops_cache[irrep] = build_vector_operators(irrep)
        ops = ops_cache[irrep]
        notes = []
        if irrep.contains(L - 1) and irrep.contains(L):
            try:
                vals = oracle_values(irrep, relation.symbols(), convention, ops)
                engine = PASS if substitute_and_check(relation, vals).passes else FAIL
            except OracleInconsistencyError:
                engine = INCONSISTENT
                notes.append("oracle matrix elements do not factor under this convention")
        else:
            engine = SKIPPED
            notes.append(f"irrep {irrep} lacks multiplet {L - 1} or {L}")
        if l < 2 or not (irrep.contains(L - 1) and irrep.contains(L)):
            printed = SKIPPED
            if l < 2:
                notes.append("R(0,0) is undefined")
        else:
            diag = [ReducedSymbol(L, L), ReducedSymbol(L - 1, L - 1)]
            try:
                vals = oracle_values(irrep, diag, convention, ops)
                printed = PASS if printed_ratio_residual(L, vals).is_zero() else FAIL
            except (OracleInconsistencyError, UndefinedExtractionError):
                printed = INCONSISTENT
        rows.append(SweepRow(L, str(irrep), relation, engine, printed,
                             implied_diagonal_ratio(relation, L), "; ".join(notes)))
    return rows


def _sym_json(s: ReducedSymbol) -> list[str]:
    return [str(s.l_bra), str(s.l_ket)]


def relation_to_json(r: Relation) -> dict:
    return {
        "terms": [{"coef": sum_to_json(t.coefficient), "factors": [_sym_json(s) for s in t.factors]}
                  for t in r.terms],
        "rhs": sum_to_json(r.rhs),
    }


def relation_from_json(data: dict) -> Relation:
    terms = [
        RelationTerm(sum_from_json(t["coef"]),
                     tuple(ReducedSymbol(HalfInt.of(a), HalfInt.of(b)) for a, b in t["factors"]))
        for t in data["terms"]
    ]
    return Relation.build(terms, sum_from_json(data["rhs"]))


def format_relation(r: Relation, terms: Sequence[RelationTerm] | None = None) -> str:
    terms = r.terms if terms is None else terms
    if not terms:
        return f"0 = {r.rhs}"
    parts = []
    for i, t in enumerate(terms):
        c = t.coefficient
        neg = len(c.terms) == 1 and c.terms[0].coefficient < 0
        mag = -c if neg else c
        body = "*".join(map(str, t.factors))
        text = body if mag == 1 else (f"{mag}*{body}" if len(mag.terms) == 1 else f"({mag})*{body}")
        if i == 0:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append((" - " if neg else " + ") + text)
    return "".join(parts) + f" = {r.rhs}"


def sweep_json(rows: Sequence[SweepRow]) -> str:
    return json.dumps({"rows": [row.to_json() for row in rows]}, indent=2, sort_keys=True) + "\n"
