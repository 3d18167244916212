"""Printed values from the original O(4) derivation, checked exactly.

The derivation evaluates twelve vector-coupling coefficients for the states
``<l-1, l-1|`` and ``|l, l-1>``, combines six of them into a three-term
relation, and simplifies that relation to a ratio between diagonal reduced
elements.  Each printed quantity is stored here as written and compared
against the exact values computed elsewhere in the package.  Discrepancies
are reported, never corrected silently.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .cg import cg
from .conventions import Convention
from .exact import ExactSum, sqrt_of_rational, sum_to_json
from .halfint import HalfInt
from .recurrence import (
    ReducedSymbol,
    RelationTerm,
    T_PLUS_T_MINUS,
    derive_relation,
    stretched_states,
)

__all__ = [
    "CoefficientSlot",
    "SLOTS",
    "SlotRecord",
    "PieceRecord",
    "slot_records",
    "printed_pieces",
    "piece_records",
    "reproduction_report",
    "report_json",
    "MATCH",
    "SIGN_DROPPED",
    "MISMATCH",
]

MATCH = "match"
SIGN_DROPPED = "sign-dropped"
MISMATCH = "mismatch"


def _root(x) -> ExactSum:
    return sqrt_of_rational(Fraction(x))


@dataclass(frozen=True)
class CoefficientSlot:
    slot_id: str
    bracket: str
    # l -> (j1, m1, q, j) with j2 = 1
    args: Callable[[int], tuple[int, int, int, int]]
    printed: Callable[[int], ExactSum]
    # enters the final three-term relation
    contributes: bool


def _F(a, b=1):
    return Fraction(a, b)


SLOTS: tuple[CoefficientSlot, ...] = (
    CoefficientSlot("A1", "<l-1,l-1;1,1|l,l>", lambda l: (l - 1, l - 1, 1, l),
                    lambda l: ExactSum(1), True),
    CoefficientSlot("A2", "<l-1,l-1;1,1|l-1,l>", lambda l: (l - 1, l - 1, 1, l - 1),
                    lambda l: ExactSum(0), False),
    CoefficientSlot("A3", "<l-1,l-1;1,1|l-2,l>", lambda l: (l - 1, l - 1, 1, l - 2),
                    lambda l: ExactSum(0), False),
    CoefficientSlot("A4", "<l,l-1;1,1|l+1,l>", lambda l: (l, l - 1, 1, l + 1),
                    lambda l: _root(_F(l, l + 1)), False),
    CoefficientSlot("A5", "<l,l-1;1,1|l,l>", lambda l: (l, l - 1, 1, l),
                    lambda l: _root(_F(1, l + 1)), True),
    CoefficientSlot("A6", "<l,l-1;1,1|l-1,l>", lambda l: (l, l - 1, 1, l - 1),
                    lambda l: ExactSum(0), False),
    CoefficientSlot("B1", "<l-1,l-1;1,-1|l,l-2>", lambda l: (l - 1, l - 1, -1, l),
                    lambda l: _root(_F(1, (2 * l - 1) * l)), True),
    CoefficientSlot("B2", "<l-1,l-1;1,-1|l-1,l-2>", lambda l: (l - 1, l - 1, -1, l - 1),
                    lambda l: _root(_F(1, l)), True),
    CoefficientSlot("B3", "<l-1,l-1;1,-1|l-2,l-2>", lambda l: (l - 1, l - 1, -1, l - 2),
                    lambda l: _root(_F(2 * l - 3, 2 * l - 1)), False),
    CoefficientSlot("B4", "<l,l-1;1,-1|l+1,l-2>", lambda l: (l, l - 1, -1, l + 1),
                    lambda l: _root(_F((2 * l - 2) * (2 * l - 1), (2 * l + 1) * (2 * l + 2))), False),
    CoefficientSlot("B5", "<l,l-1;1,-1|l,l-2>", lambda l: (l, l - 1, -1, l),
                    lambda l: _root(_F(2 * l - 1, l * (l + 1))), True),
    CoefficientSlot("B6", "<l,l-1;1,-1|l-1,l-2>", lambda l: (l, l - 1, -1, l - 1),
                    lambda l: _root(_F((2 * l - 1) * (l - 1), l * (2 * l + 1))), True),
)


def _classify(printed: ExactSum, computed: ExactSum) -> str:
    if printed == computed:
        return MATCH
    if printed == -computed:
        return SIGN_DROPPED
    return MISMATCH


@dataclass(frozen=True)
class SlotRecord:
    slot_id: str
    bracket: str
    l: int
    printed: ExactSum
    computed: ExactSum
    status: str
    contributes: bool

    def to_json(self) -> dict:
        return {
            "slot": self.slot_id,
            "bracket": self.bracket,
            "l": self.l,
            "printed": sum_to_json(self.printed),
            "computed": sum_to_json(self.computed),
            "status": self.status,
            "contributes": self.contributes,
        }


def _slot_value(j1: int, m1: int, q: int, j: int) -> ExactSum:
    m = m1 + q
    if j < 0 or abs(m) > j:
        # the coupled state does not exist, so the coefficient vanishes
        return ExactSum()
    return cg(j1, m1, 1, q, j, m)


def slot_records(ls: Iterable[int]) -> list[SlotRecord]:
    out = []
    for l in ls:
        for slot in SLOTS:
            printed = slot.printed(l)
            computed = _slot_value(*slot.args(l))
            out.append(SlotRecord(slot.slot_id, slot.bracket, l, printed, computed,
                                  _classify(printed, computed), slot.contributes))
    return out


def printed_pieces(l: int) -> list[RelationTerm]:
    """The three printed terms, in printed order (bra-anchored factors)."""
    L = HalfInt.of(l)
    lo, hi = L - 1, L
    off = (ReducedSymbol(lo, hi), ReducedSymbol(hi, hi))
    return [
        RelationTerm(_root(_F(1, l + 1)), off),
        RelationTerm(-_root(_F(1, l * l * (l + 1))), off),
        RelationTerm(-_root(_F((2 * l - 1) * (l - 1), l * l * (2 * l + 1))),
                     (ReducedSymbol(lo, lo), ReducedSymbol(hi, lo))),
    ]


@dataclass(frozen=True)
class PieceRecord:
    l: int
    index: int
    factors: tuple[ReducedSymbol, ...]
    printed: ExactSum
    derived: ExactSum | None
    status: str

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "index": self.index,
            "factors": [[str(s.l_bra), str(s.l_ket)] for s in self.factors],
            "printed": sum_to_json(self.printed),
            "derived": None if self.derived is None else sum_to_json(self.derived),
            "status": self.status,
        }


def piece_records(l: int) -> list[PieceRecord]:
    """Pair each printed term with the engine's unmerged contribution."""
    relation = derive_relation(T_PLUS_T_MINUS, stretched_states(l), Convention.PAPER)
    available = list(relation.contributions)
    out = []
    for i, piece in enumerate(printed_pieces(l)):
        match = next((c for c in available if c.factors == piece.factors), None)
        if match is None:
            out.append(PieceRecord(l, i, piece.factors, piece.coefficient, None, MISMATCH))
            continue
        available.remove(match)
        out.append(PieceRecord(l, i, piece.factors, piece.coefficient, match.coefficient,
                               _classify(piece.coefficient, match.coefficient)))
    return out


def reproduction_report(ls: Iterable[int]) -> dict:
    ls = list(ls)
    slots = slot_records(ls)
    pieces = [p for l in ls for p in piece_records(l)]
    flags = sorted({f"{r.slot_id} {r.bracket}: {r.status}" for r in slots if r.status != MATCH})
    flags += sorted({f"term {p.index}: {p.status}" for p in pieces if p.status != MATCH})
    return {
        "l_values": ls,
        "coefficients": [r.to_json() for r in slots],
        "relation_terms": [p.to_json() for p in pieces],
        "flags": flags,
    }


def report_json(ls: Iterable[int]) -> str:
    return json.dumps(reproduction_report(ls), indent=2, sort_keys=True) + "\n"
