"""The 4x4 defining representation of so(4) and an exact commutator checker.

Generators are built from ``I_ij = E_ij - E_ji``:

    J0  = i I21          J+-1 = -sqrt(1/2) (I31 +- i I32)
    T0  = -i I43         T+-1 = -sqrt(1/2) (I42 -+ I41)      (AS_PRINTED)
                         T+-1 = -sqrt(1/2) (I42 -+ i I41)    (IMAGINARY_T)

The published relation list is treated as a set of claims; the report records
which of them each variant actually satisfies.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError
from .exact import ExactComplex, ExactSum, I, complex_to_json, sqrt_of_rational

__all__ = [
    "Matrix4C",
    "Variant",
    "GeneratorSet",
    "RelationRecord",
    "RelationReport",
    "build_elementary",
    "build_antisymmetric",
    "build_generators",
    "commutator",
    "check_relations",
    "jacobi_residuals",
    "report_json",
]

N = 4
_ZERO = ExactComplex()
_ONE = ExactComplex(ExactSum(1))
_SQRT_HALF = sqrt_of_rational(Fraction(1, 2))


class Matrix4C:
    """Immutable 4x4 matrix of :class:`ExactComplex` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence] | None = None):
        if rows is None:
            grid = tuple((_ZERO,) * N for _ in range(N))
        else:
            grid = tuple(
                tuple(x if isinstance(x, ExactComplex) else ExactComplex._coerce(x) for x in row)
                for row in rows
            )
            if len(grid) != N or any(len(r) != N for r in grid) or any(
                x is None for r in grid for x in r
            ):
                raise DomainError("Matrix4C needs a 4x4 grid of exact entries")
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix4C is immutable")

    @classmethod
    def zero(cls) -> "Matrix4C":
        return cls()

    def __getitem__(self, idx: tuple[int, int]) -> ExactComplex:
        """Zero-based ``(row, col)`` access."""
        i, j = idx
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> ExactComplex:
        """One-based access, matching the ``E_ij`` labels."""
        return self.rows[i - 1][j - 1]

    def __add__(self, other: "Matrix4C") -> "Matrix4C":
        return Matrix4C([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix4C") -> "Matrix4C":
        return Matrix4C([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix4C":
        return Matrix4C([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix4C":
        c = ExactComplex._coerce(c)
        return Matrix4C([[c * a for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, Matrix4C):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix4C") -> "Matrix4C":
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                acc = _ZERO
                for k in range(N):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix4C(out)

    def transpose(self) -> "Matrix4C":
        return Matrix4C([[self.rows[j][i] for j in range(N)] for i in range(N)])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def nonzero_entries(self) -> list[tuple[int, int, ExactComplex]]:
        """One-based ``(row, col, value)`` for every nonzero entry."""
        return [
            (i + 1, j + 1, x)
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
            if not x.is_zero()
        ]

    def __eq__(self, other):
        if not isinstance(other, Matrix4C):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        inner = ", ".join(f"({i},{j})={x}" for i, j, x in self.nonzero_entries())
        return f"Matrix4C({inner})"


def build_elementary(i: int, j: int) -> Matrix4C:
    """``E_ij``: a single unit at row ``i``, column ``j`` (one-based)."""
    if not (1 <= i <= N and 1 <= j <= N):
        raise DomainError(f"E_{i}{j}: indices must lie in 1..4")
    return Matrix4C([[_ONE if (r, c) == (i, j) else _ZERO for c in range(1, N + 1)]
                     for r in range(1, N + 1)])


def build_antisymmetric(i: int, j: int) -> Matrix4C:
    """``I_ij = E_ij - E_ji``."""
    return build_elementary(i, j) - build_elementary(j, i)


def commutator(a: Matrix4C, b: Matrix4C) -> Matrix4C:
    return a @ b - b @ a


class Variant(enum.Enum):
    AS_PRINTED = "as-printed"
    IMAGINARY_T = "imaginary-t"


@dataclass(frozen=True)
class GeneratorSet:
    J0: Matrix4C
    Jp1: Matrix4C
    Jm1: Matrix4C
    T0: Matrix4C
    Tp1: Matrix4C
    Tm1: Matrix4C
    variant: Variant

    def J(self, q: int) -> Matrix4C:
        return {0: self.J0, 1: self.Jp1, -1: self.Jm1}[q]

    def T(self, q: int) -> Matrix4C:
        return {0: self.T0, 1: self.Tp1, -1: self.Tm1}[q]

    def named(self) -> list[tuple[str, Matrix4C]]:
        return [("J0", self.J0), ("J+1", self.Jp1), ("J-1", self.Jm1),
                ("T0", self.T0), ("T+1", self.Tp1), ("T-1", self.Tm1)]


def build_generators(variant: Variant | str = Variant.AS_PRINTED) -> GeneratorSet:
    variant = Variant(variant)
    I21, I31, I32 = build_antisymmetric(2, 1), build_antisymmetric(3, 1), build_antisymmetric(3, 2)
    I41, I42, I43 = build_antisymmetric(4, 1), build_antisymmetric(4, 2), build_antisymmetric(4, 3)
    s = ExactComplex(-_SQRT_HALF)
    J0 = I21.scale(I)
    Jp1 = (I31 + I32.scale(I)).scale(s)
    Jm1 = (I31 - I32.scale(I)).scale(s)
    T0 = I43.scale(-I)
    partner = I41 if variant is Variant.AS_PRINTED else I41.scale(I)
    Tp1 = (I42 - partner).scale(s)
    Tm1 = (I42 + partner).scale(s)
    return GeneratorSet(J0, Jp1, Jm1, T0, Tp1, Tm1, variant)


@dataclass(frozen=True)
class RelationRecord:
    relation_id: str
    block: str
    lhs_description: str
    expected_rhs_description: str
    passes: bool
    residual: Matrix4C = field(repr=False)


@dataclass(frozen=True)
class RelationReport:
    variant: Variant
    records: tuple[RelationRecord, ...]
    # instances whose right-hand side names a component that does not exist
    undefined: tuple[str, ...] = ()

    def block(self, name: str) -> list[RelationRecord]:
        return [r for r in self.records if r.block == name]

    def by_id(self, relation_id: str) -> RelationRecord:
        for r in self.records:
            if r.relation_id == relation_id:
                return r
        raise KeyError(relation_id)

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "relations": [
                {
                    "id": r.relation_id,
                    "block": r.block,
                    "passes": r.passes,
                    "residual_nonzero_entries": [
                        {"row": i, "col": j, "value": complex_to_json(x)}
                        for i, j, x in r.residual.nonzero_entries()
                    ],
                }
                for r in self.records
            ],
            "undefined": list(self.undefined),
        }


def _q(q: int) -> str:
    return {1: "+1", 0: "0", -1: "-1"}[q]


def _coef_str(c: ExactSum) -> str:
    return "1" if c == 1 else "-1" if c == -1 else f"({c})"


def _record(rid: str, block: str, lhs: str, rhs_desc: str, lhs_m: Matrix4C, rhs_m: Matrix4C):
    residual = lhs_m - rhs_m
    return RelationRecord(rid, block, lhs, rhs_desc, residual.is_zero(), residual)


def _vector_coefficient(sign: int, q: int) -> ExactSum:
    # -+ sqrt(1/2) sqrt((1 -+ q)(1 +- q + 1))
    radicand = (1 - sign * q) * (2 + sign * q)
    return -sign * _SQRT_HALF * sqrt_of_rational(max(radicand, 0))


def _iter_relations(g: GeneratorSet) -> Iterator[RelationRecord | str]:
    J, T = g.J, g.T
    for s in (1, -1):
        yield _record(f"[J0,J{_q(s)}]={'+' if s > 0 else '-'}J{_q(s)}", "printed",
                      f"[J0,J{_q(s)}]", f"{s:+d}*J{_q(s)}", commutator(J(0), J(s)), J(s).scale(s))
    yield _record("[J+1,J-1]=-J0", "printed", "[J+1,J-1]", "-1*J0",
                  commutator(J(1), J(-1)), -J(0))
    for s in (1, -1):
        yield _record(f"[T0,T{_q(s)}]={'+' if s > 0 else '-'}J{_q(s)}", "printed",
                      f"[T0,T{_q(s)}]", f"{s:+d}*J{_q(s)}", commutator(T(0), T(s)), J(s).scale(s))
    yield _record("[T+1,T-1]=-J0", "printed", "[T+1,T-1]", "-1*J0",
                  commutator(T(1), T(-1)), -J(0))
    for q in (-1, 0, 1):
        yield _record(f"[J0,T{_q(q)}]={q}*T{_q(q)}", "printed", f"[J0,T{_q(q)}]",
                      f"{q}*T{_q(q)}", commutator(J(0), T(q)), T(q).scale(q))

    # last family under both readings of the shifted component
    for block, shift_of in (("printed", lambda s: 1), ("alternate", lambda s: s)):
        for s in (1, -1):
            for q in (-1, 0, 1):
                c = _vector_coefficient(s, q)
                target = q + shift_of(s)
                lhs = f"[J{_q(s)},T{_q(q)}]"
                if c.is_zero():
                    rhs_desc, rhs_m = "0", Matrix4C.zero()
                elif abs(target) > 1:
                    yield f"{block}:{lhs}->T{target:+d}"
                    continue
                else:
                    rhs_desc, rhs_m = f"{_coef_str(c)}*T{_q(target)}", T(target).scale(c)
                rid = f"{lhs}={rhs_desc}"
                if block == "alternate":
                    rid = "alt:" + rid
                yield _record(rid, block, lhs, rhs_desc, commutator(J(s), T(q)), rhs_m)

    half = Fraction(1, 2)
    for a, b in itertools.product((0, 1, -1), repeat=2):
        M = (J(a) + T(a)).scale(half)
        Nb = (J(b) - T(b)).scale(half)
        yield _record(f"[M{_q(a)},N{_q(b)}]=0", "decoupling", f"[M{_q(a)},N{_q(b)}]", "0",
                      commutator(M, Nb), Matrix4C.zero())


def check_relations(gens: GeneratorSet) -> RelationReport:
    """Evaluate every relation instance exactly.

    Blocks: ``printed`` (the relation list with the last family shifting
    to ``T_{q+1}``), ``alternate`` (``T_{q+-1}`` reading of the last family)
    and ``decoupling`` (``[M_a, N_b] = 0`` with ``M = (J+T)/2``, ``N = (J-T)/2``).
    """
    records, undefined = [], []
    for item in _iter_relations(gens):
        if isinstance(item, str):
            undefined.append(item)
        else:
            records.append(item)
    return RelationReport(gens.variant, tuple(records), tuple(undefined))


def jacobi_residuals(gens: GeneratorSet) -> list[tuple[str, str, str, Matrix4C]]:
    """Jacobi sums for every ordered triple of generators (all should vanish)."""
    out = []
    for (na, a), (nb, b), (nc, c) in itertools.product(gens.named(), repeat=3):
        total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
                 + commutator(c, commutator(a, b)))
        out.append((na, nb, nc, total))
    return out


def report_json(reports: Sequence[RelationReport]) -> str:
    """Canonical serialization used for golden comparison."""
    return json.dumps({"reports": [r.to_json() for r in reports]}, indent=2, sort_keys=True) + "\n"


def flip_sign(gens: GeneratorSet, name: str = "Jp1", part: str = "imag") -> GeneratorSet:
    """Copy of ``gens`` with a sign flipped in one generator (fault injection).

    ``part="imag"`` flips the imaginary unit (``J+1`` then acts like ``J-1``),
    ``part="all"`` negates the whole matrix.  Overall negation leaves every
    relation that is linear in that generator intact, so it is the weaker probe.
    """
    m = getattr(gens, name)
    if part == "all":
        flipped = -m
    elif part == "imag":
        flipped = Matrix4C([[m[i, j].conjugate() for j in range(N)] for i in range(N)])
    else:
        raise DomainError(f"unknown part {part!r}; expected 'imag' or 'all'")
    return replace(gens, **{name: flipped})
