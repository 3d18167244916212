"""Explicit SO(4) irreps as SU(2) x SU(2) products, used as ground truth.

An irrep ``(j1, j2)`` is the tensor product of spin-j1 and spin-j2.  The total
angular momentum ``J = J1 + J2`` and the difference ``B = J1 - J2`` are both
vector operators under ``J``; ``B`` plays the role of the rank-1 tensor whose
reduced matrix elements the recurrence relates.  Everything is exact.

Spherical components: ``V+1 = -(Vx + i Vy)/sqrt2``, ``V0 = Vz``,
``V-1 = (Vx - i Vy)/sqrt2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .cg import cg
from .conventions import Convention
from .errors import DomainError, OracleInconsistencyError, UndefinedExtractionError
from .exact import ExactComplex, ExactSum, sqrt_of_rational
from .halfint import HalfInt, HalfIntLike, projections

__all__ = [
    "IrrepSpec",
    "SU2Generators",
    "CoupledBasis",
    "OperatorMatrix",
    "VectorOperators",
    "build_su2_generators",
    "build_coupled_basis",
    "build_vector_operators",
    "extract_reduced",
    "oracle_values",
]

Label = tuple[HalfInt, HalfInt]
_SQRT_HALF = sqrt_of_rational(Fraction(1, 2))


@dataclass(frozen=True)
class IrrepSpec:
    j1: HalfInt
    j2: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "j1", HalfInt.of(self.j1))
        object.__setattr__(self, "j2", HalfInt.of(self.j2))
        if self.j1.twice < 0 or self.j2.twice < 0:
            raise DomainError(f"irrep labels must be nonnegative, got ({self.j1}, {self.j2})")

    @property
    def ls(self) -> list[HalfInt]:
        lo, hi = abs(self.j1.twice - self.j2.twice), self.j1.twice + self.j2.twice
        return [HalfInt(t) for t in range(lo, hi + 1, 2)]

    @property
    def dimension(self) -> int:
        return (self.j1.twice + 1) * (self.j2.twice + 1)

    def contains(self, l: HalfIntLike) -> bool:
        return HalfInt.of(l) in self.ls

    def __str__(self):
        return f"({self.j1},{self.j2})"


class SU2Generators(NamedTuple):
    """Dense ``J+``, ``J-``, ``Jz`` in the basis ``|j j>, |j j-1>, ..., |j -j>``."""

    plus: list[list[ExactSum]]
    minus: list[list[ExactSum]]
    z: list[list[ExactSum]]


def _ladder(j: HalfInt, m: HalfInt, step: int) -> ExactSum:
    # <j, m+step| J_step |j, m> for step = +-1 (J+ or J-)
    J, M = j.value, m.value
    return sqrt_of_rational((J - step * M) * (J + step * M + 1))


def build_su2_generators(j: HalfIntLike) -> SU2Generators:
    j = HalfInt.of(j)
    if j.twice < 0:
        raise DomainError(f"j must be nonnegative, got {j}")
    ms = projections(j)
    n = len(ms)
    zero = ExactSum()
    plus = [[zero] * n for _ in range(n)]
    z = [[zero] * n for _ in range(n)]
    for col, m in enumerate(ms):
        z[col][col] = ExactSum(m.value)
        if col > 0:
            plus[col - 1][col] = _ladder(j, m, 1)
    minus = [[plus[c][r] for c in range(n)] for r in range(n)]
    return SU2Generators(plus, minus, z)


@dataclass(frozen=True)
class CoupledBasis:
    """Coupled labels ``(l, m)`` and the orthogonal map from ``|m1 m2>``.

    ``rows[k]`` maps product index -> ``<j1 m1; j2 m2 | l m>`` for the k-th
    coupled label, i.e. row k of ``U``.
    """

    spec: IrrepSpec
    labels: tuple[Label, ...]
    product_labels: tuple[tuple[HalfInt, HalfInt], ...]
    rows: tuple[dict[int, ExactSum], ...] = field(repr=False)

    def index(self, label: Label) -> int:
        return self._index[label]

    @property
    def _index(self) -> dict[Label, int]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {lab: k for k, lab in enumerate(self.labels)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def matrix(self) -> list[list[ExactSum]]:
        n = len(self.labels)
        zero = ExactSum()
        return [[row.get(p, zero) for p in range(n)] for row in self.rows]

    def gram_is_identity(self) -> bool:
        """Exact test of ``U^T U = 1`` (equivalently column orthonormality)."""
        n = len(self.labels)
        cols: list[dict[int, ExactSum]] = [dict() for _ in range(n)]
        for k, row in enumerate(self.rows):
            for p, v in row.items():
                cols[p][k] = v
        for a in range(n):
            for b in range(a, n):
                acc = ExactSum()
                for k, v in cols[a].items():
                    w = cols[b].get(k)
                    if w is not None:
                        acc = acc + v * w
                if acc != (1 if a == b else 0):
                    return False
        return True


def build_coupled_basis(spec: IrrepSpec) -> CoupledBasis:
    m1s, m2s = projections(spec.j1), projections(spec.j2)
    product_labels = tuple((a, b) for a in m1s for b in m2s)
    by_m: dict[HalfInt, list[int]] = {}
    for p, (a, b) in enumerate(product_labels):
        by_m.setdefault(a + b, []).append(p)
    labels, rows = [], []
    for l in spec.ls:
        for m in projections(l):
            labels.append((l, m))
            row = {}
            for p in by_m.get(m, ()):
                a, b = product_labels[p]
                c = cg(spec.j1, a, spec.j2, b, l, m)
                if c:
                    row[p] = c
            rows.append(row)
    return CoupledBasis(spec, tuple(labels), product_labels, tuple(rows))


@dataclass(frozen=True)
class OperatorMatrix:
    """Sparse matrix of an operator component in the coupled basis."""

    component: str  # "J" or "B"
    q: int
    labels: tuple[Label, ...]
    entries: dict[tuple[Label, Label], ExactComplex] = field(repr=False)

    @property
    def component_tag(self) -> str:
        return f"{self.component}{self.q:+d}" if self.q else f"{self.component}0"

    def entry(self, bra: Label, ket: Label) -> ExactComplex:
        return self.entries.get((bra, ket), ExactComplex())

    def dense(self) -> list[list[ExactComplex]]:
        return [[self.entry(r, c) for c in self.labels] for r in self.labels]


class VectorOperators:
    """``J_q`` and ``B_q`` for one irrep, evaluated lazily and cached."""

    def __init__(self, spec: IrrepSpec, basis: CoupledBasis | None = None):
        self.spec = spec
        self.basis = basis or build_coupled_basis(spec)
        self._pindex = {lab: p for p, lab in enumerate(self.basis.product_labels)}
        self._by_m: dict[HalfInt, list[int]] = {}
        for k, (l, m) in enumerate(self.basis.labels):
            self._by_m.setdefault(m, []).append(k)
        self._applied: dict[tuple[str, int, int], dict[int, ExactSum]] = {}
        self._matrices: dict[tuple[str, int], OperatorMatrix] = {}

    def _single(self, j: HalfInt, m: HalfInt, q: int) -> ExactSum:
        # <j, m+q| V_q |j, m> for one SU(2) factor
        if q == 0:
            return ExactSum(m.value)
        if abs((m + q).twice) > j.twice:
            return ExactSum()
        ladder = _ladder(j, m, q)
        return -_SQRT_HALF * ladder if q == 1 else _SQRT_HALF * ladder

    def _apply(self, op: str, q: int, k: int) -> dict[int, ExactSum]:
        """Product-basis components of ``V_q |label_k>``."""
        key = (op, q, k)
        hit = self._applied.get(key)
        if hit is not None:
            return hit
        sign2 = 1 if op == "J" else -1
        j1, j2 = self.spec.j1, self.spec.j2
        out: dict[int, ExactSum] = {}
        for p, amp in self.basis.rows[k].items():
            m1, m2 = self.basis.product_labels[p]
            c1 = self._single(j1, m1, q)
            if c1:
                t = self._pindex[(m1 + q, m2)]
                out[t] = out.get(t, ExactSum()) + amp * c1
            c2 = self._single(j2, m2, q)
            if c2:
                t = self._pindex[(m1, m2 + q)]
                out[t] = out.get(t, ExactSum()) + amp * c2 * sign2
        self._applied[key] = out
        return out

    def element(self, op: str, q: int, bra: Label, ket: Label) -> ExactComplex:
        """``<bra| V_q |ket>`` with ``V`` = ``"J"`` or ``"B"``."""
        if op not in ("J", "B") or q not in (-1, 0, 1):
            raise DomainError(f"unknown operator component {op}{q}")
        ib, ik = self.basis.index(bra), self.basis.index(ket)
        if bra[1] != ket[1] + q:
            return ExactComplex()
        vec = self._apply(op, q, ik)
        acc = ExactSum()
        for p, amp in self.basis.rows[ib].items():
            v = vec.get(p)
            if v is not None:
                acc = acc + amp * v
        return ExactComplex(acc)

    def matrix(self, op: str, q: int) -> OperatorMatrix:
        key = (op, q)
        if key not in self._matrices:
            entries = {}
            labels = self.basis.labels
            for k, ket in enumerate(labels):
                for ib in self._by_m.get(ket[1] + q, ()):
                    bra = labels[ib]
                    v = self.element(op, q, bra, ket)
                    if v:
                        entries[(bra, ket)] = v
            self._matrices[key] = OperatorMatrix(op, q, labels, entries)
        return self._matrices[key]

    def J(self, q: int) -> OperatorMatrix:
        return self.matrix("J", q)

    def B(self, q: int) -> OperatorMatrix:
        return self.matrix("B", q)


def build_vector_operators(spec: IrrepSpec) -> VectorOperators:
    return VectorOperators(spec)


def extract_reduced(ops: VectorOperators, l_bra: HalfIntLike, l_ket: HalfIntLike,
                    convention: Convention | str = Convention.STANDARD,
                    operator: str = "B") -> ExactSum:
    """Reduced element ``R(l_bra, l_ket)`` obtained by dividing matrix elements by CGs.

    Every ``(m, q)`` slot with a nonzero coupling coefficient is evaluated and
    the quotients must agree exactly.
    """
    convention = Convention(convention)
    lb, lk = HalfInt.of(l_bra), HalfInt.of(l_ket)
    if not (ops.spec.contains(lb) and ops.spec.contains(lk)):
        raise DomainError(f"l values ({lb}, {lk}) are not both present in irrep {ops.spec}")
    found: ExactSum | None = None
    first_slot = None
    for q in (-1, 0, 1):
        for mk in projections(lk):
            if convention is Convention.STANDARD:
                mb = mk + q
                if abs(mb.twice) > lb.twice:
                    continue
                c = cg(lk, mk, 1, q, lb, mb)
            else:
                mb = mk - q
                if abs(mb.twice) > lb.twice:
                    continue
                c = cg(lb, mb, 1, q, lk, mk)
            if not c:
                continue
            element = ops.element(operator, q, (lb, mb), (lk, mk))
            if not element.is_real():
                raise OracleInconsistencyError(f"complex matrix element at {(lb, mb, q, lk, mk)}")
            value = element.re / c
            if found is None:
                found, first_slot = value, (mb, q, mk)
            elif value != found:
                raise OracleInconsistencyError(
                    f"R({lb},{lk}) under {convention.value} convention: slot "
                    f"(m_bra={first_slot[0]}, q={first_slot[1]}, m_ket={first_slot[2]}) gives "
                    f"{found}, slot (m_bra={mb}, q={q}, m_ket={mk}) gives {value}"
                )
    if found is None:
        raise UndefinedExtractionError(f"every coupling slot for R({lb},{lk}) vanishes")
    return found


def oracle_values(spec: IrrepSpec, symbols: Iterable, convention: Convention | str = Convention.STANDARD,
                  ops: VectorOperators | None = None) -> dict:
    """Map each symbol (anything with ``l_bra``/``l_ket``) to its oracle value.

    Symbols naming an ``l`` absent from the irrep map to zero: those
    intermediate states do not exist, so they contribute nothing.
    """
    ops = ops or build_vector_operators(spec)
    out = {}
    for sym in symbols:
        if sym in out:
            continue
        if spec.contains(sym.l_bra) and spec.contains(sym.l_ket):
            out[sym] = extract_reduced(ops, sym.l_bra, sym.l_ket, convention)
        else:
            out[sym] = ExactSum()
    return out
