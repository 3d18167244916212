from fractions import Fraction

import pytest

from o4tensor.cg import cg
from o4tensor.conventions import Convention
from o4tensor.errors import DomainError, OracleInconsistencyError, UndefinedExtractionError
from o4tensor.exact import ExactComplex, ExactSum, sqrt_of_rational
from o4tensor.halfint import HalfInt
from o4tensor.oracle import (
    IrrepSpec,
    build_coupled_basis,
    build_su2_generators,
    build_vector_operators,
    extract_reduced,
    oracle_values,
)
from o4tensor.recurrence import ReducedSymbol


def H(x):
    return HalfInt.of(Fraction(x))


def small_specs(limit=8):
    for t1 in range(limit + 1):
        for t2 in range(limit + 1 - t1):
            yield IrrepSpec(HalfInt(t1), HalfInt(t2))


def test_su2_examples():
    g = build_su2_generators(Fraction(1, 2))
    flat = [x for row in g.plus for x in row if x]
    assert flat == [1]
    g1 = build_su2_generators(1)
    assert sorted(str(x) for row in g1.plus for x in row if x) == ["sqrt(2)", "sqrt(2)"]
    g0 = build_su2_generators(0)
    assert len(g0.z) == 1 and not g0.z[0][0] and not g0.plus[0][0]


def test_spec_ranges():
    s = IrrepSpec(H(Fraction(1, 2)), H(Fraction(1, 2)))
    assert [l.twice for l in s.ls] == [0, 2] and s.dimension == 4
    s = IrrepSpec(H(1), H(1))
    assert [l.twice for l in s.ls] == [0, 2, 4] and s.dimension == 9
    assert str(IrrepSpec(H(Fraction(3, 2)), H(Fraction(1, 2)))) == "(3/2,1/2)"
    with pytest.raises(DomainError):
        IrrepSpec(HalfInt(-1), HalfInt(0))


def test_basis_orthonormal():
    basis = build_coupled_basis(IrrepSpec(H(Fraction(3, 2)), H(1)))
    assert len(basis.labels) == 12
    assert basis.gram_is_identity()


def test_b0_hand_example():
    # |00> = (ud - du)/sqrt2, |10> = (ud + du)/sqrt2, B0 = Jz1 - Jz2
    ops = build_vector_operators(IrrepSpec(H(Fraction(1, 2)), H(Fraction(1, 2))))
    assert ops.element("B", 0, (H(0), H(0)), (H(1), H(0))) == ExactComplex(1)


def test_extraction_hand_example():
    ops = build_vector_operators(IrrepSpec(H(Fraction(1, 2)), H(Fraction(1, 2))))
    assert extract_reduced(ops, 0, 1, Convention.STANDARD) == -sqrt_of_rational(3)


@pytest.mark.parametrize("spec", list(small_specs(6)), ids=str)
def test_j_reduced_and_diagonal(spec):
    ops = build_vector_operators(spec)
    for (l, m), _ in zip(ops.basis.labels, range(10**6)):
        assert ops.element("J", 0, (l, m), (l, m)) == ExactComplex(m.value)
    for l in spec.ls:
        if l.twice:
            expected = sqrt_of_rational(l.value * (l.value + 1))
            assert extract_reduced(ops, l, l, operator="J") == expected


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_equal_labels_diagonal_vanishes(t):
    spec = IrrepSpec(HalfInt(t), HalfInt(t))
    ops = build_vector_operators(spec)
    for l in spec.ls:
        if l.twice:
            assert extract_reduced(ops, l, l).is_zero()


def test_m_independence_all_small_specs():
    for spec in small_specs():
        ops = build_vector_operators(spec)
        for lb in spec.ls:
            for lk in spec.ls:
                if abs(lb.twice - lk.twice) > 2 or (lb.twice == 0 and lk.twice == 0):
                    continue
                extract_reduced(ops, lb, lk, Convention.STANDARD)


def test_selection_and_vector_algebra():
    for spec in small_specs(6):
        ops = build_vector_operators(spec)
        for q in (-1, 0, 1):
            B = ops.B(q)
            for (bra, ket), v in B.entries.items():
                assert v and abs(bra[0].twice - ket[0].twice) <= 2
                # [J0, Bq] = q Bq, with J0 diagonal
                assert (bra[1] - ket[1]).value == q


def test_undefined_extraction():
    spec = IrrepSpec(H(2), H(1))
    ops = build_vector_operators(spec)
    with pytest.raises(UndefinedExtractionError):
        extract_reduced(ops, 1, 3)
    with pytest.raises(DomainError):
        extract_reduced(ops, 1, 4)


def test_bra_first_convention_is_not_consistent():
    ops = build_vector_operators(IrrepSpec(H(Fraction(3, 2)), H(Fraction(1, 2))))
    with pytest.raises(OracleInconsistencyError):
        extract_reduced(ops, 1, 2, Convention.PAPER)


def test_projection_theorem_ratio():
    for spec in small_specs():
        ops = build_vector_operators(spec)
        c = spec.j1.value * (spec.j1.value + 1) - spec.j2.value * (spec.j2.value + 1)
        for l in spec.ls:
            if l.twice:
                ratio = extract_reduced(ops, l, l) / extract_reduced(ops, l, l, operator="J")
                assert ratio == c / (l.value * (l.value + 1))


def test_oracle_values_outside_range_are_zero():
    spec = IrrepSpec(H(Fraction(3, 2)), H(Fraction(1, 2)))
    s = ReducedSymbol(H(2), H(3))
    assert oracle_values(spec, [s]) == {s: ExactSum()}
