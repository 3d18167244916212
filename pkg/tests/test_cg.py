from fractions import Fraction

import pytest
import sympy
from sympy.physics.quantum.cg import CG

from o4tensor.cg import CGArgs, cg, cg_closed_form_j2_1
from o4tensor.errors import DomainError
from o4tensor.exact import ExactSum, sqrt_of_rational, to_float

h = Fraction(1, 2)


def root(x):
    return sqrt_of_rational(Fraction(x))


def states(tmax):
    for tj in range(tmax + 1):
        for tm in range(-tj, tj + 1, 2):
            yield tj, tm


def test_stretched():
    assert cg(2, 2, 1, 1, 3, 3) == 1


def test_vector_coupling_value():
    assert cg(1, 1, 1, -1, 2, 0) == root(Fraction(1, 6))


def test_projection_rule_zero():
    assert cg(1, 1, 1, 1, 2, 1).is_zero()


def test_singlet_of_two_spins():
    # |00> = (|+-> - |-+>)/sqrt2 written out by hand
    assert cg(h, h, h, -h, 0, 0) == root(h)
    assert cg(h, -h, h, h, 0, 0) == -root(h)


def test_invalid_pair_is_domain_error():
    with pytest.raises(DomainError):
        cg(1, 2, 1, 0, 1, 0)
    with pytest.raises(DomainError):
        cg(1, h, 1, 0, 1, h)


def test_cgargs_value():
    assert CGArgs(1, 1, 1, -1, 2, 0).value() == cg(1, 1, 1, -1, 2, 0)


def test_agrees_with_sympy():
    # independent implementation; full range up to 2j1 = 5, 2j2 = 3
    for tj1, tm1 in states(5):
        for tj2, tm2 in states(3):
            tm = tm1 + tm2
            for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                if abs(tm) > tj:
                    continue
                args = [Fraction(t, 2) for t in (tj1, tm1, tj2, tm2, tj, tm)]
                ours = cg(*args)
                ref = CG(*[sympy.Rational(t, 2) for t in (tj1, tm1, tj2, tm2, tj, tm)]).doit()
                signed = sympy.expand(sympy.sign(ref) * ref ** 2)
                assert signed == sympy.Rational(str(ours.signed_square()))
                assert to_float(ours) == pytest.approx(float(ref), abs=1e-12)


def test_single_term_property():
    for tj1, tm1 in states(6):
        for tj2, tm2 in states(4):
            for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                if abs(tm1 + tm2) <= tj:
                    assert len(cg(*[Fraction(t, 2) for t in (tj1, tm1, tj2, tm2, tj, tm1 + tm2)]).terms) <= 1


def test_selection_rules():
    for tj1, tm1 in states(8):
        for tj2, tm2 in states(8):
            for tj, tm in states(8):
                value = cg(*[Fraction(t, 2) for t in (tj1, tm1, tj2, tm2, tj, tm)])
                allowed = tm == tm1 + tm2 and abs(tj1 - tj2) <= tj <= tj1 + tj2
                if not allowed:
                    assert value.is_zero()


def test_exchange_symmetry():
    for tj1, tm1 in states(6):
        for tj2, tm2 in states(6):
            tm = tm1 + tm2
            for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                if abs(tm) > tj:
                    continue
                a = cg(*[Fraction(t, 2) for t in (tj1, tm1, tj2, tm2, tj, tm)])
                b = cg(*[Fraction(t, 2) for t in (tj2, tm2, tj1, tm1, tj, tm)])
                phase = -1 if ((tj1 + tj2 - tj) // 2) % 2 else 1
                assert a == phase * b


@pytest.mark.parametrize("j1, m1, q, j, expected", [
    (2, 1, 1, 3, root(Fraction(2, 3))),
    (2, 2, -1, 1, root(Fraction(3, 5))),
    (2, 1, 1, 2, -root(Fraction(1, 3))),
])
def test_closed_form_examples(j1, m1, q, j, expected):
    assert cg_closed_form_j2_1(j1, m1, q, j) == expected
    assert cg(j1, m1, 1, q, j, m1 + q) == expected


def test_closed_form_half_integers():
    for tj1 in range(1, 12, 2):
        for tm1 in range(-tj1, tj1 + 1, 2):
            for q in (-1, 0, 1):
                for tj in (t for t in (tj1 - 2, tj1, tj1 + 2) if t >= 0):
                    j1, m1, j = Fraction(tj1, 2), Fraction(tm1, 2), Fraction(tj, 2)
                    m = m1 + q
                    expected = cg(j1, m1, 1, q, j, m) if abs(m) <= j else ExactSum()
                    assert cg_closed_form_j2_1(j1, m1, q, j) == expected


def test_closed_form_domain():
    with pytest.raises(DomainError):
        cg_closed_form_j2_1(2, 0, 1, 4)
    with pytest.raises(DomainError):
        cg_closed_form_j2_1(0, 0, 0, -1)
    with pytest.raises(DomainError):
        cg_closed_form_j2_1(1, 0, 2, 1)
    assert cg_closed_form_j2_1(0, 0, 0, 0).is_zero()
