"""Exact Clebsch-Gordan coefficients.

All coefficients use the Condon-Shortley phase convention: the coefficients
are real and ``<j1 j1; j2 (j-j1) | j j> > 0``.  This is the only place the
phase is fixed; every other module obtains its coupling coefficients here.

:func:`cg` evaluates the Racah single-sum formula over exact integers and is
the ground truth.  :func:`cg_closed_form_j2_1` is the classical table for
coupling with a vector (``j2 = 1``), kept separate so the two routes can be
checked against each other.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import ExactSum, sqrt_of_rational
from .halfint import HalfInt, HalfIntLike, check_pair

__all__ = ["CGArgs", "cg", "cg_closed_form_j2_1"]


@functools.lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


@dataclass(frozen=True)
class CGArgs:
    """The bracket ``<j1 m1; j2 m2 | j m>``."""

    j1: HalfInt
    m1: HalfInt
    j2: HalfInt
    m2: HalfInt
    j: HalfInt
    m: HalfInt

    def __post_init__(self):
        for name in ("j1", "m1", "j2", "m2", "j", "m"):
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))
        check_pair(self.j1, self.m1, "j1")
        check_pair(self.j2, self.m2, "j2")
        check_pair(self.j, self.m, "j")

    def value(self) -> ExactSum:
        return _racah(*(getattr(self, n).twice for n in ("j1", "m1", "j2", "m2", "j", "m")))


def cg(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike, m2: HalfIntLike,
       j: HalfIntLike, m: HalfIntLike) -> ExactSum:
    """``<j1 m1; j2 m2 | j m>`` as an exact single-term sum.

    Returns an exact zero when the projections do not add up or the triangle
    rule fails; raises :class:`DomainError` when an ``(j, m)`` pair is not a
    legal state.
    """
    return CGArgs(j1, m1, j2, m2, j, m).value()


@functools.lru_cache(maxsize=65536)
def _racah(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> ExactSum:
    if tm1 + tm2 != tm:
        return ExactSum()
    if tj < abs(tj1 - tj2) or tj > tj1 + tj2:
        return ExactSum()
    # with valid pairs and m = m1 + m2 every combination below is an integer
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    big = (tj1 + tj2 + tj) // 2 + 1
    j1p, j1m = (tj1 + tm1) // 2, (tj1 - tm1) // 2
    j2p, j2m = (tj2 + tm2) // 2, (tj2 - tm2) // 2
    jp, jm = (tj + tm) // 2, (tj - tm) // 2

    prefactor = Fraction(
        (tj + 1) * _fact(a) * _fact(b) * _fact(c)
        * _fact(j1p) * _fact(j1m) * _fact(j2p) * _fact(j2m) * _fact(jp) * _fact(jm),
        _fact(big),
    )

    # k runs over the values keeping every factorial argument nonnegative
    s1 = (tj - tj2 + tm1) // 2  # j - j2 + m1
    s2 = (tj - tj1 - tm2) // 2  # j - j1 - m2
    kmin = max(0, -s1, -s2)
    kmax = min(a, j1m, j2p)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        denom = (_fact(k) * _fact(a - k) * _fact(j1m - k) * _fact(j2p - k)
                 * _fact(s1 + k) * _fact(s2 + k))
        total += Fraction(-1 if k & 1 else 1, denom)

    value = sqrt_of_rational(prefactor) * total
    assert len(value.terms) <= 1
    return value


def cg_closed_form_j2_1(j1: HalfIntLike, m1: HalfIntLike, q: int, j: HalfIntLike) -> ExactSum:
    """``<j1 m1; 1 q | j m1+q>`` from the closed-form vector-coupling table.

    ``j`` must be one of ``j1 - 1``, ``j1``, ``j1 + 1``.
    """
    j1, m1, j = HalfInt.of(j1), HalfInt.of(m1), HalfInt.of(j)
    check_pair(j1, m1, "j1")
    if q not in (-1, 0, 1):
        raise DomainError(f"spherical index q must be -1, 0 or 1, got {q!r}")
    delta = j.twice - j1.twice
    if delta not in (-2, 0, 2) or j.twice < 0:
        raise DomainError(f"j={j} is not one of j1-1, j1, j1+1 for j1={j1}")
    m = m1 + q
    if abs(m.twice) > j.twice or (j1.twice == 0 and j.twice == 0):
        return ExactSum()

    J, M = j1.value, m.value
    sign = 1
    if delta == 2:
        if q == 1:
            sq = (J + M) * (J + M + 1) / ((2 * J + 1) * (2 * J + 2))
        elif q == 0:
            sq = (J - M + 1) * (J + M + 1) / ((2 * J + 1) * (J + 1))
        else:
            sq = (J - M) * (J - M + 1) / ((2 * J + 1) * (2 * J + 2))
    elif delta == 0:
        if q == 1:
            sq, sign = (J + M) * (J - M + 1) / (2 * J * (J + 1)), -1
        elif q == 0:
            sq, sign = M * M / (J * (J + 1)), (1 if M >= 0 else -1)
        else:
            sq = (J - M) * (J + M + 1) / (2 * J * (J + 1))
    else:
        if q == 1:
            sq = (J - M) * (J - M + 1) / (2 * J * (2 * J + 1))
        elif q == 0:
            sq, sign = (J - M) * (J + M) / (J * (2 * J + 1)), -1
        else:
            sq = (J + M + 1) * (J + M) / (2 * J * (2 * J + 1))
    root = sqrt_of_rational(sq)
    return -root if sign < 0 else root
