"""Exact scalars: finite sums of rational multiples of square roots.

Every number the package manipulates lives in the field obtained from the
rationals by adjoining square roots of positive integers.  An element is kept
in a canonical form, a sorted tuple of ``(coefficient, radicand)`` pairs with
distinct squarefree radicands and nonzero coefficients.  Because square roots
of distinct squarefree integers are linearly independent over the rationals,
two values are equal exactly when their canonical forms coincide, so equality
and zero tests never touch floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Union

from .errors import DomainError

__all__ = [
    "RadicalTerm",
    "ExactSum",
    "ExactComplex",
    "I",
    "squarefree_split",
    "sqrt_of_rational",
    "sum_add",
    "sum_mul",
    "is_zero",
    "to_float",
    "sum_to_json",
    "sum_from_json",
    "complex_to_json",
    "complex_from_json",
]

RationalLike = Union[int, Fraction]


class RadicalTerm(NamedTuple):
    """``coefficient * sqrt(radicand)`` with a squarefree radicand."""

    coefficient: Fraction
    radicand: int


def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not exact scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``n == k*k*s`` and ``s`` squarefree.

    Trial division; intended for the radicands that arise from angular
    momentum formulas, whose prime factors are small.
    """
    if n <= 0:
        raise DomainError(f"squarefree_split needs a positive integer, got {n}")
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    k = s = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            k *= d ** (e // 2)
            if e & 1:
                s *= d
        d += 1 if d == 2 else 2
    return k, s * n


class ExactSum:
    """Canonical element of Q(sqrt 2, sqrt 3, sqrt 5, ...).

    Construct from an int or Fraction, or via :meth:`from_terms` /
    :func:`sqrt_of_rational`.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, value: "RationalLike | ExactSum" = 0):
        if isinstance(value, ExactSum):
            terms = value._terms
        else:
            r = _rational(value)
            terms = (RadicalTerm(r, 1),) if r else ()
        object.__setattr__(self, "_terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("ExactSum is immutable")

    @classmethod
    def _from_map(cls, coeffs: dict[int, Fraction]) -> "ExactSum":
        out = object.__new__(cls)
        terms = tuple(RadicalTerm(c, s) for s, c in sorted(coeffs.items()) if c)
        object.__setattr__(out, "_terms", terms)
        return out

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[RationalLike, int]]) -> "ExactSum":
        """Build from ``(coefficient, radicand)`` pairs; radicands need not be squarefree."""
        acc: dict[int, Fraction] = {}
        for coef, radicand in terms:
            c = _rational(coef)
            if not c:
                continue
            if not isinstance(radicand, int) or radicand <= 0:
                raise DomainError(f"radicand must be a positive integer, got {radicand!r}")
            k, s = squarefree_split(radicand)
            acc[s] = acc.get(s, Fraction(0)) + c * k
        return cls._from_map(acc)

    @property
    def terms(self) -> tuple[RadicalTerm, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(t.radicand == 1 for t in self._terms)

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    def rational_part(self) -> Fraction:
        for t in self._terms:
            if t.radicand == 1:
                return t.coefficient
        return Fraction(0)

    def signed_square(self) -> Fraction:
        """For a single term ``c*sqrt(s)``, return ``sign(c) * c**2 * s``."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) != 1:
            raise DomainError("signed_square needs at most one term")
        c, s = self._terms[0]
        return (c * c * s) if c > 0 else -(c * c * s)

    # arithmetic

    @staticmethod
    def _coerce(other) -> "ExactSum | None":
        if isinstance(other, ExactSum):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ExactSum(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = {t.radicand: t.coefficient for t in self._terms}
        for c, s in o._terms:
            acc[s] = acc.get(s, Fraction(0)) + c
        return ExactSum._from_map(acc)

    __radd__ = __add__

    def __neg__(self):
        return ExactSum._from_map({s: -c for c, s in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for c1, s1 in self._terms:
            for c2, s2 in o._terms:
                # product of coprime squarefree parts stays squarefree
                g = math.gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                acc[s] = acc.get(s, Fraction(0)) + c1 * c2 * g
        return ExactSum._from_map(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            raise ZeroDivisionError("division by an exact zero")
        if len(o._terms) != 1:
            raise DomainError("division is only defined by a single radical term")
        c, s = o._terms[0]
        return self * ExactSum._from_map({s: 1 / (c * s)})

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ExactSum(1)
        for _ in range(n):
            out = out * self
        return out

    # comparison / conversion

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_part())
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"ExactSum({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for c, s in self._terms:
            if s == 1:
                mag, neg = abs(c), c < 0
                body = str(mag)
            else:
                neg = c < 0
                body = f"sqrt({c * c * s})"
            pieces.append((neg, body))
        first_neg, first = pieces[0]
        out = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out


def sqrt_of_rational(r: RationalLike) -> ExactSum:
    """Nonnegative square root of a nonnegative rational, canonicalized.

    >>> sqrt_of_rational(Fraction(2, 3)).terms
    (RadicalTerm(coefficient=Fraction(1, 3), radicand=6),)
    """
    r = _rational(r)
    if r < 0:
        raise DomainError(f"square root of negative rational {r}")
    if not r:
        return ExactSum()
    a, s = squarefree_split(r.numerator)
    b, t = squarefree_split(r.denominator)
    # s and t are coprime, so s*t is squarefree
    return ExactSum._from_map({s * t: Fraction(a, b * t)})


def sum_add(a: ExactSum, b: ExactSum) -> ExactSum:
    return a + b


def sum_mul(a: ExactSum, b: ExactSum) -> ExactSum:
    return a * b


def is_zero(a: "ExactSum | ExactComplex") -> bool:
    return a.is_zero()


def to_float(a: ExactSum) -> float:
    """Double-precision value; for display only, never for decisions."""
    total = 0.0
    for c, s in a.terms:
        total += float(c) * math.sqrt(s)
    return total


@dataclass(frozen=True)
class ExactComplex:
    """``re + i*im`` with both parts exact."""

    re: ExactSum = ExactSum()
    im: ExactSum = ExactSum()

    def __post_init__(self):
        for name in ("re", "im"):
            v = getattr(self, name)
            if not isinstance(v, ExactSum):
                object.__setattr__(self, name, ExactSum(v))

    @staticmethod
    def _coerce(other) -> "ExactComplex | None":
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, ExactSum) or (
            isinstance(other, (int, Fraction)) and not isinstance(other, bool)
        ):
            return ExactComplex(ExactSum(other))
        return None

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.im.is_zero():
            return ExactComplex(self.re * o.re, self.im * o.re)
        return ExactComplex(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(to_float(self.re), to_float(self.im))

    def __str__(self):
        if self.im.is_zero():
            return str(self.re)
        im = f"i*({self.im})" if len(self.im.terms) > 1 else f"{self.im}*i"
        if self.re.is_zero():
            return im
        return f"{self.re} + {im}"

    def __repr__(self):
        return f"ExactComplex({self})"


I = ExactComplex(ExactSum(0), ExactSum(1))


def sum_to_json(a: ExactSum) -> list[dict]:
    return [{"coef": f"{c.numerator}/{c.denominator}", "radicand": s} for c, s in a.terms]


def sum_from_json(data: list[dict]) -> ExactSum:
    return ExactSum.from_terms((Fraction(d["coef"]), int(d["radicand"])) for d in data)


def complex_to_json(z: ExactComplex) -> dict:
    return {"re": sum_to_json(z.re), "im": sum_to_json(z.im)}


def complex_from_json(data: dict) -> ExactComplex:
    return ExactComplex(sum_from_json(data["re"]), sum_from_json(data["im"]))
