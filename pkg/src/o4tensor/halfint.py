"""Integer and half-integer quantum numbers stored as twice their value."""
from __future__ import annotations

import functools
from fractions import Fraction
from typing import Union

from .errors import DomainError

__all__ = ["HalfInt", "parse_halfint", "check_pair", "projections"]


@functools.total_ordering
class HalfInt:
    """A number ``n/2`` for integer ``n``; ``twice`` holds ``n``."""

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        if isinstance(twice, bool) or not isinstance(twice, int):
            raise TypeError(f"HalfInt needs an integer doubled value, got {twice!r}")
        object.__setattr__(self, "twice", twice)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def of(cls, value: "HalfIntLike") -> "HalfInt":
        """Coerce an int, Fraction, HalfInt or string ("3/2", "1.5") to a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            return parse_halfint(value)
        if isinstance(value, bool):
            raise TypeError("booleans are not quantum numbers")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise DomainError(f"{value} is not an integer or half-integer")
            return cls(int(doubled))
        if isinstance(value, float):
            doubled = 2 * value
            if doubled != int(doubled):
                raise DomainError(f"{value} is not an integer or half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot make a HalfInt from {type(value).__name__}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __int__(self):
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt(self.twice + o.twice)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt(self.twice - o.twice)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return HalfInt(o.twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice == o.twice

    def __lt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.twice < o.twice

    def __hash__(self):
        return hash(Fraction(self.twice, 2))

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


HalfIntLike = Union[HalfInt, int, Fraction, str]


def _coerce(other) -> "HalfInt | None":
    if isinstance(other, HalfInt):
        return other
    if isinstance(other, int) and not isinstance(other, bool):
        return HalfInt(2 * other)
    if isinstance(other, Fraction) and (2 * other).denominator == 1:
        return HalfInt(int(2 * other))
    return None


def parse_halfint(text: str) -> HalfInt:
    """Parse ``"3/2"``, ``"1.5"``, ``"-1"`` and similar spellings."""
    s = text.strip()
    try:
        value = Fraction(s)  # exact for "3/2", "1.5" and "2" alike
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"malformed half-integer {text!r}") from None
    doubled = 2 * value
    if doubled.denominator != 1:
        raise DomainError(f"{text!r} is not an integer or half-integer")
    return HalfInt(int(doubled))


def check_pair(j: HalfInt, m: HalfInt, what: str = "j") -> None:
    """Raise DomainError unless ``m`` is a legal projection of magnitude ``j``."""
    if j.twice < 0:
        raise DomainError(f"{what}={j} must be nonnegative")
    if abs(m.twice) > j.twice or (j.twice - m.twice) % 2:
        raise DomainError(f"m={m} is not a projection of {what}={j}")


def projections(j: HalfInt) -> list[HalfInt]:
    """``j, j-1, ..., -j``."""
    return [HalfInt(t) for t in range(j.twice, -j.twice - 1, -2)]
