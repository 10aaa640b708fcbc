"""
This module provides `ExtNat`, an element of ℕ ∪ {∞} with saturating arithmetic.

All multiplicities of the finite-block model (fullness entries, entries of the
multiplicity matrix, edge counts of graphs) are `ExtNat` values. Plain Python
integers are accepted wherever an `ExtNat` is expected in arithmetic and comparisons.

Rules
-----
- ∞ + n = ∞ for every n.
- ∞ · n = ∞ for n > 0 and ∞ · 0 = 0.
- Every natural number is strictly smaller than ∞.

Example
-------
>>> ExtNat(2) * ExtNat.INF
ExtNat.INF
>>> ExtNat(0) * ExtNat.INF
ExtNat(0)
"""

from functools import total_ordering
from typing import Optional, Union

from cplattice.common.errors import NegativeOrMalformedNumber

INF_LITERAL = "inf"


@total_ordering
class ExtNat:
    """
    An extended natural number.

    Attributes
    ----------
    _value : int | None
        The finite value, or None for ∞.
    """
    __slots__ = ("_value",)

    INF: "ExtNat"
    ZERO: "ExtNat"

    def __init__(self, value: int = 0):
        """
        Creates a finite extended natural. Use `ExtNat.INF` for infinity.

        Parameters
        ----------
        value : int
            A non-negative integer.

        Raises
        ------
        NegativeOrMalformedNumber
            If `value` is not a non-negative integer.
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise NegativeOrMalformedNumber(f"expected a natural number, got {value!r}")
        if value < 0:
            raise NegativeOrMalformedNumber(f"negative multiplicity {value}")
        object.__setattr__(self, "_value", value)

    @classmethod
    def _infinite(cls) -> "ExtNat":
        item = cls.__new__(cls)
        object.__setattr__(item, "_value", None)
        return item

    @classmethod
    def parse(cls, raw: Union["ExtNat", int, str]) -> "ExtNat":
        """
        Converts an integer, a decimal string or the literal "inf" to an `ExtNat`.

        Parameters
        ----------
        raw : ExtNat | int | str
            Value to convert.

        Returns
        -------
        ExtNat
            The parsed value.

        Raises
        ------
        NegativeOrMalformedNumber
            If `raw` is negative, fractional, boolean or an unrecognised string.
        """
        if isinstance(raw, ExtNat):
            return raw
        if isinstance(raw, str):
            text = raw.strip()
            if text == INF_LITERAL:
                return cls.INF
            if not (text.isascii() and text.isdigit()):
                raise NegativeOrMalformedNumber(f"malformed multiplicity {raw!r}")
            return cls(int(text))
        return cls(raw)

    def __setattr__(self, name, value):
        raise AttributeError("ExtNat is immutable")

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> Optional[int]:
        """
        The finite value, or None for ∞.
        """
        return self._value

    def __add__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return ExtNat.INF
        return ExtNat(self._value + other._value)

    __radd__ = __add__

    def __mul__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._value == 0 or other._value == 0:
            return ExtNat.ZERO
        if self.is_infinite or other.is_infinite:
            return ExtNat.INF
        return ExtNat(self._value * other._value)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self._value < other._value

    def __hash__(self) -> int:
        if self.is_infinite:
            return hash(float("inf"))
        return hash(self._value)

    def __bool__(self) -> bool:
        return self._value != 0

    def __int__(self) -> int:
        if self.is_infinite:
            raise OverflowError("cannot convert ExtNat.INF to int")
        return self._value

    def __reduce__(self):
        if self.is_infinite:
            return (ExtNat.parse, (INF_LITERAL,))
        return (ExtNat, (self._value,))

    def to_json(self) -> Union[int, str]:
        """
        Returns the value as it is written in input documents: an int or "inf".
        """
        return INF_LITERAL if self.is_infinite else self._value

    def __str__(self) -> str:
        return INF_LITERAL if self.is_infinite else str(self._value)

    def __repr__(self) -> str:
        return "ExtNat.INF" if self.is_infinite else f"ExtNat({self._value})"


def _coerce(other) -> "ExtNat":
    if isinstance(other, ExtNat):
        return other
    if isinstance(other, int) and not isinstance(other, bool) and other >= 0:
        return ExtNat(other)
    return NotImplemented


ExtNat.INF = ExtNat._infinite()
ExtNat.ZERO = ExtNat(0)


def ext_sum(values) -> ExtNat:
    """
    Saturating sum of an iterable of `ExtNat` (or int) values; the empty sum is 0.
    """
    total = ExtNat.ZERO
    for value in values:
        total = total + value
    return total
