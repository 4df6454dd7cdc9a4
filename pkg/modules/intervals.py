"""Outward-rounded rational intervals.

Every endpoint is an exact ``Fraction``. When denominators grow past the
working precision the endpoints are snapped outward onto a dyadic grid, so an
``RInterval`` always contains the real it was built to enclose.
"""
import functools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Union

from . import config
from .errors import ConfigError

Number = Union[int, Fraction]

_precision_bits = config.PRECISION_BITS


def set_precision(bits: int):
    global _precision_bits
    if bits < 32:
        raise ConfigError(f'precision of {bits} bits is too small (minimum 32)')
    _precision_bits = bits


def get_precision() -> int:
    return _precision_bits


def _round_down(x: Fraction) -> Fraction:
    if x.denominator.bit_length() <= 2 * _precision_bits:
        return x
    scale = 1 << _precision_bits
    return Fraction(math.floor(x * scale), scale)


def _round_up(x: Fraction) -> Fraction:
    if x.denominator.bit_length() <= 2 * _precision_bits:
        return x
    scale = 1 << _precision_bits
    return Fraction(math.ceil(x * scale), scale)


def _finite_only(method):
    """Reject the -inf sentinel, on the receiver or on an interval argument."""
    @functools.wraps(method)
    def wrapper(self, *args):
        if self.is_negative_infinity or any(isinstance(a, RInterval) and a.is_negative_infinity for a in args):
            raise ValueError(f'{method.__name__} is undefined on the -inf sentinel')
        return method(self, *args)
    return wrapper


@dataclass(frozen=True)
class RInterval:
    """Closed interval; both ends ``None`` is the -inf sentinel."""
    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __post_init__(self):
        if (self.lo is None) != (self.hi is None):
            raise ValueError('only the -inf sentinel may leave an end open')
        if self.lo is not None and self.lo > self.hi:
            raise ValueError(f'empty interval [{self.lo}, {self.hi}]')

    @classmethod
    def make(cls, lo: Number, hi: Number) -> 'RInterval':
        return cls(_round_down(Fraction(lo)), _round_up(Fraction(hi)))

    @classmethod
    def point(cls, x: Number) -> 'RInterval':
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def from_decimal(cls, text: str) -> 'RInterval':
        return cls.point(Fraction(Decimal(text.strip())))

    @classmethod
    def negative_infinity(cls) -> 'RInterval':
        """Sentinel used for the pressure of an empty subshift."""
        return cls(None, None)

    @property
    def is_negative_infinity(self) -> bool:
        return self.lo is None

    @property
    @_finite_only
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    @_finite_only
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @_finite_only
    def contains(self, x) -> bool:
        if isinstance(x, RInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    @_finite_only
    def overlaps(self, other: 'RInterval') -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @_finite_only
    def hull(self, other: 'RInterval') -> 'RInterval':
        return RInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    @_finite_only
    def maximum(self, other: 'RInterval') -> 'RInterval':
        return RInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    @_finite_only
    def __add__(self, other):
        other = _coerce(other)
        return RInterval.make(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    @_finite_only
    def __neg__(self):
        return RInterval(-self.hi, -self.lo)

    @_finite_only
    def __sub__(self, other):
        other = _coerce(other)
        return RInterval.make(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _coerce(other) - self

    @_finite_only
    def __mul__(self, other):
        other = _coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RInterval.make(min(products), max(products))

    __rmul__ = __mul__

    @_finite_only
    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError('interval divisor contains zero')
        return self * RInterval.make(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    @_finite_only
    def certainly_lt(self, x) -> bool:
        return self.hi < _coerce(x).lo

    @_finite_only
    def certainly_gt(self, x) -> bool:
        return self.lo > _coerce(x).hi

    def to_decimal(self, places: int = 15) -> tuple:
        """Decimal strings ``(lo, hi)`` rounded outward to ``places`` digits."""
        if self.is_negative_infinity:
            return ('-inf', '-inf')
        scale = 10 ** places
        lo = math.floor(self.lo * scale)
        hi = math.ceil(self.hi * scale)
        return (_format_scaled(lo, places), _format_scaled(hi, places))

    @_finite_only
    def matches_printed(self, text: str) -> bool:
        """True when the enclosure lies in ``[text, text + ulp)``.

        Printed constants are truncations, so the last printed digit is never
        rounded up.
        """
        value = Fraction(Decimal(text))
        places = len(text.split('.')[1]) if '.' in text else 0
        ulp = Fraction(1, 10 ** places)
        return value <= self.lo and self.hi < value + ulp

    def __str__(self):
        lo, hi = self.to_decimal(15)
        return f'[{lo}, {hi}]'


def _coerce(x) -> RInterval:
    if isinstance(x, RInterval):
        return x
    return RInterval.point(x)


def _format_scaled(n: int, places: int) -> str:
    sign = '-' if n < 0 else ''
    digits = str(abs(n)).rjust(places + 1, '0')
    if places == 0:
        return sign + digits
    return f'{sign}{digits[:-places]}.{digits[-places:]}'


def decimal_fraction(text: str) -> Fraction:
    return Fraction(Decimal(text.strip()))
