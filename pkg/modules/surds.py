"""Exact quadratic surds and sums of surds over distinct radicands."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Union

from . import config
from .errors import ComparisonError
from .intervals import RInterval

Rational = Union[int, Fraction]

_SMALL_PRIMES = []


def _small_primes(limit: int = 2000):
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b'\x00\x00'
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
        _SMALL_PRIMES.extend(p for p in range(limit + 1) if sieve[p])
    return _SMALL_PRIMES


@lru_cache(maxsize=1 << 14)
def split_square(d: int):
    """Return ``(k, e)`` with ``d == k*k*e``.

    Square factors are removed for small primes and for a perfect-square
    remainder; ``e`` is squarefree for every radicand this package meets.
    """
    if d < 0:
        raise ValueError('negative radicand')
    if d == 0:
        return (0, 1)
    k = 1
    for p in _small_primes():
        pp = p * p
        if pp > d:
            break
        while d % pp == 0:
            d //= pp
            k *= p
    r = math.isqrt(d)
    if r * r == d:
        return (k * r, 1)
    return (k, d)


def sqrt_interval(d: int, bits: int) -> RInterval:
    scale = 1 << bits
    root = math.isqrt(d * scale * scale)
    if root * root == d * scale * scale:
        return RInterval.point(Fraction(root, scale))
    return RInterval(Fraction(root, scale), Fraction(root + 1, scale))


def _bits_for(coeff: Fraction, tol: Fraction) -> int:
    if coeff == 0:
        return 1
    ratio = abs(coeff) / tol
    return max(1, math.ceil(math.log2(ratio.numerator) - math.log2(ratio.denominator)) + 2)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Surd:
    """The number ``a + b*sqrt(d)`` with rational ``a, b`` and squarefree ``d``."""

    __slots__ = ('a', 'b', 'd')

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        k, e = split_square(int(d))
        if e == 1 or b == 0 or k == 0:
            a = a + b * k
            b = Fraction(0)
            e = 1
        else:
            b = b * k
        self.a = a
        self.b = b
        self.d = e

    @classmethod
    def rational(cls, x: Rational) -> 'Surd':
        return cls(x, 0, 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def r(self) -> int:
        return self.a.denominator * self.b.denominator // math.gcd(self.a.denominator, self.b.denominator)

    @property
    def p(self) -> int:
        return int(self.a * self.r)

    @property
    def q(self) -> int:
        return int(self.b * self.r)

    def conjugate(self) -> 'Surd':
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def minimal_polynomial(self):
        """Integer coefficients ``(A, B, C)`` with ``A x^2 + B x + C == 0``."""
        r = self.r
        return (r * r, -2 * self.p * r, self.p * self.p - self.q * self.q * self.d)

    def satisfies(self, coeffs) -> bool:
        A, B, C = coeffs
        x2 = self * self
        total = x2 * A + self * B + C
        return total.a == 0 and total.b == 0

    def _compatible(self, other: 'Surd') -> bool:
        return self.is_rational or other.is_rational or self.d == other.d

    def __add__(self, other):
        if isinstance(other, SurdSum):
            return other + self
        other = _as_surd(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._compatible(other):
            return SurdSum.of(self) + other
        d = self.d if not self.is_rational else other.d
        return Surd(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_surd(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._compatible(other):
            raise ComparisonError(f'product of surds over sqrt({self.d}) and sqrt({other.d}) is not quadratic')
        d = self.d if not self.is_rational else other.d
        return Surd(self.a * other.a + self.b * other.b * d, self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> 'Surd':
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('surd is zero')
        return Surd(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = _as_surd(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_surd(other) * self.inverse()

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa * _sign(self.a * self.a - self.b * self.b * self.d)

    def to_interval(self, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
        if self.is_rational:
            return RInterval.point(self.a)
        root = sqrt_interval(self.d, _bits_for(self.b, tol))
        return RInterval.make(self.a, self.a) + root * self.b

    def _cmp(self, other) -> int:
        diff = self - other
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Surd, SurdSum, int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.is_rational:
            return f'Surd({self.a})'
        return f'Surd({self.a} + {self.b}*sqrt({self.d}))'


def _as_surd(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd.rational(x)
    return NotImplemented


@dataclass
class SurdSum:
    """``rational + sum(coeff * sqrt(d))`` over several radicands."""

    rational: Fraction = Fraction(0)
    terms: Dict[int, Fraction] = field(default_factory=dict)

    @classmethod
    def of(cls, x) -> 'SurdSum':
        if isinstance(x, SurdSum):
            return cls(x.rational, dict(x.terms))
        x = _as_surd(x)
        terms = {} if x.is_rational else {x.d: x.b}
        return cls(x.a, terms)

    def __add__(self, other):
        other = SurdSum.of(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, Fraction(0)) + c
            if terms[d] == 0:
                del terms[d]
        return SurdSum(self.rational + other.rational, terms)

    __radd__ = __add__

    def __neg__(self):
        return SurdSum(-self.rational, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-SurdSum.of(other))

    def __rsub__(self, other):
        return SurdSum.of(other) - self

    def to_interval(self, tol: Fraction = config.DEFAULT_TOL) -> RInterval:
        share = tol / (len(self.terms) + 1)
        total = RInterval.point(self.rational)
        for d, c in sorted(self.terms.items()):
            total = total + Surd(0, c, d).to_interval(share)
        return total

    def sign(self) -> int:
        items = sorted(self.terms.items())
        if len(items) <= 1:
            return Surd(self.rational, items[0][1] if items else 0, items[0][0] if items else 1).sign()
        if len(items) == 2:
            (d1, c1), (d2, c2) = items
            head = Surd(self.rational, c1, d1)
            sa, sb = head.sign(), _sign(c2)
            if sa == 0 or sa == sb:
                return sb
            return sa * (head * head - c2 * c2 * d2).sign()
        bits = 64
        while bits <= config.SURD_REFINE_MAX_BITS:
            enclosure = self.to_interval(Fraction(1, 1 << bits))
            if enclosure.lo > 0:
                return 1
            if enclosure.hi < 0:
                return -1
            bits *= 2
        raise ComparisonError(f'cannot separate sum of {len(items)} radicands from zero')

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.rational) + sum(float(c) * math.sqrt(d) for d, c in self.terms.items())


def parse_surd_expression(text: str) -> SurdSum:
    """Parse sums like ``'sqrt(13)'``, ``'2 + sqrt(3)'`` or ``'3.84'``."""
    total = SurdSum()
    for raw in text.replace('-', '+-').split('+'):
        token = raw.strip()
        if not token:
            continue
        negative = token.startswith('-')
        token = token.lstrip('-').strip()
        coeff = Fraction(1)
        if '*' in token:
            left, token = token.split('*', 1)
            coeff = Fraction(left.strip())
            token = token.strip()
        if token.startswith('sqrt(') and token.endswith(')'):
            term = SurdSum.of(Surd(0, coeff, int(token[5:-1])))
        else:
            term = SurdSum.of(coeff * Fraction(token))
        total = total - term if negative else total + term
    return total
