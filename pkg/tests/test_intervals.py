from fractions import Fraction

import pytest

from modules.errors import ConfigError
from modules.intervals import RInterval, decimal_fraction, get_precision, set_precision


def test_point_and_width():
    x = RInterval.point(Fraction(1, 3))
    assert x.width == 0
    assert x.contains(Fraction(1, 3))


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        RInterval(Fraction(1), Fraction(0))


def test_make_rounds_outward_past_precision():
    set_precision(32)
    x = Fraction(1, 3 ** 60)
    enclosure = RInterval.make(x, x)
    assert enclosure.lo <= x <= enclosure.hi
    assert enclosure.hi.denominator == 2 ** 32


def test_precision_floor():
    with pytest.raises(ConfigError):
        set_precision(16)
    assert get_precision() >= 32


@pytest.mark.parametrize('value, places, expected', [
    (Fraction(1, 3), 3, ('0.333', '0.334')),
    (Fraction(-1, 4), 2, ('-0.25', '-0.25')),
    (Fraction(2), 1, ('2.0', '2.0')),
])
def test_to_decimal_rounds_outward(value, places, expected):
    assert RInterval.point(value).to_decimal(places) == expected


def test_matches_printed_is_truncation():
    pi_ish = RInterval(decimal_fraction('3.14159'), decimal_fraction('3.141592'))
    assert pi_ish.matches_printed('3.1415')
    assert pi_ish.matches_printed('3.14159')
    assert not pi_ish.matches_printed('3.1416')


def test_arithmetic_contains_exact_results():
    a = RInterval(Fraction(1), Fraction(2))
    b = RInterval(Fraction(-1), Fraction(3))
    assert (a + b) == RInterval(Fraction(0), Fraction(5))
    assert (a - b) == RInterval(Fraction(-2), Fraction(3))
    assert (a * b) == RInterval(Fraction(-2), Fraction(6))
    with pytest.raises(ZeroDivisionError):
        a / b


def test_certain_comparisons():
    a = RInterval(Fraction(1), Fraction(2))
    assert a.certainly_lt(3)
    assert not a.certainly_lt(2)
    assert a.certainly_gt(Fraction(1, 2))
    assert a.maximum(RInterval(Fraction(0), Fraction(3))) == RInterval(Fraction(1), Fraction(3))


def test_negative_infinity_sentinel():
    sentinel = RInterval.negative_infinity()
    assert sentinel.is_negative_infinity
    assert sentinel.to_decimal(5) == ('-inf', '-inf')
    assert sentinel.lo is None and sentinel.hi is None


@pytest.mark.parametrize('use', [
    lambda s: s + 1,
    lambda s: 1 - s,
    lambda s: s * RInterval.point(2),
    lambda s: s.mid,
    lambda s: s.certainly_lt(0),
    lambda s: RInterval.point(1).maximum(s),
])
def test_sentinel_refuses_arithmetic(use):
    with pytest.raises(ValueError):
        use(RInterval.negative_infinity())


def test_half_open_interval_is_rejected():
    with pytest.raises(ValueError):
        RInterval(None, Fraction(1))


def test_from_decimal_is_exact():
    assert RInterval.from_decimal('0.1') == RInterval.point(Fraction(1, 10))
