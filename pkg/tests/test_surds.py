import math
from fractions import Fraction

import pytest

from modules.errors import ComparisonError
from modules.surds import Surd, SurdSum, parse_surd_expression, split_square


@pytest.mark.parametrize('d, expected', [(12, (2, 3)), (49, (7, 1)), (50, (5, 2)), (13, (1, 13))])
def test_split_square(d, expected):
    assert split_square(d) == expected


def test_square_radicand_collapses_to_rational():
    assert Surd(1, 2, 9) == Surd.rational(7)
    assert Surd(1, 2, 9).is_rational


def test_field_operations_are_exact():
    x = Surd(1, 1, 3)
    assert x * x.conjugate() == Surd.rational(-2)
    assert x * x.inverse() == Surd.rational(1)
    assert (x + 1) / x == 1 + x.inverse()


def test_golden_ratio_minimal_polynomial():
    phi = Surd(Fraction(1, 2), Fraction(1, 2), 5)
    assert phi.satisfies(phi.minimal_polynomial())
    assert phi * phi == phi + 1


def test_sign_and_ordering():
    assert Surd(-1, 1, 2).sign() == 1
    assert Surd(2, -1, 5).sign() == -1
    assert Surd(0, 1, 2) < Surd(0, 1, 3)
    assert Surd(3, 0, 1) > Surd(1, 1, 3)


def test_incompatible_product_raises():
    with pytest.raises(ComparisonError):
        Surd(0, 1, 2) * Surd(0, 1, 3)


def test_surdsum_sign_two_radicands():
    # sqrt(2) + sqrt(3) - sqrt(10) < 0
    total = SurdSum.of(Surd(0, 1, 2)) + Surd(0, 1, 3) - Surd(0, 1, 10)
    assert total.sign() == -1


def test_surdsum_interval_width():
    total = SurdSum.of(Surd(0, 1, 2)) + Surd(0, 1, 3)
    enclosure = total.to_interval(Fraction(1, 10 ** 30))
    assert enclosure.width <= Fraction(1, 10 ** 30)
    assert enclosure.matches_printed('3.14626436994197')


@pytest.mark.parametrize('text, value', [
    ('sqrt(13)', math.sqrt(13)),
    ('3.84', 3.84),
    ('2 + sqrt(3)', 2 + math.sqrt(3)),
    ('sqrt(21) - 1', math.sqrt(21) - 1),
])
def test_parse_surd_expression(text, value):
    assert float(parse_surd_expression(text)) == pytest.approx(value, abs=1e-12)


def test_to_interval_contains_float():
    x = Surd(Fraction(1, 3), Fraction(2, 7), 11)
    enclosure = x.to_interval(Fraction(1, 10 ** 25))
    assert enclosure.width <= Fraction(1, 10 ** 25)
    assert abs(float(enclosure.mid) - float(x)) < 1e-15
