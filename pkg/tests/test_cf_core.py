from fractions import Fraction

import pytest

from modules import config
from modules.cf_core import (K, MAXIMIZE, MINIMIZE, compare_prefix, continuant, eval_seq, extremal_tail, lagrange_value,
                             lambda_at, lambda_bounds, lambda_exact, markov_value, side_value)
from modules.errors import ComparisonError, PartialSequenceError
from modules.sequences import OneSidedSeq, parse_literal

from conftest import random_literal, random_word


def test_continuant_basics():
    assert continuant(()) == (0, 1)
    assert continuant((1, 2, 3)) == (7, 10)
    assert K((2, 3)) == 7


def test_continuant_reversal_and_ratio_consistency(rng):
    for _ in range(1000):
        w = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 8)))
        p, q = continuant(w)
        assert K(w) == K(w[::-1])
        value = Fraction(0)
        for a in reversed(w):
            value = 1 / (a + value)
        assert Fraction(p, q) == value


def test_eval_golden_ratio():
    result = eval_seq(OneSidedSeq((), (1,)), integer_part=1, tol=Fraction(1, 10 ** 25))
    assert result.interval.width <= Fraction(1, 10 ** 25)
    assert result.interval.matches_printed('1.6180339887498948482')
    assert result.exact * result.exact == result.exact + 1


def test_eval_partial_sequence_raises():
    with pytest.raises(PartialSequenceError):
        eval_seq(OneSidedSeq((1, 2), None))


@pytest.mark.parametrize('literal, printed', [
    ('(1)', '2.2360679774997'),
    ('(21)', '3.46410161513775'),
    ('(3322212)', config.PRINTED_CONSTANTS['j0']),
])
def test_markov_values(literal, printed):
    value = markov_value(parse_literal(literal))
    assert value.width <= config.DEFAULT_TOL
    assert value.matches_printed(printed)


def test_sqrt12_at_origin_two():
    value = lambda_at(parse_literal('(21)'), 0)
    assert value.matches_printed('3.46410161513775')


def test_lagrange_ignores_left_side():
    a = parse_literal('(3)33*2(12)')
    b = parse_literal('(1)2*(12)')
    assert lagrange_value(a) == lagrange_value(b)


def test_lambda_needs_complete_sequence():
    with pytest.raises(PartialSequenceError):
        lambda_at(parse_literal('33*2'))


def test_transposition_invariance(rng):
    for _ in range(1000):
        a = parse_literal(random_literal(rng))
        x = lambda_exact(a, 0)
        y = lambda_exact(a.transpose(), 0)
        assert (x - y).sign() == 0


@pytest.mark.slow
def test_markov_value_transposition_invariance(rng):
    tol = Fraction(1, 10 ** 12)
    for _ in range(1000):
        a = parse_literal(random_literal(rng))
        m = markov_value(a, tol)
        assert m.overlaps(markov_value(a.transpose(), tol))


def test_compare_prefix_parity():
    assert compare_prefix((), 1, 2)[0] == 'a'
    assert compare_prefix((3,), 1, 2)[0] == 'b'
    larger, gap = compare_prefix((1, 2, 3), 2, 1)
    assert larger == 'a'
    assert gap == Fraction(1, 4)
    with pytest.raises(ComparisonError):
        compare_prefix((1,), 2, 2)


@pytest.mark.parametrize('objective, parity, expected', [
    (MAXIMIZE, 1, (1, 3)),
    (MAXIMIZE, 2, (3, 1)),
    (MINIMIZE, 'odd', (3, 1)),
    (MINIMIZE, 'even', (1, 3)),
])
def test_extremal_tail_parity(objective, parity, expected):
    assert extremal_tail((1, 2, 3), objective, parity).tail == expected


def test_extremal_tail_dominates_completions(rng):
    window = parse_literal('233*22')
    lo, hi = lambda_bounds(window, 0, (1, 2, 3))
    lo_i, hi_i = lo.to_interval(), hi.to_interval()
    for _ in range(300):
        left = random_word(rng, (1, 2, 3), 0, 5)
        right = random_word(rng, (1, 2, 3), 0, 5)
        lt = random_word(rng, (1, 2, 3), 1, 3)
        rt = random_word(rng, (1, 2, 3), 1, 3)
        value = lambda_at(parse_literal(f'({lt}){left}233*22{right}({rt})'))
        assert lo_i.lo <= value.hi
        assert value.lo <= hi_i.hi


def test_side_value_of_periodic_two_one():
    # [0; 1, 2, 1, 2, ...] = sqrt(3) - 1
    x = side_value((), (1, 2))
    assert x * x + 2 * x == 2
