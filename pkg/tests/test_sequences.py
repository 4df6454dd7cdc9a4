import pytest

from modules.errors import LiteralError, PartialSequenceError
from modules.sequences import BiSeq, OneSidedSeq, format_literal, minimal_period, parse_literal, periodic_biseq, window_literal

from conftest import random_literal


def test_parse_two_sided_literal():
    a = parse_literal('(21)1233*22212(12)')
    assert a.origin == 3
    assert [a.digit(i) for i in range(-3, 4)] == [1, 2, 3, 3, 2, 2, 2]
    assert a.left.tail == (1, 2)
    assert a.is_complete


def test_pure_block_origin_defaults_to_first_digit():
    a = parse_literal('(21)')
    assert a.origin == 2
    assert a == periodic_biseq((2, 1), 0)
    b = parse_literal('(33*22212)')
    assert b.origin == 3 and b.digit(-1) == 3 and b.digit(1) == 2


def test_wildcards_and_partial_sides():
    a = parse_literal('2?3*1')
    assert a.digit(-1) is None
    assert a.digit(-2) == 2
    assert not a.is_complete
    assert a.known_positions() == {0: 3, 1: 1, -2: 2}


@pytest.mark.parametrize('text, column', [
    ('33*2x', 4),
    ('*33', 0),
    ('(1?)3*', 2),
])
def test_parse_errors_carry_position(text, column):
    with pytest.raises(LiteralError) as info:
        parse_literal(text)
    assert info.value.position == column


def test_missing_origin_marker():
    with pytest.raises(LiteralError):
        parse_literal('3322')


def test_transpose_suffix():
    a = parse_literal('12*3^t')
    assert [a.digit(i) for i in (-1, 0, 1)] == [3, 2, 1]


def test_format_parse_round_trip(rng):
    for _ in range(200):
        a = parse_literal(random_literal(rng))
        text = format_literal(a)
        assert parse_literal(text) == a
        assert format_literal(parse_literal(text)) == text


def test_head_absorbed_into_tail():
    side = OneSidedSeq((1, 2, 1, 2), (1, 2))
    assert side.head == ()
    assert minimal_period((3, 3, 3)) == (3,)


def test_shift_and_window_literal():
    a = parse_literal('(3322212)33*2221233222122121212')
    b = a.shifted(-7)
    assert window_literal(b, -1, 3) == '33*222'
    assert window_literal(parse_literal('2?3*1'), -2, 2) == '2?3*1?'


def test_shifting_onto_wildcard_fails():
    with pytest.raises(PartialSequenceError):
        parse_literal('2?3*1').shifted(-1)


def test_set_digit_grows_partial_side():
    a = BiSeq(OneSidedSeq(), 3, OneSidedSeq())
    b = a.set_digit(2, 1).set_digit(-1, 3)
    assert window_literal(b, -1, 2) == '33*?1'
