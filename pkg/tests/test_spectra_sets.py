import math
from fractions import Fraction

import pytest

from modules import config
from modules.errors import LiteralError, VerificationError
from modules.intervals import RInterval, decimal_fraction
from modules.spectra_sets import (UPSILON_PRINTED, GapInterval, c_point, constants_table, interval_J, key_lemma_splice,
                                  replay_upsilon_chain, shortest_bridges, upsilon, verify_block_constant)

TOL = Fraction(1, 10 ** 20)


def test_gap_endpoints_match_printed():
    gap = interval_J(TOL)
    assert gap.lo.matches_printed(config.PRINTED_CONSTANTS['j0'])
    assert gap.hi.matches_printed(config.PRINTED_CONSTANTS['j1'])


def test_upsilon_matches_printed():
    value = upsilon(TOL)
    assert value.matches_printed(UPSILON_PRINTED)
    assert interval_J(TOL).contains(value)


def test_cantor_set_sits_inside_gap():
    c = c_point((), TOL)
    assert c.lo >= decimal_fraction('3.70969985975024')
    assert c.hi <= decimal_fraction('3.70969985975028')
    assert interval_J(TOL).contains(c)


@pytest.mark.parametrize('prefix', [(1,), (2,), (1, 2, 2), (2, 1, 1, 2)])
def test_cantor_enclosures_nest(prefix):
    parent = c_point(prefix[:-1], TOL)
    child = c_point(prefix, TOL)
    assert parent.lo - TOL <= child.lo
    assert child.hi <= parent.hi + TOL
    assert child.width <= parent.width + TOL


def test_cantor_prefix_rejects_digit_three():
    with pytest.raises(LiteralError):
        c_point((1, 3))


def test_gap_interval_rejects_overlap():
    with pytest.raises(VerificationError):
        GapInterval(RInterval.point(2), RInterval.point(1))


def test_block_constants_below_threshold(block_specs):
    computed = [s for s in block_specs.values() if not s.cited]
    assert len(computed) == 4
    for spec in computed:
        enclosure = verify_block_constant(spec, TOL)
        assert enclosure.width <= 2 * TOL


def test_sqrt10_block_constant_value(block_specs):
    enclosure = verify_block_constant(block_specs['sqrt10-sqrt13'], TOL)
    assert enclosure.matches_printed(config.PRINTED_CONSTANTS['sqrt2_plus_sqrt3'])


def test_cited_block_constant_is_not_computed(block_specs):
    with pytest.raises(VerificationError):
        verify_block_constant(block_specs['sqrt20-sqrt21'])


def test_shortest_bridges(block_specs):
    assert shortest_bridges(block_specs['sqrt10-sqrt13']) == [(1, 1), (2, 2)]


@pytest.mark.parametrize('literal,m', [('(21)', 12), ('(2)', 8)])
@pytest.mark.parametrize('k', range(4, 17))
def test_splice_sandwich(literal, m, k):
    result = key_lemma_splice(literal, ['11', '22'], k=k, tol=TOL)
    assert result.holds
    assert abs(float(result.value.mid) - math.sqrt(m)) <= result.slack
    assert len(result.completions) == 4


def test_splice_rejects_bad_connector():
    with pytest.raises(LiteralError):
        key_lemma_splice('(21)', ['11', '22'], connectors=(1, 2))
    with pytest.raises(ValueError):
        key_lemma_splice('(21)', ['11', '22'], k=2)


def test_constants_table_order():
    names = [row['name'] for row in constants_table(TOL)]
    assert names[:4] == ['j0', 'j1', 'upsilon', 'c_set']
    assert all(n.startswith('c_bound[') for n in names[4:])
    assert len(names) == 8


@pytest.mark.slow
def test_upsilon_forcing_chain_replays():
    report = replay_upsilon_chain()
    assert report.passed
