import math

import pytest

from modules.errors import EmptySubshiftError
from modules.gauss_dim import (AUTOMATON, FIXED, build_subshift, dimension, load_subshift_entries, load_subshifts,
                               omega_spec, pressure, pressure_curve)
from modules.report import load_cited_constants

JP_K12 = 0.5312805062772051


def test_k12_dimension():
    estimate = dimension(build_subshift((1, 2), name='K12'))
    assert abs(estimate.value - JP_K12) < 5e-11
    assert estimate.uncertainty < 1e-6
    assert estimate.heuristic
    assert estimate.order == 24


@pytest.mark.parametrize('alphabet,expected', [((1, 2, 3), 0.705660908028738), ((1, 2, 3, 4), 0.788945557483368)])
def test_full_shift_dimensions(alphabet, expected):
    estimate = dimension(build_subshift(alphabet), order=8)
    assert abs(estimate.value - expected) < 1e-3


def test_pressure_at_zero_counts_branches():
    p = pressure(build_subshift((1, 2)), 0)
    assert abs(float(p.mid) - math.log(2)) < 1e-10


def test_pressure_is_decreasing():
    curve = pressure_curve(build_subshift((1, 2, 3), ['13', '31']), [0.1, 0.3, 0.5, 0.7, 0.9], order=8)
    assert curve.is_decreasing()


def test_pressure_rejects_low_order():
    with pytest.raises(ValueError):
        pressure(build_subshift((1, 2)), 0.5, order=1)


def test_empty_subshift():
    spec = build_subshift((1, 2), ['1', '2'])
    assert spec.is_empty
    assert pressure(spec, 0.5).is_negative_infinity
    assert not pressure_curve(spec, [0.2, 0.4]).is_decreasing()
    with pytest.raises(EmptySubshiftError):
        dimension(spec)


def test_build_subshift_rejects_bad_input():
    with pytest.raises(ValueError):
        build_subshift((1, 2), ['13'])
    with pytest.raises(ValueError):
        build_subshift((1, 2), coding='sofic')


def test_dimension_is_reversal_invariant():
    forward = build_subshift((1, 2), ['112'])
    backward = build_subshift((1, 2), ['211'])
    a = dimension(forward, order=8).value
    b = dimension(backward, order=8).value
    assert abs(a - b) < 1e-6
    assert abs(dimension(forward.reversed(), order=8).value - a) < 1e-6


def test_codings_agree():
    forbidden = ['131', '313', '231', '132']
    fixed = dimension(build_subshift((1, 2, 3), forbidden, FIXED), order=8).value
    automaton = dimension(build_subshift((1, 2, 3), forbidden, AUTOMATON), order=8).value
    assert abs(fixed - automaton) < 1e-6


def test_shipped_subshifts_load():
    entries = load_subshift_entries()
    specs = load_subshifts()
    assert [e['name'] for e in entries] == list(specs)
    assert not any(spec.is_empty for spec in specs.values())


def test_omega_spec_from_ledger(ledger_claims):
    spec = omega_spec(ledger_claims)
    assert spec.interpretation
    assert spec.coding == AUTOMATON
    assert tuple(int(ch) for ch in '2332221233222123322') in spec.forbidden
    assert 3 in spec.alphabet


@pytest.mark.slow
def test_heuristic_caps_hold():
    cited = load_cited_constants()
    for entry in load_subshift_entries():
        ref = cited[entry['reference']]
        if not ref.name.startswith('cap_'):
            continue
        spec = build_subshift(entry['alphabet'], entry['forbidden'], name=entry['name'])
        value = dimension(spec).value
        assert value <= float(ref.value) + 0.005, entry['name']
