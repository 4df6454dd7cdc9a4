import dataclasses

import pytest

from modules.errors import LedgerFormatError
from modules.window_prover import (ALL_POSITIONS, DISJUNCTIVE, INCONCLUSIVE, LOWER, PROVED, REFUTED, UPPER, Claim,
                                   WindowPattern, prove_claim)


def make_claim(pattern, kind, threshold, index_set=((0, None),), **kwargs):
    return Claim('test', WindowPattern.parse(pattern), kind, threshold, index_set, **kwargs)


def test_lower_claim_bound_matches_printed(claims_by_name):
    verdict = prove_claim(claims_by_name['l1.i'])
    assert verdict.status == PROVED
    assert verdict.bound.matches_printed('3.822020185')


def test_upper_claim_bound_matches_printed(claims_by_name):
    verdict = prove_claim(claims_by_name['l1.iii'])
    assert verdict.status == PROVED
    assert verdict.bound.matches_printed('3.61278966')


def test_tampered_threshold_is_refuted(claims_by_name):
    tampered = dataclasses.replace(claims_by_name['l1.i'], threshold_text='3.8221')
    verdict = prove_claim(tampered)
    assert verdict.status == REFUTED
    assert verdict.witness is not None
    assert verdict.witness_literal().count('*') == 1


@pytest.mark.parametrize('claim_id', ['l2.v', 'l3.vii', 'l4.x'])
def test_disjunctive_claims_prove(claims_by_name, claim_id):
    verdict = prove_claim(claims_by_name[claim_id])
    assert verdict.status == PROVED
    assert verdict.nodes >= 1


def test_disjunctive_with_per_index_threshold(claims_by_name):
    claim = claims_by_name['l2.v']
    assert [str(t) for _, t in claim.index_set] == ['None', '3.822']
    thresholds = dict((i, float(c)) for i, c in claim.thresholds())
    assert thresholds == {0: pytest.approx(3.72), -1: pytest.approx(3.822)}


def test_transposed_claim(claims_by_name):
    claim = claims_by_name['l3.vii']
    flipped = claim.transpose()
    assert flipped.id == 'l3.vii^t'
    assert sorted(i for i, _ in flipped.index_set) == [-5, 0, 3]
    assert prove_claim(flipped).status == PROVED


def test_false_disjunction_is_refuted():
    verdict = prove_claim(make_claim('3*', DISJUNCTIVE, '3.6'))
    assert verdict.status == REFUTED
    assert verdict.witness.digit(0) == 3


def test_upper_claim_over_gapped_window():
    verdict = prove_claim(make_claim('3?3*', UPPER, '4.6'))
    assert verdict.status == PROVED
    assert verdict.depth_used == 1


def test_depth_exhaustion_is_inconclusive(claims_by_name):
    verdict = prove_claim(claims_by_name['p.j1'], max_depth=2)
    assert verdict.status == INCONCLUSIVE
    assert 'max_depth' in verdict.message


@pytest.mark.parametrize('kind, threshold', [('sideways', '3.7'), (LOWER, '0'), (LOWER, '-2')])
def test_invalid_claims(kind, threshold):
    with pytest.raises(LedgerFormatError):
        make_claim('3*', kind, threshold)


def test_all_positions_claim_keeps_marker(claims_by_name):
    claim = claims_by_name['p.j1']
    assert claim.all_positions
    assert claim.index_set == ALL_POSITIONS
    assert not claim.transposable
