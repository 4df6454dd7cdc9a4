import json

import pytest

from modules.errors import LedgerFormatError
from modules.ledger import format_index_set, parse_index_set, parse_ledger, run_ledger, with_transposes
from modules.stats import RunStats
from modules.window_prover import ALL_POSITIONS, PROVED, REFUTED

SAMPLE = """
# two claims
@alphabet 123
l1.i   | 3*1  | lower | 3.822   | 0 | printed=3.822020185
l1.iii | 33*3 | upper | 3.61279 | 0 | printed=3.61278966

@alphabet 12
k.x    | 2*   | upper | 3.5     |   | transpose=no depth=5
"""


def test_parse_sample():
    claims = parse_ledger(SAMPLE)
    assert [c.id for c in claims] == ['l1.i', 'l1.iii', 'k.x']
    assert claims[0].printed == '3.822020185'
    assert claims[2].pattern.alphabet == (1, 2)
    assert claims[2].max_depth == 5
    assert not claims[2].transposable
    assert [c.id for c in with_transposes(claims)] == ['l1.i', 'l1.i^t', 'l1.iii', 'l1.iii^t', 'k.x']


@pytest.mark.parametrize('text, line_no', [
    ('a | 3* | lower', 1),
    ('a | 3* | sideways | 3.7', 1),
    ('a | 3* | lower | 3.5\na | 3* | lower | 3.5', 2),
    ('@colour 12', 1),
    ('a | 3x* | lower | 3.5', 1),
    ('a | 3* | lower | 3.5 | 0 | depth', 1),
])
def test_format_errors_carry_line_numbers(text, line_no):
    with pytest.raises(LedgerFormatError) as info:
        parse_ledger(text)
    assert info.value.line_no == line_no


def test_index_sets():
    assert parse_index_set('') == ((0, None),)
    assert parse_index_set('*') == ALL_POSITIONS
    assert parse_index_set('-3, 0, 5>3.71') == ((-3, None), (0, None), (5, '3.71'))
    assert format_index_set(parse_index_set('0, -1>3.822')) == '0, -1>3.822'


def test_shipped_ledger(ledger_claims):
    ids = [c.id for c in ledger_claims]
    assert len(ids) == len(set(ids))
    assert {'l1.i', 'l.replication', 'p.j1', 'ups.a13', 'aux.1'} <= set(ids)
    by_id = {c.id: c for c in ledger_claims}
    assert by_id['p.j1'].all_positions
    assert by_id['l2.v'].kind == 'disjunctive'


def test_run_ledger_report():
    claims = with_transposes(parse_ledger(SAMPLE))
    stats = RunStats()
    report = run_ledger(claims, stats=stats)
    assert report.passed
    assert [v.claim_id for v in report.verdicts] == [c.id for c in claims]
    assert report.printed_mismatches() == []
    assert stats.claims_proved == len(claims)
    records = json.loads(report.to_json())
    assert records[0]['id'] == 'l1.i'
    assert records[0]['status'] == PROVED
    assert records[0]['bound_lo'].startswith('3.822020185')


def test_run_ledger_reports_refutation():
    claims = parse_ledger('bad | 3*1 | lower | 3.8221 | 0 | transpose=no')
    report = run_ledger(claims)
    assert not report.passed
    assert report.refuted_ids() == ['bad']
    record = report.to_records()[0]
    assert record['status'] == REFUTED
    assert 'witness' in record


@pytest.mark.slow
def test_parallel_run_matches_serial():
    claims = with_transposes(parse_ledger(SAMPLE))
    serial = run_ledger(claims, jobs=1)
    parallel = run_ledger(claims, jobs=2)
    assert serial.to_json() == parallel.to_json()


@pytest.mark.slow
def test_full_ledger_passes(ledger_claims):
    report = run_ledger(with_transposes(ledger_claims), jobs=4)
    assert report.inconclusive_ids() == []
    assert report.refuted_ids() == []
    assert report.printed_mismatches() == []
