import dataclasses
import json
from fractions import Fraction

import pytest

from modules.errors import ConfigError
from modules.report import (CITED, FAIL, HEURISTIC, INCOMPLETE, PASS, Report, cmd_eval, cmd_report_appendixB,
                            cmd_report_theorem1, cmd_report_theorem2, lint_report, places_for, round_up_decimal,
                            write_report)


def test_eval_report_is_clean():
    report = cmd_eval('(1)')
    assert report.passed
    assert report.entry('markov').value_lo.startswith('2.2360679774997896')
    assert report.entry('lagrange').value_lo.startswith('2.2360679774997896')
    assert lint_report(report) == []


def test_report_json_is_deterministic():
    first = cmd_eval('(21)').to_json()
    second = cmd_eval('(21)').to_json()
    assert first == second
    assert first.endswith('\n')
    assert json.loads(first)['verdict'] == PASS


def test_lint_rejects_malformed_entries():
    report = Report('lint')
    section = report.section('entries')
    section.add('one_sided', PASS, ('0.5', None), 'locus')
    section.add('float_text', PASS, ('1e-3', '1e-3'), 'locus')
    section.add('unknown', 'MAYBE')
    section.add('no_locus', PASS, '0.5')
    section.add('empty', PASS, ('0.6', '0.5'), 'locus')
    problems = lint_report(report)
    assert {p.split(':')[0] for p in problems} == {'one_sided', 'float_text', 'unknown', 'no_locus', 'empty'}


def test_round_up_decimal():
    assert round_up_decimal(Fraction(855266, 10 ** 6), 3) == '0.856'
    assert round_up_decimal(Fraction(73, 100), 3) == '0.73'
    assert round_up_decimal(Fraction(1, 3), 4) == '0.3334'
    assert places_for(Fraction(1, 10 ** 20)) == 20


def test_write_report(tmp_path):
    out = tmp_path / 'reports' / 'eval.txt'
    payload = write_report(cmd_eval('(2)'), str(out), text=True)
    assert out.read_text(encoding='utf-8') == payload
    assert 'Verdict: PASS' in payload


def test_theorem2_global_bound():
    report = cmd_report_theorem2()
    assert report.passed
    assert not report.heuristic
    assert report.entry('global').value_lo == '0.986927'
    assert report.entry('region[sqrt10-sqrt13]').value_lo == '0.706104'
    assert report.entry('region[above-sqrt21]').status == CITED
    assert lint_report(report) == []


@pytest.mark.parametrize('label,expected', [('sqrt10-sqrt13', '0.706104'), ('sqrt20-sqrt21', '0.961772')])
def test_theorem2_single_region(label, expected):
    report = cmd_report_theorem2(only=[label])
    assert report.passed
    assert report.entry(f'region[{label}]').value_lo == expected
    assert report.entry('global').value_lo == expected


def test_unknown_region_is_rejected():
    with pytest.raises(ConfigError):
        cmd_report_theorem2(only=['nowhere'])


def test_appendix_bound_is_heuristic():
    report = cmd_report_appendixB(with_estimates=False)
    assert report.heuristic
    assert report.passed
    assert report.entry('region[below-sqrt13]').value_lo == '0.73'
    assert report.entry('region[3.92-4.01]').value_lo == '0.828'
    glob = report.entry('global')
    assert glob.value_lo == '0.888'
    assert glob.status == HEURISTIC
    assert glob.heuristic
    assert 'HEURISTIC' in report.to_text()


@pytest.mark.slow
def test_appendix_bound_with_estimates():
    report = cmd_report_appendixB()
    assert report.passed
    estimates = [e for e in report.entries() if e.name.startswith('dim[')]
    assert estimates
    assert all(e.status == HEURISTIC and e.heuristic for e in estimates)


def test_tampered_ledger_fails_report(claims_by_name):
    tampered = dataclasses.replace(claims_by_name['l1.i'], threshold_text='3.8221')
    report = cmd_report_theorem1(claims=[tampered], steps=('ledger',))
    assert report.verdict == FAIL
    assert report.failures() == ['l1.i']
    assert 'Verdict: FAIL - failed: l1.i' in report.to_text()


def test_small_radius_is_incomplete():
    report = cmd_report_theorem1(claims=[], radius=3, steps=('survivors',))
    assert report.verdict == INCOMPLETE
    assert report.entry('survivors').status == INCOMPLETE


def test_cantor_step_passes():
    report = cmd_report_theorem1(claims=[], steps=('cantor',))
    assert report.passed
    assert [e.name for e in report.entries()] == ['j0', 'j1', 'upsilon', 'c_set']


def test_dimension_step_is_cited_and_heuristic():
    report = cmd_report_theorem1(claims=[], steps=('dimension',))
    assert report.passed
    assert report.entry('jp_K12').status == CITED
    assert report.entry('dim_K12').status == HEURISTIC


def test_unknown_step_is_rejected():
    with pytest.raises(ConfigError):
        cmd_report_theorem1(claims=[], steps=('ledger', 'astrology'))


@pytest.mark.slow
def test_full_gap_report():
    report = cmd_report_theorem1()
    assert report.passed, report.failures()
    assert lint_report(report) == []
