import json
from fractions import Fraction

import pytest

import spectra_gap
from modules import config
from modules.errors import ConfigError
from modules.run_config import RunConfig, load_presets
from modules.window_prover import PROVED


@pytest.fixture(autouse=True)
def isolated_defaults(tmp_path, monkeypatch):
    monkeypatch.setattr(spectra_gap, 'DEFAULTS_FILE', tmp_path / 'defaults.json')


def run(capsys, *argv):
    code = spectra_gap.main(['--jobs', '1', *argv])
    return code, capsys.readouterr()


def test_presets_load():
    presets = load_presets()
    assert set(presets) == {'quick', 'default', 'thorough'}
    quick = RunConfig.from_preset('quick')
    assert quick.precision == 128
    assert quick.tol == Fraction(1, 10 ** 16)
    assert quick.order == 8


def test_preset_overrides_skip_none():
    cfg = RunConfig.from_preset('default', precision=None, jobs=3)
    assert cfg.precision == 192
    assert cfg.jobs == 3
    assert cfg.to_dict()['tol'] == '1.000e-20'


def test_unknown_preset():
    with pytest.raises(ConfigError):
        RunConfig.from_preset('reckless')


@pytest.mark.parametrize('field,value', [('tol', Fraction(0)), ('precision', 16), ('max_depth', 0), ('order', 1), ('lookahead', -1), ('jobs', 0)])
def test_validate_rejects(field, value):
    cfg = RunConfig()
    setattr(cfg, field, value)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_validate_requires_data_files(tmp_path):
    with pytest.raises(ConfigError) as info:
        RunConfig(data_dir=str(tmp_path)).validate()
    assert config.LEDGER_FILE in str(info.value)


def test_eval_command(capsys):
    code, captured = run(capsys, 'eval', '(1)')
    assert code == 0
    data = json.loads(captured.out)
    assert data['verdict'] == 'PASS'
    assert 'RUN STATISTICS' in captured.err


def test_bad_literal_exits_nonzero(capsys):
    code, _ = run(capsys, 'eval', '(4x')
    assert code == 1


def test_prove_ledger_claim(capsys):
    code, captured = run(capsys, 'prove', 'l1.iii')
    assert code == 0
    assert json.loads(captured.out)['status'] == PROVED


def test_prove_adhoc_pattern(capsys):
    code, captured = run(capsys, 'prove', '--pattern', '3?3*', '--kind', 'upper', '--threshold', '4.6')
    assert code == 0
    assert json.loads(captured.out)['depth_used'] <= 1


def test_prove_needs_a_claim(capsys):
    code, _ = run(capsys, 'prove')
    assert code == 1


def test_cover_command(capsys):
    code, captured = run(capsys, 'cover', 'sqrt10-sqrt13')
    assert code == 0
    record = json.loads(captured.out)[0]
    assert record['certified']
    assert set(record['case_sums']) == {'g'}


def test_report_written_to_file(capsys, tmp_path):
    out = tmp_path / 'theorem2.json'
    code = spectra_gap.main(['--jobs', '1', '--out', str(out), 'report', 'theorem2', '--region', 'sqrt10-sqrt13'])
    assert code == 0
    data = json.loads(out.read_text(encoding='utf-8'))
    assert data['verdict'] == 'PASS'
    assert capsys.readouterr().out == ''


def test_zero_tolerance_is_a_config_error(capsys):
    code, _ = run(capsys, '--tol', '0', 'eval', '(1)')
    assert code == 1


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as info:
        spectra_gap.main(['--preset', 'reckless', 'eval', '(1)'])
    assert info.value.code == 2


def test_saved_defaults(capsys):
    code, _ = run(capsys, '--precision', '256', '--default', 'eval', '(2)')
    assert code == 0
    assert spectra_gap.load_default_config()['precision'] == 256
