import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from stabcert import report
from stabcert.cli import RunConfig, UsageError, run


def run_cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_json_validates(capsys):
    code, out, _ = run_cli(capsys, 'certify', '--max-m', '40', '--jobs', '1')
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, report.REPORT_SCHEMA)
    assert doc['summary']['theorem3_verified'] is True
    assert len(doc['certificates']) == 80
    assert report.dumps(json.loads(out)) == out


def test_certify_exemplar_check(capsys):
    code, out, _ = run_cli(capsys, 'certify', '--max-m', '5', '--jobs', '1', '--exemplar-check')
    doc = json.loads(out)
    jsonschema.validate(doc, report.REPORT_SCHEMA)
    ex = {(e['factor'], e['m']): e['passed'] for e in doc['summary']['exemplars']}
    assert ex[('g1', 4342)] is True
    assert code == 0


def test_certify_small_prime_bound_is_unresolved(capsys):
    code, out, _ = run_cli(capsys, 'certify', '--max-m', '30', '--prime-bound', '7',
                           '--jobs', '1', '--format', 'text')
    assert code == 1
    assert 'UNRESOLVED m=26 g1' in out


def test_certify_csv_to_file(tmp_path, capsys):
    path = tmp_path / 'r.csv'
    code, out, _ = run_cli(capsys, 'certify', '--max-m', '12', '--jobs', '1',
                           '--format', 'csv', '--out', str(path))
    assert code == 0 and out == ''
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert len(rows) == 24
    assert rows[1]['factor'] == 'g2' and rows[1]['method'] == 'special_case'


def test_certify_single_prime_mode(capsys):
    code, out, _ = run_cli(capsys, 'certify', '--max-m', '900', '--jobs', '1', '--single-prime',
                           '--format', 'text')
    assert code == 1 and 'UNRESOLVED m=884 g1' in out


@pytest.mark.parametrize('argv', [
    ['certify', '--max-m', '10', '--prime-bound', '5'],
    ['certify', '--max-m', '0'],
    ['certify'],
    ['--bogus'],
    ['sieve', '--m', '3', '--k', '5', '--factor', 'g1'],
    ['sieve', '--m', '0', '--k', '7', '--factor', 'g1'],
    ['quad-bound', '--c', '4'],
    ['iterate', '--d', '3', '--c', '7', '--n', '9'],
    ['abc', '--a', '2', '--b', '4', '--c', '6'],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(10, prime_bound=3)
    assert RunConfig(10).prime_bound == 150


def test_sieve_command(capsys):
    code, out, _ = run_cli(capsys, 'sieve', '--m', '3', '--k', '7', '--factor', 'g1')
    assert code == 0 and json.loads(out)['result'] == 'PASS'
    code, out, _ = run_cli(capsys, 'sieve', '--m', '2730', '--k', '67', '--factor', 'g2')
    doc = json.loads(out)
    assert code == 1 and doc['witness_index'] == 6 and doc['witness_value'] == 45


def test_orbit_command(capsys):
    code, out, _ = run_cli(capsys, 'orbit', '--d', '2', '--c', '1', '--mod', '2')
    doc = json.loads(out)
    assert code == 0 and doc['tail'] == [] and doc['cycle'] == [0, 1]


def test_classify_command(capsys):
    code, out, _ = run_cli(capsys, 'classify', '--d', '28')
    doc = json.loads(out)
    assert doc['case'] == 'TwoFiveSeven' and doc['exponents'] == [2, 0, 1]


def test_iterate_command(capsys):
    code, out, _ = run_cli(capsys, 'iterate', '--d', '2', '--c', '5', '--n', '2')
    assert json.loads(out) == {'d': 2, 'c': 5, 'orbit': ['1/5', '6/25'], 'numerators': ['1', '6']}


def test_quad_commands(capsys):
    code, out, _ = run_cli(capsys, 'quad-bound', '--c', '5')
    assert code == 0 and json.loads(out)['stable'] is True
    code, out, _ = run_cli(capsys, 'quad-scan', '--c', '5', '--n', '4')
    assert code == 0 and all(ch['status'] == 'obstruction' for ch in json.loads(out)['checks'])


def test_scan_a2_command(capsys):
    code, out, _ = run_cli(capsys, 'scan-a2', '--d-max', '6', '--c-max', '30')
    doc = json.loads(out)
    assert code == 1 and doc['unexpected'] > 0  # d = 2 contributes squares 1 + c


def test_tables_command(tmp_path, capsys):
    path = tmp_path / 't.json'
    assert run(['tables', '--residuals', '100', '--out', str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc['g1']['classes']['7'] == [1, 3]
    assert doc['residual_range'] == [1, 100]
    assert doc['g1']['residual_count'] == len(doc['g1']['residuals'])


def test_fermat_and_abc_commands(capsys):
    code, out, _ = run_cli(capsys, 'fermat', '--p', '3', '--q', '3', '--r', '3', '--bound', '30')
    assert code == 0 and json.loads(out)['solutions'] == []
    code, out, _ = run_cli(capsys, 'abc', '--a', '1', '--b', '8', '--c', '9')
    assert code == 0 and json.loads(out)['radical'] == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, '-m', 'stabcert', 'classify', '--d', '9'],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)['case'] == 'OddD'
