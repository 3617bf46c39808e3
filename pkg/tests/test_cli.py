import csv
import io
import json
import math

import pandas as pd
import pytest

from opa_helper.cli.main import main
from opa_helper.cli.specs import RunConfig, parse_complex, parse_degrees, parse_function, render_csv
from opa_helper.core import verify
from opa_helper.core.errors import ConvergenceError, InputError


def _data_rows(path):
    lines = path.read_text(encoding='utf-8').splitlines()
    body = [line for line in lines if not line.startswith('#')]
    records = list(csv.reader(body))
    return records[0], records[1:]


def test_norm_writes_csv(tmp_path):
    out = tmp_path / 'norm.csv'
    assert main(['norm', '--space', 'bergman:0', '--out', str(out)]) == 0
    lines = out.read_text(encoding='utf-8').splitlines()
    assert lines[0] == '# opa-helper 0.1.0'
    assert lines[1].startswith('# config: ')
    assert json.loads(lines[1][len('# config: '):])['space'] == 'bergman:0'
    header, rows = _data_rows(out)
    row = dict(zip(header, rows[0]))
    assert float(row['norm']) == pytest.approx(3 / math.sqrt(2), abs=1e-8)
    assert float(row['min_zero_modulus']) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-8)
    assert row['regime'] == 'attained'


def test_norm_output_is_reproducible(tmp_path):
    a, b = tmp_path / 'a.csv', tmp_path / 'b.csv'
    main(['norm', '--space', 'dirichlet:-2', '--out', str(a)])
    main(['norm', '--space', 'dirichlet:-2', '--out', str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert b'indicial exponent' in a.read_bytes()


def test_verify_output_is_reproducible(tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    assert main(['verify', 'theta-witness', '--out', str(a)]) == 0
    assert main(['verify', 'theta-witness', '--out', str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert 'elapsed' not in json.loads(a.read_text(encoding='utf-8'))['data']


def test_csv_quotes_cells_with_commas():
    config = RunConfig(command='verify')
    text = render_csv(config, ['name', 'passed', 'value', 'detail'],
                      [['a', True, 0.1, '[1.5, 2.5, 3.5]'], ['b', False, None, 'plain']])
    body = '\n'.join(line for line in text.splitlines() if not line.startswith('#'))
    frame = pd.read_csv(io.StringIO(body), keep_default_na=False, dtype=str)
    assert list(frame.columns) == ['name', 'passed', 'value', 'detail']
    assert frame['detail'].tolist() == ['[1.5, 2.5, 3.5]', 'plain']
    assert frame['passed'].tolist() == ['true', 'false']
    assert frame['value'].tolist() == ['0.1', '']


def test_verify_csv_rows_keep_their_width(tmp_path):
    out = tmp_path / 'v.csv'
    assert main(['verify', 'zero-location', '--format', 'csv', '--out', str(out)]) == 0
    header, rows = _data_rows(out)
    assert len(header) == 6
    assert rows and all(len(row) == 6 for row in rows)


def test_input_errors_exit_two(tmp_path):
    out = str(tmp_path / 'x.csv')
    assert main(['norm', '--space', 'bergman:-2', '--out', out]) == 2
    assert main(['norm', '--space', 'sobolev:1', '--out', out]) == 2
    assert main(['norm', '--space', 'hardy', '--tol', '0', '--out', out]) == 2
    assert main(['verify', 'nosuch']) == 2
    assert main(['extremal', '--space', 'hardy', '--degree', '3', '--closed-form', '--out', out]) == 2


def test_untrusted_tail_exits_one(tmp_path):
    args = ['approximant', '--space', 'dirichlet:1', '--function', 'one_minus_z_pow:1.5,100',
            '--degree', '3', '--out', str(tmp_path / 'a.csv')]
    assert main(args) == 1


def test_verify_json(tmp_path):
    out = tmp_path / 'v.json'
    assert main(['verify', 'theta-witness', '--out', str(out)]) == 0
    doc = json.loads(out.read_text(encoding='utf-8'))
    assert doc['tool'] == 'opa-helper'
    assert doc['config']['options'] == {'suite': 'theta-witness'}
    assert doc['data']['passed'] is True


def test_verify_failure_exits_one(tmp_path, monkeypatch):
    def broken():
        raise ConvergenceError("did not settle")

    monkeypatch.setitem(verify.SUITES, 'broken', broken)
    assert main(['verify', 'broken', '--out', str(tmp_path / 'v.json')]) == 1


def test_figure1_subset(tmp_path):
    out = tmp_path / 'f.csv'
    assert main(['figure1', '--alphas', '0,-1', '--out', str(out)]) == 0
    header, rows = _data_rows(out)
    assert header == ['alpha', 'half_norm', 'half_norm_bound', 'zero_free_radius', 'size']
    assert len(rows) == 2
    assert float(rows[1][1]) == pytest.approx(3 / (2 * math.sqrt(2)), abs=1e-8)


def test_approximant_json(tmp_path):
    out = tmp_path / 'p.json'
    args = ['approximant', '--space', 'hardy', '--function', 'one_minus_z', '--degree', '1',
            '--format', 'json', '--out', str(out)]
    assert main(args) == 0
    data = json.loads(out.read_text(encoding='utf-8'))['data']
    assert data['coeffs']['re'] == pytest.approx([2 / 3, 1 / 3], abs=1e-14)
    assert data['roots']['re'] == pytest.approx([-2], abs=1e-12)


def test_approximant_from_coeffs_file(tmp_path, write_json):
    path = write_json('f.json', {'re': [1, -1]})
    out = tmp_path / 'p.csv'
    assert main(['approximant', '--space', 'hardy', '--function', f'coeffs:{path}',
                     '--degree', '1', '--out', str(out)]) == 0
    header, rows = _data_rows(out)
    assert header == ['kind', 'index', 're', 'im']
    assert float(rows[0][2]) == pytest.approx(2 / 3, abs=1e-14)


def test_jentzsch_csv(tmp_path):
    out = tmp_path / 'j.csv'
    args = ['jentzsch', '--space', 'bergman:0', '--function', 'one_minus_z', '--degrees', '1..4',
            '--workers', '2', '--out', str(out)]
    assert main(args) == 0
    header, rows = _data_rows(out)
    assert header[:6] == ['degree', 'tau_eps_fraction', 'geo_mean_modulus', 'angular_discrepancy',
                          'count_in_unit_disk', 'min_root_modulus']
    assert [r[0] for r in rows] == ['1', '2', '3', '4']
    assert all(r[-1] == 'ok' for r in rows)


def test_spectrum_and_extremal(tmp_path):
    out = tmp_path / 's.csv'
    assert main(['spectrum', '--space', 'bergman:0', '--count', '2', '--out', str(out)]) == 0
    _, rows = _data_rows(out)
    assert float(rows[0][1]) == pytest.approx(3 / math.sqrt(2), abs=1e-8)
    assert float(rows[1][1]) == pytest.approx(5 / math.sqrt(6), abs=1e-8)

    out = tmp_path / 'e.csv'
    assert main(['extremal', '--space', 'bergman:0', '--degree', '2', '--closed-form',
                     '--out', str(out)]) == 0
    _, rows = _data_rows(out)
    assert [float(r[1]) for r in rows] == pytest.approx([1, 3 / math.sqrt(2), 3], rel=1e-14)


def test_multizero_json(tmp_path):
    out = tmp_path / 'm.json'
    assert main(['multizero', '--space', 'bergman:0', '--r', '3', '--format', 'json',
                     '--out', str(out)]) == 0
    data = json.loads(out.read_text(encoding='utf-8'))['data']
    assert data['verified'] is True
    assert len(data['approximant']['roots']['re']) == 3


def test_no_command_prints_help(capsys):
    assert main([]) == 0
    assert 'oph' in capsys.readouterr().out


def test_parse_function_errors(tmp_path):
    for text in ('nosuch', 'cayley:1', 'cayley:a,b', 'one_minus_z_pow:-1',
                 f'coeffs:{tmp_path / "missing.json"}'):
        with pytest.raises(InputError):
            parse_function(text)


def test_parse_helpers():
    assert parse_complex('2+0.5i') == 2 + 0.5j
    assert parse_degrees('3..5') == [3, 4, 5]
    assert parse_degrees('1,4') == [1, 4]
    assert parse_degrees('7') == [7]
    with pytest.raises(InputError):
        parse_degrees('5..3')
    assert len(parse_function('cayley:1,3')) == 5
