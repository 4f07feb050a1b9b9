# -*- coding: utf-8 -*-

import argparse
import json
import logging

import pytest

from pydiffsys.command_line import log_level, main, str2bool
from pydiffsys.gauge import normalize_system
from pydiffsys.utils import SystemReader


def read_report(path):
    with open(str(path)) as f:
        return json.load(f)


def test_str2bool():
    assert str2bool('Yes')
    assert str2bool('1')
    assert not str2bool('false')
    with pytest.raises(argparse.ArgumentTypeError):
        str2bool('maybe')


def test_log_level():
    assert log_level(-1) == logging.ERROR
    assert log_level(0) == logging.WARNING
    assert log_level(1) == logging.INFO
    assert log_level(3) == logging.DEBUG


def test_analyze(tmp_path):
    out = tmp_path / 'analyze.json'
    assert main(['analyze', 'tests/difference_example.json', '--out', str(out)]) == 0
    report = read_report(out)
    assert report['kind'] == 'difference'
    assert report['precision'] == 128


def test_verify_fuchs(tmp_path):
    out = tmp_path / 'fuchs.json'
    assert main(['verify', 'tests/difference_example.json', '--suite', 'fuchs',
                 '--out', str(out)]) == 0
    report = read_report(out)
    assert report['pass'] is True
    assert report['residuals']['residual'] == '0'


def test_verify_legendre(tmp_path):
    out = tmp_path / 'legendre.json'
    assert main(['verify', 'tests/q_example.json', '--suite', 'legendre',
                 '--out', str(out)]) == 0
    assert read_report(out)['suite'] == 'legendre'


def test_input_errors(tmp_path):
    out = str(tmp_path / 'never.json')
    assert main(['verify', 'tests/q_example.json', '--suite', 'fuchs', '--out', out]) == 2
    assert main(['analyze', 'tests/no_such_system.json', '--out', out]) == 2
    assert main(['normalize', 'tests/q_example.json', '--targets=1', '--out', out]) == 2
    assert not (tmp_path / 'never.json').exists()


def test_precondition_error(tmp_path):
    out = str(tmp_path / 'never.json')
    assert main(['normalize', 'tests/q_singular_origin.json', '--targets=1,0', '--out', out]) == 3


def test_normalize(tmp_path):
    out = tmp_path / 'normalized.json'
    assert main(['normalize', 'tests/q_example.json', '--targets=-1,1', '--out', str(out)]) == 0
    report = read_report(out)
    assert report['targets'] == [-1, 1]
    assert report['trajectory'][-1] == 0
    assert report['precision'] == 128


def test_verify_writes_csv(tmp_path):
    out, csv = tmp_path / 'periodicity.json', tmp_path / 'grid.csv'
    code = main(['verify', 'tests/q_scalar.json', '--suite', 'periodicity', '--precision', '128',
                 '--order', '30', '--samples', '2', '--csv', str(csv), '--out', str(out)])
    report = read_report(out)
    assert code == (0 if report['pass'] else 4)
    assert 'periodicity' in report['residuals']
    with open(str(csv)) as f:
        assert f.readline().startswith('t_re,t_im,abs_p11')


def test_analyze_singular_leading_coefficient(tmp_path):
    out = tmp_path / 'singular.json'
    assert main(['analyze', 'tests/difference_singular_leading.json', '--out', str(out)]) == 0
    report = read_report(out)
    assert report['hypotheses']['leading_diagonal'] is True
    assert report['hypotheses']['rho_nonzero'] is False
    assert 'd' not in report
    assert 'fuchs' not in report
    assert len(report['det_roots']) == 1


def test_normalize_writes_system_file(tmp_path):
    out, system_out = tmp_path / 'normalized.json', tmp_path / 'system.json'
    assert main(['normalize', 'tests/q_example.json', '--targets=-1,1', '--out', str(out),
                 '--system-out', str(system_out)]) == 0
    reader = SystemReader()
    written = reader.read_file(str(system_out))
    expected = normalize_system(reader.read_file('tests/q_example.json'), [-1, 1]).system
    assert written.kind == 'qdifference'
    assert written.matrix == expected.matrix
    assert written.q == expected.q
    assert written.matrix == reader.read_json(read_report(out)['system']).matrix
    assert main(['analyze', str(system_out), '--out', str(tmp_path / 'analyze.json')]) == 0
