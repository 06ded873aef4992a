#! /usr/bin/python3
import json
import pytest
from lsclib.test import conftest  # this is require near the top to do setup of the test suite

from lsclib import cli
from lsclib.lib.syntax import parse, free_vars

IDENTITY_APP = r'(\x.x) (\y.y)'


def test_calc(lsc_config, capsys):
    assert cli.main(['calc', '--strategy', 'name', '--term', IDENTITY_APP]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == [r'(\x.x) (\y.y)', r'm x[x<-\y.y]', r'e (\y.y)[x<-\y.y]']

def test_calc_steps(lsc_config, capsys):
    assert cli.main(['calc', '--strategy', 'need', '--term', IDENTITY_APP, '--steps', '1']) == cli.EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 2

def test_equiv(lsc_config, capsys):
    left, right = r'(x x)[x<-\y.y]', r'x[x<-\y.y] x[x<-\y.y]'
    assert cli.main(['equiv', left, right]) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['verdict'] == 'equivalent'
    assert document['path']

    assert cli.main(['equiv', '--theory', 'need', left, right]) == cli.EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)['verdict'] != 'equivalent'

def test_equiv_refuted(lsc_config, capsys):
    assert cli.main(['equiv', r'\x.x', r'\x.\y.x']) == cli.EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)['verdict'] == 'refuted'

def test_run(lsc_config, capsys):
    assert cli.main(['run', '--machine', 'kam', '--term', IDENTITY_APP]) == cli.EXIT_OK
    records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(records) == 4
    assert records[0]['machine'] == 'kam'
    assert records[0]['outcome'] == 'final'

def test_run_text_to_file(lsc_config, capsys, tmp_path):
    out = tmp_path / 'trace.txt'
    assert cli.main(['run', '--machine', 'pointing-wam', '--term', IDENTITY_APP, '--format', 'text',
                     '--out', str(out)]) == cli.EXIT_OK
    assert capsys.readouterr().out == ''
    assert out.read_text(encoding='utf-8').splitlines()[-1] == 'final after 4 transitions'

@pytest.mark.parametrize('argv, message', [
    (['run', '--machine', 'foo', '--term', IDENTITY_APP], "lsc run: unknown machine 'foo'"),
    (['run', '--machine', 'kam', '--term', 'x'], 'lsc run: open term, free variables: x'),
    (['run', '--machine', 'kam', '--term', r'x[x<-\y.y]'], 'lsc run: machines run pure terms'),
    (['run', '--machine', 'kam', '--term', r'(\x.'], 'lsc run: '),
    (['calc', '--strategy', 'lazy', '--term', IDENTITY_APP], "lsc calc: unknown strategy 'lazy'"),
    (['equiv', '--theory', 'weak', 'x', 'x'], "lsc equiv: unknown eqtheory 'weak'"),
    (['gen', '--max-size', '1'], 'lsc gen: --max-size must be at least 2'),
    (['suite', '--name', 'nope'], "lsc suite: unknown suite 'nope'"),
    (['run', '--machine', 'kam', '--term', IDENTITY_APP, '--fuel', '-1'], 'lsc run: fuel must not be negative'),
])
def test_usage_errors(lsc_config, capsys, argv, message):
    assert cli.main(argv) == cli.EXIT_USAGE
    assert capsys.readouterr().err.startswith(message)

def test_verify(lsc_config, capsys):
    assert cli.main(['verify', '--machine', 'wam', '--term', IDENTITY_APP]) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert set(document) == {'simulation', 'complexity', 'invariants'}
    assert document['simulation']['status'] == 'pass'
    assert document['complexity']['violations'] == []
    assert document['invariants'] == []

def test_diff(lsc_config, capsys):
    assert cli.main(['diff', '--group', 'need', '--term', IDENTITY_APP]) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['mismatches'] == []
    assert document['result'] == r'\y.y'

def test_gen(lsc_config, capsys):
    assert cli.main(['gen', '--seed', '7', '--max-size', '10', '--count', '4']) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert all(free_vars(parse(line)) == frozenset() for line in lines)

    assert cli.main(['gen', '--seed', '7', '--max-size', '10', '--count', '4']) == cli.EXIT_OK
    assert capsys.readouterr().out.splitlines() == lines

def test_suite(lsc_config, capsys):
    assert cli.main(['suite', '--name', 'traces']) == cli.EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert [s['name'] for s in document['suites']] == ['traces']
    assert document['suites'][0]['failures'] == 0

def test_no_action(lsc_config, capsys):
    assert cli.main([]) == cli.EXIT_USAGE
    assert 'usage: lsc' in capsys.readouterr().err

def test_argparse_exits(lsc_config, capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(['run', '--term', IDENTITY_APP])
    assert e.value.code == cli.EXIT_USAGE

    with pytest.raises(SystemExit) as e:
        cli.main(['-V'])
    assert e.value.code == 0
    assert capsys.readouterr().out.startswith('lsc v')

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
