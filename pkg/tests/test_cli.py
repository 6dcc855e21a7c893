"""Test the seqdec command line interface."""

import json

import pytest

from seqdec import __version__
from seqdec.automata import Dfao
from seqdec.cli import run_cli, format_word, EXIT_OK, EXIT_INPUT, EXIT_RESOURCE
from seqdec.fileio import load_dfao, save_dfao


def run(capsys, *argv):
	code = run_cli(list(argv))
	captured = capsys.readouterr()
	return code, captured.out, captured.err


def run_json(capsys, *argv):
	code, out, _ = run(capsys, '--json', *argv)
	assert code == EXIT_OK
	return json.loads(out)


def test_format_word():
	assert format_word([0, 1, 1]) == '011'
	assert format_word([10, 1]) == '10 1'
	assert format_word([(0, 1), (1, 0)]) == '0,1 1,0'


def test_version(capsys):
	with pytest.raises(SystemExit) as exc_info:
		run_cli(['--version'])
	assert exc_info.value.code == 0
	assert __version__ in capsys.readouterr().out


def test_info(capsys, data_path):
	data = run_json(capsys, 'info', data_path('rudin-shapiro'))
	assert data == {'base': 2, 'states': 4, 'initial': 0, 'alphabet': ['0', '1']}


def test_eval_prefix(capsys, data_path):
	assert run(capsys, 'eval', data_path('thue-morse'), '5') == (EXIT_OK, '0\n', '')
	assert run(capsys, 'prefix', data_path('thue-morse'), '16') == (EXIT_OK, '0110100110010110\n', '')
	assert run_json(capsys, 'eval', data_path('one-at-zero'), '0') == {'n': 0, 'value': '1'}
	assert run_json(capsys, 'prefix', data_path('period2'), '4') == {'prefix': ['0', '1', '0', '1']}


def test_decide_text(capsys, data_path):
	code, out, _ = run(capsys, 'decide', 'periodic', data_path('period2'))
	assert code == EXIT_OK
	lines = out.splitlines()
	assert lines[:2] == ['ultimately-periodic', 'witness: 2 0']
	assert any(line.startswith('dfa_states: ') for line in lines)

	code, out, _ = run(capsys, 'decide', 'periodic', data_path('thue-morse'))
	assert out.splitlines()[0] == 'aperiodic'
	assert 'witness' not in out


def test_decide_json(capsys, data_path):
	data = run_json(capsys, 'decide', 'overlap', data_path('thue-morse'))
	assert data['decision'] == 'avoids'
	assert data['witness'] is None
	assert data['stats']['nfa_states'] == 72
	assert 'dfa_states' in data['stats']

	data = run_json(capsys, 'decide', 'overlap', '--compositional', data_path('period2'))
	assert data['decision'] == 'contains'
	assert data['witness'] == [0, 2]

	data = run_json(capsys, 'decide', 'power', data_path('thue-morse'), '--num', '2')
	assert data == {'decision': 'contains', 'witness': [1, 1], 'stats': data['stats']}

	data = run_json(capsys, 'decide', 'power', data_path('thue-morse'), '--num', '3', '--mode', 'eventually-avoids')
	assert data['decision'] == 'eventually-avoids'
	assert data['stats']['threshold'] == 1

	assert run_json(capsys, 'decide', 'palindrome', data_path('thue-morse'))['decision'] == 'contains'
	assert run_json(capsys, 'decide', 'mirror', data_path('thue-morse'), '--min-len', '2')['decision'] == 'violates'
	assert run_json(capsys, 'decide', 'sigma-square', data_path('period2'), '--mod', '2')['witness'] == [0, 1]
	assert run_json(capsys, 'decide', 'gamma', data_path('thue-morse'))['decision'] == 'not-member'


def test_orbit(capsys, data_path, tmp_path):
	out_path = str(tmp_path / 'least.dfao')
	code, out, _ = run(capsys, 'orbit', data_path('thue-morse'), '-o', out_path)
	assert code == EXIT_OK
	m = load_dfao(out_path)
	assert out == f'Wrote {m.num_states}-state automaton to {out_path}\n'
	assert m.prefix(15) == [0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1]

	data = run_json(capsys, 'orbit', data_path('period2'), '--extreme', 'greatest', '-o', out_path)
	assert data['output'] == out_path
	assert 'M7' in data['stats']
	assert load_dfao(out_path).prefix(4) == [1, 0, 1, 0]


def test_orbit_psi_file(capsys, data_path, tmp_path):
	psi_path = str(tmp_path / 'psi.dfao')
	save_dfao(Dfao.constant((1, 0), 2, alphabet=((1, 0),)), psi_path)
	out_path = str(tmp_path / 'out.dfao')
	assert run(capsys, 'orbit', data_path('thue-morse'), '--order', psi_path, '-o', out_path)[0] == EXIT_OK
	assert load_dfao(out_path).prefix(15) == [1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0]


def test_theta(capsys, data_path, tmp_path):
	out_path = str(tmp_path / 'theta.dfao')
	assert run(capsys, 'theta', data_path('constant-0'), '-o', out_path)[0] == EXIT_OK
	assert load_dfao(out_path).prefix(8) == [1] * 8


def test_synth(capsys, tmp_path):
	out_path = str(tmp_path / 'tm.dfao')
	code, out, _ = run(capsys, 'synth', '--builtin', 'thue-morse', '--validate-len', '256', '-o', out_path)
	assert code == EXIT_OK
	assert out == f'Wrote 2-state automaton to {out_path}\n'


def test_cf(capsys, period2, tmp_path):
	path = str(tmp_path / 'cf.dfao')
	save_dfao(period2.relabel({0: 2, 1: 1}), path)

	data = run_json(capsys, 'cf', 'shift-limits', path, '--terms', '4')
	assert data['liminf']['quotients'] == [1, 2, 1, 2]
	assert data['limsup']['quotients'] == [2, 1, 2, 1]

	save_dfao(Dfao.constant(1, 2), path)
	data = run_json(capsys, 'cf', 'galois', path, '--terms', '3')
	for name in ['beta', 'gamma', 'delta', 'zeta']:
		assert data[name]['quotients'] == [1, 1, 1]
	assert data['recurrence_quotient'] == {'quotients': [3, 1, 1]}
	assert data['irrationality_measure'] == {'quotients': [2, 1, 1]}

	code, out, _ = run(capsys, 'cf', 'galois', path, '--terms', '3')
	assert 'zeta = [1, 1, 1, ...] (1 states)' in out.splitlines()


@pytest.mark.parametrize('argv', [
	['eval', 'missing.dfao', '3'],
	['decide', 'power', '{tm}', '--num', '4', '--den', '2'],
	['decide', 'gamma', '{const2}'],
	['cf', 'alpha', '--base', '2', '-o', '{out}'],
	['cf', 'galois', '{tm}'],
])
def test_input_errors(capsys, data_path, tmp_path, argv):
	const2 = str(tmp_path / 'const2.dfao')
	save_dfao(Dfao.constant(2, 2), const2)
	names = {'tm': data_path('thue-morse'), 'const2': const2, 'out': str(tmp_path / 'out.dfao')}
	code, out, err = run(capsys, *(a.format(**names) for a in argv))
	assert code == EXIT_INPUT
	assert out == ''
	assert err.startswith('seqdec: ')


def test_malformed_file(capsys, tmp_path):
	path = tmp_path / 'bad.dfao'
	path.write_text('seqdec-dfao v1\nbase 2\noutputs 0\ninitial 0\nstate 0 out=0\n  on 0 -> 0\n')
	code, _, err = run(capsys, 'info', str(path))
	assert code == EXIT_INPUT
	assert 'State 0 has no transition on digit 1' in err


def test_resource_limit(capsys, data_path):
	code, out, err = run(capsys, '--max-states', '2', 'decide', 'overlap', data_path('thue-morse'))
	assert code == EXIT_RESOURCE
	assert out == ''
	assert err.startswith('seqdec: ')


def test_usage_errors(capsys):
	with pytest.raises(SystemExit):
		run_cli([])
	with pytest.raises(SystemExit):
		run_cli(['--max-states', '0', 'info', 'x'])


def test_decide_help(capsys):
	with pytest.raises(SystemExit) as exc_info:
		run_cli(['decide', '--help'])
	assert exc_info.value.code == 0

	# Undo line wrapping
	out = ' '.join(capsys.readouterr().out.split())
	assert 'Is every shift at most the sequence and at least its complement?' in out
	assert 'Is no factor of length at least L the reversal of a factor?' in out
	assert 'followed later' not in out
