"""Reading and writing DFAOs in the ``seqdec-dfao`` text format.

Example::

	seqdec-dfao v1
	# Thue-Morse
	base 2
	outputs 0 1
	initial 0
	state 0 out=0
	  on 0 -> 0
	  on 1 -> 1
	state 1 out=1
	  on 0 -> 1
	  on 1 -> 0

Letters are unquoted tokens. If every token is an integer the letters are ints. A token
containing commas is a permutation, read as a tuple of letters (used for order twists).
"""

from typing import List, Optional, Tuple, Union
import os
import re
import logging

from .automata import Dfao
from .errors import AutomatonFileError


logger = logging.getLogger(__name__)


HEADER = 'seqdec-dfao v1'

#: Directory holding the example automata shipped with the package.
DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')

_STATE_RE = re.compile(r'state\s+(\S+)\s+out=(\S+)$')
_TRANS_RE = re.compile(r'on\s+(\S+)\s*->\s*(\S+)$')

PathLike = Union[str, 'os.PathLike[str]']


def _lines(text: str) -> List[Tuple[int, str]]:
	"""Non-blank lines with comments stripped, with 1-based line numbers."""
	out = []
	for lineno, line in enumerate(text.splitlines(), 1):
		line = line.split('#', 1)[0].strip()
		if line:
			out.append((lineno, line))
	return out


def _int(token: str, what: str, lineno: int) -> int:
	try:
		return int(token)
	except ValueError:
		raise AutomatonFileError(f'Expected integer {what}, got {token!r}', lineno) from None


def _atoms(token: str) -> List[str]:
	return token.split(',') if ',' in token else [token]


def _is_int(token: str) -> bool:
	try:
		int(token)
	except ValueError:
		return False
	return True


def _make_letter(token: str, ints: bool):
	convert = int if ints else str
	if ',' in token:
		return tuple(convert(a) for a in token.split(','))
	return convert(token)


def format_letter(letter) -> str:
	"""Token for a letter: the letter itself, or its images joined by commas for permutations."""
	if isinstance(letter, tuple):
		return ','.join(map(str, letter))
	return str(letter)


def _keyword(lines, pos, keyword: str) -> Tuple[int, List[str]]:
	if pos >= len(lines):
		raise AutomatonFileError(f'Unexpected end of file, expected "{keyword}"')
	lineno, line = lines[pos]
	parts = line.split()
	if parts[0] != keyword:
		raise AutomatonFileError(f'Expected "{keyword}", got {line!r}', lineno)
	return lineno, parts[1:]


def parse_dfao(text: str) -> Dfao:
	"""Parse a DFAO from text.

	Raises
	------
	.AutomatonFileError
		On syntax errors, missing or duplicate states or transitions, and letters not declared in
		the ``outputs`` line.
	.ZeroStabilityError
		If the automaton is not zero-stable.
	"""
	lines = _lines(text)
	if not lines or lines[0][1] != HEADER:
		raise AutomatonFileError(f'Missing "{HEADER}" header', lines[0][0] if lines else None)

	lineno, args = _keyword(lines, 1, 'base')
	if len(args) != 1:
		raise AutomatonFileError('Expected "base K"', lineno)
	base = _int(args[0], 'base', lineno)
	if base < 2:
		raise AutomatonFileError(f'Base must be at least 2, got {base}', lineno)

	lineno, tokens = _keyword(lines, 2, 'outputs')
	if not tokens:
		raise AutomatonFileError('Empty output alphabet', lineno)
	ints = all(_is_int(a) for t in tokens for a in _atoms(t))
	alphabet = tuple(_make_letter(t, ints) for t in tokens)
	if len(set(alphabet)) != len(alphabet):
		raise AutomatonFileError('Repeated letter in output alphabet', lineno)

	lineno, args = _keyword(lines, 3, 'initial')
	if len(args) != 1:
		raise AutomatonFileError('Expected "initial SID"', lineno)
	initial = _int(args[0], 'initial state', lineno)

	tau = {}
	delta = {}
	state_line = {}
	current = None
	for lineno, line in lines[4:]:
		m = _STATE_RE.match(line)
		if m is not None:
			current = _int(m.group(1), 'state id', lineno)
			if current in tau:
				raise AutomatonFileError(f'State {current} defined twice', lineno)
			token = m.group(2)
			if ints and not all(_is_int(a) for a in _atoms(token)):
				raise AutomatonFileError(f'Letter {token!r} is not in the output alphabet', lineno)
			letter = _make_letter(token, ints)
			if letter not in alphabet:
				raise AutomatonFileError(f'Letter {token!r} is not in the output alphabet', lineno)
			tau[current] = letter
			delta[current] = {}
			state_line[current] = lineno
			continue

		m = _TRANS_RE.match(line)
		if m is None:
			raise AutomatonFileError(f'Cannot parse line {line!r}', lineno)
		if current is None:
			raise AutomatonFileError('Transition outside of a state block', lineno)
		d = _int(m.group(1), 'digit', lineno)
		if not 0 <= d < base:
			raise AutomatonFileError(f'Digit {d} out of range for base {base}', lineno)
		if d in delta[current]:
			raise AutomatonFileError(f'State {current} has two transitions on digit {d}', lineno)
		delta[current][d] = _int(m.group(2), 'state id', lineno)

	n = len(tau)
	if sorted(tau) != list(range(n)):
		raise AutomatonFileError(f'State ids must be 0 .. {n - 1}, got {sorted(tau)}')
	if not 0 <= initial < n:
		raise AutomatonFileError(f'Initial state {initial} is not defined')

	rows = []
	for q in range(n):
		for d in range(base):
			if d not in delta[q]:
				raise AutomatonFileError(f'State {q} has no transition on digit {d}', state_line[q])
			if not 0 <= delta[q][d] < n:
				raise AutomatonFileError(f'State {q} goes to undefined state {delta[q][d]} on digit {d}', state_line[q])
		rows.append([delta[q][d] for d in range(base)])

	return Dfao.build(base, rows, [tau[q] for q in range(n)], initial=initial, alphabet=alphabet)


def serialize_dfao(m: Dfao, comment: Optional[str] = None) -> str:
	"""Text representation of a DFAO, preserving state ids.

	Parameters
	----------
	comment
		Optional comment line written after the header.
	"""
	lines = [HEADER]
	if comment:
		lines.extend('# ' + c for c in comment.splitlines())
	lines.append(f'base {m.base}')
	lines.append('outputs ' + ' '.join(map(format_letter, m.alphabet)))
	lines.append(f'initial {m.initial}')
	for q, row in enumerate(m.delta):
		lines.append(f'state {q} out={format_letter(m.tau[q])}')
		for d, r in enumerate(row):
			lines.append(f'  on {d} -> {r}')
	return '\n'.join(lines) + '\n'


def load_dfao(path: PathLike) -> Dfao:
	"""Read a DFAO from a file.

	Errors raised while parsing are annotated with the file name.
	"""
	with open(path) as f:
		text = f.read()
	try:
		m = parse_dfao(text)
	except AutomatonFileError as e:
		raise AutomatonFileError(f'{os.fspath(path)}: {e.message}', e.lineno) from None
	logger.debug('Loaded %r from %s', m, path)
	return m


def save_dfao(m: Dfao, path: PathLike, comment: Optional[str] = None):
	"""Write a DFAO to a file."""
	with open(path, 'w') as f:
		f.write(serialize_dfao(m, comment))


def shipped_dfao_path(name: str) -> str:
	"""Path of one of the example files in :data:`DATA_DIR`, e.g. ``'thue-morse'``."""
	path = os.path.join(DATA_DIR, name + '.dfao')
	if not os.path.isfile(path):
		raise ValueError(f'No shipped automaton named {name!r}')
	return path
