"""Deterministic finite automata with output (DFAOs).

A DFAO over base ``k`` reads the base-``k`` digits of ``n`` least significant digit first and
outputs the letter of the state it ends in. Reading extra trailing zero digits must not change the
output (zero-stability), so every representation of ``n`` gives the same letter.
"""

from dataclasses import dataclass
from typing import Tuple, Any, Sequence, Mapping, Optional, List, Iterable, Hashable
import logging

from ..errors import ZeroStabilityError, UnknownLetterError, ConsistencyError, ResourceLimitError
from .alphabet import to_digits, MultiTrackAlphabet
from .fa import Dfa
from .ops import reachable, refine_partition, quotient, DEFAULT_MAX_STATES


logger = logging.getLogger(__name__)


def default_alphabet(letters: Iterable[Hashable]) -> Tuple:
	"""Alphabet order for a collection of letters.

	Integers are sorted numerically; anything else keeps order of first appearance.
	"""
	seen = []
	for letter in letters:
		if letter not in seen:
			seen.append(letter)
	if all(isinstance(x, int) for x in seen):
		seen.sort()
	return tuple(seen)


@dataclass(frozen=True)
class Dfao:
	"""Deterministic finite automaton with output, reading digits least significant first.

	Attributes
	----------
	base
		Input base ``k >= 2``.
	delta
		``delta[q][d]`` is the successor of state ``q`` on digit ``d``.
	initial
		Initial state.
	tau
		Output letter of each state.
	alphabet
		The output alphabet. Its order is the order used for lexicographic comparisons.
	"""
	base: int
	delta: Tuple[Tuple[int, ...], ...]
	initial: int
	tau: Tuple[Any, ...]
	alphabet: Tuple[Any, ...]

	def __post_init__(self):
		n = len(self.delta)
		if self.base < 2:
			raise ValueError(f'Base must be at least 2, got {self.base}')
		if n == 0:
			raise ValueError('A DFAO needs at least one state')
		if len(self.tau) != n:
			raise ValueError(f'Expected {n} outputs, got {len(self.tau)}')
		for q, row in enumerate(self.delta):
			if len(row) != self.base:
				raise ValueError(f'State {q} has {len(row)} transitions, expected {self.base}')
			if min(row) < 0 or max(row) >= n:
				raise ValueError(f'State {q} has a transition to an invalid state')
		if not 0 <= self.initial < n:
			raise ValueError(f'Initial state {self.initial} is not a valid state id')
		if len(set(self.alphabet)) != len(self.alphabet):
			raise ValueError(f'Output alphabet has repeated letters: {self.alphabet!r}')
		letters = set(self.alphabet)
		for letter in self.tau:
			if letter not in letters:
				raise UnknownLetterError(letter, self.alphabet)
		self.check_zero_stable()

	@classmethod
	def build(cls,
	          base: int,
	          delta: Sequence[Sequence[int]],
	          tau: Sequence,
	          initial: int = 0,
	          alphabet: Optional[Sequence] = None,
	          ) -> 'Dfao':
		"""Create from mutable containers.

		Parameters
		----------
		alphabet
			Output alphabet. Defaults to the letters of ``tau`` (see :func:`default_alphabet`).
		"""
		if alphabet is None:
			alphabet = default_alphabet(tau)
		return cls(base, tuple(map(tuple, delta)), initial, tuple(tau), tuple(alphabet))

	@classmethod
	def constant(cls, letter, base: int = 2, alphabet: Optional[Sequence] = None) -> 'Dfao':
		"""One-state DFAO for the constant sequence."""
		return cls.build(base, [[0] * base], [letter], alphabet=alphabet)

	@property
	def num_states(self) -> int:
		return len(self.delta)

	def check_zero_stable(self):
		"""Check that reading a 0 digit never changes the output from a reachable state.

		Raises
		------
		.ZeroStabilityError
		"""
		for q in reachable(self._as_dfa()):
			z = self.delta[q][0]
			if self.tau[z] != self.tau[q]:
				raise ZeroStabilityError(q, self.tau[q], self.tau[z])

	def _as_dfa(self) -> Dfa:
		return Dfa(MultiTrackAlphabet(self.base, 1), self.delta, self.initial, frozenset())

	def reachable_states(self) -> List[int]:
		"""States reachable from the initial state, in breadth-first order."""
		return reachable(self._as_dfa())

	def rank(self, letter) -> int:
		"""Position of a letter in the output alphabet."""
		try:
			return self.alphabet.index(letter)
		except ValueError:
			raise UnknownLetterError(letter, self.alphabet) from None

	def run(self, n: int) -> int:
		"""State reached on the digits of ``n``."""
		q = self.initial
		for d in to_digits(n, self.base):
			q = self.delta[q][d]
		return q

	def eval(self, n: int):
		"""The ``n``'th term of the sequence."""
		return self.tau[self.run(n)]

	def prefix(self, count: int) -> list:
		"""The first ``count`` terms of the sequence.

		Computed level by level: the states for all ``n < k**(e+1)`` are obtained from those for
		``n < k**e`` with one transition each.
		"""
		if count <= 0:
			return []

		k = self.base
		delta = self.delta
		states = [self.initial]
		while len(states) < count:
			states = [delta[q][d] for d in range(k) for q in states]

		tau = self.tau
		return [tau[q] for q in states[:count]]

	def relabel(self, mapping: Mapping, alphabet: Optional[Sequence] = None) -> 'Dfao':
		"""Apply a coding to the outputs.

		Parameters
		----------
		mapping
			Maps each letter of the current alphabet to a new letter.
		alphabet
			Output alphabet of the result. Defaults to the image of the current alphabet, in order.
		"""
		if alphabet is None:
			alphabet = default_alphabet(mapping[x] for x in self.alphabet)
		return Dfao(self.base, self.delta, self.initial, tuple(mapping[x] for x in self.tau), tuple(alphabet))

	def with_alphabet(self, alphabet: Sequence) -> 'Dfao':
		"""Same sequence with a different declared output alphabet (e.g. a larger one)."""
		return Dfao(self.base, self.delta, self.initial, self.tau, tuple(alphabet))

	def __repr__(self):
		return f'<Dfao base {self.base}, {self.num_states} states, alphabet {self.alphabet!r}>'


def minimize_dfao(m: Dfao) -> Dfao:
	"""Minimal DFAO computing the same sequence.

	Partition refinement seeded with the output partition. Unreachable states are dropped and the
	result is numbered breadth-first from the initial state.
	"""
	order = m.reachable_states()
	renum = {q: i for i, q in enumerate(order)}
	delta = [tuple(renum[r] for r in m.delta[q]) for q in order]
	tau = [m.tau[q] for q in order]

	block_of = refine_partition(delta, tau)
	rows, reps = quotient(delta, 0, block_of)
	return Dfao(m.base, tuple(rows), 0, tuple(tau[q] for q in reps), m.alphabet)


def combine_letter_dfas(dfas: Mapping[Any, Dfa],
                        alphabet: Optional[Sequence] = None,
                        *,
                        max_states: int = DEFAULT_MAX_STATES,
                        ) -> Dfao:
	"""Run one-track DFAs in parallel, one per letter, and output the letter whose DFA accepts.

	Parameters
	----------
	dfas
		Maps each letter ``c`` to a DFA accepting the ``n`` with ``a_n = c``.
	alphabet
		Output alphabet of the result. Defaults to the keys of ``dfas``.

	Raises
	------
	.ConsistencyError
		If some reachable combination of states has no accepting branch or more than one.
	"""
	letters = list(dfas)
	if not letters:
		raise ValueError('Need at least one letter')
	machines = [dfas[c] for c in letters]
	base = machines[0].alphabet.base
	for d in machines:
		if d.alphabet != MultiTrackAlphabet(base, 1):
			raise ValueError(f'Expected one-track automata over base {base}, got {d.alphabet}')

	start = tuple(d.initial for d in machines)
	index = {start: 0}
	tuples = [start]
	delta = []

	i = 0
	while i < len(tuples):
		current = tuples[i]
		row = []
		for digit in range(base):
			target = tuple(d.delta[q][digit] for d, q in zip(machines, current))
			j = index.get(target)
			if j is None:
				j = len(tuples)
				if j >= max_states:
					raise ResourceLimitError(max_states, j + 1, 'Letter branch product')
				index[target] = j
				tuples.append(target)
			row.append(j)
		delta.append(tuple(row))
		i += 1

	tau = []
	for current in tuples:
		accepting = [c for c, d, q in zip(letters, machines, current) if q in d.finals]
		if len(accepting) != 1:
			raise ConsistencyError(
				f'Expected exactly one accepting letter branch, got {accepting!r}'
			)
		tau.append(accepting[0])

	if alphabet is None:
		alphabet = default_alphabet(letters)

	result = minimize_dfao(Dfao(base, tuple(delta), 0, tuple(tau), tuple(alphabet)))
	logger.debug('Combined %d letter branches into %d-state DFAO', len(letters), result.num_states)
	return result
