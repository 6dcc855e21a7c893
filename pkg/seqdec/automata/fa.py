"""Finite automata over multi-track digit alphabets."""

from dataclasses import dataclass
from typing import Tuple, FrozenSet, Sequence, Iterable, Set

from .alphabet import MultiTrackAlphabet


def _check_state(q, n: int, what: str):
	if not 0 <= q < n:
		raise ValueError(f'{what} {q} is not a valid state id (have {n} states)')


@dataclass(frozen=True)
class Nfa:
	"""Nondeterministic finite automaton without epsilon transitions.

	States are the integers ``0 .. num_states - 1``.

	Attributes
	----------
	alphabet
		Input alphabet.
	delta
		``delta[q][s]`` is the frozenset of successors of state ``q`` on symbol ``s``.
	initials
		Initial states.
	finals
		Accepting states.
	"""
	alphabet: MultiTrackAlphabet
	delta: Tuple[Tuple[FrozenSet[int], ...], ...]
	initials: FrozenSet[int]
	finals: FrozenSet[int]

	def __post_init__(self):
		n = len(self.delta)
		size = self.alphabet.size
		for q, row in enumerate(self.delta):
			if len(row) != size:
				raise ValueError(f'State {q} has {len(row)} transition entries, expected {size}')
			for targets in row:
				for r in targets:
					_check_state(r, n, 'Transition target')
		for q in self.initials:
			_check_state(q, n, 'Initial state')
		for q in self.finals:
			_check_state(q, n, 'Final state')

	@classmethod
	def build(cls,
	          alphabet: MultiTrackAlphabet,
	          delta: Sequence[Sequence[Iterable[int]]],
	          initials: Iterable[int],
	          finals: Iterable[int],
	          ) -> 'Nfa':
		"""Create from mutable containers, freezing them."""
		return cls(
			alphabet,
			tuple(tuple(frozenset(t) for t in row) for row in delta),
			frozenset(initials),
			frozenset(finals),
		)

	@property
	def num_states(self) -> int:
		return len(self.delta)

	def step(self, states: Iterable[int], symbol: int) -> Set[int]:
		"""Set of states reachable from ``states`` on one symbol."""
		out = set()
		for q in states:
			out |= self.delta[q][symbol]
		return out

	def accepts(self, word: Sequence[int]) -> bool:
		current = set(self.initials)
		for s in word:
			current = self.step(current, s)
			if not current:
				return False
		return not current.isdisjoint(self.finals)

	def __repr__(self):
		return f'<Nfa {self.num_states} states over {self.alphabet}>'


@dataclass(frozen=True)
class Dfa:
	"""Deterministic finite automaton with a total transition function.

	States are the integers ``0 .. num_states - 1``.

	Attributes
	----------
	alphabet
		Input alphabet.
	delta
		``delta[q][s]`` is the successor of state ``q`` on symbol ``s``.
	initial
		Initial state.
	finals
		Accepting states.
	"""
	alphabet: MultiTrackAlphabet
	delta: Tuple[Tuple[int, ...], ...]
	initial: int
	finals: FrozenSet[int]

	def __post_init__(self):
		n = len(self.delta)
		size = self.alphabet.size
		if n == 0:
			raise ValueError('A DFA needs at least one state')
		for q, row in enumerate(self.delta):
			if len(row) != size:
				raise ValueError(f'State {q} has {len(row)} transitions, expected {size}')
			if row and (min(row) < 0 or max(row) >= n):
				raise ValueError(f'State {q} has a transition to an invalid state')
		_check_state(self.initial, n, 'Initial state')
		for q in self.finals:
			_check_state(q, n, 'Final state')

	@classmethod
	def build(cls,
	          alphabet: MultiTrackAlphabet,
	          delta: Sequence[Sequence[int]],
	          initial: int,
	          finals: Iterable[int],
	          ) -> 'Dfa':
		"""Create from mutable containers, freezing them."""
		return cls(alphabet, tuple(map(tuple, delta)), initial, frozenset(finals))

	@property
	def num_states(self) -> int:
		return len(self.delta)

	def run(self, word: Sequence[int], start: int = None) -> int:
		"""State reached after reading ``word``."""
		q = self.initial if start is None else start
		delta = self.delta
		for s in word:
			q = delta[q][s]
		return q

	def accepts(self, word: Sequence[int]) -> bool:
		return self.run(word) in self.finals

	def accepts_values(self, *values: int) -> bool:
		"""Whether the canonical encoding of an integer tuple is accepted."""
		return self.accepts(self.alphabet.encode(values))

	def to_nfa(self) -> Nfa:
		return Nfa(
			self.alphabet,
			tuple(tuple(frozenset((r,)) for r in row) for row in self.delta),
			frozenset((self.initial,)),
			self.finals,
		)

	def __repr__(self):
		return f'<Dfa {self.num_states} states over {self.alphabet}>'
