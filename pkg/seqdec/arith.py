"""Synchronized arithmetic relations as multi-track DFAs.

Each builder returns a minimal DFA reading its tracks least significant digit first in parallel.
All relations are padding-invariant: appending all-zero symbols never changes acceptance.
"""

from enum import Enum
from typing import Callable, Hashable, Optional, Sequence, Tuple, Iterable, List
import logging

from .automata import MultiTrackAlphabet, Nfa, Dfa, Dfao, minimize_dfa, to_digits, DEFAULT_MAX_STATES
from .errors import ResourceLimitError, UnknownLetterError


logger = logging.getLogger(__name__)


class Flag(Enum):
	"""Comparison of the low-order digits of two numbers read so far."""
	LT = '<'
	EQ = '='
	GT = '>'


def flag_update(b: Flag, i: int, n: int) -> Flag:
	"""Update a comparison flag with the next (more significant) digits ``i`` and ``n``.

	A difference in the new digit overrides whatever the lower digits said.
	"""
	if i < n:
		return Flag.LT
	if i > n:
		return Flag.GT
	return b


#: Flags which satisfy each comparison operator.
COMPARISONS = {
	'<': {Flag.LT},
	'<=': {Flag.LT, Flag.EQ},
	'=': {Flag.EQ},
	'!=': {Flag.LT, Flag.GT},
	'>=': {Flag.GT, Flag.EQ},
	'>': {Flag.GT},
}


def crawl(alphabet: MultiTrackAlphabet,
          start: Hashable,
          step: Callable[[Hashable, Tuple[int, ...]], Optional[Hashable]],
          final: Callable[[Hashable], bool],
          *,
          max_states: int = DEFAULT_MAX_STATES,
          ) -> Dfa:
	"""Build a DFA by exploring the states reachable from ``start``.

	Parameters
	----------
	alphabet
		Input alphabet.
	start
		Initial state, any hashable value.
	step
		Called with a state and the digit tuple of a symbol. Returns the next state, or None to go
		to a rejecting sink.
	final
		Whether a state accepts.
	"""
	states = [start]
	index = {start: 0}
	sink = None
	delta = []
	digits = [alphabet.digits(s) for s in range(alphabet.size)]

	i = 0
	while i < len(states):
		current = states[i]
		row = []
		if i == sink:
			row = [i] * alphabet.size
		else:
			for d in digits:
				nxt = step(current, d)
				if nxt is None:
					if sink is None:
						sink = len(states)
						states.append(None)
					j = sink
				else:
					j = index.get(nxt)
					if j is None:
						j = len(states)
						if j >= max_states:
							raise ResourceLimitError(max_states, j + 1, 'Relation construction')
						index[nxt] = j
						states.append(nxt)
				row.append(j)
		delta.append(tuple(row))
		i += 1

	finals = frozenset(i for i, q in enumerate(states) if i != sink and final(q))
	return Dfa(alphabet, tuple(delta), 0, finals)


def crawl_nfa(alphabet: MultiTrackAlphabet,
              start: Hashable,
              step: Callable[[Hashable, Tuple[int, ...]], Iterable[Hashable]],
              final: Callable[[Hashable], bool],
              *,
              max_states: int = DEFAULT_MAX_STATES,
              ) -> Tuple[Nfa, List[Hashable]]:
	"""Nondeterministic version of :func:`crawl`.

	``step`` returns the successors of a state on a digit tuple. Returns the NFA together with the
	list of explored states, indexed by state id.
	"""
	states = [start]
	index = {start: 0}
	delta = []
	digits = [alphabet.digits(s) for s in range(alphabet.size)]

	i = 0
	while i < len(states):
		row = []
		for d in digits:
			targets = set()
			for nxt in step(states[i], d):
				j = index.get(nxt)
				if j is None:
					j = len(states)
					if j >= max_states:
						raise ResourceLimitError(max_states, j + 1, 'NFA construction')
					index[nxt] = j
					states.append(nxt)
				targets.add(j)
			row.append(frozenset(targets))
		delta.append(tuple(row))
		i += 1

	finals = frozenset(i for i, q in enumerate(states) if final(q))
	return Nfa(alphabet, tuple(delta), frozenset((0,)), finals), states


def rel_compare(k: int, op: str) -> Dfa:
	"""Two-track relation ``x op y``.

	Parameters
	----------
	k
		Base.
	op
		One of ``'<'``, ``'<='``, ``'='``, ``'!='``, ``'>='``, ``'>'``.
	"""
	try:
		accept = COMPARISONS[op]
	except KeyError:
		raise ValueError(f'Unknown comparison operator {op!r}') from None

	return minimize_dfa(crawl(
		MultiTrackAlphabet(k, 2),
		Flag.EQ,
		lambda b, d: flag_update(b, d[0], d[1]),
		lambda b: b in accept,
	))


def rel_sum(k: int, terms: int = 2, constant: int = 0) -> Dfa:
	"""Relation on ``terms + 1`` tracks: ``x_1 + ... + x_terms + constant = z``.

	The state is the carry (at most ``terms - 1`` plus whatever the constant adds) together with
	the position within the digits of ``constant``.
	"""
	if terms < 1:
		raise ValueError('Need at least one term')
	if constant < 0:
		raise ValueError('Constant must be non-negative')

	cdigits = to_digits(constant, k)
	ncd = len(cdigits)

	def step(state, digits):
		carry, pos = state
		total = carry + sum(digits[:terms])
		if pos < ncd:
			total += cdigits[pos]
		carry, z = divmod(total, k)
		if z != digits[terms]:
			return None
		return carry, min(pos + 1, ncd)

	return minimize_dfa(crawl(
		MultiTrackAlphabet(k, terms + 1),
		(0, 0),
		step,
		lambda s: s[0] == 0 and s[1] == ncd,
	))


def rel_add(k: int) -> Dfa:
	"""Three-track relation ``x + y = z``. The carry never exceeds 1."""
	return rel_sum(k, 2)


def rel_scale(k: int, c: int) -> Dfa:
	"""Two-track relation ``y = c * x``.

	Each step outputs ``(c*d + carry) mod k`` and carries ``(c*d + carry) // k``, which stays below
	``c``. A final carry must be matched by the padding at the end of the input.
	"""
	if c < 1:
		raise ValueError(f'Multiplier must be positive, got {c}')

	def step(carry, digits):
		carry, out = divmod(c * digits[0] + carry, k)
		if out != digits[1]:
			return None
		return carry

	return minimize_dfa(crawl(MultiTrackAlphabet(k, 2), 0, step, lambda carry: carry == 0))


def rel_const(k: int, value: int) -> Dfa:
	"""One-track relation accepting exactly the encodings of ``value``."""
	cdigits = to_digits(value, k)
	ncd = len(cdigits)

	def step(pos, digits):
		expected = cdigits[pos] if pos < ncd else 0
		if digits[0] != expected:
			return None
		return min(pos + 1, ncd)

	return minimize_dfa(crawl(MultiTrackAlphabet(k, 1), 0, step, lambda pos: pos == ncd))


def rel_letters_at(arity: int,
                   indices: Sequence[Tuple[Dfao, Sequence[int]]],
                   predicate: Callable[..., bool],
                   *,
                   max_states: int = DEFAULT_MAX_STATES,
                   ) -> Dfa:
	"""Relation constraining sequence letters at sums of tracks.

	For index ``(m, tracks)`` the letter ``m`` outputs at ``sum(x[t] for t in tracks)`` is
	computed on the fly: the state keeps a carry and a state of ``m`` per index. A state is
	accepting if, after flushing all carries with zero digits, ``predicate`` holds on the letters.

	Parameters
	----------
	arity
		Number of input tracks.
	indices
		``(dfao, tracks)`` pairs. All DFAOs must share one base, which is the base of the result.
	predicate
		Called with one letter per index.
	"""
	if not indices:
		raise ValueError('Need at least one index')

	k = indices[0][0].base
	machines = []
	for m, tracks in indices:
		if m.base != k:
			raise ValueError(f'All sequences must have the same base, got {m.base} and {k}')
		tracks = tuple(tracks)
		for t in tracks:
			if not 0 <= t < arity:
				raise IndexError(f'Track {t} out of range for arity {arity}')
		machines.append((m.delta, tracks))

	def step(state, digits):
		out = []
		for (delta, tracks), (carry, q) in zip(machines, state):
			total = carry
			for t in tracks:
				total += digits[t]
			carry, d = divmod(total, k)
			out.append((carry, delta[q][d]))
		return tuple(out)

	def final(state):
		letters = []
		for (m, _), (carry, q) in zip(indices, state):
			while carry:
				carry, d = divmod(carry, k)
				q = m.delta[q][d]
			letters.append(m.tau[q])
		return bool(predicate(*letters))

	start = tuple((0, m.initial) for m, _ in indices)
	dfa = crawl(MultiTrackAlphabet(k, arity), start, step, final, max_states=max_states)
	logger.debug('Letter relation on %d tracks explored %d states', arity, dfa.num_states)
	return minimize_dfa(dfa)


def rel_seq_eq(m: Dfao) -> Dfa:
	"""Two-track relation ``a_x = a_y``."""
	return rel_letters_at(2, [(m, (0,)), (m, (1,))], lambda a, b: a == b)


def rel_seq_letter(m: Dfao, c) -> Dfa:
	"""One-track relation ``a_x = c``.

	Raises
	------
	.UnknownLetterError
		If ``c`` is not in the output alphabet of ``m``.
	"""
	if c not in m.alphabet:
		raise UnknownLetterError(c, m.alphabet)
	return rel_letters_at(1, [(m, (0,))], lambda a: a == c)
