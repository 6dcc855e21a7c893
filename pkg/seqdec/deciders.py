"""Decision procedures for properties of automatic sequences.

Every procedure returns a :class:`Verdict`. Whenever a verdict asserts that something exists, its
witness is re-checked against a prefix of the sequence before being returned.
"""

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Optional, Tuple, Dict, Callable
import logging

from .automata import Dfao, Nfa, MultiTrackAlphabet, determinize, pad_closure, complement, minimize_dfa, \
	DEFAULT_MAX_STATES
from .arith import Flag, flag_update, crawl_nfa
from .sequences import repetition_window
from .relation import Relation, compare, at_least, sum_of, scaled, letters_at
from .errors import WitnessError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
	"""Result of a decision procedure.

	Attributes
	----------
	decision
		True if the property asked about holds (e.g. the sequence is ultimately periodic, avoids
		the repetition, is a member of the set).
	label
		Human readable form of the decision, e.g. ``'avoids'`` or ``'contains'``.
	witness
		Integers proving an existential answer, if any.
	stats
		Named state counts of intermediate constructions.
	"""
	decision: bool
	label: str
	witness: Optional[Tuple[int, ...]] = None
	stats: Dict[str, int] = field(default_factory=dict)

	def to_json(self) -> dict:
		"""Report with keys ``decision``, ``witness`` and ``stats``."""
		return {
			'decision': self.label,
			'witness': None if self.witness is None else list(self.witness),
			'stats': dict(self.stats),
		}


@dataclass(frozen=True)
class Exponent:
	"""A rational exponent ``p/q > 1`` in lowest terms.

	Attributes
	----------
	p
	q
	plus
		Whether the repetition must be strictly longer than ``p/q`` times its period.
	"""
	p: int
	q: int
	plus: bool = False

	def __post_init__(self):
		if self.q < 1 or self.p <= self.q:
			raise ValueError(f'Exponent {self.p}/{self.q} must be greater than 1')
		if gcd(self.p, self.q) != 1:
			raise ValueError(f'Exponent {self.p}/{self.q} is not in lowest terms')

	def window(self, t: int) -> int:
		"""Number of offsets ``J`` constrained in a repetition of period ``t``."""
		return repetition_window(self.p, self.q, self.plus, t)

	def __str__(self):
		s = str(self.p) if self.q == 1 else f'{self.p}/{self.q}'
		return s + '+' if self.plus else s


class PowerMode(Enum):
	"""Question asked about occurrences of a repetition."""
	EXISTS = 'exists'
	INF_OCC = 'inf-occ'
	INF_DISTINCT = 'inf-distinct'
	MIN_LENGTH = 'min-length'
	EVENTUALLY_AVOIDS = 'eventually-avoids'


def _ne(a, b):
	return a != b


def _verify(m: Dfao, witness, length: int, check: Callable[[list], bool], reason: str):
	word = m.prefix(length)
	if not check(word):
		raise WitnessError(witness, reason)


def _verify_repetition(m: Dfao, e: Exponent, i: int, t: int):
	count = e.window(t)
	_verify(
		m, (i, t), i + t + count,
		lambda w: all(w[i + j] == w[i + t + j] for j in range(count)),
		f'not a {e}-power',
	)


def periodicity_nfa(m: Dfao, *, max_states: int = DEFAULT_MAX_STATES) -> Nfa:
	"""NFA on ``(P, N)`` accepting iff ``a_I != a_{I+P}`` for some guessed ``I >= N``.

	States are ``(b, c, q, r)``: comparison flag of ``I`` against ``N``, carry of ``I + P``, and
	the states of ``m`` on ``I`` and on ``I + P``. Only states reachable from the start are built.
	"""
	k = m.base
	delta, tau = m.delta, m.tau

	def step(state, digits):
		b, c, q, r = state
		p, n = digits
		for i in range(k):
			carry, d = divmod(i + p + c, k)
			yield flag_update(b, i, n), carry, delta[q][i], delta[r][d]

	def final(state):
		b, c, q, r = state
		return b is not Flag.LT and c == 0 and tau[q] != tau[r]

	start = (Flag.EQ, 0, m.initial, m.initial)
	nfa, _ = crawl_nfa(MultiTrackAlphabet(k, 2), start, step, final, max_states=max_states)
	return nfa


def decide_ultimate_periodicity(m: Dfao, *, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
	"""Decide whether the sequence is ultimately periodic.

	The witness ``(P, N)`` satisfies ``P >= 1`` and ``a_I = a_{I+P}`` for all ``I >= N``.
	"""
	k = m.base
	nfa = periodicity_nfa(m, max_states=max_states)
	dfa = determinize(pad_closure(nfa), max_states=max_states)
	periods = minimize_dfa(complement(dfa))
	stats = {
		'nfa_states': nfa.num_states,
		'dfa_states': dfa.num_states,
		'minimized_states': periods.num_states,
	}
	logger.debug('Periodicity: %r', stats)

	rel = Relation.of(periods, 'P', 'N', max_states=max_states) & at_least(k, 'P', 1)
	w = rel.witness()
	if w is None:
		return Verdict(False, 'aperiodic', None, stats)

	p, n = w['P'], w['N']
	span = 4 * p + 64
	_verify(
		m, (p, n), n + span + p,
		lambda word: all(word[i] == word[i + p] for i in range(n, n + span)),
		'not a period of the tail',
	)
	return Verdict(True, 'ultimately-periodic', (p, n), stats)


def _window_relation(k: int, e: Exponent, max_states: int) -> Relation:
	"""``(J, T)`` with ``q*J < (p-q)*T``, or ``<=`` for plus-powers."""
	lhs, rhs = 'J', 'T'
	parts = []
	if e.q != 1:
		lhs = '_qJ'
		parts.append(scaled(k, 'J', e.q, lhs, max_states=max_states))
	if e.p - e.q != 1:
		rhs = '_rT'
		parts.append(scaled(k, 'T', e.p - e.q, rhs, max_states=max_states))

	rel = compare(k, lhs, '<=' if e.plus else '<', rhs, max_states=max_states)
	for part in parts:
		rel = rel & part
	return rel.only('J', 'T')


def occurrence_relation(m: Dfao, e: Exponent, *, max_states: int = DEFAULT_MAX_STATES) -> Relation:
	"""Relation on ``(I, T)``: a repetition with exponent ``e`` and period ``T >= 1`` starts at ``I``."""
	k = m.base
	window = _window_relation(k, e, max_states)
	mismatch = letters_at(
		('I', 'T', 'J'),
		[(m, ('I', 'J')), (m, ('I', 'T', 'J'))],
		_ne,
		max_states=max_states,
	)
	bad = (window & mismatch).exists('J')
	return (~bad & at_least(k, 'T', 1, max_states=max_states)).reorder('I', 'T')


def _finiteness_verdict(rel: Relation, name: str, stats: dict, witness, yes: str, no: str) -> Verdict:
	if rel.is_infinite_in(name):
		return Verdict(False, no, witness, stats)
	values = rel.values_of(name)
	stats['threshold'] = max(values) + 1 if values else 1
	return Verdict(True, yes, None, stats)


def decide_power(m: Dfao,
                 e: Exponent,
                 mode: PowerMode = PowerMode.EXISTS,
                 *,
                 min_len: int = 1,
                 max_states: int = DEFAULT_MAX_STATES,
                 ) -> Verdict:
	"""Decide a question about the ``e``-powers occurring in the sequence.

	Parameters
	----------
	m
		The sequence.
	e
		Exponent of the repetitions.
	mode
		``EXISTS``
			Whether the sequence avoids them (decision True) or contains one.
		``INF_OCC``
			Whether infinitely many positions start one.
		``INF_DISTINCT``
			Whether infinitely many periods occur.
		``MIN_LENGTH``
			Whether it avoids those of period at least ``min_len``.
		``EVENTUALLY_AVOIDS``
			Whether only finitely many periods occur. If so ``stats['threshold']`` is the least
			period from which on all are avoided.
	min_len
		Minimum period for ``MIN_LENGTH``.

	Returns
	-------
	.Verdict
		Witness ``(I, T)``: position and period of an occurrence.
	"""
	mode = PowerMode(mode)
	k = m.base
	occ = occurrence_relation(m, e, max_states=max_states)
	stats = {'occurrence_states': occ.num_states}

	if mode is PowerMode.MIN_LENGTH:
		if min_len < 1:
			raise ValueError(f'Minimum length must be at least 1, got {min_len}')
		occ = occ & at_least(k, 'T', min_len)

	w = occ.witness()
	witness = None
	if w is not None:
		witness = (w['I'], w['T'])
		_verify_repetition(m, e, *witness)

	if mode in (PowerMode.EXISTS, PowerMode.MIN_LENGTH):
		if witness is None:
			return Verdict(True, 'avoids', None, stats)
		return Verdict(False, 'contains', witness, stats)

	if mode is PowerMode.INF_OCC:
		inf = occ.is_infinite_in('I')
		return Verdict(inf, 'infinitely-many' if inf else 'finitely-many', witness, stats)

	if mode is PowerMode.INF_DISTINCT:
		inf = occ.is_infinite_in('T')
		return Verdict(inf, 'infinitely-many' if inf else 'finitely-many', witness, stats)

	return _finiteness_verdict(occ, 'T', stats, witness, 'eventually-avoids', 'does-not-eventually-avoid')


def overlap_fused_nfa(m: Dfao, *, max_states: int = DEFAULT_MAX_STATES) -> Nfa:
	"""NFA on ``(I, T)`` accepting iff ``a_{I+J} != a_{I+T+J}`` for some guessed ``J <= T``.

	States are ``(b, c, d, q, r)``: comparison flag of ``J`` against ``T``, the carries of
	``I + J`` and ``I + J + T``, and the states of ``m`` on those two sums.
	"""
	k = m.base
	delta, tau = m.delta, m.tau

	def step(state, digits):
		b, c, d, q, r = state
		i, t = digits
		for j in range(k):
			c2, x = divmod(c + i + j, k)
			d2, y = divmod(d + i + j + t, k)
			yield flag_update(b, j, t), c2, d2, delta[q][x], delta[r][y]

	def final(state):
		b, c, d, q, r = state
		return b is not Flag.GT and c == 0 and d == 0 and tau[q] != tau[r]

	start = (Flag.EQ, 0, 0, m.initial, m.initial)
	nfa, _ = crawl_nfa(MultiTrackAlphabet(k, 2), start, step, final, max_states=max_states)
	return nfa


def decide_overlap(m: Dfao, *, fused: bool = True, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
	"""Decide whether the sequence is overlap-free.

	Parameters
	----------
	fused
		Use the single fused NFA of :func:`overlap_fused_nfa`. Otherwise equivalent to
		:func:`decide_power` with exponent ``2+``.

	Notes
	-----
	The fused stats are:

	* ``nfa_states``: the declared state space ``3 * 2 * 3 * |Q|^2``, computed from the formula
	  rather than counted (72 for Thue-Morse).
	* ``nfa_reachable_states``: states actually built, only those reachable from the start
	  (48 for Thue-Morse).
	* ``dfa_states``: size after determinization, which depends on how the NFA was pruned. The
	  reference count for Thue-Morse is 801; this construction gives 1329.
	* ``minimized_states``: the minimized complement, accepting the ``(I, T)`` without a
	  mismatch including every ``T = 0`` (2 for Thue-Morse).
	"""
	e = Exponent(2, 1, plus=True)
	if not fused:
		return decide_power(m, e, max_states=max_states)

	k = m.base
	nfa = overlap_fused_nfa(m, max_states=max_states)
	dfa = determinize(pad_closure(nfa), max_states=max_states)
	windows = minimize_dfa(complement(dfa))
	stats = {
		'nfa_states': 3 * 2 * 3 * m.num_states ** 2,
		'nfa_reachable_states': nfa.num_states,
		'dfa_states': dfa.num_states,
		'minimized_states': windows.num_states,
	}
	logger.debug('Fused overlap construction: %r', stats)

	occ = Relation.of(windows, 'I', 'T', max_states=max_states) & at_least(k, 'T', 1)
	w = occ.witness()
	if w is None:
		return Verdict(True, 'avoids', None, stats)
	witness = (w['I'], w['T'])
	_verify_repetition(m, e, *witness)
	return Verdict(False, 'contains', witness, stats)


def _mirror_pairs(k: int, max_states: int) -> Relation:
	"""``(J, J2, T)`` with ``J + J2 + 1 = T``."""
	return sum_of(k, ('J', 'J2'), 'T', constant=1, max_states=max_states)


def palindrome_relation(m: Dfao, min_len: int = 1, *, max_states: int = DEFAULT_MAX_STATES) -> Relation:
	"""Relation on ``(I, T)``: ``a_I ... a_{I+T-1}`` is a palindrome and ``T >= min_len``."""
	if min_len < 1:
		raise ValueError(f'Minimum length must be at least 1, got {min_len}')
	k = m.base
	mismatch = letters_at(('I', 'J', 'J2'), [(m, ('I', 'J')), (m, ('I', 'J2'))], _ne, max_states=max_states)
	bad = (_mirror_pairs(k, max_states) & mismatch).exists('J', 'J2')
	return (~bad & at_least(k, 'T', min_len, max_states=max_states)).reorder('I', 'T')


def decide_palindromes(m: Dfao,
                       min_len: int = 1,
                       mode: PowerMode = PowerMode.EXISTS,
                       *,
                       max_states: int = DEFAULT_MAX_STATES,
                       ) -> Verdict:
	"""Decide whether the sequence avoids palindromes of length at least ``min_len``.

	``mode`` is ``EXISTS`` or ``EVENTUALLY_AVOIDS`` (only finitely many palindrome lengths occur;
	``stats['threshold']`` is the least length from which on all are avoided).
	"""
	mode = PowerMode(mode)
	if mode not in (PowerMode.EXISTS, PowerMode.EVENTUALLY_AVOIDS):
		raise ValueError(f'Unsupported mode for palindromes: {mode.value}')

	pal = palindrome_relation(m, min_len, max_states=max_states)
	stats = {'occurrence_states': pal.num_states}

	w = pal.witness()
	witness = None
	if w is not None:
		i, t = witness = (w['I'], w['T'])
		_verify(m, witness, i + t, lambda word: word[i:i + t] == word[i:i + t][::-1], 'not a palindrome')

	if mode is PowerMode.EXISTS:
		if witness is None:
			return Verdict(True, 'avoids', None, stats)
		return Verdict(False, 'contains', witness, stats)

	return _finiteness_verdict(pal, 'T', stats, witness, 'eventually-avoids', 'does-not-eventually-avoid')


def decide_mirror(m: Dfao, min_len: int, *, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
	"""Decide whether no factor of length at least ``min_len`` has its reversal as a factor.

	A palindromic factor counts as a violation. The witness ``(I, I2, T)`` gives a factor at
	``I`` and its reversal at ``I2``.
	"""
	if min_len < 1:
		raise ValueError(f'Minimum length must be at least 1, got {min_len}')
	k = m.base
	mismatch = letters_at(
		('I', 'I2', 'J', 'J2'),
		[(m, ('I', 'J')), (m, ('I2', 'J2'))],
		_ne,
		max_states=max_states,
	)
	stats = {}
	reversed_at = ~((_mirror_pairs(k, max_states) & mismatch).exists('J', 'J2', stats=stats))
	violations = (reversed_at & at_least(k, 'T', min_len)).reorder('I', 'I2', 'T')
	stats['violation_states'] = violations.num_states

	w = violations.witness()
	if w is None:
		return Verdict(True, 'satisfies', None, stats)

	i, i2, t = witness = (w['I'], w['I2'], w['T'])
	_verify(
		m, witness, max(i, i2) + t,
		lambda word: word[i:i + t][::-1] == word[i2:i2 + t],
		'reversal does not occur',
	)
	return Verdict(False, 'violates', witness, stats)


def decide_sigma_square(m: Dfao, j: int, *, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
	"""Decide whether the sequence avoids factors ``x sigma(x)`` with ``sigma(a) = (a + 1) mod j``.

	Raises
	------
	ValueError
		If some output letter is not in ``range(j)``.
	"""
	if j < 1:
		raise ValueError(f'Modulus must be positive, got {j}')
	for letter in m.alphabet:
		if not (isinstance(letter, int) and 0 <= letter < j):
			raise ValueError(f'Letter {letter!r} is not in 0..{j - 1}')

	k = m.base
	mismatch = letters_at(
		('I', 'T', 'J'),
		[(m, ('I', 'J')), (m, ('I', 'T', 'J'))],
		lambda a, b: b != (a + 1) % j,
		max_states=max_states,
	)
	bad = (compare(k, 'J', '<', 'T', max_states=max_states) & mismatch).exists('J')
	occ = (~bad & at_least(k, 'T', 1)).reorder('I', 'T')
	stats = {'occurrence_states': occ.num_states}

	w = occ.witness()
	if w is None:
		return Verdict(True, 'avoids', None, stats)
	i, t = witness = (w['I'], w['T'])
	_verify(
		m, witness, i + 2 * t,
		lambda word: all(word[i + t + x] == (word[i + x] + 1) % j for x in range(t)),
		'second half is not the successor of the first',
	)
	return Verdict(False, 'contains', witness, stats)


def _agrees_before(m: Dfao, same: bool, max_states: int) -> Relation:
	"""``(K, I)``: ``a_{K+t}`` equals ``a_t`` (or differs from it, if not ``same``) for all ``t < I``."""
	k = m.base
	pred = _ne if same else (lambda a, b: a == b)
	bad = letters_at(('K', 't'), [(m, ('K', 't')), (m, ('t',))], pred, max_states=max_states)
	return ~((compare(k, 't', '<', 'I', max_states=max_states) & bad).exists('t'))


def _shift_equal(m: Dfao, same: bool, max_states: int) -> Relation:
	"""``K`` such that ``a_{K+n}`` equals ``a_n`` for all ``n`` (or differs from it for all ``n``)."""
	pred = _ne if same else (lambda a, b: a == b)
	bad = letters_at(('K', 'n'), [(m, ('K', 'n')), (m, ('n',))], pred, max_states=max_states)
	return ~bad.exists('n')


def decide_gamma_membership(m: Dfao, strict: bool = False, *, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
	"""Decide whether a binary sequence ``A`` satisfies ``~A <= s^K A <= A`` for all shifts ``K``.

	``~A`` is the complement and ``s`` the shift. In strict mode both inequalities must be strict,
	for all ``K >= 1``. The witness is ``(K, I)``, a shift and the index where it compares wrongly,
	or ``(K,)`` for a shift equal to ``A`` or ``~A`` in strict mode.

	Raises
	------
	ValueError
		If the output alphabet is not contained in ``{0, 1}``.
	"""
	if not set(m.alphabet) <= {0, 1}:
		raise ValueError(f'Expected a binary sequence, got alphabet {m.alphabet!r}')

	k = m.base
	kw = dict(max_states=max_states)
	above = _agrees_before(m, True, max_states) & letters_at(
		('K', 'I'), [(m, ('K', 'I')), (m, ('I',))], lambda x, y: x > y, **kw,
	)
	below = _agrees_before(m, False, max_states) & letters_at(
		('K', 'I'), [(m, ('K', 'I')), (m, ('I',))], lambda x, y: x < 1 - y, **kw,
	)
	violations = (above | below).reorder('K', 'I')
	if strict:
		violations = violations & at_least(k, 'K', 1, **kw)
	stats = {'violation_states': violations.num_states}

	w = violations.witness()
	if w is not None:
		s, i = witness = (w['K'], w['I'])

		def check(word):
			if all(word[s + t] == word[t] for t in range(i)) and word[s + i] > word[i]:
				return True
			return all(word[s + t] != word[t] for t in range(i)) and word[s + i] < 1 - word[i]

		_verify(m, witness, s + i + 1, check, 'shift does not compare wrongly')
		return Verdict(False, 'not-member', witness, stats)

	if strict:
		equal = (_shift_equal(m, True, max_states) | _shift_equal(m, False, max_states)) & at_least(k, 'K', 1, **kw)
		stats['equality_states'] = equal.num_states
		w = equal.witness()
		if w is not None:
			s = w['K']
			_verify(
				m, (s,), s + 256,
				lambda word: len({word[s + n] == word[n] for n in range(256)}) == 1,
				'shift is neither the sequence nor its complement',
			)
			return Verdict(False, 'not-member', (s,), stats)

	return Verdict(True, 'member', None, stats)
