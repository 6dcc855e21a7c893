"""Lexicographically extreme sequences in orbit closures.

The ``i``'th letter of the least sequence in the orbit closure of ``a`` is ``c`` iff some ``J``
has ``a_{J+i} = c`` while no factor ``a_L ... a_{L+i}`` is smaller than ``a_J ... a_{J+i}``. This
is expressed as a relation on ``(J, i)``, one per letter, and the letter relations are run in
parallel as a DFAO.

Orders may be twisted by a sequence of permutations ``psi``: at position ``t`` letters are
compared through their images under ``psi_t``. The reverse orbit closure compares the reversed
prefixes ``a_r a_{r-1} ... a_0`` instead of factors.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Dict
import logging

from .automata import Dfao, minimize_dfao, combine_letter_dfas, least_accepted, DEFAULT_MAX_STATES
from .arith import Flag, rel_letters_at
from .relation import Relation, compare, sum_of, letters_at


logger = logging.getLogger(__name__)


EXTREMES = ('least', 'greatest')


def identity_psi(base: int, alphabet: Sequence) -> Dfao:
	"""Constant identity permutation."""
	perm = tuple(alphabet)
	return Dfao.constant(perm, base, alphabet=(perm,))


def reversal_psi(base: int, alphabet: Sequence) -> Dfao:
	"""Constant order-reversing permutation."""
	perm = tuple(reversed(alphabet))
	return Dfao.constant(perm, base, alphabet=(perm,))


def parity_dfao(base: int) -> Dfao:
	"""``n mod 2`` in any base.

	The state is ``(n mod 2, base**position mod 2)`` for the digits read so far.
	"""
	start = (0, 1)
	states = [start]
	index = {start: 0}
	delta = []
	i = 0
	while i < len(states):
		v, w = states[i]
		row = []
		for d in range(base):
			nxt = ((v + d * w) % 2, (w * base) % 2)
			if nxt not in index:
				index[nxt] = len(states)
				states.append(nxt)
			row.append(index[nxt])
		delta.append(row)
		i += 1
	return minimize_dfao(Dfao.build(base, delta, [v for v, _ in states], alphabet=(0, 1)))


def cf_alternating_psi(base: int, alphabet: Sequence) -> Dfao:
	"""Identity at even positions, order reversal at odd positions.

	This is the order on continued fraction expansions.
	"""
	ident = tuple(alphabet)
	rev = tuple(reversed(alphabet))
	return parity_dfao(base).relabel({0: ident, 1: rev})


def complement_binary(m: Dfao) -> Dfao:
	"""Exchange the letters 0 and 1."""
	if not set(m.alphabet) <= {0, 1}:
		raise ValueError(f'Expected a binary sequence, got alphabet {m.alphabet!r}')
	return m.relabel({0: 1, 1: 0}, alphabet=(0, 1))


@dataclass(frozen=True)
class OrderSpec:
	"""How sequences are compared when selecting an extreme element.

	Attributes
	----------
	extreme
		``'least'`` or ``'greatest'``.
	reverse
		Use the reverse orbit closure.
	psi
		Optional DFAO whose ``t``'th output is the permutation applied at position ``t``, as a
		tuple of the images of the alphabet letters in order.
	"""
	extreme: str = 'least'
	reverse: bool = False
	psi: Optional[Dfao] = None

	def __post_init__(self):
		if self.extreme not in EXTREMES:
			raise ValueError(f'extreme must be one of {EXTREMES}, got {self.extreme!r}')

	@property
	def greatest(self) -> bool:
		return self.extreme == 'greatest'


@dataclass(frozen=True)
class OrbitResult:
	"""An extreme sequence and the sizes of the automata built along the way.

	Attributes
	----------
	dfao
	stats
		State counts keyed by construction stage.
	"""
	dfao: Dfao
	stats: Dict[str, int] = field(default_factory=dict)


def _check_psi(m: Dfao, psi: Dfao):
	if psi.base != m.base:
		raise ValueError(f'Permutation sequence has base {psi.base}, expected {m.base}')
	want = sorted(range(len(m.alphabet)))
	for perm in psi.alphabet:
		try:
			ranks = sorted(m.rank(x) for x in perm)
		except (TypeError, ValueError):
			raise ValueError(f'{perm!r} is not a permutation of {m.alphabet!r}') from None
		if len(perm) != len(m.alphabet) or ranks != want:
			raise ValueError(f'{perm!r} is not a permutation of {m.alphabet!r}')


def _beats(alphabet: Sequence, greatest: bool, twisted: bool):
	"""Predicate on (x, y[, perm]) that holds if ``x`` is strictly more extreme than ``y``."""
	rank = {x: i for i, x in enumerate(alphabet)}

	if twisted:
		def key(x, perm):
			return rank[perm[rank[x]]]
	else:
		def key(x, perm):
			return rank[x]

	if greatest:
		def beats(x, y, perm=None):
			return key(x, perm) > key(y, perm)
	else:
		def beats(x, y, perm=None):
			return key(x, perm) < key(y, perm)

	return beats


def _forward_minimal(m: Dfao, order: OrderSpec, max_states: int, stats: dict) -> Relation:
	"""``(J, R)``: no factor of length ``R + 1`` is more extreme than the one at ``J``."""
	k = m.base
	kw = dict(max_states=max_states)
	beats = _beats(m.alphabet, order.greatest, order.psi is not None)

	# Some L agrees with J before T and beats it at T
	diff = letters_at(('L', 'J', 's'), [(m, ('L', 's')), (m, ('J', 's'))], lambda x, y: x != y, **kw)
	equal_before = ~((compare(k, 's', '<', 'T', **kw) & diff).exists('s'))
	indices = [(m, ('L', 'T')), (m, ('J', 'T'))]
	if order.psi is not None:
		indices.append((order.psi, ('T',)))
	better = equal_before & letters_at(('L', 'J', 'T'), indices, beats, **kw)
	stats['M2'] = better.num_states

	beaten_at = better.exists('L')
	stats['M3'] = beaten_at.num_states

	minimal = ~((compare(k, 'T', '<=', 'R', **kw) & beaten_at).exists('T'))
	stats['M4'] = minimal.num_states
	return minimal.reorder('J', 'R')


def _reverse_minimal(m: Dfao, order: OrderSpec, max_states: int, stats: dict) -> Relation:
	"""``(J, R)``: no reversed prefix ``a_{Y+R} ... a_Y`` is more extreme than ``a_{J+R} ... a_J``.

	Position ``t`` of the reversed window at ``Y`` holds ``a_{Y+U}`` with ``U + t = R``.
	"""
	k = m.base
	kw = dict(max_states=max_states)
	beats = _beats(m.alphabet, order.greatest, order.psi is not None)

	# Windows at Y and J agree on positions before t, i.e. on indices Y+V, J+V for U < V <= R
	diff = letters_at(('Y', 'J', 'V'), [(m, ('Y', 'V')), (m, ('J', 'V'))], lambda x, y: x != y, **kw)
	between = compare(k, 'U', '<', 'V', **kw) & compare(k, 'V', '<=', 'R', **kw)
	equal_after = ~((between & diff).exists('V'))

	if order.psi is None:
		at_u = letters_at(('Y', 'J', 'U'), [(m, ('Y', 'U')), (m, ('J', 'U'))], beats, **kw) \
			& compare(k, 'U', '<=', 'R', **kw)
	else:
		at_u = letters_at(
			('Y', 'J', 'U', 'T'),
			[(m, ('Y', 'U')), (m, ('J', 'U')), (order.psi, ('T',))],
			beats,
			**kw,
		)
		at_u = (at_u & sum_of(k, ('U', 'T'), 'R', **kw)).exists('T')

	better = equal_after & at_u
	stats['M2'] = better.num_states

	beaten = better.exists('Y', 'U')
	stats['M3'] = beaten.num_states

	minimal = ~beaten
	stats['M4'] = minimal.num_states
	return minimal.reorder('J', 'R')


def orbit_extreme_dfao(m: Dfao,
                       order: OrderSpec = OrderSpec(),
                       *,
                       max_states: int = DEFAULT_MAX_STATES,
                       ) -> OrbitResult:
	"""DFAO for the least or greatest sequence of the (reverse) orbit closure of ``m``.

	Parameters
	----------
	m
		The sequence.
	order
		Which extreme, which closure, and an optional permutation twist.

	Returns
	-------
	.OrbitResult
		Minimal DFAO over the same output alphabet as ``m``.

	Raises
	------
	.ConsistencyError
		If the per-letter automata do not select exactly one letter for some index.
	"""
	if order.psi is not None:
		_check_psi(m, order.psi)

	stats = {}
	if order.reverse:
		minimal = _reverse_minimal(m, order, max_states, stats)
	else:
		minimal = _forward_minimal(m, order, max_states, stats)

	branches = {}
	for c in m.alphabet:
		if order.reverse:
			# The letter at position R of the reversed window at J is a_J
			at = letters_at(('J',), [(m, ('J',))], lambda x, c=c: x == c, max_states=max_states)
		else:
			at = letters_at(('J', 'R'), [(m, ('J', 'R'))], lambda x, c=c: x == c, max_states=max_states)
		branch = (minimal & at).only('R')
		stats['M6'] = max(stats.get('M6', 0), branch.num_states)
		branches[c] = branch.dfa

	result = combine_letter_dfas(branches, m.alphabet, max_states=max_states)
	stats['M7'] = result.num_states
	logger.debug('Orbit extreme construction: %r', stats)
	return OrbitResult(result, stats)


def compare_sequences(a: Dfao,
                      b: Dfao,
                      psi: Optional[Dfao] = None,
                      *,
                      max_states: int = DEFAULT_MAX_STATES,
                      ) -> Tuple[Flag, Optional[int]]:
	"""Compare two automatic sequences lexicographically.

	Letters are ordered by the output alphabet of ``a``, twisted by ``psi`` if given.

	Returns
	-------
	tuple
		The comparison of ``a`` against ``b`` and the least index where they differ (None if
		they are equal).
	"""
	if a.base != b.base:
		raise ValueError(f'Cannot compare sequences over bases {a.base} and {b.base}')
	for x in b.alphabet:
		if x not in a.alphabet:
			raise ValueError(f'Letter {x!r} of the second sequence is not in {a.alphabet!r}')
	if psi is not None:
		_check_psi(a, psi)

	diff = rel_letters_at(1, [(a, (0,)), (b, (0,))], lambda x, y: x != y, max_states=max_states)
	n = least_accepted(diff)
	if n is None:
		return Flag.EQ, None

	perm = None if psi is None else psi.eval(n)
	less = _beats(a.alphabet, False, psi is not None)
	x, y = a.eval(n), b.eval(n)
	return (Flag.LT if less(x, y, perm) else Flag.GT), n


def theta(b: Dfao, *, max_states: int = DEFAULT_MAX_STATES) -> Dfao:
	"""Supremum of all shifts of a binary sequence and of its complement."""
	if not set(b.alphabet) <= {0, 1}:
		raise ValueError(f'Expected a binary sequence, got alphabet {b.alphabet!r}')
	b = b.with_alphabet((0, 1))
	greatest = OrderSpec('greatest')
	g1 = orbit_extreme_dfao(b, greatest, max_states=max_states).dfao
	g2 = orbit_extreme_dfao(complement_binary(b), greatest, max_states=max_states).dfao
	flag, _ = compare_sequences(g1, g2, max_states=max_states)
	return g2 if flag is Flag.LT else g1
