"""Continued fractions with automatic sequences of partial quotients.

The order on continued fractions compares the first quotient naturally, the second reversed, and
so on, which is :func:`~seqdec.orbit.cf_alternating_psi`. Limits of the Gauss map orbit and of
ratios of consecutive convergent numerators and denominators are then extreme sequences of
(reverse) orbit closures.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Dict
import logging

from .automata import Dfao, DEFAULT_MAX_STATES
from .errors import CertificationError
from .orbit import OrderSpec, orbit_extreme_dfao, cf_alternating_psi
from .sequences import FormulaOracle, dfao_synthesize_from_oracle, shift_dfao


logger = logging.getLogger(__name__)


def _positive_tail_states(m: Dfao) -> set:
	"""States reached on encodings of some ``n >= 1``, i.e. words with a nonzero digit."""
	start = (m.initial, False)
	seen = {start}
	stack = [start]
	while stack:
		q, nonzero = stack.pop()
		for d, r in enumerate(m.delta[q]):
			nxt = (r, nonzero or d != 0)
			if nxt not in seen:
				seen.add(nxt)
				stack.append(nxt)
	return {q for q, nonzero in seen if nonzero}


@dataclass(frozen=True)
class AutomaticCF:
	"""A continued fraction ``[a_0, a_1, ...]`` whose quotients are given by a DFAO.

	Attributes
	----------
	dfao
		Outputs non-negative integers, positive at every ``n >= 1``.
	"""
	dfao: Dfao

	def __post_init__(self):
		for letter in self.dfao.alphabet:
			if not isinstance(letter, int) or letter < 0:
				raise ValueError(f'Partial quotients must be non-negative integers, got {letter!r}')
		for q in _positive_tail_states(self.dfao):
			if self.dfao.tau[q] < 1:
				raise ValueError('Partial quotients after the first must be positive')

	@property
	def base(self) -> int:
		return self.dfao.base

	def quotients(self, count: int) -> List[int]:
		return self.dfao.prefix(count)

	def value(self, count: int) -> Fraction:
		"""Value of the expansion truncated to ``count`` quotients."""
		return cf_value(self.quotients(count))


def _check_quotients(quotients: Sequence[int]):
	if not quotients:
		raise ValueError('Empty list of partial quotients')
	for i, a in enumerate(quotients):
		if not isinstance(a, int) or a < (0 if i == 0 else 1):
			raise ValueError(f'Invalid partial quotient {a!r} at index {i}')


def convergents(quotients: Sequence[int]) -> List[Tuple[int, int]]:
	"""Numerators and denominators ``(p_n, q_n)`` of all convergents.

	Raises
	------
	ValueError
		If ``a_0 < 0`` or ``a_n < 1`` for some ``n >= 1``.
	"""
	_check_quotients(quotients)
	p0, p1 = 0, 1
	q0, q1 = 1, 0
	out = []
	for a in quotients:
		p0, p1 = p1, a * p1 + p0
		q0, q1 = q1, a * q1 + q0
		out.append((p1, q1))
	return out


def cf_value(quotients: Sequence[int]) -> Fraction:
	"""Exact value of a finite continued fraction."""
	p, q = convergents(quotients)[-1]
	return Fraction(p, q)


def cf_expand(x: Fraction) -> List[int]:
	"""Continued fraction expansion of a rational number, by the Euclidean algorithm."""
	x = Fraction(x)
	num, den = x.numerator, x.denominator
	out = []
	while den:
		a, r = divmod(num, den)
		out.append(a)
		num, den = den, r
	return out


def cf_add_integer(quotients: Sequence[int], n: int) -> List[int]:
	"""Expansion of ``x + n`` given that of ``x``."""
	out = list(quotients)
	out[0] += n
	return out


def zeta_annotations(zeta: Sequence[int]) -> Dict[str, List[int]]:
	"""Expansions derived from a prefix of the expansion of ``zeta``.

	Returns the recurrence quotient ``2 + zeta`` and the irrationality measure ``1 + zeta``.
	"""
	return {
		'recurrence_quotient': cf_add_integer(zeta, 2),
		'irrationality_measure': cf_add_integer(zeta, 1),
	}


def alpha_partial_sum(mbase: int, terms: int) -> Fraction:
	"""``sum(mbase ** -(2 ** i) for i < terms)`` as an exact fraction."""
	if mbase < 2:
		raise ValueError(f'Base must be at least 2, got {mbase}')
	if terms < 1:
		raise ValueError('Need at least one term')
	den = mbase ** 2 ** (terms - 1)
	return Fraction(sum(den // mbase ** 2 ** i for i in range(terms)), den)


def _common_prefix(a: Sequence, b: Sequence) -> int:
	n = 0
	for x, y in zip(a, b):
		if x != y:
			break
		n += 1
	return n


def cf_rational_oracle(mbase: int, terms: int, *, max_truncation: int = 20) -> List[int]:
	"""Certified partial quotients of ``sum(mbase ** -(2 ** i) for i >= 0)``.

	The expansions of consecutive partial sums are compared; their common prefix without its last
	element is taken as certified. The number of summands grows until ``terms`` quotients are
	certified.

	Raises
	------
	.CertificationError
		If the partial sums up to ``max_truncation`` summands do not certify enough quotients.
	"""
	if terms < 1:
		raise ValueError('Need at least one term')

	prev = cf_expand(alpha_partial_sum(mbase, 2))
	certified = 0
	for t in range(3, max_truncation + 1):
		cur = cf_expand(alpha_partial_sum(mbase, t))
		certified = max(_common_prefix(prev, cur) - 1, 0)
		if certified >= terms:
			logger.debug('Certified %d quotients with %d summands', certified, t)
			return cur[:terms]
		prev = cur

	raise CertificationError(terms, certified)


def _quotient_oracle(mbase: int, initial: int) -> FormulaOracle:
	"""Oracle over :func:`cf_rational_oracle`, certifying twice as many quotients when it runs out."""
	known = cf_rational_oracle(mbase, initial)

	def quotient(n):
		nonlocal known
		if n >= len(known):
			known = cf_rational_oracle(mbase, max(2 * len(known), n + 1))
		return known[n]

	return FormulaOracle(quotient)


def alpha_k_cf_dfao(mbase: int, *, validate_len: int = 1024, max_states: int = 1000) -> AutomaticCF:
	"""Base-2 automaton for the expansion of ``sum(mbase ** -(2 ** i) for i >= 0)``.

	Synthesized from :func:`cf_rational_oracle` and validated against it on ``validate_len``
	quotients.
	"""
	if mbase < 3:
		raise ValueError(f'Base must be at least 3, got {mbase}')
	oracle = _quotient_oracle(mbase, max(validate_len, 1024))
	m = dfao_synthesize_from_oracle(oracle, 2, validate_len=validate_len, max_states=max_states)
	logger.info('Synthesized %d-state automaton for base %d', m.num_states, mbase)
	return AutomaticCF(m)


def _extreme(m: Dfao, extreme: str, reverse: bool, max_states: int) -> AutomaticCF:
	order = OrderSpec(extreme, reverse, cf_alternating_psi(m.base, m.alphabet))
	return AutomaticCF(orbit_extreme_dfao(m, order, max_states=max_states).dfao)


def cf_shift_limits(x: AutomaticCF, *, max_states: int = DEFAULT_MAX_STATES) -> Tuple[AutomaticCF, AutomaticCF]:
	"""Extreme points of ``T^n(x)``, ``n >= 1``, for the Gauss map ``T(x) = 1 / (x - floor(x))``.

	``T^n(x) = [a_n, a_{n+1}, ...]``, so these are the least and greatest sequences of the orbit
	closure of ``(a_1, a_2, ...)`` under the continued fraction order.

	Returns
	-------
	tuple
		``(liminf, limsup)``.
	"""
	tail = shift_dfao(x.dfao, 1, max_states=max_states)
	return _extreme(tail, 'least', False, max_states), _extreme(tail, 'greatest', False, max_states)


@dataclass(frozen=True)
class GaloisLimits:
	"""Lower and upper limits of ``p_n / p_{n-1}`` (beta, delta) and ``q_n / q_{n-1}`` (gamma, zeta)."""
	beta: AutomaticCF
	gamma: AutomaticCF
	delta: AutomaticCF
	zeta: AutomaticCF

	def as_dict(self) -> Dict[str, AutomaticCF]:
		return {'beta': self.beta, 'gamma': self.gamma, 'delta': self.delta, 'zeta': self.zeta}


def cf_galois_ratio_limits(x: AutomaticCF, *, max_states: int = DEFAULT_MAX_STATES) -> GaloisLimits:
	"""Limits of ratios of consecutive convergent numerators and denominators.

	``p_n / p_{n-1} = [a_n, ..., a_0]`` and ``q_n / q_{n-1} = [a_n, ..., a_1]``, so these are
	extremes of reverse orbit closures under the continued fraction order. If ``a_0 = 0`` then
	``[a_n, ..., a_1, 0] = [a_n, ..., a_2]`` and the numerator ratios read from ``a_2`` on.
	"""
	a = x.dfao
	tail = shift_dfao(a, 1, max_states=max_states)
	numer = shift_dfao(a, 2, max_states=max_states) if a.eval(0) == 0 else a
	return GaloisLimits(
		beta=_extreme(numer, 'least', True, max_states),
		gamma=_extreme(tail, 'least', True, max_states),
		delta=_extreme(numer, 'greatest', True, max_states),
		zeta=_extreme(tail, 'greatest', True, max_states),
	)
