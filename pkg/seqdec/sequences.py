"""Concrete sequences, sequence oracles, DFAO synthesis and brute-force scans.

The scans in this module work directly on finite prefixes and serve as independent oracles for
the automaton-based decision procedures.
"""

from abc import ABC, abstractmethod
from math import gcd
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from .automata import Dfao, minimize_dfao, default_alphabet, to_digits, DEFAULT_MAX_STATES
from .errors import NotProlongableError, SynthesisError, InstabilityError, ResourceLimitError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Morphism:
	"""A non-erasing morphism on a finite alphabet.

	Attributes
	----------
	images
		Maps each letter to a nonempty tuple of letters.
	"""
	images: Mapping[Any, Tuple]

	def __post_init__(self):
		for letter, image in self.images.items():
			if not image:
				raise ValueError(f'Image of {letter!r} is empty')
			for x in image:
				if x not in self.images:
					raise ValueError(f'Letter {x!r} in the image of {letter!r} has no image')

	@classmethod
	def build(cls, images: Mapping[Any, Sequence]) -> 'Morphism':
		return cls({a: tuple(w) for a, w in images.items()})

	def __call__(self, word: Sequence) -> list:
		out = []
		for a in word:
			out.extend(self.images[a])
		return out

	def is_prolongable(self, letter) -> bool:
		"""Whether ``h(letter)`` starts with ``letter`` and is longer than one letter."""
		image = self.images.get(letter)
		return image is not None and len(image) > 1 and image[0] == letter


#: The Thue-Morse morphism 0 -> 01, 1 -> 10.
THUE_MORSE_MORPHISM = Morphism.build({0: (0, 1), 1: (1, 0)})

#: 2 -> 210, 1 -> 20, 0 -> 1. Its fixed point starting with 2 is a ternary squarefree word.
SQUAREFREE_MORPHISM = Morphism.build({2: (2, 1, 0), 1: (2, 0), 0: (1,)})


def morphism_fixed_point(h: Morphism, a, n: int) -> list:
	"""First ``n`` letters of the fixed point of ``h`` starting with ``a``.

	Raises
	------
	.NotProlongableError
	"""
	if not h.is_prolongable(a):
		raise NotProlongableError(a)
	word = [a]
	while len(word) < n:
		word = h(word)
	return word[:n]


class SequenceOracle(ABC):
	"""A sequence that can be queried term by term.

	Attributes
	----------
	alphabet
		Declared output alphabet, or None if unknown.
	"""
	alphabet: Optional[Tuple] = None

	@abstractmethod
	def prefix(self, count: int) -> list:
		"""The first ``count`` terms."""
		raise NotImplementedError()

	def __getitem__(self, n: int):
		return self.prefix(n + 1)[n]


class FormulaOracle(SequenceOracle):
	"""Sequence given by a function of the index.

	Parameters
	----------
	func
		Maps ``n`` to ``a_n``. May raise :exc:`IndexError` past the end of a finite table.
	"""

	def __init__(self, func: Callable[[int], Any], alphabet: Optional[Sequence] = None):
		self.func = func
		self.alphabet = None if alphabet is None else tuple(alphabet)
		self._cache = []

	def prefix(self, count):
		cache = self._cache
		for n in range(len(cache), count):
			cache.append(self.func(n))
		return cache[:count]

	def __getitem__(self, n):
		if n < len(self._cache):
			return self._cache[n]
		return self.func(n)


class MorphicOracle(SequenceOracle):
	"""Fixed point of a prolongable morphism, optionally followed by a coding."""

	def __init__(self, h: Morphism, seed, coding: Optional[Mapping] = None, alphabet: Optional[Sequence] = None):
		if not h.is_prolongable(seed):
			raise NotProlongableError(seed)
		self.h = h
		self.seed = seed
		self.coding = coding
		if alphabet is None:
			letters = h.images if coding is None else (coding[x] for x in h.images)
			alphabet = default_alphabet(letters)
		self.alphabet = tuple(alphabet)
		self._word = [seed]

	def prefix(self, count):
		while len(self._word) < count:
			self._word = self.h(self._word)
		word = self._word[:count]
		if self.coding is not None:
			word = [self.coding[x] for x in word]
		return word


class DfaoOracle(SequenceOracle):
	"""Sequence computed by a DFAO."""

	def __init__(self, m: Dfao):
		self.m = m
		self.alphabet = m.alphabet

	def prefix(self, count):
		return self.m.prefix(count)

	def __getitem__(self, n):
		return self.m.eval(n)


class ShiftedOracle(SequenceOracle):
	"""The sequence ``n -> a_{n + shift}``."""

	def __init__(self, inner: SequenceOracle, shift: int):
		if shift < 0:
			raise ValueError('Shift must be non-negative')
		self.inner = inner
		self.shift = shift
		self.alphabet = inner.alphabet

	def prefix(self, count):
		return self.inner.prefix(count + self.shift)[self.shift:]

	def __getitem__(self, n):
		return self.inner[n + self.shift]


def _thue_morse():
	return Dfao.build(2, [[0, 1], [1, 0]], [0, 1])


def _rudin_shapiro():
	# State (previous digit, parity of adjacent 11 pairs so far)
	states = [(0, 0), (1, 0), (0, 1), (1, 1)]
	index = {s: i for i, s in enumerate(states)}
	delta = [[index[(d, p ^ (prev & d))] for d in range(2)] for prev, p in states]
	return minimize_dfao(Dfao.build(2, delta, [p for _, p in states]))


def _period2():
	# 0: nothing read yet, 1: even, 2: odd
	return Dfao.build(2, [[1, 2], [1, 1], [2, 2]], [0, 0, 1])


def _one_at_zero():
	return Dfao.build(2, [[0, 1], [1, 1]], [1, 0])


_BUILTIN_DFAOS = {
	'thue-morse': _thue_morse,
	'rudin-shapiro': _rudin_shapiro,
	'period2': _period2,
	'one-at-zero': _one_at_zero,
	'constant-0': lambda: Dfao.constant(0, 2),
}

#: Names accepted by :func:`builtin_dfao`.
BUILTIN_DFAOS = tuple(_BUILTIN_DFAOS)

#: Names accepted by :func:`builtin_oracle`.
BUILTIN_ORACLES = BUILTIN_DFAOS + ('squarefree', 'orbit-least-thue-morse')


def builtin_dfao(name: str) -> Dfao:
	"""Minimal base-2 DFAO for a named sequence.

	Parameters
	----------
	name
		One of :data:`BUILTIN_DFAOS`:

		``thue-morse``
			Parity of the number of 1 bits.
		``rudin-shapiro``
			Parity of the number of (possibly overlapping) ``11`` blocks in binary.
		``period2``
			``n mod 2``.
		``one-at-zero``
			1 at ``n = 0``, 0 elsewhere.
		``constant-0``
			All zeros.

	Raises
	------
	ValueError
		If the name is unknown.
	"""
	try:
		factory = _BUILTIN_DFAOS[name]
	except KeyError:
		raise ValueError(f'Unknown builtin sequence {name!r}, expected one of {", ".join(BUILTIN_DFAOS)}') from None
	return factory()


def builtin_oracle(name: str) -> SequenceOracle:
	"""Oracle for a named sequence, see :data:`BUILTIN_ORACLES`.

	``squarefree`` is the fixed point of :data:`SQUAREFREE_MORPHISM` starting with 2.
	``orbit-least-thue-morse`` is the Thue-Morse fixed point starting with 1, minus its first
	letter.
	"""
	if name in _BUILTIN_DFAOS:
		return DfaoOracle(builtin_dfao(name))
	if name == 'squarefree':
		return MorphicOracle(SQUAREFREE_MORPHISM, 2, alphabet=(0, 1, 2))
	if name == 'orbit-least-thue-morse':
		return ShiftedOracle(MorphicOracle(THUE_MORSE_MORPHISM, 1, alphabet=(0, 1)), 1)
	raise ValueError(f'Unknown builtin oracle {name!r}, expected one of {", ".join(BUILTIN_ORACLES)}')


def _first_mismatch(a: Sequence, b: Sequence) -> Optional[int]:
	for i, (x, y) in enumerate(zip(a, b)):
		if x != y:
			return i
	if len(a) != len(b):
		return min(len(a), len(b))
	return None


def _kernel_dfao(oracle: SequenceOracle, k: int, depth: int, max_states: int, alphabet) -> Dfao:
	values = []

	def at(n):
		nonlocal values
		if n >= len(values):
			count = max(2 * len(values), n + 1, 1024)
			try:
				values = oracle.prefix(count)
			except IndexError:
				raise SynthesisError(f'Oracle cannot supply {count} terms') from None
			if len(values) <= n:
				raise SynthesisError(f'Oracle cannot supply term {n}')
		return values[n]

	def signature(e, r):
		step = k ** e
		return tuple(at(step * j + r) for j in range(depth))

	start = signature(0, 0)
	index = {start: 0}
	kernel = [(0, 0)]
	tau = [start[0]]
	delta = []

	i = 0
	while i < len(kernel):
		e, r = kernel[i]
		row = []
		for d in range(k):
			child = (e + 1, r + d * k ** e)
			sig = signature(*child)
			j = index.get(sig)
			if j is None:
				j = len(kernel)
				if j >= max_states:
					raise SynthesisError(f'More than {max_states} distinct kernel sequences at depth {depth}')
				index[sig] = j
				kernel.append(child)
				tau.append(sig[0])
			row.append(j)
		delta.append(row)
		i += 1

	if alphabet is None:
		alphabet = default_alphabet(tau)
	return Dfao.build(k, delta, tau, alphabet=alphabet)


def dfao_synthesize_from_oracle(oracle: SequenceOracle,
                                k: int,
                                *,
                                max_states: int = 1000,
                                validate_len: int = 2 ** 12,
                                depth: int = 8,
                                max_depth: int = 1024,
                                ) -> Dfao:
	"""Build a DFAO for a (presumably) k-automatic sequence from its values.

	States are elements of the k-kernel ``n -> a_{k^e n + r}``, identified by their first
	``depth`` terms. If the result disagrees with the oracle on ``n < validate_len`` the
	construction is repeated with twice the depth.

	Parameters
	----------
	oracle
		The sequence.
	k
		Base of the result.
	max_states
		Maximum number of kernel sequences.
	validate_len
		The result is checked against the oracle on this many terms.
	depth
		Initial number of terms used to tell kernel sequences apart.
	max_depth
		Give up once the depth would exceed this.

	Returns
	-------
	.Dfao
		Minimal and zero-stable, agreeing with the oracle on the first ``validate_len`` terms.

	Raises
	------
	.SynthesisError
		If the state limit is exceeded or validation still fails at ``max_depth``. In the latter
		case :attr:`.SynthesisError.index` is the smallest disagreeing index.
	"""
	try:
		expected = oracle.prefix(validate_len)
	except IndexError:
		raise SynthesisError(f'Oracle cannot supply {validate_len} terms') from None
	if len(expected) < validate_len:
		raise SynthesisError(f'Oracle supplied only {len(expected)} of {validate_len} terms')

	while True:
		m = minimize_dfao(_kernel_dfao(oracle, k, depth, max_states, oracle.alphabet))
		bad = _first_mismatch(m.prefix(validate_len), expected)
		if bad is None:
			logger.debug('Synthesized %d-state DFAO at depth %d', m.num_states, depth)
			return m
		if depth * 2 > max_depth:
			raise SynthesisError(f'Synthesized automaton disagrees with the oracle at n = {bad}', index=bad)
		logger.info('Synthesis at depth %d disagrees at n = %d, retrying with depth %d', depth, bad, depth * 2)
		depth *= 2


def shift_dfao(m: Dfao, s: int, *, max_states: int = DEFAULT_MAX_STATES) -> Dfao:
	"""DFAO for the shifted sequence ``n -> a_{n+s}``.

	Adds ``s`` to the input digit by digit, tracking the position within the digits of ``s``, the
	carry and the state of ``m``. The output flushes the remaining digits of ``s`` and the carry.
	"""
	if s < 0:
		raise ValueError(f'Shift must be non-negative, got {s}')
	if s == 0:
		return m

	k = m.base
	sd = to_digits(s, k)
	ns = len(sd)
	delta = m.delta

	def step(state, d):
		pos, carry, q = state
		total = d + carry + (sd[pos] if pos < ns else 0)
		carry, digit = divmod(total, k)
		return min(pos + 1, ns), carry, delta[q][digit]

	def output(state):
		while state[0] < ns or state[1]:
			state = step(state, 0)
		return m.tau[state[2]]

	start = (0, 0, m.initial)
	states = [start]
	index = {start: 0}
	rows = []
	i = 0
	while i < len(states):
		row = []
		for d in range(k):
			nxt = step(states[i], d)
			j = index.get(nxt)
			if j is None:
				j = len(states)
				if j >= max_states:
					raise ResourceLimitError(max_states, j + 1, 'Shift construction')
				index[nxt] = j
				states.append(nxt)
			row.append(j)
		rows.append(row)
		i += 1

	return minimize_dfao(Dfao.build(k, rows, [output(q) for q in states], alphabet=m.alphabet))


def count_runs_between_zeros(word: Sequence[int]) -> List[int]:
	"""Lengths of the runs of nonzero letters between consecutive zeros.

	Applied to the Thue-Morse word this gives the squarefree word of :data:`SQUAREFREE_MORPHISM`.
	"""
	zeros = np.flatnonzero(np.asarray(word) == 0)
	return (np.diff(zeros) - 1).tolist()


def _codes(word: Sequence) -> np.ndarray:
	"""Word as an integer array, with letters numbered by first appearance."""
	table = {}
	return np.fromiter((table.setdefault(x, len(table)) for x in word), dtype=np.int64, count=len(word))


def _window_runs(eq: np.ndarray, count: int) -> np.ndarray:
	"""Start positions ``i`` such that ``eq[i:i+count]`` is all true."""
	if count > len(eq):
		return np.empty(0, dtype=np.int64)
	c = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
	return np.flatnonzero(c[count:] - c[:-count] == count)


def repetition_window(p: int, q: int, plus: bool, t: int) -> int:
	"""Number of offsets ``J`` with ``q*J < (p-q)*t`` (``<=`` if ``plus``)."""
	if plus:
		return (p - q) * t // q + 1
	return -((q - p) * t // q)


def scan_repetitions(w: Sequence, p: int, q: int, plus: bool = False, min_len: int = 1) -> List[Tuple[int, int]]:
	"""Find all occurrences of ``p/q``-powers (or ``p/q+``-powers) in a word.

	Returns the pairs ``(I, T)`` with ``T >= max(1, min_len)`` such that ``w[I+J] = w[I+T+J]`` for
	every ``J`` with ``q*J < (p-q)*T`` (``<=`` if ``plus``), with the whole window inside ``w``.
	Sorted by ``T``, then ``I``.
	"""
	_check_exponent(p, q)
	a = _codes(w)
	n = len(a)
	out = []
	for t in range(max(1, min_len), n):
		count = repetition_window(p, q, plus, t)
		if t + count > n:
			break
		eq = a[t:] == a[:-t]
		out.extend((int(i), t) for i in _window_runs(eq, count))
	return out


def _check_exponent(p: int, q: int):
	if not (q >= 1 and p > q):
		raise ValueError(f'Exponent {p}/{q} must be greater than 1')
	if gcd(p, q) != 1:
		raise ValueError(f'Exponent {p}/{q} is not in lowest terms')


def scan_palindromes(w: Sequence, min_len: int = 1) -> List[Tuple[int, int]]:
	"""All ``(I, T)`` with ``T >= max(1, min_len)`` such that ``w[I:I+T]`` is a palindrome.

	Sorted by ``T``, then ``I``.
	"""
	a = _codes(w)
	n = len(a)
	rev = a[::-1]
	out = []
	for t in range(max(1, min_len), n + 1):
		for i in range(n - t + 1):
			# w[i:i+t] reversed is rev[n-i-t:n-i]
			if np.array_equal(a[i:i + t], rev[n - i - t:n - i]):
				out.append((i, t))
	return out


def scan_sigma_squares(w: Sequence[int], j: int) -> List[Tuple[int, int]]:
	"""All ``(I, T)``, ``T >= 1``, with ``w[I+T+J] = (w[I+J] + 1) mod j`` for ``0 <= J < T``."""
	a = np.asarray(w, dtype=np.int64)
	n = len(a)
	out = []
	for t in range(1, n // 2 + 1):
		eq = a[t:] == (a[:-t] + 1) % j
		out.extend((int(i), t) for i in _window_runs(eq, t))
	return out


def scan_mirror_violations(w: Sequence, min_len: int, max_len: int) -> List[Tuple[int, int, int]]:
	"""Factors whose reversal is also a factor.

	Returns ``(I, I2, T)`` for each ``I`` and ``min_len <= T <= max_len`` such that the reversal of
	``w[I:I+T]`` occurs at ``I2`` (its first occurrence).
	"""
	a = _codes(w)
	n = len(a)
	out = []
	for t in range(max(1, min_len), min(max_len, n) + 1):
		first = {}
		for i in range(n - t + 1):
			first.setdefault(a[i:i + t].tobytes(), i)
		for i in range(n - t + 1):
			j = first.get(a[i:i + t][::-1].tobytes())
			if j is not None:
				out.append((i, j, t))
	return out


def _orbit_extreme_once(word: Sequence,
                        n: int,
                        alphabet: Sequence,
                        greatest: bool,
                        reverse: bool,
                        perms: Optional[Sequence[Tuple]],
                        ) -> list:
	rank = {x: i for i, x in enumerate(alphabet)}
	codes = np.fromiter((rank[x] for x in word), dtype=np.int64, count=len(word))
	if reverse:
		codes = codes[::-1]

	maps = None
	if perms is not None:
		# maps[t][r] = rank of the image of the letter with rank r under the t'th permutation
		maps = np.array([[rank[perm[r]] for r in range(len(alphabet))] for perm in perms], dtype=np.int64)

	# Narrow down the window starts one position at a time
	starts = np.arange(len(codes) - n + 1)
	for t in range(n):
		if len(starts) == 1:
			break
		keys = codes[starts + t]
		if maps is not None:
			keys = maps[t][keys]
		best = keys.max() if greatest else keys.min()
		starts = starts[keys == best]

	s = starts[0]
	return [alphabet[c] for c in codes[s:s + n]]


def scan_orbit_extreme(oracle: SequenceOracle,
                       length: int,
                       n: int,
                       *,
                       greatest: bool = False,
                       reverse: bool = False,
                       psi: Optional[Dfao] = None,
                       alphabet: Optional[Sequence] = None,
                       ) -> list:
	"""Brute-force prefix of the extreme sequence of an orbit closure.

	Computes the least (or greatest) length-``n`` factor of the first ``length`` terms, and checks
	that the answer does not change when ``length`` is doubled.

	Parameters
	----------
	oracle
		The sequence.
	length
		Prefix length to scan. Must be at least ``4 * n``.
	n
		Number of terms of the extreme sequence to compute.
	greatest
		Find the greatest instead of the least.
	reverse
		Scan reversed prefixes ``a_r a_{r-1} ... a_0`` instead of factors.
	psi
		DFAO whose ``t``'th output is a permutation of ``alphabet`` (a tuple of images in alphabet
		order) applied to letters at position ``t`` before comparing.
	alphabet
		Letter order. Defaults to the oracle's declared alphabet.

	Raises
	------
	.InstabilityError
		If the result changes when the prefix length is doubled.
	"""
	if n < 1:
		return []
	if 4 * n > length:
		raise ValueError(f'Prefix length {length} too short for {n} terms, need at least {4 * n}')

	if alphabet is None:
		alphabet = oracle.alphabet
	word = oracle.prefix(2 * length)
	if alphabet is None:
		alphabet = default_alphabet(word)
	perms = None if psi is None else psi.prefix(n)

	first = _orbit_extreme_once(word[:length], n, alphabet, greatest, reverse, perms)
	second = _orbit_extreme_once(word, n, alphabet, greatest, reverse, perms)
	if first != second:
		raise InstabilityError(length)
	return first


def scan_orbit_least(oracle: SequenceOracle, length: int, n: int) -> list:
	"""Least length-``n`` factor of the first ``length`` terms, certified by doubling.

	See :func:`scan_orbit_extreme`.
	"""
	return scan_orbit_extreme(oracle, length, n)
