"""Multi-track digit alphabets and integer encodings.

Integers are written least significant digit first. A tuple of integers is encoded by writing
them on parallel tracks, padding the shorter ones with zeros. The tuple of all zeros is encoded
by the empty word.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Tuple, Sequence, List, Optional


def to_digits(n: int, k: int, length: Optional[int] = None) -> List[int]:
	"""Base-``k`` digits of ``n``, least significant first.

	Parameters
	----------
	n
		Non-negative integer.
	k
		Base, at least 2.
	length
		Pad with zeros to this length. Must not be shorter than the canonical representation.
	"""
	if n < 0:
		raise ValueError(f'Cannot encode negative integer {n}')

	digits = []
	while n:
		n, d = divmod(n, k)
		digits.append(d)

	if length is not None:
		if length < len(digits):
			raise ValueError(f'Length {length} too short for {len(digits)} digits')
		digits.extend([0] * (length - len(digits)))

	return digits


def from_digits(digits: Sequence[int], k: int) -> int:
	"""Inverse of :func:`to_digits`."""
	n = 0
	for d in reversed(digits):
		n = n * k + d
	return n


@dataclass(frozen=True)
class MultiTrackAlphabet:
	"""Alphabet whose symbols are ``arity``-tuples of base-``base`` digits.

	Symbols are represented by integers in ``range(size)``. Symbol ``s`` stands for the digit
	tuple ``digits(s)``; numbering follows tuple order, so the all-zero symbol is 0.

	Attributes
	----------
	base
		Digit base ``k >= 2``.
	arity
		Number of tracks ``m >= 1``.
	"""
	base: int
	arity: int
	_tuples: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

	def __post_init__(self):
		if self.base < 2:
			raise ValueError(f'Base must be at least 2, got {self.base}')
		if self.arity < 1:
			raise ValueError(f'Arity must be at least 1, got {self.arity}')
		tuples = tuple(product(range(self.base), repeat=self.arity))
		object.__setattr__(self, '_tuples', tuples)

	@property
	def size(self) -> int:
		"""Number of symbols, ``base ** arity``."""
		return len(self._tuples)

	@property
	def zero(self) -> int:
		"""The all-zero symbol."""
		return 0

	def digits(self, symbol: int) -> Tuple[int, ...]:
		"""Digit tuple of a symbol, one digit per track."""
		return self._tuples[symbol]

	def symbol(self, digits: Sequence[int]) -> int:
		"""Symbol for a tuple of digits."""
		if len(digits) != self.arity:
			raise ValueError(f'Expected {self.arity} digits, got {len(digits)}')
		s = 0
		for d in digits:
			if not 0 <= d < self.base:
				raise ValueError(f'Digit {d} out of range for base {self.base}')
			s = s * self.base + d
		return s

	def encode(self, values: Sequence[int], length: Optional[int] = None) -> List[int]:
		"""Encode a tuple of integers as a word over this alphabet.

		Parameters
		----------
		values
			One non-negative integer per track.
		length
			Pad the word with all-zero symbols to this length. Defaults to the canonical (shortest)
			encoding.
		"""
		if len(values) != self.arity:
			raise ValueError(f'Expected {self.arity} values, got {len(values)}')

		tracks = [to_digits(v, self.base) for v in values]
		n = max(map(len, tracks), default=0)
		if length is not None:
			if length < n:
				raise ValueError(f'Length {length} too short to encode {tuple(values)}')
			n = length

		for t in tracks:
			t.extend([0] * (n - len(t)))

		return [self.symbol(col) for col in zip(*tracks)] if n else []

	def decode(self, word: Sequence[int]) -> Tuple[int, ...]:
		"""Decode a word into one integer per track."""
		tracks = [[] for _ in range(self.arity)]
		for s in word:
			for t, d in zip(tracks, self._tuples[s]):
				t.append(d)
		return tuple(from_digits(t, self.base) for t in tracks)

	def __str__(self):
		return f'Sigma_{self.base}^{self.arity}'


@dataclass(frozen=True)
class Witness:
	"""Integer tuple decoded from an accepted word.

	Attributes
	----------
	values
		One integer per track.
	word
		The accepted word the values were decoded from.
	"""
	values: Tuple[int, ...]
	word: Tuple[int, ...] = ()

	def __iter__(self):
		return iter(self.values)

	def __getitem__(self, i):
		return self.values[i]

	def __len__(self):
		return len(self.values)
