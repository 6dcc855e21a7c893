"""Exception classes raised by the package."""

from typing import Any, Optional


class SeqdecError(Exception):
	"""Base class for all errors raised by this package."""


class ResourceLimitError(SeqdecError):
	"""A construction materialized more states than allowed.

	Attributes
	----------
	limit
		The configured state cap.
	count
		Number of states at the point the cap was hit.
	what
		Short description of the construction that was running.
	"""
	limit: int
	count: int
	what: str

	def __init__(self, limit: int, count: int, what: str = 'construction'):
		super().__init__(f'{what} exceeded state limit of {limit} ({count} states)')
		self.limit = limit
		self.count = count
		self.what = what


class AlphabetMismatchError(SeqdecError, ValueError):
	"""Operands of a binary automaton operation have different input alphabets.

	Attributes
	----------
	left
		Alphabet of the first operand.
	right
		Alphabet of the second operand.
	"""

	def __init__(self, left, right):
		super().__init__(f'Alphabet mismatch: {left} vs {right}')
		self.left = left
		self.right = right


class ZeroStabilityError(SeqdecError, ValueError):
	"""A DFAO changes its output on reading a trailing zero digit.

	Attributes
	----------
	state
		The offending state.
	letter
		Output of ``state``.
	zero_letter
		Output of the state reached from ``state`` on digit 0.
	"""
	state: int
	letter: Any
	zero_letter: Any

	def __init__(self, state: int, letter, zero_letter):
		super().__init__(
			f'State {state} is not zero-stable: outputs {letter!r} but its 0-successor outputs '
			f'{zero_letter!r}'
		)
		self.state = state
		self.letter = letter
		self.zero_letter = zero_letter


class UnknownLetterError(SeqdecError, ValueError):
	"""A letter is not part of an automaton's output alphabet."""

	def __init__(self, letter, alphabet=None):
		msg = f'Letter {letter!r} is not in the output alphabet'
		if alphabet is not None:
			msg += f' {tuple(alphabet)!r}'
		super().__init__(msg)
		self.letter = letter


class NotProlongableError(SeqdecError, ValueError):
	"""A morphism is not prolongable on the requested letter."""

	def __init__(self, letter):
		super().__init__(f'Morphism is not prolongable on {letter!r}')
		self.letter = letter


class SynthesisError(SeqdecError):
	"""Building a DFAO from a sequence oracle failed.

	Attributes
	----------
	index
		Smallest index on which the synthesized automaton disagreed with the oracle, if the
		failure was a validation mismatch.
	"""
	index: Optional[int]

	def __init__(self, message: str, index: Optional[int] = None):
		super().__init__(message)
		self.index = index


class InstabilityError(SeqdecError):
	"""A brute-force oracle's answer changed when its prefix length was doubled.

	Attributes
	----------
	length
		Prefix length that could not be certified.
	"""

	def __init__(self, length: int):
		super().__init__(f'Result on a prefix of length {length} is not stable under doubling')
		self.length = length


class CertificationError(SeqdecError):
	"""Not enough continued fraction quotients could be certified.

	Attributes
	----------
	requested
		Number of quotients asked for.
	certified
		Number of quotients that could be certified.
	"""

	def __init__(self, requested: int, certified: int):
		super().__init__(f'Requested {requested} quotients but only {certified} could be certified')
		self.requested = requested
		self.certified = certified


class WitnessError(SeqdecError):
	"""A witness produced by a decision procedure failed re-verification.

	This indicates a bug, not a property of the input.

	Attributes
	----------
	witness
		The integer tuple that failed.
	reason
		Description of the failed check.
	"""

	def __init__(self, witness, reason: str):
		super().__init__(f'Witness {witness!r} failed verification: {reason}')
		self.witness = witness
		self.reason = reason


class AutomatonFileError(SeqdecError, ValueError):
	"""Error reading an automaton file.

	Attributes
	----------
	message
		Description of the problem.
	lineno
		1-based line number, if known.
	"""
	message: str
	lineno: Optional[int]

	def __init__(self, message: str, lineno: Optional[int] = None):
		if lineno is not None:
			full = f'line {lineno}: {message}'
		else:
			full = message
		super().__init__(full)
		self.message = message
		self.lineno = lineno


class ConsistencyError(SeqdecError):
	"""An internal consistency check on a constructed automaton failed.

	This indicates a bug or an invalid input automaton, never a valid answer.
	"""
