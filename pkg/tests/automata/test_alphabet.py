"""Test seqdec.automata.alphabet"""

import pytest
from hypothesis import given, strategies as st

from seqdec.automata import MultiTrackAlphabet, Witness, to_digits, from_digits


def test_to_digits():
	assert to_digits(6, 2) == [0, 1, 1]
	assert to_digits(0, 3) == []
	assert to_digits(5, 2, length=4) == [1, 0, 1, 0]
	assert to_digits(10, 10) == [0, 1]

	with pytest.raises(ValueError):
		to_digits(-1, 2)
	with pytest.raises(ValueError):
		to_digits(8, 2, length=2)


@given(st.integers(0, 10 ** 6), st.integers(2, 10))
def test_from_digits(n, k):
	assert from_digits(to_digits(n, k), k) == n
	assert from_digits(to_digits(n, k) + [0, 0], k) == n


class TestMultiTrackAlphabet:

	def test_symbols(self):
		a = MultiTrackAlphabet(2, 2)
		assert a.size == 4
		assert a.zero == 0
		assert [a.digits(s) for s in range(4)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
		assert a.symbol((1, 1)) == 3

		b = MultiTrackAlphabet(3, 1)
		assert b.size == 3
		assert b.digits(2) == (2,)

	def test_invalid(self):
		with pytest.raises(ValueError):
			MultiTrackAlphabet(1, 1)
		with pytest.raises(ValueError):
			MultiTrackAlphabet(2, 0)

		a = MultiTrackAlphabet(2, 2)
		with pytest.raises(ValueError):
			a.symbol((2, 0))
		with pytest.raises(ValueError):
			a.symbol((0,))
		with pytest.raises(ValueError):
			a.encode((1,))

	def test_encode(self):
		a = MultiTrackAlphabet(2, 2)
		assert a.encode((1, 2)) == [2, 1]
		assert a.encode((0, 0)) == []
		assert a.encode((1, 0), length=3) == [2, 0, 0]
		assert a.decode([2, 1]) == (1, 2)
		assert a.decode([2, 1, 0, 0]) == (1, 2)

		with pytest.raises(ValueError):
			a.encode((4, 0), length=2)

	@given(st.integers(0, 1000), st.integers(0, 1000), st.integers(0, 3))
	def test_padding(self, x, y, extra):
		a = MultiTrackAlphabet(3, 2)
		word = a.encode((x, y))
		assert a.encode((x, y), length=len(word) + extra) == word + [0] * extra
		if word:
			assert word[-1] != a.zero


def test_witness():
	w = Witness((1, 2), (2, 1))
	assert tuple(w) == (1, 2)
	assert w[1] == 2
	assert len(w) == 2
	x, y = w
	assert (x, y) == (1, 2)
