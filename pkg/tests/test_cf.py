"""Test seqdec.cf"""

from fractions import Fraction

import pytest
from pytest import param
from hypothesis import given, settings, strategies as st

from seqdec.automata import Dfao
from seqdec.cf import AutomaticCF, convergents, cf_value, cf_expand, cf_add_integer, zeta_annotations, \
	alpha_partial_sum, cf_rational_oracle, alpha_k_cf_dfao, cf_shift_limits, cf_galois_ratio_limits
from seqdec.errors import CertificationError
from seqdec.orbit import complement_binary, cf_alternating_psi
from seqdec.sequences import DfaoOracle, shift_dfao, scan_orbit_extreme


def alpha_k_prefix(k):
	return [0, k - 1, k + 2, k, k, k - 2, k, k + 2, k, k - 2, k + 2, k, k - 1]


def zeta_k_prefix(k):
	return [k + 2, k - 2, k, k + 2, k, k - 2, k, k]


def cf_order_key(quotients):
	"""Sort key for the continued fraction order: later quotients alternate direction."""
	return [-a if i % 2 else a for i, a in enumerate(quotients)]


class TestConvergents:

	@pytest.mark.parametrize('quotients, value', [
		param([0, 2, 5], Fraction(5, 11), id='small'),
		param([1, 1, 1, 1, 1], Fraction(8, 5), id='fibonacci'),
		param([3], Fraction(3), id='integer'),
	])
	def test_value(self, quotients, value):
		assert cf_value(quotients) == value

	def test_convergents(self):
		assert convergents([0, 2, 5]) == [(0, 1), (1, 2), (5, 11)]

	@pytest.mark.parametrize('quotients', [[], [-1], [1, 0], [1, 2, 0]])
	def test_invalid(self, quotients):
		with pytest.raises(ValueError):
			convergents(quotients)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 20), min_size=2, max_size=12))
def test_galois_identity(quotients):
	conv = convergents(quotients)
	for n in range(1, len(quotients)):
		p, q = conv[n]
		p_prev, q_prev = conv[n - 1]
		assert Fraction(p, p_prev) == cf_value(quotients[n::-1])
		assert Fraction(q, q_prev) == cf_value(quotients[n:0:-1])


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=0, max_value=1000))
def test_expand(x):
	quotients = cf_expand(x)
	assert cf_value(quotients) == x
	if len(quotients) > 1:
		assert quotients[-1] >= 2


def test_expand_examples():
	assert cf_expand(Fraction(0)) == [0]
	assert cf_expand(Fraction(1, 2)) == [0, 2]
	assert cf_expand(Fraction(5, 11)) == [0, 2, 5]


def test_add_integer():
	assert cf_add_integer([0, 2], 3) == [3, 2]
	assert zeta_annotations([5, 1, 3]) == {
		'recurrence_quotient': [7, 1, 3],
		'irrationality_measure': [6, 1, 3],
	}


class TestAlphaK:

	def test_partial_sum(self):
		assert alpha_partial_sum(3, 4) == Fraction(2998, 6561)
		assert alpha_partial_sum(2, 3) == Fraction(13, 16)
		assert cf_expand(alpha_partial_sum(2, 3)) == [0, 1, 4, 3]
		assert alpha_partial_sum(5, 1) == Fraction(1, 5)

		with pytest.raises(ValueError):
			alpha_partial_sum(1, 3)
		with pytest.raises(ValueError):
			alpha_partial_sum(3, 0)

	@pytest.mark.parametrize('k', [3, 4, 5])
	def test_oracle(self, k):
		assert cf_rational_oracle(k, 13) == alpha_k_prefix(k)

	def test_oracle_uncertified(self):
		assert cf_rational_oracle(3, 3) == [0, 2, 5]
		with pytest.raises(CertificationError):
			cf_rational_oracle(3, 100, max_truncation=5)
		with pytest.raises(ValueError):
			cf_rational_oracle(3, 0)

	@pytest.mark.slow
	@pytest.mark.parametrize('k', [3, 4])
	def test_synthesized(self, k):
		x = alpha_k_cf_dfao(k)
		assert x.base == 2
		assert x.quotients(13) == alpha_k_prefix(k)
		assert x.quotients(2048) == cf_rational_oracle(k, 2048)

		limits = cf_galois_ratio_limits(x)
		assert limits.zeta.quotients(8) == zeta_k_prefix(k)

	@pytest.mark.slow
	@pytest.mark.parametrize('k', [3, 4])
	def test_zeta_ratios(self, k):
		x = alpha_k_cf_dfao(k)
		zeta = cf_galois_ratio_limits(x).zeta.quotients(8)
		a = x.quotients(2 ** 12 + 1)
		assert min(a[1:]) >= 1

		# q_n / q_{n-1} = [a_n, ..., a_1]
		q = [qn for _, qn in convergents(a)]
		for n in [1, 2, 8, 100, 2 ** 12]:
			assert Fraction(q[n], q[n - 1]) == cf_value(a[n:0:-1])

		# The greatest window in continued fraction order starts the upper limit
		windows = [a[n:n - 8:-1] for n in range(8, len(a))]
		assert max(windows, key=cf_order_key) == zeta

		# so the largest ratio lies between the two extremes of that window
		top = max(Fraction(q[n], q[n - 1]) for n in range(8, len(a)))
		lo, hi = sorted([cf_value(zeta), cf_value(zeta[:7] + [zeta[7] + 1])])
		assert lo <= top <= hi

	def test_invalid(self):
		with pytest.raises(ValueError):
			alpha_k_cf_dfao(2)


class TestAutomaticCF:

	def test_valid(self, period2, one_at_zero):
		x = AutomaticCF(period2.relabel({0: 2, 1: 1}))
		assert x.quotients(4) == [2, 1, 2, 1]
		assert x.value(3) == Fraction(8, 3)

		# a_0 may be 0
		AutomaticCF(complement_binary(one_at_zero))

	@pytest.mark.parametrize('m', [
		param(Dfao.constant(0, 2), id='zero-tail'),
		param(Dfao.constant(-1, 2), id='negative'),
		param(Dfao.constant('a', 2), id='not-int'),
	])
	def test_invalid(self, m):
		with pytest.raises(ValueError):
			AutomaticCF(m)

	def test_one_at_zero(self, one_at_zero):
		with pytest.raises(ValueError):
			AutomaticCF(one_at_zero)


class TestLimits:

	def test_constant(self):
		x = AutomaticCF(Dfao.constant(3, 2))
		liminf, limsup = cf_shift_limits(x)
		assert liminf.quotients(8) == [3] * 8
		assert limsup.quotients(8) == [3] * 8

	def test_period2(self, period2):
		x = AutomaticCF(period2.relabel({0: 2, 1: 1}))
		liminf, limsup = cf_shift_limits(x)
		assert liminf.quotients(6) == [1, 2] * 3
		assert limsup.quotients(6) == [2, 1] * 3

		limits = cf_galois_ratio_limits(x)
		assert limits.beta.quotients(6) == [1, 2] * 3
		assert limits.gamma.quotients(6) == [1, 2] * 3
		assert limits.delta.quotients(6) == [2, 1] * 3
		assert limits.zeta.quotients(6) == [2, 1] * 3

	@pytest.mark.parametrize('value', [1, 2])
	def test_galois_constant(self, value):
		limits = cf_galois_ratio_limits(AutomaticCF(Dfao.constant(value, 2)))
		assert set(limits.as_dict()) == {'beta', 'gamma', 'delta', 'zeta'}
		for x in limits.as_dict().values():
			assert x.quotients(8) == [value] * 8

	def test_galois_leading_zero(self, one_at_zero):
		# [0, 1, 1, 1, ...]
		x = AutomaticCF(complement_binary(one_at_zero))
		limits = cf_galois_ratio_limits(x)
		for y in limits.as_dict().values():
			assert y.quotients(8) == [1] * 8

	def test_thue_morse_plus_one(self, tm):
		# 1 + t_n = [1, 2, 2, 1, 2, 1, 1, 2, ...]
		x = AutomaticCF(tm.relabel({0: 1, 1: 2}))
		liminf, limsup = cf_shift_limits(x)
		assert liminf.quotients(6) == [1, 2, 1, 2, 2, 1]
		assert limsup.quotients(6) == [2, 1, 2, 1, 1, 2]

		tail = DfaoOracle(shift_dfao(x.dfao, 1))
		psi = cf_alternating_psi(2, x.dfao.alphabet)
		for y, greatest in [(liminf, False), (limsup, True)]:
			assert y.quotients(32) == scan_orbit_extreme(tail, 2 ** 12, 32, greatest=greatest, psi=psi)
			assert min(y.quotients(2 ** 12)) >= 1
