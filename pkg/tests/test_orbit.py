"""Test seqdec.orbit"""

import pytest
from pytest import param

from seqdec.automata import Dfao
from seqdec.arith import Flag
from seqdec.orbit import OrderSpec, orbit_extreme_dfao, identity_psi, reversal_psi, parity_dfao, \
	cf_alternating_psi, complement_binary, compare_sequences, theta
from seqdec.sequences import DfaoOracle, scan_orbit_extreme


TM_LEAST = [0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1]


def as_bits(s):
	return [int(c) for c in s]


def as_string(word):
	return ''.join(map(str, word))


class TestOrbitExtreme:

	def test_thue_morse_least(self, tm):
		result = orbit_extreme_dfao(tm)
		assert result.dfao.prefix(2 ** 15)[:15] == TM_LEAST
		assert result.dfao.alphabet == tm.alphabet
		assert {'M2', 'M3', 'M4', 'M6', 'M7'} <= set(result.stats)
		assert result.stats['M7'] == result.dfao.num_states

	@pytest.mark.slow
	def test_thue_morse_least_long(self, tm):
		least = orbit_extreme_dfao(tm).dfao
		assert least.prefix(2 ** 12) == scan_orbit_extreme(DfaoOracle(tm), 2 ** 16, 2 ** 12)

	def test_thue_morse_greatest(self, tm):
		result = orbit_extreme_dfao(tm, OrderSpec('greatest'))
		assert result.dfao.prefix(15) == [1 - x for x in TM_LEAST]

	def test_constant(self, constant0):
		result = orbit_extreme_dfao(constant0)
		assert result.dfao.prefix(16) == [0] * 16
		assert result.dfao.num_states == 1

	def test_period2(self, period2):
		assert orbit_extreme_dfao(period2).dfao.prefix(8) == [0, 1] * 4
		assert orbit_extreme_dfao(period2, OrderSpec('greatest')).dfao.prefix(8) == [1, 0] * 4

	@pytest.mark.parametrize('reverse', [param(False, id='forward'), param(True, id='reverse')])
	def test_reversal_duality(self, tm, rudin_shapiro, reverse):
		for m in [tm, rudin_shapiro]:
			twisted = orbit_extreme_dfao(m, OrderSpec('least', reverse, reversal_psi(2, m.alphabet)))
			greatest = orbit_extreme_dfao(m, OrderSpec('greatest', reverse))
			assert twisted.dfao.prefix(64) == greatest.dfao.prefix(64)

			ident = orbit_extreme_dfao(m, OrderSpec('least', reverse, identity_psi(2, m.alphabet)))
			least = orbit_extreme_dfao(m, OrderSpec('least', reverse))
			assert ident.dfao.prefix(64) == least.dfao.prefix(64)

	@pytest.mark.parametrize('extreme', ['least', 'greatest'])
	def test_reverse(self, tm, period2, extreme):
		for m in [tm, period2]:
			result = orbit_extreme_dfao(m, OrderSpec(extreme, reverse=True))
			expected = scan_orbit_extreme(DfaoOracle(m), 4096, 64, greatest=extreme == 'greatest', reverse=True)
			assert result.dfao.prefix(64) == expected

	@pytest.mark.slow
	def test_cf_order(self, tm):
		shifted = tm.relabel({0: 1, 1: 2})
		psi = cf_alternating_psi(2, shifted.alphabet)
		for extreme in ['least', 'greatest']:
			for reverse in [False, True]:
				result = orbit_extreme_dfao(shifted, OrderSpec(extreme, reverse, psi))
				expected = scan_orbit_extreme(
					DfaoOracle(shifted), 4096, 64,
					greatest=extreme == 'greatest', reverse=reverse, psi=psi,
				)
				assert result.dfao.prefix(64) == expected

	@pytest.mark.slow
	def test_rudin_shapiro(self, rudin_shapiro):
		least = orbit_extreme_dfao(rudin_shapiro).dfao
		assert least.prefix(2 ** 12) == [0] + rudin_shapiro.prefix(2 ** 12 - 1)

	@pytest.mark.parametrize('name', [
		'tm',
		'period2',
		param('rudin_shapiro', marks=pytest.mark.slow),
		param('squarefree', marks=pytest.mark.slow),
	])
	def test_prefix_agreement(self, request, name):
		m = request.getfixturevalue(name)
		least = orbit_extreme_dfao(m).dfao
		assert least.prefix(512) == scan_orbit_extreme(DfaoOracle(m), 2 ** 15, 512)

	@pytest.mark.parametrize('name', [
		'tm',
		'period2',
		param('rudin_shapiro', marks=pytest.mark.slow),
		param('squarefree', marks=pytest.mark.slow),
	])
	def test_membership_minimality(self, request, name):
		m = request.getfixturevalue(name)
		least = as_string(orbit_extreme_dfao(m).dfao.prefix(512))

		# Every prefix is a factor, so it is enough to check the longest
		assert least in as_string(m.prefix(2 ** 16))

		source = as_string(m.prefix(2 ** 14))
		for n in range(1, 13):
			assert min(source[i:i + n] for i in range(len(source) - n + 1)) >= least[:n]

	def test_invalid(self, tm):
		with pytest.raises(ValueError):
			OrderSpec('middle')
		with pytest.raises(ValueError):
			orbit_extreme_dfao(tm, OrderSpec(psi=identity_psi(3, tm.alphabet)))

		bad = Dfao.constant((0, 0), 2, alphabet=((0, 0),))
		with pytest.raises(ValueError):
			orbit_extreme_dfao(tm, OrderSpec(psi=bad))


def test_parity_dfao():
	for base in [2, 3, 4, 5]:
		assert parity_dfao(base).prefix(50) == [n % 2 for n in range(50)]


def test_cf_alternating_psi():
	psi = cf_alternating_psi(3, (1, 2, 3))
	assert psi.prefix(4) == [(1, 2, 3), (3, 2, 1), (1, 2, 3), (3, 2, 1)]


def test_complement_binary(tm):
	assert complement_binary(tm).prefix(4) == [1, 0, 0, 1]
	with pytest.raises(ValueError):
		complement_binary(Dfao.constant(2, 2))


class TestCompareSequences:

	def test_plain(self, tm, constant0):
		assert compare_sequences(tm, tm) == (Flag.EQ, None)
		assert compare_sequences(tm, complement_binary(tm)) == (Flag.LT, 0)
		assert compare_sequences(tm, constant0) == (Flag.GT, 1)

	def test_twisted(self, tm):
		psi = reversal_psi(2, tm.alphabet)
		assert compare_sequences(tm, complement_binary(tm), psi) == (Flag.GT, 0)

	def test_invalid(self, tm):
		with pytest.raises(ValueError):
			compare_sequences(tm, Dfao.constant(0, 3))
		with pytest.raises(ValueError):
			compare_sequences(tm, Dfao.constant(2, 2))


class TestTheta:

	@pytest.mark.parametrize('name, expected', [
		param('constant0', '1' * 15, id='constant'),
		param('tm', '110100110010110', id='thue-morse'),
		param('tenten', '101010101010101', id='tenten'),
		param('period2', '101010101010101', id='period2'),
	])
	def test_theta(self, request, name, expected):
		assert theta(request.getfixturevalue(name)).prefix(15) == as_bits(expected)

	def test_constant_exact(self, constant0):
		assert theta(constant0).prefix(2 ** 10) == [1] * 2 ** 10

	def test_invalid(self):
		with pytest.raises(ValueError):
			theta(Dfao.constant(2, 2))
