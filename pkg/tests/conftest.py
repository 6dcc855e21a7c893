import os

import pytest

from seqdec.sequences import builtin_dfao, builtin_oracle, dfao_synthesize_from_oracle
from seqdec.orbit import complement_binary


DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'seqdec', 'data')


@pytest.fixture()
def tm():
	"""Thue-Morse sequence."""
	return builtin_dfao('thue-morse')


@pytest.fixture()
def period2():
	"""0101..."""
	return builtin_dfao('period2')


@pytest.fixture()
def tenten(period2):
	"""1010..."""
	return complement_binary(period2)


@pytest.fixture()
def one_at_zero():
	return builtin_dfao('one-at-zero')


@pytest.fixture()
def constant0():
	return builtin_dfao('constant-0')


@pytest.fixture()
def rudin_shapiro():
	return builtin_dfao('rudin-shapiro')


@pytest.fixture(scope='session')
def squarefree():
	"""DFAO for the ternary squarefree word counting 1s between 0s of Thue-Morse."""
	return dfao_synthesize_from_oracle(builtin_oracle('squarefree'), 2)


@pytest.fixture()
def data_path():
	"""Path of a shipped automaton file by name."""
	def path(name):
		return os.path.join(DATA_DIR, name + '.dfao')
	return path
