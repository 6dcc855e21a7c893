"""Test seqdec.relation"""

import pytest

from seqdec.relation import Relation, compare, equals, at_least, sum_of, scaled, letters_at
from seqdec.arith import rel_compare


def test_and_aligns_by_name():
	r = compare(2, 'x', '<', 'y') & compare(2, 'y', '<', 'z')
	assert r.variables == ('x', 'y', 'z')
	for x in range(6):
		for y in range(6):
			for z in range(6):
				assert r.accepts(x=x, y=y, z=z) == (x < y < z)


def test_or_not():
	r = compare(3, 'x', '<', 'y') | compare(3, 'y', '<', 'x')
	neq = ~compare(3, 'x', '=', 'y')
	for x in range(10):
		for y in range(10):
			assert r.accepts(x=x, y=y) == (x != y)
			assert neq.accepts(x=x, y=y) == (x != y)


def test_exists():
	stats = {}
	r = sum_of(2, ('x', 'y'), 'z').exists('y', stats=stats)
	assert r.variables == ('x', 'z')
	for x in range(16):
		for z in range(16):
			assert r.accepts(x=x, z=z) == (x <= z)
	assert {'nfa_states', 'dfa_states', 'minimized_states', 'max_dfa_states'} <= set(stats)

	with pytest.raises(KeyError):
		r.exists('w')


def test_forall():
	r = compare(2, 'x', '<=', 'y').forall('y')
	assert r.variables == ('x',)
	assert [x for x in range(16) if r.accepts(x=x)] == [0]


def test_witness():
	assert equals(2, 'x', 5).witness() == {'x': 5}
	assert (equals(2, 'x', 5) & equals(2, 'x', 6)).witness() is None
	assert (equals(2, 'x', 5) & equals(2, 'x', 6)).is_empty()

	w = (compare(2, 'x', '<', 'y') & equals(2, 'y', 3)).witness()
	assert w['y'] == 3
	assert w['x'] < 3


def test_finiteness():
	assert compare(2, 'x', '<', 'y').is_infinite_in('x')

	below5 = compare(2, 'x', '<', 'y') & equals(2, 'y', 5)
	assert not below5.is_infinite_in('x')
	assert below5.values_of('x') == [0, 1, 2, 3, 4]
	assert below5.values_of('y') == [5]

	with pytest.raises(ValueError):
		compare(2, 'x', '<', 'y').values_of('y')


@pytest.mark.parametrize('value', [0, 1, 3, 8])
def test_at_least(value):
	r = at_least(2, 'n', value)
	assert r.variables == ('n',)
	assert [n for n in range(16) if r.accepts(n=n)] == list(range(value, 16))


def test_scaled():
	r = scaled(3, 'x', 2, 'y')
	for x in range(20):
		for y in range(40):
			assert r.accepts(x=x, y=y) == (y == 2 * x)


def test_rename_reorder_only():
	r = compare(2, 'x', '<', 'y')
	assert r.rename(x='a').variables == ('a', 'y')
	assert r.rename(x='a').accepts(a=1, y=2)

	s = r.reorder('y', 'x')
	assert s.variables == ('y', 'x')
	assert s.accepts(x=1, y=2)
	assert not s.accepts(x=2, y=1)
	assert r.reorder('x', 'y') is r

	t = sum_of(2, ('x', 'y'), 'z').only('z', 'x')
	assert t.variables == ('z', 'x')
	assert t.accepts(z=4, x=3)
	assert not t.accepts(z=3, x=4)

	with pytest.raises(KeyError):
		r.rename(w='v')
	with pytest.raises(ValueError):
		r.reorder('x')


def test_letters_at(tm):
	r = letters_at(('i',), [(tm, ('i',))], lambda a: a == 1)
	assert [i for i in range(16) if r.accepts(i=i)] == [i for i in range(16) if tm.eval(i) == 1]

	r = letters_at(('i', 'j'), [(tm, ('i', 'j')), (tm, ('i',))], lambda a, b: a == b)
	for i in range(16):
		for j in range(16):
			assert r.accepts(i=i, j=j) == (tm.eval(i + j) == tm.eval(i))


def test_invalid():
	with pytest.raises(ValueError):
		Relation.of(rel_compare(2, '<'), 'x')
	with pytest.raises(ValueError):
		Relation.of(rel_compare(2, '<'), 'x', 'x')
	with pytest.raises(ValueError):
		compare(2, 'x', '<', 'y') & compare(3, 'x', '<', 'y')
