"""Relations on named integer variables, backed by multi-track DFAs.

A :class:`Relation` attaches a variable name to each track of a padding-invariant DFA, so that
first-order formulas over automatic sequences can be written with ``&``, ``|``, ``~``,
:meth:`Relation.exists` and :meth:`Relation.forall`. Tracks of operands are aligned by name.
"""

from dataclasses import dataclass, field
from typing import Tuple, Optional, Dict, Sequence, List
import logging

from .automata import Dfa, MultiTrackAlphabet, intersect, union, complement, project, pad_closure, \
	determinize, minimize_dfa, embed, is_empty, shortest_witness, is_infinite, canonical_filter, \
	finite_language, universal, DEFAULT_MAX_STATES
from . import arith


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Relation:
	"""A padding-invariant relation on named natural-number variables.

	Attributes
	----------
	dfa
		Automaton reading one track per variable.
	variables
		Variable name of each track.
	max_states
		State cap applied to constructions derived from this relation.
	"""
	dfa: Dfa
	variables: Tuple[str, ...]
	max_states: int = field(default=DEFAULT_MAX_STATES, compare=False)

	def __post_init__(self):
		if len(self.variables) != self.dfa.alphabet.arity:
			raise ValueError(
				f'{len(self.variables)} variable names for an automaton with {self.dfa.alphabet.arity} tracks'
			)
		if len(set(self.variables)) != len(self.variables):
			raise ValueError(f'Repeated variable names: {self.variables}')

	@classmethod
	def of(cls, dfa: Dfa, *variables: str, max_states: int = DEFAULT_MAX_STATES) -> 'Relation':
		"""Name the tracks of a DFA, in order."""
		return cls(dfa, tuple(variables), max_states)

	@property
	def base(self) -> int:
		return self.dfa.alphabet.base

	@property
	def num_states(self) -> int:
		return self.dfa.num_states

	def _derive(self, dfa: Dfa, variables, other: 'Relation' = None) -> 'Relation':
		cap = self.max_states if other is None else min(self.max_states, other.max_states)
		return Relation(dfa, tuple(variables), cap)

	def _align(self, other: 'Relation') -> Tuple[Dfa, Dfa, Tuple[str, ...]]:
		if self.base != other.base:
			raise ValueError(f'Cannot combine relations over bases {self.base} and {other.base}')
		names = self.variables + tuple(v for v in other.variables if v not in self.variables)
		pos = {v: i for i, v in enumerate(names)}
		a = embed(self.dfa, [pos[v] for v in self.variables], len(names))
		b = embed(other.dfa, [pos[v] for v in other.variables], len(names))
		return a, b, names

	def __and__(self, other: 'Relation') -> 'Relation':
		a, b, names = self._align(other)
		cap = min(self.max_states, other.max_states)
		return self._derive(minimize_dfa(intersect(a, b, max_states=cap)), names, other)

	def __or__(self, other: 'Relation') -> 'Relation':
		a, b, names = self._align(other)
		cap = min(self.max_states, other.max_states)
		return self._derive(minimize_dfa(union(a, b, max_states=cap)), names, other)

	def __invert__(self) -> 'Relation':
		return self._derive(complement(self.dfa), self.variables)

	def exists(self, *names: str, stats: Optional[Dict[str, int]] = None) -> 'Relation':
		"""Existentially quantify variables.

		Each variable is eliminated by projection, padding closure, determinization and
		minimization. At least one variable must remain.

		Parameters
		----------
		names
			Variables to eliminate.
		stats
			If given, updated with the state counts of the last elimination (``nfa_states``,
			``dfa_states``, ``minimized_states``) and the largest determinized size seen
			(``max_dfa_states``).
		"""
		rel = self
		for name in names:
			if name not in rel.variables:
				raise KeyError(f'No variable named {name!r} in {rel.variables}')
			track = rel.variables.index(name)
			nfa = pad_closure(project(rel.dfa, track))
			dfa = determinize(nfa, max_states=self.max_states)
			mini = minimize_dfa(dfa)
			logger.debug('Eliminated %s: %d -> %d -> %d states', name, nfa.num_states, dfa.num_states, mini.num_states)

			if stats is not None:
				stats['nfa_states'] = nfa.num_states
				stats['dfa_states'] = dfa.num_states
				stats['minimized_states'] = mini.num_states
				stats['max_dfa_states'] = max(stats.get('max_dfa_states', 0), dfa.num_states)

			rel = rel._derive(mini, rel.variables[:track] + rel.variables[track + 1:])
		return rel

	def forall(self, *names: str) -> 'Relation':
		"""Universally quantify variables."""
		return ~((~self).exists(*names))

	def rename(self, **mapping: str) -> 'Relation':
		"""Rename variables, ``old=new``."""
		for old in mapping:
			if old not in self.variables:
				raise KeyError(f'No variable named {old!r} in {self.variables}')
		return self._derive(self.dfa, [mapping.get(v, v) for v in self.variables])

	def reorder(self, *names: str) -> 'Relation':
		"""Same relation with tracks in the given variable order."""
		if sorted(names) != sorted(self.variables):
			raise ValueError(f'{names} is not a permutation of {self.variables}')
		if tuple(names) == self.variables:
			return self
		pos = {v: i for i, v in enumerate(names)}
		dfa = embed(self.dfa, [pos[v] for v in self.variables], len(names))
		return self._derive(dfa, names)

	def only(self, *names: str, stats: Optional[Dict[str, int]] = None) -> 'Relation':
		"""Existentially quantify every variable not listed, and order the rest as listed."""
		drop = [v for v in self.variables if v not in names]
		return self.exists(*drop, stats=stats).reorder(*names)

	def accepts(self, **values: int) -> bool:
		"""Whether the relation holds for an assignment of all variables."""
		return self.dfa.accepts_values(*(values[v] for v in self.variables))

	def is_empty(self) -> bool:
		return is_empty(self.dfa)

	def witness(self) -> Optional[Dict[str, int]]:
		"""An assignment satisfying the relation with a shortest encoding, or None."""
		w = shortest_witness(self.dfa)
		if w is None:
			return None
		return dict(zip(self.variables, w.values))

	def _canonical(self, name: str) -> Dfa:
		rel = self.only(name)
		return intersect(rel.dfa, canonical_filter(self.base, 1), max_states=self.max_states)

	def is_infinite_in(self, name: str) -> bool:
		"""Whether infinitely many values of ``name`` occur in the relation."""
		return is_infinite(self._canonical(name))

	def values_of(self, name: str, *, limit: int = 100000) -> List[int]:
		"""All values of ``name`` occurring in the relation, sorted.

		Raises
		------
		ValueError
			If there are infinitely many.
		"""
		return sorted(w.values[0] for w in finite_language(self._canonical(name), limit=limit))

	def __repr__(self):
		return f'<Relation ({", ".join(self.variables)}) {self.num_states} states>'


def compare(k: int, x: str, op: str, y: str, **kw) -> Relation:
	"""The relation ``x op y``."""
	return Relation.of(arith.rel_compare(k, op), x, y, **kw)


def equals(k: int, name: str, value: int, **kw) -> Relation:
	"""The relation ``name = value``."""
	return Relation.of(arith.rel_const(k, value), name, **kw)


def at_least(k: int, name: str, value: int, **kw) -> Relation:
	"""The relation ``name >= value``."""
	if value <= 0:
		return Relation.of(universal(MultiTrackAlphabet(k, 1)), name, **kw)
	if value == 1:
		return ~equals(k, name, 0, **kw)
	bound = '_' + name + '_min'
	return (compare(k, name, '>=', bound, **kw) & equals(k, bound, value, **kw)).exists(bound)


def sum_of(k: int, terms: Sequence[str], total: str, constant: int = 0, **kw) -> Relation:
	"""The relation ``terms[0] + ... + constant = total``."""
	return Relation.of(arith.rel_sum(k, len(terms), constant), *terms, total, **kw)


def scaled(k: int, x: str, c: int, y: str, **kw) -> Relation:
	"""The relation ``y = c * x``."""
	return Relation.of(arith.rel_scale(k, c), x, y, **kw)


def letters_at(variables: Sequence[str],
               indices: Sequence[Tuple[object, Sequence[str]]],
               predicate,
               **kw,
               ) -> Relation:
	"""Relation on ``variables`` constraining sequence letters at sums of variables.

	Parameters
	----------
	variables
		Track names, in order.
	indices
		``(dfao, names)`` pairs. Each names the variables whose sum indexes into ``dfao``.
	predicate
		Called with one letter per index.

	See Also
	--------
	seqdec.arith.rel_letters_at
	"""
	variables = tuple(variables)
	pos = {v: i for i, v in enumerate(variables)}
	tracks = [(m, tuple(pos[v] for v in names)) for m, names in indices]
	max_states = kw.get('max_states', DEFAULT_MAX_STATES)
	dfa = arith.rel_letters_at(len(variables), tracks, predicate, max_states=max_states)
	return Relation(dfa, variables, max_states)
