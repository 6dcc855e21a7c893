"""Operations on NFAs and DFAs over multi-track alphabets.

All operations are pure: they return new automata and never modify their arguments.
"""

from collections import deque
from typing import Union, Sequence, Optional, List, Set, Dict, Tuple, Callable, Hashable
import logging

from ..errors import ResourceLimitError, AlphabetMismatchError
from .alphabet import MultiTrackAlphabet, Witness
from .fa import Nfa, Dfa


logger = logging.getLogger(__name__)


#: Default cap on the number of states materialized by a single construction.
DEFAULT_MAX_STATES = 10 ** 7


def _check_alphabets(a, b):
	if a.alphabet != b.alphabet:
		raise AlphabetMismatchError(a.alphabet, b.alphabet)


def universal(alphabet: MultiTrackAlphabet) -> Dfa:
	"""One-state DFA accepting every word."""
	return Dfa(alphabet, ((0,) * alphabet.size,), 0, frozenset((0,)))


def empty(alphabet: MultiTrackAlphabet) -> Dfa:
	"""One-state DFA accepting nothing."""
	return Dfa(alphabet, ((0,) * alphabet.size,), 0, frozenset())


def determinize(n: Nfa, *, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
	"""Subset construction.

	Only subsets reachable from the initial subset are materialized. The empty subset, if
	reachable, serves as the sink state.

	Parameters
	----------
	n
		Source automaton.
	max_states
		Raise :exc:`.ResourceLimitError` if more subsets than this are materialized.
	"""
	size = n.alphabet.size
	ndelta = n.delta
	start = frozenset(n.initials)
	index = {start: 0}
	subsets = [start]
	delta = []

	i = 0
	while i < len(subsets):
		current = subsets[i]
		rows = [ndelta[q] for q in current]
		row = []
		for s in range(size):
			if len(rows) == 1:
				target = rows[0][s]
			else:
				acc = set()
				for r in rows:
					acc |= r[s]
				target = frozenset(acc)
			j = index.get(target)
			if j is None:
				j = len(subsets)
				if j >= max_states:
					raise ResourceLimitError(max_states, j + 1, 'Subset construction')
				index[target] = j
				subsets.append(target)
			row.append(j)
		delta.append(tuple(row))
		i += 1

	nfinals = n.finals
	finals = frozenset(i for i, sub in enumerate(subsets) if not sub.isdisjoint(nfinals))
	logger.debug('Determinized %d-state NFA to %d states', n.num_states, len(subsets))
	return Dfa(n.alphabet, tuple(delta), 0, finals)


def complement(d: Dfa) -> Dfa:
	"""DFA for the complement language, obtained by swapping accepting and rejecting states."""
	finals = frozenset(range(d.num_states)) - d.finals
	return Dfa(d.alphabet, d.delta, d.initial, finals)


def _product(a: Dfa,
             b: Dfa,
             final: Callable[[bool, bool], bool],
             max_states: int,
             ) -> Dfa:
	_check_alphabets(a, b)
	size = a.alphabet.size
	adelta, bdelta = a.delta, b.delta
	start = (a.initial, b.initial)
	index = {start: 0}
	pairs = [start]
	delta = []

	i = 0
	while i < len(pairs):
		p, q = pairs[i]
		arow, brow = adelta[p], bdelta[q]
		row = []
		for s in range(size):
			target = (arow[s], brow[s])
			j = index.get(target)
			if j is None:
				j = len(pairs)
				if j >= max_states:
					raise ResourceLimitError(max_states, j + 1, 'Product construction')
				index[target] = j
				pairs.append(target)
			row.append(j)
		delta.append(tuple(row))
		i += 1

	afinals, bfinals = a.finals, b.finals
	finals = frozenset(i for i, (p, q) in enumerate(pairs) if final(p in afinals, q in bfinals))
	return Dfa(a.alphabet, tuple(delta), 0, finals)


def intersect(a: Dfa, b: Dfa, *, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
	"""Direct product accepting ``L(a) & L(b)``; only reachable pairs are built.

	Raises
	------
	.AlphabetMismatchError
		If the operands have different alphabets.
	"""
	return _product(a, b, lambda x, y: x and y, max_states)


def union(a: Dfa, b: Dfa, *, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
	"""Direct product accepting ``L(a) | L(b)``."""
	return _product(a, b, lambda x, y: x or y, max_states)


def equivalent(a: Dfa, b: Dfa) -> bool:
	"""Whether two DFAs accept the same language."""
	_check_alphabets(a, b)
	size = a.alphabet.size
	start = (a.initial, b.initial)
	seen = {start}
	queue = deque([start])

	while queue:
		p, q = queue.popleft()
		if (p in a.finals) != (q in b.finals):
			return False
		for s in range(size):
			nxt = (a.delta[p][s], b.delta[q][s])
			if nxt not in seen:
				seen.add(nxt)
				queue.append(nxt)

	return True


def _track_insertions(alphabet: MultiTrackAlphabet, track: int) -> Tuple[MultiTrackAlphabet, List[List[int]]]:
	"""For each symbol of the reduced alphabet, the symbols of ``alphabet`` it comes from."""
	reduced = MultiTrackAlphabet(alphabet.base, alphabet.arity - 1)
	table = []
	for s in range(reduced.size):
		digits = reduced.digits(s)
		table.append([
			alphabet.symbol(digits[:track] + (d,) + digits[track:])
			for d in range(alphabet.base)
		])
	return reduced, table


def project(n: Union[Nfa, Dfa], track: int) -> Nfa:
	"""Erase one track, existentially quantifying its digits.

	The result accepts ``w`` iff some assignment of digits to the erased track, of the same length
	as ``w``, is accepted by ``n``. Apply :func:`pad_closure` afterwards to allow the erased value
	to be longer than the remaining ones.

	Raises
	------
	ValueError
		If ``n`` has a single track.
	IndexError
		If ``track`` is out of range.
	"""
	m = n.alphabet.arity
	if m < 2:
		raise ValueError('Cannot project away the only track')
	if not 0 <= track < m:
		raise IndexError(f'Track {track} out of range for arity {m}')

	reduced, table = _track_insertions(n.alphabet, track)

	if isinstance(n, Dfa):
		delta = tuple(
			tuple(frozenset(row[o] for o in olds) for olds in table)
			for row in n.delta
		)
		initials = frozenset((n.initial,))
	else:
		delta = []
		for row in n.delta:
			newrow = []
			for olds in table:
				acc = set()
				for o in olds:
					acc |= row[o]
				newrow.append(frozenset(acc))
			delta.append(tuple(newrow))
		delta = tuple(delta)
		initials = n.initials

	return Nfa(reduced, delta, initials, n.finals)


def pad_closure(n: Nfa) -> Nfa:
	"""Accept ``w`` whenever ``w`` followed by some number of all-zero symbols is accepted.

	The final set is enlarged to every state from which a final state is reachable along
	all-zero symbols; transitions are unchanged.
	"""
	zero = n.alphabet.zero
	preds = [[] for _ in range(n.num_states)]
	for q, row in enumerate(n.delta):
		for r in row[zero]:
			preds[r].append(q)

	finals = set(n.finals)
	queue = deque(finals)
	while queue:
		r = queue.popleft()
		for q in preds[r]:
			if q not in finals:
				finals.add(q)
				queue.append(q)

	return Nfa(n.alphabet, n.delta, n.initials, frozenset(finals))


def canonical_filter(k: int, m: int) -> Dfa:
	"""DFA accepting the empty word and every word whose last symbol is not all-zero.

	These are exactly the canonical encodings of integer tuples.
	"""
	alphabet = MultiTrackAlphabet(k, m)
	nonzero = (0,) + (1,) * (alphabet.size - 1)
	# State 0: empty or last symbol nonzero. State 1: last symbol zero.
	row = tuple(0 if nz else 1 for nz in nonzero)
	return Dfa(alphabet, (row, row), 0, frozenset((0,)))


def embed(d: Dfa, positions: Sequence[int], arity: int) -> Dfa:
	"""Lift a DFA to a larger set of tracks.

	Track ``i`` of ``d`` is read from track ``positions[i]`` of the result; all other tracks are
	ignored. Used to align relations over different variables before intersecting them.
	"""
	positions = tuple(positions)
	if len(positions) != d.alphabet.arity:
		raise ValueError(f'Expected {d.alphabet.arity} positions, got {len(positions)}')
	if len(set(positions)) != len(positions):
		raise ValueError(f'Positions must be distinct: {positions}')
	for p in positions:
		if not 0 <= p < arity:
			raise IndexError(f'Position {p} out of range for arity {arity}')

	if positions == tuple(range(arity)):
		return d

	target = MultiTrackAlphabet(d.alphabet.base, arity)
	source = d.alphabet
	proj = [
		source.symbol(tuple(target.digits(s)[p] for p in positions))
		for s in range(target.size)
	]
	delta = tuple(tuple(row[o] for o in proj) for row in d.delta)
	return Dfa(target, delta, d.initial, d.finals)


def reachable(d: Dfa) -> List[int]:
	"""States reachable from the initial state, in breadth-first order (symbols ascending)."""
	order = [d.initial]
	seen = {d.initial}
	i = 0
	while i < len(order):
		for r in d.delta[order[i]]:
			if r not in seen:
				seen.add(r)
				order.append(r)
		i += 1
	return order


def refine_partition(delta: Sequence[Sequence[int]], labels: Sequence[Hashable]) -> List[int]:
	"""Coarsest partition of states compatible with ``labels`` and the transition function.

	Hopcroft's algorithm, seeded with the partition induced by ``labels``.

	Parameters
	----------
	delta
		Total transition function, ``delta[q][s]``.
	labels
		Initial label per state (finality for DFAs, output letter for DFAOs).

	Returns
	-------
	list[int]
		Block index for every state. Two states get the same index iff they are equivalent.
	"""
	n = len(delta)
	if n == 0:
		return []
	nsym = len(delta[0])

	inverse = [dict() for _ in range(nsym)]
	for q, row in enumerate(delta):
		for s, r in enumerate(row):
			preds = inverse[s].get(r)
			if preds is None:
				inverse[s][r] = [q]
			else:
				preds.append(q)

	groups = {}
	for q, label in enumerate(labels):
		groups.setdefault(label, []).append(q)
	blocks = [set(g) for g in groups.values()]
	block_of = [0] * n
	for i, block in enumerate(blocks):
		for q in block:
			block_of[q] = i

	worklist = set(range(len(blocks)))
	if len(blocks) > 1:
		worklist.discard(max(range(len(blocks)), key=lambda i: len(blocks[i])))

	while worklist:
		splitter = list(blocks[worklist.pop()])

		for s in range(nsym):
			inv = inverse[s]
			touched = {}
			for r in splitter:
				preds = inv.get(r)
				if preds:
					for q in preds:
						b = block_of[q]
						hit = touched.get(b)
						if hit is None:
							touched[b] = {q}
						else:
							hit.add(q)

			for b, hit in touched.items():
				block = blocks[b]
				if len(hit) == len(block):
					continue

				rest = block - hit
				if len(hit) <= len(rest):
					small, large = hit, rest
				else:
					small, large = rest, hit

				blocks[b] = large
				new = len(blocks)
				blocks.append(small)
				for q in small:
					block_of[q] = new

				# If b was pending both halves stay pending; otherwise the smaller half suffices.
				# Either way that means adding the new block.
				worklist.add(new)

	return block_of


def quotient(delta: Sequence[Sequence[int]], initial: int, block_of: Sequence[int]) -> Tuple[List[Tuple[int, ...]], List[int]]:
	"""Build the quotient transition table, numbering blocks in breadth-first order.

	Returns
	-------
	tuple
		``(delta, representatives)`` where ``representatives[i]`` is one original state in the
		``i``'th block.
	"""
	start = block_of[initial]
	number = {start: 0}
	reps = [initial]
	rows = []

	i = 0
	while i < len(reps):
		row = []
		for r in delta[reps[i]]:
			b = block_of[r]
			j = number.get(b)
			if j is None:
				j = len(reps)
				number[b] = j
				reps.append(r)
			row.append(j)
		rows.append(tuple(row))
		i += 1

	return rows, reps


def minimize_dfa(d: Dfa) -> Dfa:
	"""Minimal DFA for the same language.

	Unreachable states are dropped first. States of the result are numbered in breadth-first order
	from the initial state, so language-equivalent inputs give identical outputs.
	"""
	order = reachable(d)
	renum = {q: i for i, q in enumerate(order)}
	delta = [tuple(renum[r] for r in d.delta[q]) for q in order]
	finals = [q in d.finals for q in order]

	block_of = refine_partition(delta, finals)
	rows, reps = quotient(delta, 0, block_of)
	result = Dfa(d.alphabet, tuple(rows), 0, frozenset(i for i, q in enumerate(reps) if finals[q]))
	logger.debug('Minimized %d-state DFA to %d states', d.num_states, result.num_states)
	return result


def is_empty(d: Dfa) -> bool:
	"""Whether no accepting state is reachable."""
	if not d.finals:
		return True
	return d.finals.isdisjoint(reachable(d))


def _shortest_word(d: Dfa, start: int, targets) -> Optional[List[int]]:
	parent = {start: None}
	queue = deque([start])
	found = start if start in targets else None

	while queue and found is None:
		q = queue.popleft()
		for s, r in enumerate(d.delta[q]):
			if r not in parent:
				parent[r] = (q, s)
				if r in targets:
					found = r
					break
				queue.append(r)

	if found is None:
		return None

	word = []
	q = found
	while parent[q] is not None:
		q, s = parent[q]
		word.append(s)
	word.reverse()
	return word


def shortest_witness(d: Dfa) -> Optional[Witness]:
	"""Decode a shortest accepted word, or return None if the language is empty.

	Among the shortest accepted words the lexicographically least (by symbol number) is chosen.
	"""
	word = _shortest_word(d, d.initial, d.finals)
	if word is None:
		return None
	return Witness(d.alphabet.decode(word), tuple(word))


def trim_useful(d: Dfa) -> Set[int]:
	"""States that are reachable from the initial state and can reach an accepting state."""
	reach = set(reachable(d))
	preds = [[] for _ in range(d.num_states)]
	for q in reach:
		for r in d.delta[q]:
			preds[r].append(q)

	useful = set(f for f in d.finals if f in reach)
	queue = deque(useful)
	while queue:
		r = queue.popleft()
		for q in preds[r]:
			if q not in useful:
				useful.add(q)
				queue.append(q)

	return useful


def is_infinite(d: Dfa) -> bool:
	"""Whether ``L(d)`` is infinite: some useful state lies on a cycle of useful states.

	To ask whether infinitely many *integers* are represented, intersect with
	:func:`canonical_filter` first.
	"""
	useful = trim_useful(d)

	# Kahn's algorithm on the subgraph of useful states
	indeg = {q: 0 for q in useful}
	for q in useful:
		for r in d.delta[q]:
			if r in useful:
				indeg[r] += 1

	queue = deque(q for q, k in indeg.items() if k == 0)
	removed = 0
	while queue:
		q = queue.popleft()
		removed += 1
		for r in d.delta[q]:
			if r in useful:
				indeg[r] -= 1
				if indeg[r] == 0:
					queue.append(r)

	return removed < len(useful)


def finite_language(d: Dfa, *, limit: int = 100000) -> List[Witness]:
	"""Enumerate a finite language.

	Parameters
	----------
	d
		Automaton with a finite language (typically intersected with :func:`canonical_filter`).
	limit
		Maximum number of words to produce.

	Raises
	------
	ValueError
		If the language is infinite.
	.ResourceLimitError
		If more than ``limit`` words are accepted.
	"""
	if is_infinite(d):
		raise ValueError('Language is infinite')

	useful = trim_useful(d)
	out = []
	if d.initial not in useful:
		return out

	stack = [(d.initial, ())]
	while stack:
		q, word = stack.pop()
		if q in d.finals:
			if len(out) >= limit:
				raise ResourceLimitError(limit, len(out) + 1, 'Language enumeration')
			out.append(Witness(d.alphabet.decode(word), word))
		for s, r in enumerate(d.delta[q]):
			if r in useful:
				stack.append((r, word + (s,)))

	return out


def least_accepted(d: Dfa) -> Optional[int]:
	"""Least integer whose encoding is accepted by a one-track DFA, or None.

	Works on canonical encodings: finds the shortest accepting length, then fixes digits from the
	most significant down, always choosing the smallest digit that still allows acceptance.
	"""
	if d.alphabet.arity != 1:
		raise ValueError('least_accepted requires a one-track automaton')

	k = d.alphabet.base
	c = intersect(d, canonical_filter(k, 1))
	if is_empty(c):
		return None

	layers = [{c.initial}]
	while layers[-1].isdisjoint(c.finals):
		nxt = set()
		for q in layers[-1]:
			nxt.update(c.delta[q])
		layers.append(nxt)

	target = layers[-1] & c.finals
	msd_first = []
	for j in range(len(layers) - 2, -1, -1):
		for s in range(k):
			states = {q for q in layers[j] if c.delta[q][s] in target}
			if states:
				msd_first.append(s)
				target = states
				break

	value = 0
	for digit in msd_first:
		value = value * k + digit
	return value
