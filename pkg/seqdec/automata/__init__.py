"""Automata over multi-track digit alphabets and automata with output."""

from .alphabet import MultiTrackAlphabet, Witness, to_digits, from_digits
from .fa import Nfa, Dfa
from .ops import determinize, complement, intersect, union, equivalent, project, pad_closure, \
	canonical_filter, embed, minimize_dfa, is_empty, shortest_witness, is_infinite, trim_useful, \
	finite_language, least_accepted, universal, empty, reachable, DEFAULT_MAX_STATES
from .dfao import Dfao, minimize_dfao, combine_letter_dfas, default_alphabet
