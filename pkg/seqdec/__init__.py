"""Decision procedures for automatic sequences."""

__version__ = '0.1.0'


from .automata import Dfao, Dfa, Nfa, MultiTrackAlphabet
from .errors import SeqdecError
from .relation import Relation
from .sequences import builtin_dfao, builtin_oracle, dfao_synthesize_from_oracle, shift_dfao
from .deciders import Verdict, Exponent, PowerMode, decide_ultimate_periodicity, decide_overlap, \
	decide_power, decide_palindromes, decide_mirror, decide_sigma_square, decide_gamma_membership
from .orbit import OrderSpec, orbit_extreme_dfao, compare_sequences, theta
from .cf import AutomaticCF, cf_shift_limits, cf_galois_ratio_limits, alpha_k_cf_dfao
from .fileio import load_dfao, save_dfao, parse_dfao, serialize_dfao
