"""Command line interface.

Run ``seqdec --help`` for usage. Decisions are reported on stdout (as JSON with ``--json``);
the exit code only says whether a question was answered:

* 0: answered.
* 1: any other error raised by the package.
* 2: bad input (unreadable or malformed automaton file, invalid argument).
* 3: a construction exceeded ``--max-states``.
"""

from typing import Optional, Sequence, List, Dict, Any
import argparse
import json
import logging
import sys

from . import __version__
from .automata import Dfao, DEFAULT_MAX_STATES
from .errors import SeqdecError, ResourceLimitError, AutomatonFileError, ZeroStabilityError
from .fileio import load_dfao, save_dfao, format_letter
from .sequences import builtin_oracle, dfao_synthesize_from_oracle, BUILTIN_ORACLES
from . import deciders as dec
from .orbit import OrderSpec, orbit_extreme_dfao, cf_alternating_psi, theta, EXTREMES
from . import cf


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def format_word(letters: Sequence) -> str:
	"""Letters joined without separator if they are all single characters, else with spaces."""
	tokens = [format_letter(x) for x in letters]
	if all(len(t) == 1 for t in tokens):
		return ''.join(tokens)
	return ' '.join(tokens)


class Report:
	"""Output of a command, printed as text or JSON.

	Attributes
	----------
	data
		JSON-serializable contents.
	lines
		Text form.
	"""
	data: Dict[str, Any]
	lines: List[str]

	def __init__(self, data: Dict[str, Any], lines: Sequence[str]):
		self.data = data
		self.lines = list(lines)

	@classmethod
	def from_verdict(cls, verdict: dec.Verdict) -> 'Report':
		lines = [verdict.label]
		if verdict.witness is not None:
			lines.append('witness: ' + ' '.join(map(str, verdict.witness)))
		for name, value in verdict.stats.items():
			lines.append(f'{name}: {value}')
		return cls(verdict.to_json(), lines)

	def write(self, as_json: bool, file=None):
		if file is None:
			file = sys.stdout
		if as_json:
			json.dump(self.data, file)
			file.write('\n')
		else:
			for line in self.lines:
				print(line, file=file)


def _written(m: Dfao, path: str, stats: Optional[dict] = None) -> Report:
	data = {'output': path, 'states': m.num_states, 'stats': dict(stats or {})}
	return Report(data, [f'Wrote {m.num_states}-state automaton to {path}'])


def cmd_info(args) -> Report:
	m = load_dfao(args.file)
	data = {
		'base': m.base,
		'states': m.num_states,
		'initial': m.initial,
		'alphabet': [format_letter(x) for x in m.alphabet],
	}
	lines = [f'{key}: {value}' for key, value in data.items()]
	return Report(data, lines)


def cmd_eval(args) -> Report:
	m = load_dfao(args.file)
	letter = format_letter(m.eval(args.n))
	return Report({'n': args.n, 'value': letter}, [letter])


def cmd_prefix(args) -> Report:
	m = load_dfao(args.file)
	letters = m.prefix(args.n)
	return Report({'prefix': [format_letter(x) for x in letters]}, [format_word(letters)])


def cmd_decide_periodic(args) -> Report:
	m = load_dfao(args.file)
	return Report.from_verdict(dec.decide_ultimate_periodicity(m, max_states=args.max_states))


def cmd_decide_overlap(args) -> Report:
	m = load_dfao(args.file)
	return Report.from_verdict(dec.decide_overlap(m, fused=not args.compositional, max_states=args.max_states))


def cmd_decide_power(args) -> Report:
	m = load_dfao(args.file)
	e = dec.Exponent(args.num, args.den, args.plus)
	mode = dec.PowerMode(args.mode)
	verdict = dec.decide_power(m, e, mode, min_len=args.min_len, max_states=args.max_states)
	return Report.from_verdict(verdict)


def cmd_decide_palindrome(args) -> Report:
	m = load_dfao(args.file)
	mode = dec.PowerMode(args.mode)
	return Report.from_verdict(dec.decide_palindromes(m, args.min_len, mode, max_states=args.max_states))


def cmd_decide_mirror(args) -> Report:
	m = load_dfao(args.file)
	return Report.from_verdict(dec.decide_mirror(m, args.min_len, max_states=args.max_states))


def cmd_decide_sigma_square(args) -> Report:
	m = load_dfao(args.file)
	return Report.from_verdict(dec.decide_sigma_square(m, args.mod, max_states=args.max_states))


def cmd_decide_gamma(args) -> Report:
	m = load_dfao(args.file)
	return Report.from_verdict(dec.decide_gamma_membership(m, args.strict, max_states=args.max_states))


def _order_psi(m: Dfao, order: str) -> Optional[Dfao]:
	if order == 'plain':
		return None
	if order == 'cf':
		return cf_alternating_psi(m.base, m.alphabet)
	return load_dfao(order)


def cmd_orbit(args) -> Report:
	m = load_dfao(args.file)
	order = OrderSpec(args.extreme, args.reverse, _order_psi(m, args.order))
	result = orbit_extreme_dfao(m, order, max_states=args.max_states)
	save_dfao(result.dfao, args.output, comment=f'{args.extreme} sequence of the orbit closure of {args.file}')
	return _written(result.dfao, args.output, result.stats)


def cmd_theta(args) -> Report:
	m = load_dfao(args.file)
	result = theta(m, max_states=args.max_states)
	save_dfao(result, args.output)
	return _written(result, args.output)


def _cf_report(named: Dict[str, cf.AutomaticCF], terms: int, extra=None) -> Report:
	data = {}
	lines = []
	for name, x in named.items():
		quotients = x.quotients(terms)
		data[name] = {'quotients': quotients, 'states': x.dfao.num_states}
		lines.append(f'{name} = [{", ".join(map(str, quotients))}, ...] ({x.dfao.num_states} states)')
	for name, quotients in (extra or {}).items():
		data[name] = {'quotients': quotients}
		lines.append(f'{name} = [{", ".join(map(str, quotients))}, ...]')
	return Report(data, lines)


def cmd_cf_shift_limits(args) -> Report:
	x = cf.AutomaticCF(load_dfao(args.file))
	lo, hi = cf.cf_shift_limits(x, max_states=args.max_states)
	return _cf_report({'liminf': lo, 'limsup': hi}, args.terms)


def cmd_cf_galois(args) -> Report:
	x = cf.AutomaticCF(load_dfao(args.file))
	limits = cf.cf_galois_ratio_limits(x, max_states=args.max_states)
	extra = cf.zeta_annotations(limits.zeta.quotients(args.terms))
	return _cf_report(limits.as_dict(), args.terms, extra)


def cmd_cf_alpha(args) -> Report:
	x = cf.alpha_k_cf_dfao(args.base, validate_len=args.validate_len)
	save_dfao(x.dfao, args.output, comment=f'Continued fraction of sum(1 / {args.base}^(2^i))')
	return _written(x.dfao, args.output)


def cmd_synth(args) -> Report:
	oracle = builtin_oracle(args.builtin)
	m = dfao_synthesize_from_oracle(oracle, args.base, validate_len=args.validate_len)
	save_dfao(m, args.output, comment=f'{args.builtin}, synthesized in base {args.base}')
	return _written(m, args.output)


def _positive(s: str) -> int:
	value = int(s)
	if value < 1:
		raise argparse.ArgumentTypeError(f'expected a positive integer, got {s}')
	return value


def _natural(s: str) -> int:
	value = int(s)
	if value < 0:
		raise argparse.ArgumentTypeError(f'expected a non-negative integer, got {s}')
	return value


def make_parser() -> argparse.ArgumentParser:
	"""Create the argument parser."""
	parser = argparse.ArgumentParser(prog='seqdec', description='Decide properties of automatic sequences.')
	parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
	parser.add_argument('--json', action='store_true', help='Print the report as JSON.')
	parser.add_argument('-v', '--verbose', action='count', default=0, help='More logging (repeat for debug output).')
	parser.add_argument(
		'--max-states', type=_positive, default=DEFAULT_MAX_STATES, metavar='N',
		help='Maximum number of states of any intermediate automaton.',
	)
	sub = parser.add_subparsers(dest='command', metavar='COMMAND')
	sub.required = True

	p = sub.add_parser('info', help='Describe an automaton file.')
	p.add_argument('file')
	p.set_defaults(func=cmd_info)

	p = sub.add_parser('eval', help='Term n of the sequence.')
	p.add_argument('file')
	p.add_argument('n', type=_natural)
	p.set_defaults(func=cmd_eval)

	p = sub.add_parser('prefix', help='First n terms of the sequence.')
	p.add_argument('file')
	p.add_argument('n', type=_natural)
	p.set_defaults(func=cmd_prefix)

	decide = sub.add_parser('decide', help='Decide a property of the sequence.')
	dsub = decide.add_subparsers(dest='property', metavar='PROPERTY')
	dsub.required = True

	p = dsub.add_parser('periodic', help='Is the sequence ultimately periodic?')
	p.add_argument('file')
	p.set_defaults(func=cmd_decide_periodic)

	p = dsub.add_parser('overlap', help='Does the sequence avoid overlaps?')
	p.add_argument('file')
	p.add_argument('--compositional', action='store_true', help='Build from relations instead of one fused automaton.')
	p.set_defaults(func=cmd_decide_overlap)

	p = dsub.add_parser('power', help='Questions about p/q powers.')
	p.add_argument('file')
	p.add_argument('--num', type=_positive, required=True, metavar='P')
	p.add_argument('--den', type=_positive, default=1, metavar='Q')
	p.add_argument('--plus', action='store_true', help='Repetitions strictly longer than P/Q periods.')
	p.add_argument('--mode', choices=[m.value for m in dec.PowerMode], default=dec.PowerMode.EXISTS.value)
	p.add_argument('--min-len', type=_positive, default=1, metavar='L')
	p.set_defaults(func=cmd_decide_power)

	p = dsub.add_parser('palindrome', help='Does the sequence avoid long palindromes?')
	p.add_argument('file')
	p.add_argument('--min-len', type=_positive, default=1, metavar='L')
	p.add_argument(
		'--mode', choices=[dec.PowerMode.EXISTS.value, dec.PowerMode.EVENTUALLY_AVOIDS.value],
		default=dec.PowerMode.EXISTS.value,
	)
	p.set_defaults(func=cmd_decide_palindrome)

	p = dsub.add_parser('mirror', help='Is no factor of length at least L the reversal of a factor?')
	p.add_argument('file')
	p.add_argument('--min-len', type=_positive, required=True, metavar='L')
	p.set_defaults(func=cmd_decide_mirror)

	p = dsub.add_parser('sigma-square', help='Squares xx\' where x\' adds 1 mod J to each letter.')
	p.add_argument('file')
	p.add_argument('--mod', type=_positive, required=True, metavar='J')
	p.set_defaults(func=cmd_decide_sigma_square)

	p = dsub.add_parser('gamma', help='Is every shift at most the sequence and at least its complement?')
	p.add_argument('file')
	p.add_argument('--strict', action='store_true')
	p.set_defaults(func=cmd_decide_gamma)

	p = sub.add_parser('orbit', help='Extreme sequence of the orbit closure.')
	p.add_argument('file')
	p.add_argument('--extreme', choices=EXTREMES, default='least')
	p.add_argument('--reverse', action='store_true', help='Use the reverse orbit closure.')
	p.add_argument(
		'--order', default='plain', metavar='plain|cf|PSI_FILE',
		help='Letter order: plain, continued fraction, or a file of permutations.',
	)
	p.add_argument('-o', '--output', required=True, metavar='OUT')
	p.set_defaults(func=cmd_orbit)

	p = sub.add_parser('theta', help='Supremum of the shifts of a binary sequence and its complement.')
	p.add_argument('file')
	p.add_argument('-o', '--output', required=True, metavar='OUT')
	p.set_defaults(func=cmd_theta)

	cfp = sub.add_parser('cf', help='Continued fractions with automatic partial quotients.')
	csub = cfp.add_subparsers(dest='cf_command', metavar='CF_COMMAND')
	csub.required = True

	p = csub.add_parser('shift-limits', help='Liminf and limsup of the Gauss map orbit.')
	p.add_argument('file')
	p.add_argument('--terms', type=_positive, default=16)
	p.set_defaults(func=cmd_cf_shift_limits)

	p = csub.add_parser('galois', help='Limits of ratios of consecutive convergents.')
	p.add_argument('file')
	p.add_argument('--terms', type=_positive, default=16)
	p.set_defaults(func=cmd_cf_galois)

	p = csub.add_parser('alpha', help='Automaton for the expansion of sum(1 / M^(2^i)).')
	p.add_argument('--base', type=int, required=True, metavar='M')
	p.add_argument('--validate-len', type=_positive, default=1024)
	p.add_argument('-o', '--output', required=True, metavar='OUT')
	p.set_defaults(func=cmd_cf_alpha)

	p = sub.add_parser('synth', help='Synthesize an automaton for a builtin sequence.')
	p.add_argument('--builtin', choices=BUILTIN_ORACLES, required=True, metavar='NAME')
	p.add_argument('--base', type=int, default=2, metavar='K')
	p.add_argument('--validate-len', type=_positive, default=2 ** 12)
	p.add_argument('-o', '--output', required=True, metavar='OUT')
	p.set_defaults(func=cmd_synth)

	return parser


def _log_level(verbose: int) -> int:
	if verbose >= 2:
		return logging.DEBUG
	if verbose == 1:
		return logging.INFO
	return logging.WARNING


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
	"""Run the command line interface.

	Parameters
	----------
	argv
		Arguments, not including the program name. Defaults to ``sys.argv[1:]``.

	Returns
	-------
	int
		Exit code.
	"""
	args = make_parser().parse_args(argv)
	logging.basicConfig(level=_log_level(args.verbose), format='%(levelname)s %(name)s: %(message)s')

	try:
		report = args.func(args)
	except ResourceLimitError as e:
		print(f'seqdec: {e}', file=sys.stderr)
		return EXIT_RESOURCE
	except (AutomatonFileError, ZeroStabilityError, ValueError, OSError) as e:
		print(f'seqdec: {e}', file=sys.stderr)
		return EXIT_INPUT
	except SeqdecError as e:
		print(f'seqdec: {e}', file=sys.stderr)
		return EXIT_ERROR

	report.write(args.json)
	return EXIT_OK


def main():
	sys.exit(run_cli())
