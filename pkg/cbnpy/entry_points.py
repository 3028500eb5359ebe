"""
cbnpy.entry_points.py
~~~~~~~~~~~~~~~~~~~~~

This module contains the entry-point function of the cbn command, that is referenced in setup.py.
States on the command line are bitstrings with vertex 0 first, the same order necklaces are written in.

"""
# ---- imports
# --- standard imports
import argparse
import json
import logging
import sys
from functools import partial
# --- third party imports
from typing import List, Optional
# --- local imports
from cbnpy.__version__ import __version__
from cbnpy.main import GraphError, PreconditionError, tprint, state_to_bits, as_state
from cbnpy.digraph import Digraph, read_edge_list, format_edge_list, is_strongly_connected
from cbnpy.decomposition import irreducible_components, classify
from cbnpy.dynamics import find_orbit, trajectory
from cbnpy.necklace import count_orbits_by_period, count_by_density
from cbnpy.stability import orbit_to_necklace, perturb, transition_weights, export_structure, orbit_census, \
    validations as validations_stability
from cbnpy.oracle import validate
from cbnpy.graphgen import GenSpec, validations as validations_graphgen

# ---- variables
logger = logging.getLogger('cbnpy.entry_points')
# --- exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_VALIDATION = 3


# ---- classes
class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, the cbn command reserves 2 for precondition errors

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---- functions
def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith('\n') else text + '\n')


def _write_json(obj) -> None:
    _write(json.dumps(obj, indent=2))


def _require_strongly_connected(D: Digraph) -> None:
    if not is_strongly_connected(D):
        raise PreconditionError('the digraph is not strongly connected')


# --- commands
def cmd_analyze(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _report = {'n': _D.n, 'n_edges': _D.n_edges, 'strongly_connected': is_strongly_connected(_D)}
    if _report['strongly_connected']:
        _dec = irreducible_components(_D)
        _class = classify(_D, _dec)
        _report.update(p_star=_dec.p_star, block_sizes=_dec.block_sizes, kind=_class.kind, alpha=_class.alpha)

    if args.format == 'json':
        _write_json(_report)
    else:
        _write('\n'.join(f"{_key}: {' '.join(str(_) for _ in _value) if isinstance(_value, list) else _value}"
                         for _key, _value in _report.items()))

    if not _report['strongly_connected']:
        logger.error('the digraph is not strongly connected')
        return EXIT_PRECONDITION
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _require_strongly_connected(_D)
    _dec = irreducible_components(_D)
    _census = orbit_census(_D, _dec)
    _by_period = count_orbits_by_period(_dec.p_star)
    _by_density = count_by_density(_dec.p_star)

    # the enumeration and the counting formulas must agree
    _counted = _census.groupby('order').size().to_dict()
    _agree = all(_counted.get(_p, 0) == _count for _p, _count in _by_period.items())
    _counted_density = _census.groupby('sigma').size().to_dict()
    _agree &= all(_counted_density.get(_d, 0) == _count for _d, _count in _by_density.items())

    if args.format == 'json':
        _write_json({
            'p_star': _dec.p_star,
            'orbits': [{'necklace': _necklace, 'order': int(_order), 'sigma': int(_sigma), 'state': _state}
                       for _necklace, _order, _sigma, _state in _census.itertuples(index=False)],
            'by_period': {str(_p): _c for _p, _c in _by_period.items()},
            'by_density': {str(_d): _c for _d, _c in _by_density.items()},
            'formulas_agree': _agree,
        })
    else:
        _write(_census.to_string(index=False))
        _write(f"orbits: {len(_census)}")
        _write('per period: ' + ' '.join(f"{_p}:{_c}" for _p, _c in _by_period.items()))
        _write('per density: ' + ' '.join(f"{_d}:{_c}" for _d, _c in _by_density.items()))
        _write(f"formulas agree: {'yes' if _agree else 'no'}")
    return EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _require_strongly_connected(_D)
    _write(export_structure(transition_weights(_D, up_weight=args.up_weight), fmt=args.format))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _x = as_state(args.state, _D.n)
    _orbit = find_orbit(_D, _x)
    _steps = args.steps if args.steps is not None else _orbit.transient + _orbit.period
    _trajectory = [state_to_bits(_, _D.n) for _ in trajectory(_D, _x, _steps)]
    _necklace = None
    if is_strongly_connected(_D):
        _necklace = orbit_to_necklace(irreducible_components(_D), _orbit.canonical).rep

    if args.format == 'json':
        _write_json({
            'trajectory': _trajectory,
            'transient': _orbit.transient,
            'period': _orbit.period,
            'orbit': _orbit.bits,
            'necklace': _necklace,
        })
    else:
        _write('\n'.join(f"{_t:>4} {_bits}" for _t, _bits in enumerate(_trajectory)))
        _write(f"transient: {_orbit.transient}")
        _write(f"period: {_orbit.period}")
        _write(f"orbit: {' '.join(_orbit.bits)}")
        if _necklace is not None:
            _write(f"necklace: {_necklace}")
    return EXIT_OK


def cmd_perturb(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _require_strongly_connected(_D)
    _result = perturb(_D, args.state, args.flip)
    _report = {
        'source': _result.source.rep,
        'flipped': _result.flipped,
        'target': _result.target.rep,
        'predicted': _result.predicted.rep,
        'steps': _result.transient,
    }
    if args.format == 'json':
        _write_json(_report)
    else:
        _write('\n'.join(f"{_key}: {_value}" for _key, _value in _report.items()))
    if not _result.agrees:
        logger.warning(f"simulation ended in {_result.target} but {_result.predicted} was predicted")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    _D = read_edge_list(args.graph)
    _require_strongly_connected(_D)
    _printf = partial(tprint, file=sys.stderr) if args.progress else None
    _report = validate(_D, cap_n=args.max_n, printf=_printf)
    if args.format == 'json':
        _write(_report.to_json())
    else:
        _write(_report.to_table())
    return EXIT_OK if _report.passed else EXIT_VALIDATION


def cmd_generate(args: argparse.Namespace) -> int:
    _D = GenSpec.from_strings(args.kind, args.params, seed=args.seed).build()
    _text = format_edge_list(_D)
    if args.output is None:
        sys.stdout.write(_text)
    else:
        with open(args.output, 'w') as _file:
            _file.write(_text)
        logger.info(f"wrote {_D.n} vertices and {_D.n_edges} edges to {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """
    :return: the argparse parser of the cbn command
    """
    _parser = _ArgumentParser(
        prog='cbn',
        description='Attractors and stability of conjunctive Boolean networks. States are bitstrings with vertex 0 '
                    'first.')
    _parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    _parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logging')
    _subparsers = _parser.add_subparsers(dest='command', metavar='command', parser_class=_ArgumentParser)
    _subparsers.required = True

    _cmd = _subparsers.add_parser('analyze', help='loop number, blocks and structural kind')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--format', choices=['text', 'json'], default='text')
    _cmd.set_defaults(func=cmd_analyze)

    _cmd = _subparsers.add_parser('orbits', help='all periodic orbits as necklaces with their counts')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--format', choices=['text', 'json'], default='text')
    _cmd.set_defaults(func=cmd_orbits)

    _cmd = _subparsers.add_parser('stability', help='stability structure with exact transition weights')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--format', choices=validations_stability['export__fmt'], default='table')
    _cmd.add_argument('--up-weight', choices=validations_stability['transition_weights__up_weight'],
                      default='source', help='count the up flips on the source (default) or on the target')
    _cmd.set_defaults(func=cmd_stability)

    _cmd = _subparsers.add_parser('simulate', help='trajectory of a state and the orbit it enters')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--state', required=True, help='initial state, bitstring with vertex 0 first')
    _cmd.add_argument('--steps', type=int, default=None,
                      help='number of updates to print, defaults to until one period of the orbit was printed')
    _cmd.add_argument('--format', choices=['text', 'json'], default='text')
    _cmd.set_defaults(func=cmd_simulate)

    _cmd = _subparsers.add_parser('perturb', help='flip one entry of a periodic state and follow the dynamics')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--state', required=True, help='periodic state, bitstring with vertex 0 first')
    _cmd.add_argument('--flip', type=int, required=True, help='vertex to flip')
    _cmd.add_argument('--format', choices=['text', 'json'], default='text')
    _cmd.set_defaults(func=cmd_perturb)

    _cmd = _subparsers.add_parser('verify', help='check all analytic results against exhaustive simulation')
    _cmd.add_argument('graph', help='edge list file')
    _cmd.add_argument('--max-n', type=int, default=None,
                      help='largest n to sweep, defaults to 24 or the environment variable CBN_MAX_ORACLE_N')
    _cmd.add_argument('--progress', action='store_true', help='show a progress bar on stderr')
    _cmd.add_argument('--format', choices=['text', 'json'], default='text')
    _cmd.set_defaults(func=cmd_verify)

    _cmd = _subparsers.add_parser('generate', help='write the edge list of a generated digraph')
    _cmd.add_argument('--kind', choices=validations_graphgen['GenSpec__kind'], required=True)
    _cmd.add_argument('--params', required=True, help='comma separated integers, e.g. 4,8,12')
    _cmd.add_argument('--seed', type=int, default=0, help='seed of the random kind')
    _cmd.add_argument('--output', default=None, help='output file, defaults to stdout')
    _cmd.set_defaults(func=cmd_generate)

    return _parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main package entry point.

    Parses the command line, configures logging and delegates to the cmd_* function of the subcommand.

    :param argv: arguments without the program name, defaults to sys.argv[1:]
    :return: exit code
    """
    _parser = build_parser()
    try:
        _args = _parser.parse_args(argv)
    except UsageError as _e:
        _parser.print_usage(sys.stderr)
        print(_e, file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=[logging.WARNING, logging.INFO, logging.DEBUG][min(_args.verbose, 2)],
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        return _args.func(_args)
    except PreconditionError as _e:
        print(f"cbn {_args.command}: {_e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (GraphError, ValueError, OSError) as _e:
        print(f"cbn {_args.command}: {_e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
