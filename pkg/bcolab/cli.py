'''
Command line interface: ``bcolab <command> ...``

Exit codes: 0 pass/solved, 1 verified false/no solution, 2 unreadable input, 3 violated precondition,
4 internal invariant breach.
'''

from typing import List, Optional
import sys
import argparse
import logging

import numpy as np
import yaml

from . import formats
from ._info import version
from .bcoloring import b_coloring_defect, solve_bcol_brute
from .circori import (CircOriInstance, unbalanced_vertex, solve_circori_brute, gen_yes_instance,
                      gen_random_instance, total_weight)
from .config import configure
from .decomposition import (validate_pd, pd_width, pd_to_linear_order, module_width, linear_module_width_brute,
                            gen_pd_graph)
from .errors import (FormatError, PreconditionError, InvariantBreach, ConstructionInvariantError, UnknownSettingError,
                     InvalidSettingError)
from .harness import run_suite, SUITES, PERTURBATIONS
from .packing import json_pack
from .reduction import (ReducedInstance, reduce_instance, build_instance, build_pd_for_H, forward_witness,
                        extract_orientation, audit_coloring)

logger = logging.getLogger(__name__)


def _write(kind, obj, path=None, **kwargs):
	if path is None:
		sys.stdout.write(formats.dumps(kind, obj, **kwargs))
	else:
		formats.dump(kind, obj, path, **kwargs)


def _load_reduced(bcol_path: str, rolemap_path: str) -> ReducedInstance:
	inst = formats.load('bcol', bcol_path)
	return ReducedInstance.from_roles(inst.graph, inst.k, formats.load('rolemap', rolemap_path))


def _print_report(report, as_json: bool) -> None:
	if as_json:
		print(json_pack(report, indent=2))
	else:
		print(report)


def cmd_reduce(args) -> int:
	inst = formats.load('circori', args.instance)
	target = reduce_instance(inst, force_trivial_no=args.force_trivial_no)
	prefix = args.output
	formats.dump('bcol', target, prefix + '.bcol')
	print('k={}'.format(target.k))
	print('|V(H)|={}'.format(target.graph.n))
	print('|E(H)|={}'.format(target.graph.m))
	if not isinstance(target, ReducedInstance):
		print('parity infeasible: wrote the trivial NO instance')
		return 0
	formats.dump('rolemap', target.roles, prefix + '.rolemap')
	if args.pd is not None:
		pd = formats.load('pd', args.pd)
		pd_h = build_pd_for_H(target, pd)
		violation = validate_pd(target.graph, pd_h)
		if violation is not None:
			raise ConstructionInvariantError('extended decomposition is invalid: {}'.format(violation))
		formats.dump('pd', pd_h, prefix + '.pd', n=target.graph.n)
		print('width(G)={}'.format(pd_width(pd)))
		print('width(H)={}'.format(pd_width(pd_h)))
	return 0


def cmd_witness(args) -> int:
	inst = formats.load('circori', args.instance)
	o = formats.load('orientation', args.orientation)
	red = build_instance(inst)
	c = forward_witness(red, o)
	formats.dump('bcol', red, args.output + '.bcol')
	formats.dump('rolemap', red.roles, args.output + '.rolemap')
	formats.dump('coloring', c, args.output + '.coloring')
	print('k={}'.format(red.k))
	print('|V(H)|={}'.format(red.graph.n))
	return 0


def cmd_extract(args) -> int:
	red = _load_reduced(args.instance, args.rolemap)
	o = extract_orientation(red, formats.load('coloring', args.coloring))
	_write('orientation', o, args.output)
	return 0


def cmd_audit(args) -> int:
	red = _load_reduced(args.instance, args.rolemap)
	report = audit_coloring(red, formats.load('coloring', args.coloring), strict=not args.lenient)
	_print_report(report, args.json)
	return 0 if report.ok else 1


def cmd_solve(args) -> int:
	if args.kind == 'circori':
		found = solve_circori_brute(formats.load('circori', args.instance), cap=args.budget)
		kind = 'orientation'
	else:
		found = solve_bcol_brute(formats.load('bcol', args.instance), budget=args.budget)
		kind = 'coloring'
	if found is None:
		print('none')
		return 1
	_write(kind, found, args.output)
	return 0


def cmd_verify(args) -> int:
	if args.kind == 'coloring':
		inst = formats.load('bcol', args.instance)
		problem = b_coloring_defect(inst, formats.load('coloring', args.witness))
	elif args.kind == 'pd':
		g = formats.load_graph(args.instance)
		pd = formats.load('pd', args.witness)
		problem = validate_pd(g, pd)
		if problem is None:
			print('width={}'.format(pd_width(pd)) if len(pd) else 'width=-1')
	else:
		inst = formats.load('circori', args.instance)
		bad = unbalanced_vertex(inst, formats.load('orientation', args.witness))
		problem = None if bad is None else 'vertex {} has in-weight {} but out-weight {}'.format(*bad)
	if problem is not None:
		print(problem)
		return 1
	print('ok')
	return 0


def cmd_order(args) -> int:
	g = formats.load_graph(args.graph)
	if args.action == 'from-pd':
		if args.file is None:
			raise PreconditionError('order from-pd needs a pd file')
		_write('order', pd_to_linear_order(g, formats.load('pd', args.file)), args.output)
	elif args.action == 'module-width':
		if args.file is None:
			raise PreconditionError('order module-width needs an order file')
		print(module_width(g, formats.load('order', args.file)))
	else:
		width, order = linear_module_width_brute(g)
		print(width)
		_write('order', order, args.output)
	return 0


def cmd_gen(args) -> int:
	prefix = args.output
	n = 6 if args.n is None else args.n
	orientation, pd = None, None
	if args.kind == 'yes':
		inst, orientation = gen_yes_instance(args.seed, n, args.cycles, args.wmax, max_edges=args.m)
	elif args.kind == 'random':
		inst = gen_random_instance(args.seed, n, n if args.m is None else args.m, args.wmax)
	else:
		g, pd = gen_pd_graph(args.seed, n, args.width, args.density)
		rng = np.random.RandomState(args.seed)
		inst = CircOriInstance(g, {e: 2 * int(rng.randint(1, args.wmax + 1)) for e in g.edges})
	
	if prefix is None:
		_write('circori', inst)
	else:
		formats.dump('circori', inst, prefix + '.circori')
		if orientation is not None:
			formats.dump('orientation', orientation, prefix + '.orientation')
		if pd is not None:
			formats.dump('pd', pd, prefix + '.pd', n=inst.n)
		print('n={} m={} W={}'.format(inst.n, inst.m, total_weight(inst)))
	return 0


def _suite_params(args) -> dict:
	params = {key: getattr(args, key, None) for key in ['n', 'm', 'wmax', 'cycles', 'perturb', 'density', 'samples']}
	return {key: value for key, value in params.items() if value is not None}


def cmd_roundtrip(args) -> int:
	report = run_suite('roundtrip', seed=args.seed, trials=args.trials, workers=args.workers,
	                   timings=args.timings, **_suite_params(args))
	_print_report(report, args.json)
	return 0 if report.ok else 1


def cmd_check(args) -> int:
	report = run_suite(args.suite, seed=args.seed, trials=args.trials, workers=args.workers,
	                   timings=args.timings, **_suite_params(args))
	_print_report(report, args.json)
	return 0 if report.ok else 1


def _add_trial_options(parser, trials: int = 20):
	parser.add_argument('--seed', type=int, default=0, help='seed of the first trial (trial i uses seed + i)')
	parser.add_argument('--trials', type=int, default=trials)
	parser.add_argument('--n', type=int, default=None, help='largest number of vertices')
	parser.add_argument('--m', type=int, default=None, help='largest number of edges')
	parser.add_argument('--wmax', type=int, default=None)
	parser.add_argument('--cycles', type=int, default=None)
	parser.add_argument('--workers', type=int, default=None)
	parser.add_argument('--json', action='store_true', help='print the report as a json document')
	parser.add_argument('--timings', action='store_true', help='record time per stage')


def get_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog='bcolab', description='Build, witness and audit the reduction from '
	                                                            'Circulating Orientation to b-Coloring.')
	parser.add_argument('--version', action='version', version='%(prog)s ' + version)
	parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logs')
	parser.add_argument('--config', default=None, help='yaml file with settings')
	sub = parser.add_subparsers(dest='command')
	sub.required = True
	
	p = sub.add_parser('reduce', help='build the b-Coloring instance of a circori file')
	p.add_argument('instance')
	p.add_argument('--pd', default=None, help='path decomposition of the source to extend')
	p.add_argument('-o', '--output', default='H', help='output prefix')
	p.add_argument('--force-trivial-no', action='store_true',
	               help='emit a fixed NO instance instead of failing on odd W_v')
	p.set_defaults(func=cmd_reduce)
	
	p = sub.add_parser('witness', help='turn a circulating orientation into a b-coloring of H')
	p.add_argument('instance')
	p.add_argument('orientation')
	p.add_argument('-o', '--output', default='H', help='output prefix')
	p.set_defaults(func=cmd_witness)
	
	p = sub.add_parser('extract', help='read a circulating orientation off a b-coloring of H')
	p.add_argument('instance', help='bcol file of H')
	p.add_argument('rolemap')
	p.add_argument('coloring')
	p.add_argument('-o', '--output', default=None)
	p.set_defaults(func=cmd_extract)
	
	p = sub.add_parser('audit', help='check the structure of a b-coloring of H')
	p.add_argument('instance', help='bcol file of H')
	p.add_argument('rolemap')
	p.add_argument('coloring')
	p.add_argument('--lenient', action='store_true', help='only require a proper coloring')
	p.add_argument('--json', action='store_true')
	p.set_defaults(func=cmd_audit)
	
	p = sub.add_parser('solve', help='exhaustive solvers')
	p.add_argument('kind', choices=['circori', 'bcol'])
	p.add_argument('instance')
	p.add_argument('--budget', type=int, default=None, help='edge cap (circori) or bound on k^n (bcol)')
	p.add_argument('-o', '--output', default=None)
	p.set_defaults(func=cmd_solve)
	
	p = sub.add_parser('verify', help='check a witness')
	p.add_argument('kind', choices=['coloring', 'pd', 'orientation'])
	p.add_argument('instance', help='bcol (coloring), circori or bcol (pd), circori (orientation)')
	p.add_argument('witness')
	p.set_defaults(func=cmd_verify)
	
	p = sub.add_parser('order', help='linear orders and module-width')
	p.add_argument('action', choices=['from-pd', 'module-width', 'exact'])
	p.add_argument('graph', help='circori or bcol file')
	p.add_argument('file', nargs='?', default=None, help='pd (from-pd) or order (module-width) file')
	p.add_argument('-o', '--output', default=None)
	p.set_defaults(func=cmd_order)
	
	p = sub.add_parser('gen', help='seeded instance generators')
	p.add_argument('kind', choices=['yes', 'random', 'pd'])
	p.add_argument('--seed', type=int, default=0)
	p.add_argument('--n', type=int, default=None)
	p.add_argument('--m', type=int, default=None)
	p.add_argument('--wmax', type=int, default=2)
	p.add_argument('--cycles', type=int, default=2)
	p.add_argument('--width', type=int, default=2)
	p.add_argument('--density', type=float, default=0.5)
	p.add_argument('-o', '--output', default=None, help='output prefix (prints the instance if missing)')
	p.set_defaults(func=cmd_gen)
	
	p = sub.add_parser('roundtrip', help='generate, reduce, witness, audit and extract')
	_add_trial_options(p, trials=100)
	p.add_argument('--perturb', choices=PERTURBATIONS, default=None, help='corrupt every witness')
	p.set_defaults(func=cmd_roundtrip)
	
	p = sub.add_parser('check', help='acceptance suites')
	p.add_argument('suite', choices=[s for s in SUITES if s != 'roundtrip'])
	_add_trial_options(p)
	p.add_argument('--density', type=float, default=None)
	p.add_argument('--samples', type=int, default=None,
	               help='perturb: sample this many random recolorings per witness instead of trying all')
	p.set_defaults(func=cmd_check)
	
	return parser


def main(argv: Optional[List[str]] = None) -> int:
	args = get_parser().parse_args(argv)
	level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
	logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
	
	try:
		configure(args.config)
		return args.func(args)
	except (FormatError, PreconditionError, InvariantBreach) as e:
		logger.debug('%s failed', args.command, exc_info=True)
		print('error: {}'.format(e), file=sys.stderr)
		return e.exit_code
	except (OSError, yaml.YAMLError, UnknownSettingError, InvalidSettingError) as e:
		print('error: {}'.format(e), file=sys.stderr)
		return FormatError.exit_code


if __name__ == '__main__':
	sys.exit(main())
