'''
End-to-end trials and the suites built from them.

Every trial is a module level function of a seed and keyword parameters returning an `adict` record with at
least `seed`, `passed` and (on failure) `stage`/`error`. Suites run trial i with seed `seed + i`, so any failed
trial can be rerun alone with `--seed <trial seed> --trials 1`.
'''

from typing import Any, Callable, Dict, List, Optional
import inspect
import time
import logging
from contextlib import contextmanager
from functools import wraps

import numpy as np

from .bcoloring import (BColInstance, Coloring, b_coloring_defect, is_b_coloring, is_proper, solve_bcol_brute,
                        solve_bcol_naive, recoloring_defects)
from .circori import (CircOriInstance, gen_yes_instance, gen_random_instance, solve_circori_brute,
                      solve_circori_naive, is_circulating, parity_feasible, total_weight)
from .config import setting
from .decomposition import (gen_pd_graph, pd_to_linear_order, module_width, linear_module_width_brute, pd_width,
                            validate_pd)
from .errors import PreconditionError, InvariantBreach, InfeasibleParametersError
from .farming import Farmer
from .packing import Packable, pack_member, unpack_member
from .reduction import (build_instance, forward_witness, extract_orientation, audit_coloring, build_pd_for_H,
                        reduce_instance, sample_recolorings, expected_size, degree_table, trivial_no_instance,
                        ReducedInstance)
from .structured import adict, Table
from .transactions import AbortTransaction

logger = logging.getLogger(__name__)

PERTURBATIONS = ('leaf', 'y', 'random')

# recoloring verdicts per witness confirmed by the full check
_CONFIRMED = 20

NO_SIDE_LIMITATION = ('NO side: only the source answer is confirmed (parity or exhaustive orientation search); '
                      'that the reduced instance then has no b-coloring with k colors is not checked by '
                      'enumeration (|V(H)| is in the hundreds at least) and rests on the correctness proof.')


class RunReport(Packable):
	'''
	Outcome of a suite: one record per trial plus a summary.
	
	The summary holds `total`, `passed` and `failed`; suites may add entries (e.g. the largest width increment).
	'''
	
	def __init__(self, name: str, params: Dict[str, Any] = None, trials: Table = None, notes: List[str] = None,
	             summary: adict = None):
		self.name = name
		self.params = adict() if params is None else adict(params)
		self.trials = Table() if trials is None else trials
		self.notes = [] if notes is None else list(notes)
		self.summary = adict() if summary is None else summary
	
	@property
	def ok(self) -> bool:
		return all(trial.passed for trial in self.trials)
	
	def failures(self) -> Table:
		return self.trials.filter(lambda trial: not trial.passed)
	
	def summarize(self, **extra: Any) -> adict:
		passed = sum(1 for trial in self.trials if trial.passed)
		self.summary = adict(total=len(self.trials), passed=passed, failed=len(self.trials) - passed)
		self.summary.update(extra)
		return self.summary
	
	def __str__(self):
		lines = ['{}: {}/{} passed'.format(self.name, self.summary.get('passed', 0), self.summary.get('total', 0))]
		for key in sorted(self.summary):
			if key not in {'total', 'passed', 'failed'}:
				lines.append('  {}: {}'.format(key, self.summary[key]))
		for note in self.notes:
			lines.append('note: {}'.format(note))
		for trial in self.failures():
			lines.append('FAIL seed={} at {}: {}'.format(trial.seed, trial.get('stage'), trial.get('error')))
			if 'audit' in trial:
				lines.extend('  {} {}'.format('ok  ' if ok else 'FAIL', name) for name, ok in sorted(trial.audit.items()))
			if 'reproduce' in trial:
				lines.append('  reproduce: {}'.format(trial.reproduce))
		return '\n'.join(lines)
	
	def __pack__(self):
		return {'name': self.name, 'params': pack_member(self.params), 'trials': pack_member(self.trials),
		        'notes': list(self.notes), 'summary': pack_member(self.summary)}
	
	@classmethod
	def __create__(cls, data):
		return cls(data['name'], unpack_member(data['params']), unpack_member(data['trials']), data['notes'],
		           unpack_member(data['summary']))


class _Stages(object):
	'''Tracks the current stage of a trial (and optionally how long each stage took)'''
	
	def __init__(self, record: adict, timings: bool = False):
		self.record = record
		self.timings = {} if timings else None
	
	@contextmanager
	def __call__(self, name: str):
		self.record.stage = name
		start = time.perf_counter()
		yield
		if self.timings is not None:
			self.timings[name] = round(time.perf_counter() - start, 6)
	
	def finish(self, passed: bool, error: str = None) -> adict:
		self.record.passed = passed
		if passed:
			del self.record.stage
		else:
			self.record.error = error
		if self.timings is not None:
			self.record.timings = self.timings
		return self.record


def _guarded(trial: Callable) -> Callable:
	'''Turn any exception raised inside a trial into a failure record, so the remaining trials still run'''
	@wraps(trial)
	def _run(seed: int, timings: bool = False, **params: Any) -> adict:
		record = adict(seed=seed)
		stages = _Stages(record, timings=timings)
		try:
			return trial(record, stages, seed=seed, **params)
		except (PreconditionError, InvariantBreach) as e:
			logger.info('trial seed=%d failed at %s: %s', seed, record.get('stage'), e)
			return stages.finish(False, '{}: {}'.format(type(e).__name__, e))
		except Exception as e:
			logger.warning('trial seed=%d crashed at %s', seed, record.get('stage'), exc_info=True)
			return stages.finish(False, '{}: {}'.format(type(e).__name__, e))
	return _run


def _stats(inst: CircOriInstance) -> Dict[str, int]:
	weights = inst.weights().values()
	return {'n': inst.n, 'm': inst.m, 'W': total_weight(inst), 'w': max(weights, default=0)}


def perturb_coloring(red: ReducedInstance, c: Coloring, mode: str, seed: int = 0) -> str:
	'''
	Corrupt a witness in place.
	
	- leaf: the first superstar leaf takes the color of the first leaf of the second L-block
	- y: the first vertex of Y_1 takes a color of the L-block on the head side of edge 1
	- random: one seeded single-vertex recoloring
	
	:return: description of the change
	'''
	if mode == 'leaf':
		v = red.superstar_leaves[0]
		second = sorted(red.l_blocks)[1]
		q = c[red.l_blocks[second][0]]
	elif mode == 'y':
		v = red.y[1][0]
		u, w = red.edges[0]
		ys = {c[y] for y in red.y[1]}
		other = red.l_blocks[1, w] if {c[l] for l in red.l_blocks[1, u]} == ys else red.l_blocks[1, u]
		q = c[other[0]]
	elif mode == 'random':
		v, q = sample_recolorings(red, c, 1, seed=seed)[-1]
	else:
		raise ValueError('unknown perturbation {!r}, expected one of {}'.format(mode, ', '.join(PERTURBATIONS)))
	old = c[v]
	c[v] = q
	return 'vertex {} [{}] recolored {} -> {}'.format(v, red.roles[v], old, q)


@_guarded
def roundtrip_trial(record: adict, stage: _Stages, seed: int, n: int = 8, m: int = 14, wmax: int = 2,
                    cycles: int = 2, perturb: str = None) -> adict:
	'''
	Generate a YES instance, solve it, reduce it, build the forward witness, verify and audit it, extract an
	orientation again and compare with the solver's.
	
	:param seed: trial seed (also picks the number of vertices in [3..n])
	:param n: largest number of vertices
	:param m: largest number of edges (None for no bound)
	:param wmax: largest amount per superposed cycle (weights are at most cycles * wmax)
	:param cycles: number of superposed cycles
	:param perturb: (optional) corrupt the witness before verification, one of `PERTURBATIONS`
	'''
	size = int(np.random.RandomState(seed).randint(3, max(n, 3) + 1))
	with stage('generate'):
		inst, planted = gen_yes_instance(seed, size, cycles, wmax, max_edges=m)
	record.update(_stats(inst))
	if not is_circulating(inst, planted):
		return stage.finish(False, 'planted orientation is not circulating')
	
	with stage('solve'):
		solved = solve_circori_brute(inst)
	record.answer = 'no' if solved is None else 'yes'
	if solved is None:
		return stage.finish(False, 'no circulating orientation found for a YES instance')
	
	with stage('reduce'):
		red = build_instance(inst)
	record.k = red.k
	record.size = red.graph.n
	
	with stage('forward'):
		c = forward_witness(red, solved)
	if perturb is not None:
		record.perturbed = perturb_coloring(red, c, perturb, seed=seed)
	
	with stage('verify'):
		defect = b_coloring_defect(red, c)
	if defect is not None:
		if is_proper(red, c):
			record.audit = audit_coloring(red, c, strict=False).outcomes()
		return stage.finish(False, defect)
	
	with stage('audit'):
		report = audit_coloring(red, c)
	record.audit = report.outcomes()
	if not report.ok:
		return stage.finish(False, '; '.join(str(check) for check in report.failures()))
	
	with stage('extract'):
		o = extract_orientation(red, c)
	if o != solved:
		return stage.finish(False, 'extracted {!r} differs from {!r}'.format(o, solved))
	return stage.finish(True)


@_guarded
def claim5_trial(record: adict, stage: _Stages, seed: int, n: int = None, wmax: int = 1,
                 density: float = 0.5) -> adict:
	'''
	Extend a path decomposition of a sampled graph to the reduced instance and measure the width increment.
	Source widths cycle through 1..5 with the seed; weights are even (2..2 wmax) so every W_v is even.
	'''
	w = 1 + seed % 5
	n = w + 3 if n is None else max(n, w + 1)
	with stage('generate'):
		g, pd = gen_pd_graph(seed, n, w, density)
		rng = np.random.RandomState(seed)
		inst = CircOriInstance(g, {e: 2 * int(rng.randint(1, wmax + 1)) for e in g.edges})
	record.update(_stats(inst))
	record.source_width = pd_width(pd)
	
	with stage('reduce'):
		red = build_instance(inst)
	with stage('extend'):
		pd_h = build_pd_for_H(red, pd)
	with stage('validate'):
		violation = validate_pd(red.graph, pd_h)
	if violation is not None:
		return stage.finish(False, str(violation))
	record.width = pd_width(pd_h)
	record.increment = record.width - record.source_width
	record.bags = len(pd_h)
	if record.increment > 6:
		return stage.finish(False, 'width grew by {}'.format(record.increment))
	return stage.finish(True)


@_guarded
def lemma1_trial(record: adict, stage: _Stages, seed: int, n: int = 10, density: float = 0.5) -> adict:
	'''
	Convert a path decomposition of width w (cycling through 1..6 with the seed) into a linear order and check
	that its module-width is at most w + 2. Small graphs are also compared against the exact linear
	module-width.
	'''
	w = 1 + seed % 6
	n = max(n, w + 1)
	with stage('generate'):
		g, pd = gen_pd_graph(seed, n, w, density)
	record.update(n=g.n, m=g.m, source_width=pd_width(pd))
	with stage('order'):
		order = pd_to_linear_order(g, pd)
		record.module_width = module_width(g, order)
	if g.n <= setting('order_brute_cap'):
		with stage('exact'):
			record.exact = linear_module_width_brute(g)[0]
		if record.exact > record.module_width:
			return stage.finish(False, 'exact linear module-width {} above the order\'s {}'.format(
				record.exact, record.module_width))
	if record.module_width > record.source_width + 2:
		return stage.finish(False, 'module-width {} exceeds width + 2 = {}'.format(
			record.module_width, record.source_width + 2))
	return stage.finish(True)


@_guarded
def counting_trial(record: adict, stage: _Stages, seed: int, n: int = 6, wmax: int = 3, cycles: int = 3) -> adict:
	'''Build a reduced instance and record the size formula and the degree table (checked by the construction)'''
	size = int(np.random.RandomState(seed).randint(3, max(n, 3) + 1))
	with stage('generate'):
		inst, _ = gen_yes_instance(seed, size, cycles, wmax)
	record.update(_stats(inst))
	with stage('reduce'):
		red = build_instance(inst)
	record.k = red.k
	record.size = red.graph.n
	record.expected_size = expected_size(inst)
	record.degrees = {kind: list(degs) for kind, degs in degree_table(red).items()}
	if record.size != record.expected_size:
		return stage.finish(False, '|V(H)| = {} but the formula gives {}'.format(record.size, record.expected_size))
	return stage.finish(True)


@_guarded
def crosscheck_trial(record: adict, stage: _Stages, seed: int, n: int = 6, m: int = 10, wmax: int = 3) -> adict:
	'''
	Compare each exact solver with its naive enumeration oracle. Even seeds check b-coloring on a random
	connected graph with at most `n` vertices and k in {2, 3, 4}; odd seeds check circulating orientations on
	a random instance with at most `m` edges.
	'''
	rng = np.random.RandomState(seed)
	if seed % 2 == 0:
		size = int(rng.randint(2, n + 1))
		edges = int(rng.randint(size - 1, size * (size - 1) // 2 + 1))
		k = int(rng.randint(2, 5))
		record.update(kind='bcol', n=size, m=edges, k=k)
		with stage('generate'):
			inst = BColInstance(gen_random_instance(seed, size, edges, 1).graph, k)
		with stage('solve'):
			fast = solve_bcol_brute(inst)
		with stage('oracle'):
			slow = solve_bcol_naive(inst)
		record.answer = 'no' if fast is None else 'yes'
		if (fast is None) != (slow is None):
			return stage.finish(False, 'brute force says {}, enumeration disagrees'.format(record.answer))
		if fast is not None and not is_b_coloring(inst, fast):
			return stage.finish(False, 'solver returned an invalid b-coloring')
		return stage.finish(True)
	
	size = int(rng.randint(3, min(6, m + 1) + 1))
	edges = int(rng.randint(size - 1, min(m, size * (size - 1) // 2) + 1))
	record.update(kind='circori', n=size, m=edges)
	with stage('generate'):
		inst = gen_random_instance(seed, size, edges, wmax)
	with stage('solve'):
		fast = solve_circori_brute(inst)
	with stage('oracle'):
		slow = solve_circori_naive(inst)
	record.answer = 'no' if fast is None else 'yes'
	if fast != slow:
		return stage.finish(False, 'brute force found {!r}, enumeration found {!r}'.format(fast, slow))
	return stage.finish(True)


@_guarded
def noside_trial(record: adict, stage: _Stages, seed: int, n: int = 6, m: int = 8, wmax: int = 3) -> adict:
	'''
	On a random instance without circulating orientation, confirm the NO answer by parity or by exhaustive
	enumeration, and check that the reduction maps parity failures to the trivial NO instance. Instances that
	turn out to be YES are recorded with `answer = 'yes'` and skipped by the suite.
	'''
	rng = np.random.RandomState(seed)
	size = int(rng.randint(3, min(n, m + 1) + 1))
	edges = int(rng.randint(size - 1, min(m, size * (size - 1) // 2) + 1))
	with stage('generate'):
		inst = gen_random_instance(seed, size, edges, wmax)
	record.update(_stats(inst))
	with stage('solve'):
		found = solve_circori_brute(inst)
	record.answer = 'no' if found is None else 'yes'
	if found is not None:
		return stage.finish(is_circulating(inst, found), None if is_circulating(inst, found) else 'bad witness')
	
	record.parity = parity_feasible(inst)
	if record.parity:
		with stage('oracle'):
			if solve_circori_naive(inst) is not None:
				return stage.finish(False, 'enumeration found a circulating orientation')
		return stage.finish(True)
	
	with stage('reduce'):
		target = reduce_instance(inst, force_trivial_no=True)
		if target.graph != trivial_no_instance().graph or solve_bcol_brute(target) is not None:
			return stage.finish(False, 'parity failure did not map to a NO instance')
	return stage.finish(True)


def _survivor_problem(red: ReducedInstance, c: Coloring, v: int, q: int) -> Optional[str]:
	'''Strict audit and extraction of a recolored witness that is still a b-coloring'''
	report = audit_coloring(red, c)
	if not report.ok:
		return 'recoloring {} -> {} passes as b-coloring but fails {}'.format(
			v, q, ', '.join(check.name for check in report.failures()))
	if not is_circulating(red.source, extract_orientation(red, c)):
		return 'recoloring {} -> {} extracts a non-circulating orientation'.format(v, q)
	return None


@_guarded
def perturb_trial(record: adict, stage: _Stages, seed: int, n: int = 5, wmax: int = 2, cycles: int = 1,
                  samples: int = None) -> adict:
	'''
	Apply single-vertex recolorings to a forward witness. Improper results and results that lose the b-vertex
	of some color must be rejected; results that are still b-colorings must pass the strict audit and yield a
	circulating orientation.
	
	By default every recoloring (v, q != c[v]) is judged with `recoloring_defects`, and a seeded sample of the
	verdicts is confirmed by the full check. With `samples` only the targeted plus `samples` random
	recolorings are tried, each fully checked inside a transaction.
	'''
	size = int(np.random.RandomState(seed).randint(3, max(n, 3) + 1))
	with stage('generate'):
		inst, _ = gen_yes_instance(seed, size, cycles, wmax)
	record.update(_stats(inst))
	with stage('reduce'):
		red = build_instance(inst)
		c = forward_witness(red, solve_circori_brute(inst))
	record.update(k=red.k, size=red.graph.n)
	
	caught = survived = 0
	problems = []
	with stage('recolor'):
		if samples is None:
			verdicts = {}
			for v, q, defect in recoloring_defects(red, c):
				verdicts[v, q] = defect is None
				if defect is not None:
					caught += 1
					continue
				survived += 1
				with c:
					c[v] = q
					problem = _survivor_problem(red, c, v, q)
					if problem is not None:
						problems.append(problem)
					raise AbortTransaction
			for v, q in sample_recolorings(red, c, _CONFIRMED, seed=seed):
				with c:
					c[v] = q
					if (b_coloring_defect(red, c) is None) != verdicts[v, q]:
						problems.append('recoloring {} -> {} judged differently by the full check'.format(v, q))
					raise AbortTransaction
		else:
			for v, q in sample_recolorings(red, c, samples, seed=seed):
				with c:
					improper = any(c[u] == q for u in red.graph.neighbors(v))
					c[v] = q
					if b_coloring_defect(red, c) is not None:
						caught += 1
					elif improper:
						problems.append('improper recoloring of {} accepted'.format(v))
					else:
						survived += 1
						problem = _survivor_problem(red, c, v, q)
						if problem is not None:
							problems.append(problem)
					raise AbortTransaction
	record.update(caught=caught, survived=survived)
	if problems:
		return stage.finish(False, '; '.join(problems[:3]))
	return stage.finish(True)


_suites = {
	'roundtrip': roundtrip_trial,
	'claim5': claim5_trial,
	'lemma1': lemma1_trial,
	'counting': counting_trial,
	'crosscheck': crosscheck_trial,
	'noside': noside_trial,
	'perturb': perturb_trial,
}

SUITES = tuple(_suites)

# cli flag per trial parameter, used for reproduction command lines
_flags = {'n': '--n', 'm': '--m', 'wmax': '--wmax', 'cycles': '--cycles', 'perturb': '--perturb',
          'density': '--density', 'samples': '--samples'}


def reproduce_command(name: str, seed: int, params: Dict[str, Any]) -> str:
	cmd = ['bcolab', 'roundtrip' if name == 'roundtrip' else 'check {}'.format(name),
	       '--seed', str(seed), '--trials', '1']
	for key in sorted(params):
		if params[key] is not None and key in _flags:
			cmd.extend([_flags[key], str(params[key])])
	return ' '.join(cmd)


# smallest accepted value per suite parameter
_minimums = {
	'roundtrip': {'n': 3, 'm': 3, 'wmax': 1, 'cycles': 1},
	'claim5': {'n': 2, 'wmax': 1},
	'lemma1': {'n': 2},
	'counting': {'n': 3, 'wmax': 1, 'cycles': 1},
	'crosscheck': {'n': 2, 'm': 2, 'wmax': 1},
	'noside': {'n': 3, 'm': 2, 'wmax': 1},
	'perturb': {'n': 3, 'wmax': 1, 'cycles': 1, 'samples': 0},
}


def _check_params(name: str, trials: int, params: Dict[str, Any]) -> None:
	'''
	Reject suite parameters no trial could run with.
	
	:raises InfeasibleParametersError: for unknown parameters and values out of range
	'''
	accepted = inspect.signature(_suites[name].__wrapped__).parameters
	if trials < 0:
		raise InfeasibleParametersError(name, 'trials must be >= 0, got {}'.format(trials))
	for key, value in sorted(params.items()):
		if key not in accepted or key in {'record', 'stage', 'seed'}:
			raise InfeasibleParametersError(name, 'unknown parameter {}'.format(key))
		low = _minimums[name].get(key)
		if low is not None and value < low:
			raise InfeasibleParametersError(name, '{} must be >= {}, got {}'.format(key, low, value))
	if 'density' in params and not 0 <= params['density'] <= 1:
		raise InfeasibleParametersError(name, 'density {} outside [0, 1]'.format(params['density']))
	if params.get('perturb') is not None and params['perturb'] not in PERTURBATIONS:
		raise InfeasibleParametersError(name, 'unknown perturbation {!r}'.format(params['perturb']))
	if name == 'roundtrip':
		n, m = params.get('n', accepted['n'].default), params.get('m', accepted['m'].default)
		if m is not None and m < max(n, 3):
			raise InfeasibleParametersError(name, 'm = {} leaves no room for a cycle through n = {} '
			                                      'vertices'.format(m, n))


def run_suite(name: str, seed: int = 0, trials: int = 20, workers: int = None, timings: bool = False,
              **params: Any) -> RunReport:
	'''
	Run `trials` trials of a suite with seeds seed, seed+1, ... and summarize them.
	
	:param name: one of `SUITES`
	:param seed: seed of the first trial
	:param trials: number of trials (for `noside`: number of NO instances to collect)
	:param workers: worker processes (defaults to the `workers` setting)
	:param timings: record the time spent per stage (off by default so reports are reproducible byte by byte)
	:param params: suite specific parameters (see the trial functions)
	:return: report
	:raises InfeasibleParametersError: for parameters out of range or unknown to the suite
	'''
	try:
		trial = _suites[name]
	except KeyError:
		raise ValueError('unknown suite {!r}, expected one of {}'.format(name, ', '.join(SUITES)))
	params = {key: value for key, value in params.items() if value is not None}
	_check_params(name, trials, params)
	report = RunReport(name, dict(params, seed=seed, trials=trials))
	
	attempts = 10 * trials if name == 'noside' else trials
	jobs = [{'seed': seed + i} for i in range(attempts)]
	records = Farmer(trial, jobs, shared_args=dict(params, timings=timings), num_workers=workers).complete()
	
	if name == 'noside':
		records = [record for record in records if record.get('answer') != 'yes'][:trials]
		report.notes.append(NO_SIDE_LIMITATION)
		if len(records) < trials:
			report.notes.append('only {} NO instances among {} attempts'.format(len(records), attempts))
	
	for record in records:
		if not record.passed:
			record.reproduce = reproduce_command(name, record.seed, params)
		report.trials.append(record)
	
	extra = {}
	if name == 'claim5':
		increments = list(report.trials.select('increment'))
		extra['max_increment'] = max(increments, default=0)
		extra['within_five'] = extra['max_increment'] <= 5
		if not extra['within_five']:
			logger.warning('claim5: the width grew by %d (more than 5)', extra['max_increment'])
	elif name == 'lemma1':
		extra['max_excess'] = max((mw - w for mw, w in report.trials.selects('module_width', 'source_width')),
		                          default=0)
	elif name == 'perturb':
		extra['caught'] = sum(report.trials.select('caught'))
		extra['survived'] = sum(report.trials.select('survived'))
	report.summarize(**extra)
	logger.info('%s: %d/%d trials passed', name, report.summary.passed, report.summary.total)
	return report
