from typing import Dict, Iterable, Mapping, Optional, Tuple
import logging
from itertools import product

import numpy as np

from .config import setting
from .errors import (ZeroWeightError, WeightCapExceededError, InfeasibleParametersError, CapExceededError,
                     InvalidGraphError)
from .graphs import Graph, Orientation, EDGE, edge_key, is_connected
from .packing import Packable, pack_member, unpack_member

logger = logging.getLogger(__name__)


class CircOriInstance(Packable):
	'''
	Circulating Orientation instance: a graph with positive integer edge weights given in unary.
	
	Connectivity is not required here (the reduction checks it), but all weights must be at least 1 and
	the total weight must respect the `weight_cap` setting.
	'''
	
	def __init__(self, graph: Graph, weights: Mapping[Tuple[int, int], int], weight_cap: int = None):
		'''
		:param graph: underlying simple graph
		:param weights: weight per edge (pairs in any endpoint order)
		:param weight_cap: maximum total weight (defaults to the `weight_cap` setting)
		'''
		self.graph = graph
		self._weights = {}
		for (u, v), w in weights.items():
			key = edge_key(u, v)
			if not graph.has_edge(u, v):
				raise InvalidGraphError('weight given for non-edge {}'.format(key))
			if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or w < 1:
				raise ZeroWeightError(key, w)
			self._weights[key] = int(w)
		missing = [e for e in graph.edges if e not in self._weights]
		if len(missing):
			raise InvalidGraphError('edges without weight: {}'.format(missing))
		
		cap = setting('weight_cap', weight_cap)
		total = sum(self._weights.values())
		if total > cap:
			raise WeightCapExceededError(total, cap)
	
	@property
	def edges(self) -> Tuple[EDGE, ...]:
		return self.graph.edges
	
	@property
	def n(self) -> int:
		return self.graph.n
	
	@property
	def m(self) -> int:
		return self.graph.m
	
	def weight(self, u: int, v: int) -> int:
		return self._weights[edge_key(u, v)]
	
	def weights(self) -> Dict[EDGE, int]:
		return dict(self._weights)
	
	def __eq__(self, other):
		return isinstance(other, CircOriInstance) and self.graph == other.graph and self._weights == other._weights
	
	def __hash__(self):
		return hash((self.graph, tuple(sorted(self._weights.items()))))
	
	def __repr__(self):
		return 'CircOriInstance(n={}, m={}, W={})'.format(self.n, self.m, total_weight(self))
	
	def __pack__(self):
		return {'graph': pack_member(self.graph), 'weights': [[u, v, w] for (u, v), w in sorted(self._weights.items())]}
	
	@classmethod
	def __create__(cls, data):
		return cls(unpack_member(data['graph']), {(u, v): w for u, v, w in data['weights']})


def vertex_weight(inst: CircOriInstance, v: int) -> int:
	'''W_v: total weight of the edges incident to `v`'''
	return sum(inst.weight(v, u) for u in inst.graph.neighbors(v))


def total_weight(inst: CircOriInstance) -> int:
	'''W: total weight of all edges'''
	return sum(inst.weight(u, v) for u, v in inst.edges)


def in_weight(inst: CircOriInstance, o: Orientation, v: int) -> int:
	'''Total weight of the arcs pointing to `v`'''
	return sum(inst.weight(v, u) for u in inst.graph.neighbors(v) if o.head(u, v) == v)


def out_weight(inst: CircOriInstance, o: Orientation, v: int) -> int:
	'''Total weight of the arcs leaving `v`'''
	return sum(inst.weight(v, u) for u in inst.graph.neighbors(v) if o.tail(u, v) == v)


def unbalanced_vertex(inst: CircOriInstance, o: Orientation) -> Optional[Tuple[int, int, int]]:
	'''
	Find the first vertex where weighted in- and out-degree differ.
	
	:param inst: instance
	:param o: orientation of exactly the instance's edges
	:return: None if circulating, otherwise (vertex, in-weight, out-weight)
	'''
	o.check_against(inst.graph)
	for v in inst.graph.vertices:
		a, b = in_weight(inst, o, v), out_weight(inst, o, v)
		if a != b:
			return v, a, b
	return None


def is_circulating(inst: CircOriInstance, o: Orientation) -> bool:
	'''
	Check that every vertex has equal weighted in- and out-degree.
	
	:param inst: instance
	:param o: orientation of exactly the instance's edges (raises `OrientationMismatchError` otherwise)
	:return: True iff `o` is circulating
	'''
	return unbalanced_vertex(inst, o) is None


def odd_vertices(inst: CircOriInstance) -> Tuple[int, ...]:
	return tuple(v for v in inst.graph.vertices if vertex_weight(inst, v) % 2)


def parity_feasible(inst: CircOriInstance) -> bool:
	'''
	Necessary (not sufficient) condition for a circulating orientation: every W_v is even,
	since the in-weight of every vertex has to be exactly W_v / 2.
	'''
	return not len(odd_vertices(inst))


def solve_circori_brute(inst: CircOriInstance, cap: int = None) -> Optional[Orientation]:
	'''
	Exhaustive search for a circulating orientation.
	
	Edges are processed in ascending order, for edge (u, v) with u < v the branch u->v is tried first.
	A branch is abandoned as soon as some vertex has committed in- or out-weight above W_v / 2.
	
	:param inst: instance with at most `cap` edges
	:param cap: maximum number of edges (defaults to the `circori_edge_cap` setting)
	:return: the first circulating orientation in branch order, or None
	'''
	cap = setting('circori_edge_cap', cap)
	if inst.m > cap:
		raise CapExceededError('solve_circori_brute', inst.m, cap)
	if not parity_feasible(inst):
		return None
	
	edges = inst.edges
	wts = [inst.weight(u, v) for u, v in edges]
	half = {v: vertex_weight(inst, v) // 2 for v in inst.graph.vertices}
	ins = dict.fromkeys(half, 0)
	outs = dict.fromkeys(half, 0)
	choice = []
	nodes = 0
	
	def _search(i):
		nonlocal nodes
		nodes += 1
		if i == len(edges):
			return True
		u, v = edges[i]
		w = wts[i]
		for tail, head in ((u, v), (v, u)):
			if outs[tail] + w <= half[tail] and ins[head] + w <= half[head]:
				outs[tail] += w
				ins[head] += w
				choice.append((tail, head))
				if _search(i + 1):
					return True
				choice.pop()
				outs[tail] -= w
				ins[head] -= w
		return False
	
	found = _search(0)
	logger.debug('solve_circori_brute: m=%d, %d nodes, found=%s', inst.m, nodes, found)
	return Orientation(choice) if found else None


def solve_circori_naive(inst: CircOriInstance, cap: int = None) -> Optional[Orientation]:
	'''
	Enumerate all 2^m orientations in the branch order of `solve_circori_brute` (bit 0 = u->v for u < v).
	
	:param inst: instance with at most `cap` edges
	:param cap: maximum number of edges (defaults to the `naive_edge_cap` setting)
	:return: the first circulating orientation, or None
	'''
	cap = setting('naive_edge_cap', cap)
	if inst.m > cap:
		raise CapExceededError('solve_circori_naive', inst.m, cap)
	for bits in product((0, 1), repeat=inst.m):
		o = Orientation((u, v) if b == 0 else (v, u) for (u, v), b in zip(inst.edges, bits))
		if is_circulating(inst, o):
			return o
	return None


def _net_flow_instance(n: int, flow: Mapping[Tuple[int, int], int]) -> Tuple[CircOriInstance, Orientation]:
	weights = {}
	arcs = []
	for a, b in sorted({edge_key(*arc) for arc in flow}):
		net = flow.get((a, b), 0) - flow.get((b, a), 0)
		if net:
			weights[(a, b)] = abs(net)
			arcs.append((a, b) if net > 0 else (b, a))
	graph = Graph(range(1, n + 1), weights)
	return CircOriInstance(graph, weights), Orientation(arcs)


def gen_yes_instance(seed: int, n: int, cycle_count: int, wmax: int,
                     max_edges: int = None, retries: int = None) -> Tuple[CircOriInstance, Orientation]:
	'''
	Generate a connected instance together with a planted circulating orientation.
	
	Directed cycles with random amounts in [1..wmax] are superposed (the first one visits all n vertices),
	opposite flows on the same pair cancel, and the nonzero net flows become the weighted edges oriented
	along the flow. Every weight lies in [1..cycle_count * wmax] and every W_v is even.
	
	:param seed: random seed
	:param n: number of vertices (at least 3)
	:param cycle_count: number of superposed cycles (at least 1)
	:param wmax: maximum amount per cycle (at least 1)
	:param max_edges: (optional) regenerate until m <= max_edges
	:param retries: number of attempts (defaults to the `gen_retries` setting)
	:return: instance and planted circulating orientation
	'''
	if n < 3 or cycle_count < 1 or wmax < 1:
		raise InfeasibleParametersError('gen_yes_instance',
		                                'need n >= 3, cycle_count >= 1, wmax >= 1 (got {}, {}, {})'.format(
			                                n, cycle_count, wmax))
	if max_edges is not None and max_edges < n:
		raise InfeasibleParametersError('gen_yes_instance', 'max_edges {} < n {}'.format(max_edges, n))
	retries = setting('gen_retries', retries)
	
	rng = np.random.RandomState(seed)
	for attempt in range(retries):
		flow = {}
		for c in range(cycle_count):
			length = n if c == 0 else rng.randint(3, n + 1)
			cycle = [int(x) + 1 for x in rng.permutation(n)[:length]]
			amount = int(rng.randint(1, wmax + 1))
			for a, b in zip(cycle, cycle[1:] + cycle[:1]):
				flow[(a, b)] = flow.get((a, b), 0) + amount
		
		inst, planted = _net_flow_instance(n, flow)
		if not is_connected(inst.graph):
			logger.debug('gen_yes_instance(seed=%s): attempt %d disconnected', seed, attempt)
			continue
		if max_edges is not None and inst.m > max_edges:
			logger.debug('gen_yes_instance(seed=%s): attempt %d has %d > %d edges', seed, attempt, inst.m, max_edges)
			continue
		return inst, planted
	
	raise InfeasibleParametersError('gen_yes_instance', 'no connected instance after {} attempts'.format(retries))


def gen_random_instance(seed: int, n: int, m: int, wmax: int) -> CircOriInstance:
	'''
	Generate a connected instance with m edges and uniform weights in [1..wmax] (mostly NO instances).
	
	A random spanning tree (each vertex attaches to a random earlier vertex of a random permutation) is
	completed by m - n + 1 distinct random non-tree pairs.
	
	:param seed: random seed
	:param n: number of vertices (at least 1)
	:param m: number of edges, n - 1 <= m <= n (n - 1) / 2
	:param wmax: maximum weight (at least 1)
	:return: instance
	'''
	if n < 1 or wmax < 1 or not n - 1 <= m <= n * (n - 1) // 2:
		raise InfeasibleParametersError('gen_random_instance',
		                                'need n >= 1, wmax >= 1, n-1 <= m <= n(n-1)/2 (got n={}, m={}, wmax={})'.format(
			                                n, m, wmax))
	rng = np.random.RandomState(seed)
	perm = [int(x) + 1 for x in rng.permutation(n)]
	edges = set()
	for i in range(1, n):
		edges.add(edge_key(perm[i], perm[rng.randint(0, i)]))
	
	rest = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u, v) not in edges]
	if m > len(edges):
		for i in sorted(rng.choice(len(rest), m - len(edges), replace=False)):
			edges.add(rest[i])
	
	edges = sorted(edges)
	weights = {e: int(rng.randint(1, wmax + 1)) for e in edges}
	return CircOriInstance(Graph(range(1, n + 1), edges), weights)

