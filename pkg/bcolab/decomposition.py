from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple
import logging
from collections import Counter

import numpy as np

from .config import setting
from .errors import (InvalidDecompositionError, EmptyDecompositionError, OrderIndexError, MalformedOrderError,
                     InfeasibleParametersError, CapExceededError)
from .graphs import Graph, EDGE
from .packing import Packable

logger = logging.getLogger(__name__)


class PathDecomposition(Packable):
	'''
	Sequence of bags B_1, ..., B_d. Python indexing is 0-based, while all reports (violations, files)
	use the 1-based bag index.
	'''
	
	def __init__(self, bags: Iterable[Iterable[int]] = ()):
		self._bags = tuple(frozenset(bag) for bag in bags)
	
	@property
	def bags(self) -> Tuple[FrozenSet[int], ...]:
		return self._bags
	
	def vertices(self) -> FrozenSet[int]:
		'''Union of all bags'''
		return frozenset().union(*self._bags)
	
	def leftmost(self) -> Dict[int, int]:
		'''For each vertex, the 0-based index of the first bag containing it'''
		first = {}
		for i, bag in enumerate(self._bags):
			for v in bag:
				first.setdefault(v, i)
		return first
	
	def relabel(self, mapping: Mapping[int, int]) -> 'PathDecomposition':
		return PathDecomposition({mapping[v] for v in bag} for bag in self._bags)
	
	def __len__(self) -> int:
		return len(self._bags)
	
	def __getitem__(self, item):
		return self._bags[item]
	
	def __iter__(self) -> Iterator[FrozenSet[int]]:
		return iter(self._bags)
	
	def __eq__(self, other):
		return isinstance(other, PathDecomposition) and self._bags == other._bags
	
	def __hash__(self):
		return hash(self._bags)
	
	def __repr__(self):
		return 'PathDecomposition(d={})'.format(len(self._bags))
	
	def __pack__(self):
		return [sorted(bag) for bag in self._bags]
	
	@classmethod
	def __create__(cls, data):
		return cls(data)


class LinearOrder(Packable):
	'''A sequence v_1, ..., v_n listing each vertex exactly once'''
	
	def __init__(self, sequence: Iterable[int] = ()):
		self._seq = tuple(sequence)
		self._pos = {v: i for i, v in enumerate(self._seq)}
		if len(self._pos) != len(self._seq):
			dups = sorted(v for v, c in Counter(self._seq).items() if c > 1)
			raise MalformedOrderError('repeated vertices {}'.format(dups))
	
	@property
	def sequence(self) -> Tuple[int, ...]:
		return self._seq
	
	def position(self, v: int) -> int:
		'''1-based position of `v`'''
		return self._pos[v] + 1
	
	def prefix(self, i: int) -> FrozenSet[int]:
		'''The set {v_1, ..., v_i}'''
		return frozenset(self._seq[:i])
	
	def __len__(self) -> int:
		return len(self._seq)
	
	def __iter__(self) -> Iterator[int]:
		return iter(self._seq)
	
	def __getitem__(self, item):
		return self._seq[item]
	
	def __eq__(self, other):
		return isinstance(other, LinearOrder) and self._seq == other._seq
	
	def __hash__(self):
		return hash(self._seq)
	
	def __repr__(self):
		return 'LinearOrder({})'.format(', '.join(map(str, self._seq)))
	
	def __pack__(self):
		return list(self._seq)
	
	@classmethod
	def __create__(cls, data):
		return cls(data)


class Violation(Packable):
	'''
	First violated axiom of a path decomposition.
	
	`axiom` is one of 'membership' (a bag holds a vertex outside the graph), 'vertex-coverage', 'edge-coverage'
	or 'interval'. Bag indices are 1-based.
	'''
	
	def __init__(self, axiom: str, message: str, vertex: int = None, edge: EDGE = None, bags: Sequence[int] = ()):
		self.axiom = axiom
		self.message = message
		self.vertex = vertex
		self.edge = edge
		self.bags = tuple(bags)
	
	def __str__(self):
		return self.message
	
	def __repr__(self):
		return 'Violation({}: {})'.format(self.axiom, self.message)
	
	def __pack__(self):
		return {'axiom': self.axiom, 'message': self.message, 'vertex': self.vertex,
		        'edge': None if self.edge is None else list(self.edge), 'bags': list(self.bags)}
	
	@classmethod
	def __create__(cls, data):
		edge = data['edge']
		return cls(data['axiom'], data['message'], vertex=data['vertex'],
		           edge=None if edge is None else tuple(edge), bags=data['bags'])


def validate_pd(g: Graph, pd: PathDecomposition) -> Optional[Violation]:
	'''
	Check the path decomposition axioms.
	
	:param g: graph
	:param pd: candidate path decomposition of `g`
	:return: None if `pd` is valid, otherwise the first violation found (membership, vertex coverage,
	edge coverage, then the interval property; vertices and edges in ascending order)
	'''
	occ = {v: [] for v in g.vertices}
	for i, bag in enumerate(pd, 1):
		for v in sorted(bag):
			if v not in occ:
				return Violation('membership', 'bag {} contains {}, which is not a vertex'.format(i, v),
				                 vertex=v, bags=[i])
			occ[v].append(i)
	
	for v in g.vertices:
		if not occ[v]:
			return Violation('vertex-coverage', 'vertex {} is in no bag'.format(v), vertex=v)
	
	occ_sets = {v: set(idx) for v, idx in occ.items()}
	for u, v in g.edges:
		if occ_sets[u].isdisjoint(occ_sets[v]):
			return Violation('edge-coverage', 'edge {{{},{}}} uncovered'.format(u, v), edge=(u, v))
	
	for v in g.vertices:
		idx = occ[v]
		if idx[-1] - idx[0] + 1 != len(idx):
			for a, b in zip(idx, idx[1:]):
				if b != a + 1:
					return Violation('interval', 'vertex {} absent from bag {} between bags {} and {}'.format(
						v, a + 1, a, b), vertex=v, bags=[a, a + 1, b])
	
	return None


def pd_width(pd: PathDecomposition) -> int:
	'''
	Width of a path decomposition: the largest bag size minus one.
	
	:param pd: decomposition with at least one bag
	:return: width
	'''
	if not len(pd):
		raise EmptyDecompositionError()
	return max(len(bag) for bag in pd) - 1


def pd_to_linear_order(g: Graph, pd: PathDecomposition) -> LinearOrder:
	'''
	Order the vertices by the index of the leftmost bag containing them, ties broken by ascending id.
	
	The module-width of the result is at most pd_width(pd) + 2: for every prefix, at most width + 1 of its
	vertices have a neighbor outside the prefix, and all remaining prefix vertices form one more class.
	
	:param g: graph
	:param pd: valid path decomposition of `g`
	:return: linear order of the vertices of `g`
	'''
	violation = validate_pd(g, pd)
	if violation is not None:
		raise InvalidDecompositionError(violation)
	first = pd.leftmost()
	return LinearOrder(sorted(g.vertices, key=lambda v: (first[v], v)))


def _check_order(g: Graph, order: LinearOrder) -> None:
	if len(order) != g.n or set(order) != set(g.vertices):
		missing = sorted(set(g.vertices) - set(order))
		extra = sorted(set(order) - set(g.vertices))
		raise MalformedOrderError('missing {}, unknown {}'.format(missing, extra))


def _module_number(g: Graph, prefix: FrozenSet[int]) -> int:
	return len({g.neighbor_set(v) - prefix for v in prefix})


def module_number(g: Graph, order: LinearOrder, i: int) -> int:
	'''
	Number of classes of S = {v_1, ..., v_i} under "same neighbors outside S".
	
	:param g: graph
	:param order: linear order of the vertices of `g`
	:param i: prefix length in [1..n]
	:return: module number of the prefix
	'''
	_check_order(g, order)
	if not 1 <= i <= len(order):
		raise OrderIndexError(i, len(order))
	return _module_number(g, order.prefix(i))


def module_numbers(g: Graph, order: LinearOrder) -> List[int]:
	'''
	Module numbers of all prefixes, computed incrementally.
	
	:param g: graph
	:param order: linear order of the vertices of `g`
	:return: list whose (i-1)-th entry is module_number(g, order, i)
	'''
	_check_order(g, order)
	inside = set()
	outside_nbrs = {}
	counts = Counter()
	numbers = []
	for v in order:
		inside.add(v)
		for u in g.neighbors(v):
			if u in outside_nbrs:
				old = outside_nbrs[u]
				counts[old] -= 1
				if not counts[old]:
					del counts[old]
				outside_nbrs[u] = old - {v}
				counts[outside_nbrs[u]] += 1
		sig = frozenset(u for u in g.neighbors(v) if u not in inside)
		outside_nbrs[v] = sig
		counts[sig] += 1
		numbers.append(len(counts))
	return numbers


def module_width(g: Graph, order: LinearOrder) -> int:
	'''
	Module-width of a linear order: the maximum module number over all prefixes (0 for the empty graph).
	
	:param g: graph
	:param order: linear order of the vertices of `g`
	:return: module-width
	'''
	return max(module_numbers(g, order), default=0)


def linear_module_width_brute(g: Graph, cap: int = None) -> Tuple[int, LinearOrder]:
	'''
	Exact linear module-width (minimum module-width over all orders).
	
	The module number only depends on the prefix set, so this is a dynamic program over vertex subsets:
	best(S) = max(mn(S), min over v in S of best(S - v)).
	
	:param g: graph with at most `cap` vertices
	:param cap: maximum number of vertices (defaults to the `order_brute_cap` setting)
	:return: linear module-width and an order attaining it
	'''
	cap = setting('order_brute_cap', cap)
	n = g.n
	if n > cap:
		raise CapExceededError('linear_module_width_brute', n, cap)
	verts = g.vertices
	
	best = {0: (0, None)}
	for mask in range(1, 1 << n):
		prefix = frozenset(verts[i] for i in range(n) if mask >> i & 1)
		own = _module_number(g, prefix)
		choice = None
		for i in range(n):
			if mask >> i & 1:
				sub = best[mask ^ (1 << i)][0]
				if choice is None or sub < choice[0]:
					choice = (sub, i)
		best[mask] = (max(own, choice[0]), choice[1])
	
	seq = []
	mask = (1 << n) - 1
	while mask:
		last = best[mask][1]
		seq.append(verts[last])
		mask ^= 1 << last
	return best[(1 << n) - 1][0], LinearOrder(reversed(seq))


def gen_pd_graph(seed: int, n: int, w: int, density: float) -> Tuple[Graph, PathDecomposition]:
	'''
	Sample a connected graph together with a path decomposition of width w.
	
	The bags are the windows of size w+1 sliding over a random permutation of 1..n. Consecutive vertices of the
	permutation are always adjacent (connectivity), every other pair sharing a window becomes an edge with
	probability `density`.
	
	:param seed: random seed
	:param n: number of vertices
	:param w: width, 1 <= w < n
	:param density: edge probability in [0, 1]
	:return: graph and decomposition
	'''
	if not 1 <= w < n:
		raise InfeasibleParametersError('gen_pd_graph', 'need 1 <= w < n, got n={}, w={}'.format(n, w))
	if not 0. <= density <= 1.:
		raise InfeasibleParametersError('gen_pd_graph', 'density {} outside [0, 1]'.format(density))
	
	rng = np.random.RandomState(seed)
	seq = [int(x) + 1 for x in rng.permutation(n)]
	bags = [seq[i:i + w + 1] for i in range(n - w)]
	
	edges = []
	for i in range(n):
		for j in range(i + 1, min(n, i + w + 1)):
			if j == i + 1 or rng.random_sample() < density:
				edges.append((seq[i], seq[j]))
	
	logger.debug('gen_pd_graph(seed=%s): n=%d, m=%d, w=%d', seed, n, len(edges), w)
	return Graph(range(1, n + 1), edges), PathDecomposition(bags)

