from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union
import logging
from collections import Counter
from itertools import product

from .config import setting
from .errors import ColoringError, ImproperColoringError, CapExceededError, InvalidColorCountError
from .graphs import Graph, degree
from .packing import Packable, pack_member, unpack_member
from .transactions import Transactionable

logger = logging.getLogger(__name__)


class BColInstance(Packable):
	'''b-Coloring instance: does `graph` have a b-coloring with `k` colors?'''
	
	def __init__(self, graph: Graph, k: int):
		if isinstance(k, bool) or not isinstance(k, int) or k < 1:
			raise InvalidColorCountError(k)
		self.graph = graph
		self.k = k
	
	def __repr__(self):
		return '{}(n={}, m={}, k={})'.format(type(self).__name__, self.graph.n, self.graph.m, self.k)
	
	def __pack__(self):
		return {'graph': pack_member(self.graph), 'k': self.k}
	
	@classmethod
	def __create__(cls, data):
		return cls(unpack_member(data['graph']), data['k'])


class Coloring(Transactionable, Packable):
	'''
	Assignment vertex -> color in [0..k-1].
	
	Colorings are Transactionable, so tentative recolorings can be rolled back:
	
	with coloring:
		coloring[v] = 3
		ok = is_b_coloring(inst, coloring)
		raise AbortTransaction
	'''
	
	def __init__(self, assignment: Union[Mapping[int, int], Iterable[Tuple[int, int]]] = ()):
		self._data = dict(assignment)
		self._shadow = None
	
	def in_transaction(self):
		return self._shadow is not None
	
	def begin(self):
		if self.in_transaction():
			return
		self._shadow = self._data.copy()
	
	def commit(self):
		self._shadow = None
	
	def abort(self):
		if not self.in_transaction():
			return
		self._data = self._shadow
		self._shadow = None
	
	def copy(self) -> 'Coloring':
		return Coloring(self._data)
	
	def colors(self) -> FrozenSet[int]:
		'''The colors in use'''
		return frozenset(self._data.values())
	
	def permuted(self, perm: Mapping[int, int]) -> 'Coloring':
		'''Rename every color through `perm`'''
		return Coloring((v, perm[c]) for v, c in self._data.items())
	
	def items(self) -> Iterator[Tuple[int, int]]:
		'''(vertex, color) pairs in ascending vertex order'''
		for v in sorted(self._data):
			yield v, self._data[v]
	
	def get(self, v: int, default: int = None) -> Optional[int]:
		return self._data.get(v, default)
	
	def __getitem__(self, v: int) -> int:
		return self._data[v]
	
	def __setitem__(self, v: int, color: int):
		self._data[v] = color
	
	def __delitem__(self, v: int):
		del self._data[v]
	
	def __contains__(self, v: int) -> bool:
		return v in self._data
	
	def __len__(self) -> int:
		return len(self._data)
	
	def __iter__(self) -> Iterator[int]:
		return iter(sorted(self._data))
	
	def __eq__(self, other):
		return isinstance(other, Coloring) and self._data == other._data
	
	def __repr__(self):
		return 'Coloring({})'.format(', '.join('{}:{}'.format(v, c) for v, c in self.items()))
	
	def __pack__(self):
		return [[v, c] for v, c in self.items()]
	
	@classmethod
	def __create__(cls, data):
		return cls((v, c) for v, c in data)


def color_classes(c: Coloring) -> Dict[int, FrozenSet[int]]:
	'''Vertices per color (only colors in use)'''
	classes = {}
	for v, q in c.items():
		classes.setdefault(q, set()).add(v)
	return {q: frozenset(vs) for q, vs in sorted(classes.items())}


def _check_total(inst: BColInstance, c: Coloring) -> None:
	for v in inst.graph.vertices:
		if v not in c:
			raise ColoringError('vertex {} has no color'.format(v))
		q = c[v]
		if isinstance(q, bool) or not isinstance(q, int) or not 0 <= q < inst.k:
			raise ColoringError('vertex {} has color {!r} outside [0..{}]'.format(v, q, inst.k - 1))
	if len(c) != inst.graph.n:
		extra = sorted(v for v in c if v not in inst.graph)
		raise ColoringError('colors given for unknown vertices {}'.format(extra))


def _monochromatic_edge(inst: BColInstance, c: Coloring) -> Optional[Tuple[int, int]]:
	for u, v in inst.graph.edges:
		if c[u] == c[v]:
			return u, v
	return None


def is_proper(inst: BColInstance, c: Coloring) -> bool:
	'''
	Check that no edge is monochromatic.
	
	:param inst: instance
	:param c: total coloring with colors in [0..k-1] (raises `ColoringError` otherwise)
	:return: True iff `c` is proper
	'''
	_check_total(inst, c)
	return _monochromatic_edge(inst, c) is None


def _is_b_vertex(g: Graph, c: Coloring, v: int, k: int) -> bool:
	# in a proper coloring the own color never shows up among the neighbors
	return len({c[u] for u in g.neighbors(v)}) == k - 1


def b_vertices(inst: BColInstance, c: Coloring) -> Dict[int, FrozenSet[int]]:
	'''
	The b-vertices of every color: vertices with a neighbor in every other color class.
	
	:param inst: instance
	:param c: proper coloring (raises `ImproperColoringError` otherwise)
	:return: color -> set of b-vertices of that color, for every color in [0..k-1]
	'''
	_check_total(inst, c)
	mono = _monochromatic_edge(inst, c)
	if mono is not None:
		raise ImproperColoringError(mono, c[mono[0]])
	found = {q: set() for q in range(inst.k)}
	for v in inst.graph.vertices:
		if _is_b_vertex(inst.graph, c, v, inst.k):
			found[c[v]].add(v)
	return {q: frozenset(vs) for q, vs in found.items()}


def b_coloring_defect(inst: BColInstance, c: Coloring) -> Optional[str]:
	'''
	Explain why `c` is not a b-coloring with k colors.
	
	:param inst: instance
	:param c: any coloring
	:return: None for a b-coloring, otherwise a description of the first defect
	'''
	try:
		_check_total(inst, c)
	except ColoringError as e:
		return str(e)
	mono = _monochromatic_edge(inst, c)
	if mono is not None:
		return 'edge {{{},{}}} is monochromatic (color {})'.format(mono[0], mono[1], c[mono[0]])
	found = b_vertices(inst, c)
	for q in range(inst.k):
		if not found[q]:
			return 'color {} has no b-vertex'.format(q)
	return None


def is_b_coloring(inst: BColInstance, c: Coloring) -> bool:
	'''
	Check that `c` is proper and every color in [0..k-1] has a b-vertex (so every class is nonempty).
	
	:param inst: instance
	:param c: any coloring (malformed colorings are rejected, not raised)
	:return: True iff `c` is a b-coloring with k colors
	'''
	defect = b_coloring_defect(inst, c)
	if defect is not None:
		logger.debug('not a b-coloring: %s', defect)
	return defect is None


def recoloring_defects(inst: BColInstance, c: Coloring) -> Iterator[Tuple[int, int, Optional[str]]]:
	'''
	Judge every single-vertex recoloring of a proper coloring without recoloring anything.
	
	Recoloring v only changes what the neighbors of v see, so only v and N(v) can gain or lose their
	b-vertex status, and each verdict costs O(deg v) instead of a full `b_coloring_defect`.
	
	:param inst: instance
	:param c: proper coloring (raises `ImproperColoringError` otherwise)
	:return: (v, q, defect) for every vertex v and every color q != c[v], where defect is None iff `c` with v
		recolored to q is a b-coloring with k colors
	'''
	found = b_vertices(inst, c)
	g, k = inst.graph, inst.k
	seen = {v: Counter(c[u] for u in g.neighbors(v)) for v in g.vertices}
	is_b = {v: len(seen[v]) == k - 1 for v in g.vertices}
	count = {q: len(vs) for q, vs in found.items()}
	empty = {q for q, n in count.items() if n == 0}
	
	for v in g.vertices:
		p = c[v]
		for q in range(k):
			if q == p:
				continue
			if seen[v][q]:
				u = min(u for u in g.neighbors(v) if c[u] == q)
				yield v, q, 'edge {{{},{}}} is monochromatic (color {})'.format(min(u, v), max(u, v), q)
				continue
			# afterwards N(v) misses both p and q, so v is never a b-vertex
			delta = Counter()
			if is_b[v]:
				delta[p] -= 1
			for u in g.neighbors(v):
				colors = len(seen[u]) - (seen[u][p] == 1) + (seen[u][q] == 0)
				if (colors == k - 1) != is_b[u]:
					delta[c[u]] += -1 if is_b[u] else 1
			missing = [r for r in empty.union(delta) if count[r] + delta[r] <= 0]
			yield v, q, None if not missing else 'color {} has no b-vertex'.format(min(missing))
	
	
def _check_budget(inst: BColInstance, budget: Optional[int], max_n: Optional[int], max_k: Optional[int]) -> None:
	n, k = inst.graph.n, inst.k
	if budget is not None:
		if k ** n > budget:
			raise CapExceededError('solve_bcol_brute', 'k^n={}'.format(k ** n), budget)
		return
	max_n, max_k = setting('bcol_max_n', max_n), setting('bcol_max_k', max_k)
	if n > max_n or k > max_k:
		raise CapExceededError('solve_bcol_brute', 'n={}, k={}'.format(n, k), 'n<={}, k<={}'.format(max_n, max_k))


def solve_bcol_brute(inst: BColInstance, budget: int = None, max_n: int = None,
                     max_k: int = None) -> Optional[Coloring]:
	'''
	Exhaustive search for a b-coloring with k colors (a desk-scale oracle, never meant for reduced instances).
	
	Vertices are colored in ascending id order with ascending colors, and a vertex may only open the next
	unused color (canonical form up to renaming colors). The only global prune is the degree count: a b-vertex
	needs degree at least k-1, and k of them are needed.
	
	:param inst: instance
	:param budget: (optional) bound on k^n, replaces the n/k caps
	:param max_n: maximum number of vertices (defaults to the `bcol_max_n` setting)
	:param max_k: maximum number of colors (defaults to the `bcol_max_k` setting)
	:return: the first b-coloring in search order, or None
	'''
	_check_budget(inst, budget, max_n, max_k)
	g, k = inst.graph, inst.k
	if k > g.n:
		return None
	if sum(1 for v in g.vertices if degree(g, v) >= k - 1) < k:
		logger.debug('solve_bcol_brute: fewer than %d vertices of degree >= %d', k, k - 1)
		return None
	
	verts = g.vertices
	colors = Coloring()
	nodes = 0
	
	def _search(i, top):
		nonlocal nodes
		nodes += 1
		if i == len(verts):
			return top == k - 1 and all(any(_is_b_vertex(g, colors, v, k) for v in cls)
			                            for cls in color_classes(colors).values())
		v = verts[i]
		used = {colors[u] for u in g.neighbors(v) if u in colors}
		for q in range(min(k - 1, top + 1) + 1):
			if q not in used:
				colors[v] = q
				if _search(i + 1, max(top, q)):
					return True
		if v in colors:
			del colors[v]
		return False
	
	found = _search(0, -1)
	logger.debug('solve_bcol_brute: n=%d, k=%d, %d nodes, found=%s', g.n, k, nodes, found)
	return colors.copy() if found else None


def solve_bcol_naive(inst: BColInstance, cap: int = None) -> Optional[Coloring]:
	'''
	Enumerate all k^n assignments (in lexicographic order over ascending vertices).
	
	:param inst: instance
	:param cap: maximum k^n (defaults to the `naive_assignments` setting)
	:return: the first b-coloring found, or None
	'''
	cap = setting('naive_assignments', cap)
	g, k = inst.graph, inst.k
	if k ** g.n > cap:
		raise CapExceededError('solve_bcol_naive', 'k^n={}'.format(k ** g.n), cap)
	for colors in product(range(k), repeat=g.n):
		c = Coloring(zip(g.vertices, colors))
		if is_b_coloring(inst, c):
			return c
	return None

