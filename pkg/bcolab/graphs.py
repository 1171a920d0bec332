from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Tuple

from .errors import InvalidGraphError, UnknownVertexError, OrientationMismatchError
from .packing import Packable, pack_member, unpack_member

EDGE = Tuple[int, int]


def edge_key(u: int, v: int) -> EDGE:
	'''Canonical (min, max) representation of the unordered pair {u, v}'''
	return (u, v) if u < v else (v, u)


class Graph(Packable):
	'''
	Finite simple undirected graph over positive integer vertex ids.
	
	Instances are immutable. Neighborhoods are kept as ascending tuples, so every iteration over vertices, edges
	or neighbors is deterministic.
	'''
	
	def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()):
		'''
		:param vertices: vertex ids (positive integers), duplicates are ignored
		:param edges: pairs of declared vertices (each unordered pair at most once, no self-loops)
		'''
		verts = set()
		for v in vertices:
			if isinstance(v, bool) or not isinstance(v, int) or v < 1:
				raise InvalidGraphError('vertex ids must be positive integers, got {!r}'.format(v))
			verts.add(v)
		
		nbrs = {v: [] for v in verts}
		keys = set()
		for u, v in edges:
			if u == v:
				raise InvalidGraphError('self-loop at {}'.format(u))
			if u not in nbrs or v not in nbrs:
				raise InvalidGraphError('edge {} has an undeclared endpoint'.format((u, v)))
			key = edge_key(u, v)
			if key in keys:
				raise InvalidGraphError('parallel edge {}'.format(key))
			keys.add(key)
			nbrs[u].append(v)
			nbrs[v].append(u)
		
		self._vertices = tuple(sorted(verts))
		self._edges = tuple(sorted(keys))
		self._nbrs = {v: tuple(sorted(ns)) for v, ns in nbrs.items()}
		self._nbr_sets = {v: frozenset(ns) for v, ns in nbrs.items()}
	
	@property
	def vertices(self) -> Tuple[int, ...]:
		'''All vertex ids in ascending order'''
		return self._vertices
	
	@property
	def edges(self) -> Tuple[EDGE, ...]:
		'''All edges as (min, max) pairs in ascending order'''
		return self._edges
	
	@property
	def n(self) -> int:
		return len(self._vertices)
	
	@property
	def m(self) -> int:
		return len(self._edges)
	
	def neighbors(self, v: int) -> Tuple[int, ...]:
		'''Neighbors of `v` in ascending order'''
		try:
			return self._nbrs[v]
		except KeyError:
			raise UnknownVertexError(v)
	
	def neighbor_set(self, v: int) -> FrozenSet[int]:
		try:
			return self._nbr_sets[v]
		except KeyError:
			raise UnknownVertexError(v)
	
	def has_edge(self, u: int, v: int) -> bool:
		return u in self._nbr_sets and v in self._nbr_sets[u]
	
	def relabel(self, mapping: Mapping[int, int]) -> 'Graph':
		'''
		Rename every vertex (the mapping must be injective on the vertex set).
		
		:param mapping: old id -> new id
		:return: isomorphic copy
		'''
		return Graph((mapping[v] for v in self._vertices), ((mapping[u], mapping[v]) for u, v in self._edges))
	
	def __contains__(self, v: int) -> bool:
		return v in self._nbrs
	
	def __len__(self) -> int:
		return len(self._vertices)
	
	def __iter__(self) -> Iterator[int]:
		return iter(self._vertices)
	
	def __eq__(self, other):
		return isinstance(other, Graph) and self._vertices == other._vertices and self._edges == other._edges
	
	def __hash__(self):
		return hash((self._vertices, self._edges))
	
	def __repr__(self):
		return 'Graph(n={}, m={})'.format(self.n, self.m)
	
	def __pack__(self):
		return {'vertices': list(self._vertices), 'edges': [list(e) for e in self._edges]}
	
	@classmethod
	def __create__(cls, data):
		return cls(data['vertices'], (tuple(e) for e in data['edges']))


def canonical_labels(g: Graph) -> Dict[int, int]:
	'''Mapping from the vertex ids of `g` (ascending) to 1..n, used when writing files'''
	return {v: i for i, v in enumerate(g.vertices, 1)}


def degree(g: Graph, v: int) -> int:
	'''
	Number of edges incident to `v`.
	
	:param g: graph
	:param v: vertex of `g`
	:return: degree of `v`
	'''
	return len(g.neighbors(v))


def connected_components(g: Graph) -> Tuple[Tuple[int, ...], ...]:
	'''Vertex sets of the connected components, each ascending, ordered by their smallest vertex'''
	seen = set()
	comps = []
	for root in g.vertices:
		if root in seen:
			continue
		seen.add(root)
		comp = [root]
		stack = [root]
		while stack:
			for u in g.neighbors(stack.pop()):
				if u not in seen:
					seen.add(u)
					comp.append(u)
					stack.append(u)
		comps.append(tuple(sorted(comp)))
	return tuple(comps)


def is_connected(g: Graph) -> bool:
	'''True iff `g` has at most one connected component (the empty graph counts as connected)'''
	return len(connected_components(g)) <= 1


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
	'''
	Check that no edge of `g` has both endpoints in `s`.
	
	:param g: graph
	:param s: vertices of `g`
	:return: True iff `s` is independent
	'''
	s = frozenset(s)
	for v in s:
		if v not in g:
			raise UnknownVertexError(v)
	return all(s.isdisjoint(g.neighbor_set(v)) for v in s)


class Orientation(Packable):
	'''
	An orientation of a graph: every edge {u, v} replaced by exactly one of the arcs (u, v) or (v, u).
	
	Arcs are stored per edge key, so two orientations compare equal iff they agree edge by edge.
	'''
	
	def __init__(self, arcs: Iterable[Tuple[int, int]] = ()):
		'''
		:param arcs: (tail, head) pairs, at most one per unordered pair
		'''
		self._arcs = {}
		for tail, head in arcs:
			key = edge_key(tail, head)
			if tail == head or key in self._arcs:
				raise InvalidGraphError('arc {} repeats an edge or is a loop'.format((tail, head)))
			self._arcs[key] = (tail, head)
	
	@property
	def arcs(self) -> Tuple[EDGE, ...]:
		'''(tail, head) pairs in ascending edge order'''
		return tuple(self._arcs[key] for key in sorted(self._arcs))
	
	def head(self, u: int, v: int) -> int:
		'''The endpoint the edge {u, v} points to'''
		return self._arcs[edge_key(u, v)][1]
	
	def tail(self, u: int, v: int) -> int:
		return self._arcs[edge_key(u, v)][0]
	
	def reversed(self) -> 'Orientation':
		return Orientation((head, tail) for tail, head in self._arcs.values())
	
	def check_against(self, g: Graph) -> None:
		'''
		Make sure the arcs project bijectively onto the edges of `g`.
		
		:param g: the base graph
		:raises OrientationMismatchError: if some edge is unoriented or some arc has no edge
		'''
		keys = set(self._arcs)
		edges = set(g.edges)
		if keys != edges:
			raise OrientationMismatchError(missing=edges - keys, extra=keys - edges)
	
	def __len__(self) -> int:
		return len(self._arcs)
	
	def __iter__(self) -> Iterator[EDGE]:
		return iter(self.arcs)
	
	def __eq__(self, other):
		return isinstance(other, Orientation) and self._arcs == other._arcs
	
	def __hash__(self):
		return hash(self.arcs)
	
	def __repr__(self):
		return 'Orientation({})'.format(', '.join('{}->{}'.format(t, h) for t, h in self.arcs))
	
	def __pack__(self):
		return [list(arc) for arc in self.arcs]
	
	@classmethod
	def __create__(cls, data):
		return cls(tuple(arc) for arc in data)

