'''
The reduction from Circulating Orientation to b-Coloring.

Given (G, weight) with n vertices, m edges and total weight W, the reduced instance (H, k) uses
k = 2W + 3m + n + 2 colors and consists of

- the superstar S* (center s*, k-1 leaves) whose first 2W leaves are partitioned into the blocks L_{e,v}
  (|L_{e,v}| = weight(e)) in ascending (edge index, endpoint) order,
- 2W+1 anonymous stars with k-1 leaves,
- a vertex gadget per v: v itself, joined to the independent set P_v (|P_v| = k - 3/2 W_v - 1) and to every
  block L_{e,v},
- an edge gadget per e = uv: x_{e,u} ~ Y_e + Z_e + L_{e,u}, x_{e,v} ~ Y_e + Z_e + L_{e,v}, u and v ~ Y_e
  (|Y_e| = weight(e)), and the adjacent pair q_{e,1}, q_{e,2}, each joined to Z_e + L_{e,u} + L_{e,v} + both
  x-vertices (|Z_e| = k - 2 weight(e) - 3).

Edges are indexed 1..m in ascending (min endpoint, max endpoint) order, and H vertices are numbered 1..|V(H)|
in construction order.
'''

from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Set, Tuple
import logging
from collections import namedtuple

import numpy as np

from .bcoloring import BColInstance, Coloring, b_vertices, b_coloring_defect, is_proper
from .circori import (CircOriInstance, total_weight, vertex_weight, odd_vertices, unbalanced_vertex, in_weight)
from .decomposition import PathDecomposition, validate_pd
from .errors import (ZeroWeightError, DisconnectedGraphError, ParityInfeasibleError, NotCirculatingError,
                     InstanceMismatchError, OrientationMismatchError, MalformedColoringError, BalanceViolationError,
                     ConstructionInvariantError, AuditPreconditionError, InvalidDecompositionError, ColoringError,
                     ImproperColoringError, PreconditionError)
from .graphs import Graph, Orientation, EDGE, connected_components, degree, is_independent_set
from .packing import Packable, pack_member, unpack_member

logger = logging.getLogger(__name__)


SUPERSTAR_CENTER = 'S'
SUPERSTAR_LEAF = 'SL'
ANON_CENTER = 'A'
ANON_LEAF = 'AL'
ORIG = 'V'
PAD = 'P'
X = 'X'
Y = 'Y'
Z = 'Z'
Q = 'Q'
L = 'L'

# rolemap tokens following the kind, per kind
_role_fields = {
	SUPERSTAR_CENTER: (),
	SUPERSTAR_LEAF: ('index',),
	ANON_CENTER: ('star',),
	ANON_LEAF: ('star', 'index'),
	ORIG: ('vertex',),
	PAD: ('vertex', 'index'),
	X: ('edge', 'vertex'),
	Y: ('edge', 'index'),
	Z: ('edge', 'index'),
	Q: ('edge', 'index'),
	L: ('edge', 'vertex', 'index'),
}
ROLE_KINDS = tuple(_role_fields)

_VertexRole = namedtuple('_VertexRole', ['kind', 'edge', 'vertex', 'star', 'index', 'leaf'],
                         defaults=(None, None, None, None, None))


class VertexRole(Packable, _VertexRole):
	'''
	Gadget of origin of a vertex of H.
	
	`edge` is the 1-based edge index, `vertex` a vertex of G, `star` the anonymous star number and `index` the
	position inside the gadget set (for Q the side h in {1, 2}). L-vertices are also superstar leaves, their leaf
	number is kept in `leaf`.
	'''
	__slots__ = ()
	
	def tokens(self) -> List[str]:
		'''Rolemap tokens, e.g. ['L', '2', '1', '3'] for the third vertex of L_{e_2, 1}'''
		return [self.kind] + [str(getattr(self, f)) for f in _role_fields[self.kind]]
	
	@classmethod
	def from_tokens(cls, tokens: Sequence[str]) -> 'VertexRole':
		'''
		Inverse of `tokens` (the leaf number of L-vertices is not part of the tokens).
		
		:raises ValueError: for unknown kinds or a wrong number of (integer) tokens
		'''
		kind, rest = tokens[0], tokens[1:]
		if kind not in _role_fields:
			raise ValueError('unknown role {!r}'.format(kind))
		fields = _role_fields[kind]
		if len(rest) != len(fields):
			raise ValueError('role {} takes {} numbers, got {}'.format(kind, len(fields), len(rest)))
		return cls(kind, **{f: int(t) for f, t in zip(fields, rest)})
	
	def __str__(self):
		return ' '.join(self.tokens())
	
	def __pack__(self):
		return list(self)
	
	@classmethod
	def __create__(cls, data):
		return cls(*data)


def compute_k(inst: CircOriInstance) -> int:
	'''Number of colors of the reduced instance: 2W + 3m + n + 2'''
	return 2 * total_weight(inst) + 3 * inst.m + inst.n + 2


def expected_size(inst: CircOriInstance) -> int:
	'''|V(H)| = k (2W + 2 + n + m) - 4W + m'''
	W = total_weight(inst)
	return compute_k(inst) * (2 * W + 2 + inst.n + inst.m) - 4 * W + inst.m


class ReducedInstance(BColInstance):
	'''
	The b-Coloring instance (H, k) together with the role of every vertex of H and the source instance.
	
	Besides `roles`, the gadgets are indexed for direct access: `superstar`, `superstar_leaves` (by leaf number),
	`anon_centers`/`anon_leaves` (by star number), `orig`/`pads` (by vertex of G), `x` and `l_blocks` (by
	(edge index, endpoint)), `y`/`z` (by edge index) and `q` (by (edge index, side)).
	'''
	
	def __init__(self, graph: Graph, k: int, roles: Mapping[int, VertexRole], source: CircOriInstance):
		super().__init__(graph, k)
		self.roles = dict(roles)
		self.source = source
		self.edges = source.edges
		
		self.superstar = None
		self.superstar_leaves = {}
		self.anon_centers = {}
		self.anon_leaves = {}
		self.orig = {}
		self.pads = {}
		self.x = {}
		self.y = {}
		self.z = {}
		self.q = {}
		self.l_blocks = {}
		
		for hid in sorted(self.roles):
			r = self.roles[hid]
			if r.kind == SUPERSTAR_CENTER:
				self.superstar = hid
			elif r.kind == SUPERSTAR_LEAF:
				self.superstar_leaves[r.index] = hid
			elif r.kind == ANON_CENTER:
				self.anon_centers[r.star] = hid
			elif r.kind == ANON_LEAF:
				self.anon_leaves.setdefault(r.star, {})[r.index] = hid
			elif r.kind == ORIG:
				self.orig[r.vertex] = hid
			elif r.kind == PAD:
				self.pads.setdefault(r.vertex, {})[r.index] = hid
			elif r.kind == X:
				self.x[r.edge, r.vertex] = hid
			elif r.kind == Y:
				self.y.setdefault(r.edge, {})[r.index] = hid
			elif r.kind == Z:
				self.z.setdefault(r.edge, {})[r.index] = hid
			elif r.kind == Q:
				self.q[r.edge, r.index] = hid
			elif r.kind == L:
				self.l_blocks.setdefault((r.edge, r.vertex), {})[r.index] = hid
				self.superstar_leaves[r.leaf] = hid
		
		def _ordered(d):
			return [d[i] for i in sorted(d)]
		
		self.superstar_leaves = _ordered(self.superstar_leaves)
		self.anon_centers = _ordered(self.anon_centers)
		self.anon_leaves = {j: _ordered(ls) for j, ls in self.anon_leaves.items()}
		self.pads = {v: _ordered(ps) for v, ps in self.pads.items()}
		self.y = {i: _ordered(ys) for i, ys in self.y.items()}
		self.z = {i: _ordered(zs) for i, zs in self.z.items()}
		self.l_blocks = {key: _ordered(ls) for key, ls in self.l_blocks.items()}
	
	@property
	def h(self) -> Graph:
		return self.graph
	
	def edge_index(self, u: int, v: int) -> int:
		'''1-based index of the source edge {u, v}'''
		return self.edges.index((min(u, v), max(u, v))) + 1
	
	def plain_superstar_leaves(self) -> List[int]:
		'''Superstar leaves outside all L-blocks'''
		return [hid for hid in self.superstar_leaves if self.roles[hid].kind == SUPERSTAR_LEAF]
	
	@classmethod
	def from_roles(cls, graph: Graph, k: int, roles: Mapping[int, VertexRole]) -> 'ReducedInstance':
		'''
		Recover the reduced instance from H, k and the role map alone.
		
		The source graph is read off the V and X roles, the weight of edge e is |Y_e|, and the leaf numbers
		of L-vertices follow from the block order.
		
		:param graph: H
		:param k: number of colors
		:param roles: role of every vertex of H (L roles without leaf numbers are fine)
		:return: reduced instance
		'''
		if set(roles) != set(graph.vertices):
			raise InstanceMismatchError('the role map does not cover exactly the vertices of H')
		verts = sorted(r.vertex for r in roles.values() if r.kind == ORIG)
		ends = {}
		sizes = {}
		for r in roles.values():
			if r.kind == X:
				ends.setdefault(r.edge, []).append(r.vertex)
			elif r.kind == Y:
				sizes[r.edge] = sizes.get(r.edge, 0) + 1
		if any(len(ends[i]) != 2 for i in ends) or set(ends) != set(sizes):
			raise InstanceMismatchError('edge gadgets are incomplete')
		edges = [tuple(sorted(ends[i])) for i in sorted(ends)]
		if edges != sorted(edges) or sorted(ends) != list(range(1, len(ends) + 1)):
			raise InstanceMismatchError('edge indices are not in ascending edge order')
		source = CircOriInstance(Graph(verts, edges), {e: sizes[i] for i, e in enumerate(edges, 1)})
		
		blocks = sorted((r.edge, r.vertex, r.index, hid) for hid, r in roles.items() if r.kind == L)
		roles = dict(roles)
		for leaf, (_, _, _, hid) in enumerate(blocks, 1):
			roles[hid] = roles[hid]._replace(leaf=leaf)
		red = cls(graph, k, roles, source)
		try:
			check_invariants(red)
			_match_construction(red)
		except ConstructionInvariantError as e:
			raise InstanceMismatchError('the role map does not describe H ({})'.format(e.reason))
		except KeyError as e:
			raise InstanceMismatchError('the role map names a missing gadget {}'.format(e))
		return red
	
	def __repr__(self):
		return 'ReducedInstance(|V(H)|={}, |E(H)|={}, k={}, source={!r})'.format(
			self.graph.n, self.graph.m, self.k, self.source)
	
	def __pack__(self):
		return {'graph': pack_member(self.graph), 'k': self.k, 'source': pack_member(self.source),
		        'roles': [[hid, pack_member(self.roles[hid])] for hid in sorted(self.roles)]}
	
	@classmethod
	def __create__(cls, data):
		roles = {hid: unpack_member(r) for hid, r in data['roles']}
		return cls(unpack_member(data['graph']), data['k'], roles, unpack_member(data['source']))


class _Builder(object):
	def __init__(self):
		self.roles = {}
		self.edges = []
	
	def add(self, kind, **fields):
		hid = len(self.roles) + 1
		self.roles[hid] = VertexRole(kind, **fields)
		return hid
	
	def join(self, u, vs):
		self.edges.extend((u, v) for v in vs)


def build_instance(inst: CircOriInstance) -> ReducedInstance:
	'''
	Construct the equivalent b-Coloring instance (H, k).
	
	:param inst: connected instance, all weights >= 1, every W_v even
	:return: reduced instance, checked against the degree table and the size formula
	:raises DisconnectedGraphError: the source graph is not connected
	:raises ZeroWeightError: some weight is below 1
	:raises ParityInfeasibleError: some W_v is odd (so 3/2 W_v is not an integer; the answer is NO anyway)
	'''
	for (u, v), w in sorted(inst.weights().items()):
		if w < 1:
			raise ZeroWeightError((u, v), w)
	comps = connected_components(inst.graph)
	if len(comps) > 1:
		raise DisconnectedGraphError(len(comps))
	odd = odd_vertices(inst)
	if len(odd):
		raise ParityInfeasibleError(odd)
	
	W = total_weight(inst)
	k = compute_k(inst)
	edges = inst.edges
	b = _Builder()
	
	# superstar, the first 2W leaves form the L-blocks
	s = b.add(SUPERSTAR_CENTER)
	blocks = {}
	leaf = 0
	for i, (u, v) in enumerate(edges, 1):
		for end in (u, v):
			block = []
			for t in range(1, inst.weight(u, v) + 1):
				leaf += 1
				block.append(b.add(L, edge=i, vertex=end, index=t, leaf=leaf))
			blocks[i, end] = block
	plain = [b.add(SUPERSTAR_LEAF, index=t) for t in range(leaf + 1, k)]
	b.join(s, [hid for block in blocks.values() for hid in block] + plain)
	
	# anonymous stars
	for j in range(1, 2 * W + 2):
		center = b.add(ANON_CENTER, star=j)
		b.join(center, [b.add(ANON_LEAF, star=j, index=t) for t in range(1, k)])
	
	# vertex gadgets
	orig = {v: b.add(ORIG, vertex=v) for v in inst.graph.vertices}
	for v in inst.graph.vertices:
		size = k - 3 * vertex_weight(inst, v) // 2 - 1
		b.join(orig[v], [b.add(PAD, vertex=v, index=t) for t in range(1, size + 1)])
	for (i, end), block in blocks.items():
		b.join(orig[end], block)
	
	# edge gadgets
	for i, (u, v) in enumerate(edges, 1):
		w = inst.weight(u, v)
		xu, xv = b.add(X, edge=i, vertex=u), b.add(X, edge=i, vertex=v)
		ys = [b.add(Y, edge=i, index=t) for t in range(1, w + 1)]
		zs = [b.add(Z, edge=i, index=t) for t in range(1, k - 2 * w - 2)]
		q1, q2 = b.add(Q, edge=i, index=1), b.add(Q, edge=i, index=2)
		
		b.join(xu, ys + zs + blocks[i, u])
		b.join(xv, ys + zs + blocks[i, v])
		b.join(orig[u], ys)
		b.join(orig[v], ys)
		b.join(q1, [q2])
		for qh in (q1, q2):
			b.join(qh, zs + blocks[i, u] + blocks[i, v] + [xu, xv])
	
	h = Graph(b.roles, b.edges)
	red = ReducedInstance(h, k, b.roles, inst)
	check_invariants(red)
	logger.debug('build_instance: k=%d, |V(H)|=%d, |E(H)|=%d', k, h.n, h.m)
	return red


def expected_degree(red: ReducedInstance, hid: int) -> int:
	'''Degree of `hid` predicted by the construction'''
	r = red.roles[hid]
	k = red.k
	if r.kind in {SUPERSTAR_CENTER, ANON_CENTER, X}:
		return k - 1
	if r.kind == Q:
		return k
	if r.kind == ORIG:
		return k + vertex_weight(red.source, r.vertex) // 2 - 1
	if r.kind in {Y, Z}:
		return 4
	if r.kind == L:
		return 5
	return 1 # superstar leaves, anonymous leaves, pads


def degree_table(red: ReducedInstance) -> Dict[str, Tuple[int, ...]]:
	'''Observed degrees per role kind'''
	table = {}
	for hid, r in red.roles.items():
		table.setdefault(r.kind, set()).add(degree(red.graph, hid))
	return {kind: tuple(sorted(table[kind])) for kind in ROLE_KINDS if kind in table}


def check_invariants(red: ReducedInstance) -> None:
	'''
	Verify the size formula, the gadget sizes and the degree of every vertex of H.
	
	:raises ConstructionInvariantError: on the first mismatch
	'''
	inst, k, g = red.source, red.k, red.graph
	W = total_weight(inst)
	
	if k != compute_k(inst):
		raise ConstructionInvariantError('k = {}, expected {}'.format(k, compute_k(inst)))
	if g.n != expected_size(inst):
		raise ConstructionInvariantError('|V(H)| = {}, expected {}'.format(g.n, expected_size(inst)))
	
	sizes = [('superstar leaves', len(red.superstar_leaves), k - 1),
	         ('anonymous stars', len(red.anon_centers), 2 * W + 1)]
	sizes.extend(('leaves of anonymous star {}'.format(j), len(ls), k - 1) for j, ls in red.anon_leaves.items())
	for v in inst.graph.vertices:
		sizes.append(('P_{}'.format(v), len(red.pads.get(v, ())), k - 3 * vertex_weight(inst, v) // 2 - 1))
	for i, (u, v) in enumerate(red.edges, 1):
		w = inst.weight(u, v)
		sizes.append(('Y_{}'.format(i), len(red.y.get(i, ())), w))
		sizes.append(('Z_{}'.format(i), len(red.z.get(i, ())), k - 2 * w - 3))
		sizes.append(('L_{},{}'.format(i, u), len(red.l_blocks.get((i, u), ())), w))
		sizes.append(('L_{},{}'.format(i, v), len(red.l_blocks.get((i, v), ())), w))
	for name, size, expected in sizes:
		if size != expected:
			raise ConstructionInvariantError('|{}| = {}, expected {}'.format(name, size, expected))
	
	for group in [red.superstar_leaves, *red.pads.values(), *red.y.values(), *red.z.values()]:
		if not is_independent_set(g, group):
			raise ConstructionInvariantError('gadget set {} is not independent'.format(group[:3]))
	
	for hid in g.vertices:
		got, expected = degree(g, hid), expected_degree(red, hid)
		if got != expected:
			raise ConstructionInvariantError('deg({} [{}]) = {}, expected {}'.format(hid, red.roles[hid], got,
			                                                                         expected))


def _match_construction(red: ReducedInstance) -> None:
	'''Every edge of H joins the vertices its roles name in a fresh construction from the source'''
	try:
		canon = build_instance(red.source)
	except PreconditionError as e:
		raise ConstructionInvariantError(str(e))
	if red.k != canon.k:
		raise ConstructionInvariantError('k = {}, expected {}'.format(red.k, canon.k))
	by_role = {role: hid for hid, role in canon.roles.items()}
	image = {}
	for hid, role in red.roles.items():
		if role not in by_role:
			raise ConstructionInvariantError('no vertex of the construction has role {}'.format(role))
		image[hid] = by_role[role]
	if len(set(image.values())) != len(image):
		raise ConstructionInvariantError('two vertices share a role')
	if red.graph.m != canon.graph.m:
		raise ConstructionInvariantError('|E(H)| = {}, expected {}'.format(red.graph.m, canon.graph.m))
	for a, b in red.graph.edges:
		if not canon.graph.has_edge(image[a], image[b]):
			raise ConstructionInvariantError('edge {{{}, {}}} joins {} and {}'.format(a, b, red.roles[a],
			                                                                           red.roles[b]))


def trivial_no_instance() -> BColInstance:
	'''A fixed NO instance: a single edge has no b-coloring with 3 colors'''
	return BColInstance(Graph([1, 2], [(1, 2)]), 3)


def reduce_instance(inst: CircOriInstance, force_trivial_no: bool = False) -> BColInstance:
	'''
	Answer-preserving map: `build_instance`, or the trivial NO instance for parity-infeasible sources.
	
	:param inst: source instance
	:param force_trivial_no: return `trivial_no_instance()` instead of raising `ParityInfeasibleError`
	:return: the reduced instance
	'''
	try:
		return build_instance(inst)
	except ParityInfeasibleError as e:
		if not force_trivial_no:
			raise
		logger.warning('%s - emitting the trivial NO instance', e)
		return trivial_no_instance()


def forward_witness(red: ReducedInstance, o: Orientation) -> Coloring:
	'''
	Turn a circulating orientation of the source into a b-coloring of H with k colors.
	
	Color plan (v_i, e_i in ascending order): v_i -> i, q_{e_i,1} -> n+i, q_{e_i,2} -> m+n+i, both x-vertices of
	e_i -> 2m+n+i, anonymous center s_j -> 3m+n+j (its leaves get all other colors), s* -> 0, superstar leaves
	-> [1..k-1] with the L-blocks carrying 3m+n+1..3m+n+2W in block order. Z_{e_i} gets the colors missing from
	C_{e_i,u} + C_{e_i,v} + {n+i, m+n+i, 2m+n+i}; Y_e repeats the block colors of the tail of e; finally P_v
	gets the colors not yet seen by v.
	
	:param red: reduced instance
	:param o: circulating orientation of the source
	:return: b-coloring of H (x_{e,v} is the b-vertex of e exactly when e points to v)
	'''
	inst = red.source
	try:
		o.check_against(inst.graph)
	except OrientationMismatchError as e:
		raise InstanceMismatchError(str(e))
	bad = unbalanced_vertex(inst, o)
	if bad is not None:
		raise NotCirculatingError(*bad)
	
	k, n, m, W = red.k, inst.n, inst.m, total_weight(inst)
	c = Coloring()
	
	for i, v in enumerate(inst.graph.vertices, 1):
		c[red.orig[v]] = i
	for i, (u, v) in enumerate(red.edges, 1):
		c[red.q[i, 1]] = n + i
		c[red.q[i, 2]] = m + n + i
		c[red.x[i, u]] = c[red.x[i, v]] = 2 * m + n + i
	
	for j, center in enumerate(red.anon_centers, 1):
		own = 3 * m + n + j
		c[center] = own
		for hid, color in zip(red.anon_leaves[j], (q for q in range(k) if q != own)):
			c[hid] = color
	
	c[red.superstar] = 0
	block_colors = list(range(3 * m + n + 1, 3 * m + n + 2 * W + 1))
	rest = [q for q in range(1, k) if not 3 * m + n + 1 <= q <= 3 * m + n + 2 * W]
	for hid, color in zip(red.superstar_leaves, block_colors + rest):
		c[hid] = color
	
	for i, (u, v) in enumerate(red.edges, 1):
		cu = [c[hid] for hid in red.l_blocks[i, u]]
		cv = [c[hid] for hid in red.l_blocks[i, v]]
		taken = set(cu) | set(cv) | {n + i, m + n + i, 2 * m + n + i}
		for hid, color in zip(red.z[i], (q for q in range(k) if q not in taken)):
			c[hid] = color
		for hid, color in zip(red.y[i], cu if o.tail(u, v) == u else cv):
			c[hid] = color
	
	for v in inst.graph.vertices:
		hv = red.orig[v]
		seen = {c[u] for u in red.graph.neighbors(hv) if u in c}
		seen.add(c[hv])
		free = [q for q in range(k) if q not in seen]
		if len(free) != len(red.pads[v]):
			raise ConstructionInvariantError('vertex {} sees {} colors before its pads, expected {}'.format(
				v, k - len(free) - 1, 3 * vertex_weight(inst, v) // 2))
		for hid, color in zip(red.pads[v], free):
			c[hid] = color
	
	return c


def _b_vertex_set(red: ReducedInstance, c: Coloring) -> Set[int]:
	return set().union(*b_vertices(red, c).values())


def _orient_by_b_vertices(red: ReducedInstance, bset: Set[int]) -> Tuple[List[EDGE], List[EDGE]]:
	arcs, undecided = [], []
	for i, (u, v) in enumerate(red.edges, 1):
		bu, bv = red.x[i, u] in bset, red.x[i, v] in bset
		if bu == bv:
			undecided.append((u, v))
		else:
			arcs.append((v, u) if bu else (u, v))
	return arcs, undecided


def extract_orientation(red: ReducedInstance, c: Coloring) -> Orientation:
	'''
	Read a circulating orientation off a b-coloring of H: each edge points to the endpoint whose x-vertex is
	a b-vertex.
	
	:param red: reduced instance
	:param c: b-coloring of H with k colors
	:return: circulating orientation of the source
	:raises MalformedColoringError: `c` is not a b-coloring, or both/neither x-vertices of an edge are b-vertices
	:raises BalanceViolationError: the result is not circulating (cannot happen for a correctly built H)
	'''
	defect = b_coloring_defect(red, c)
	if defect is not None:
		raise MalformedColoringError('not a b-coloring with {} colors: {}'.format(red.k, defect))
	bset = _b_vertex_set(red, c)
	arcs, undecided = _orient_by_b_vertices(red, bset)
	if len(undecided):
		u, v = undecided[0]
		i = red.edge_index(u, v)
		which = 'both' if red.x[i, u] in bset else 'neither'
		raise MalformedColoringError('{} x-vertices of edge {{{},{}}} are b-vertices'.format(which, u, v),
		                             edge=(u, v))
	o = Orientation(arcs)
	bad = unbalanced_vertex(red.source, o)
	if bad is not None:
		raise BalanceViolationError(*bad)
	return o


class AuditCheck(Packable):
	'''Outcome of one structural check of a b-coloring of H'''
	
	def __init__(self, name: str, claim: str, passed: bool, detail: str = ''):
		self.name = name
		self.claim = claim
		self.passed = passed
		self.detail = detail
	
	def __str__(self):
		return '{} {} ({}){}'.format('PASS' if self.passed else 'FAIL', self.name, self.claim,
		                             ': ' + self.detail if self.detail else '')
	
	def __repr__(self):
		return 'AuditCheck({})'.format(self)
	
	def __pack__(self):
		return {'name': self.name, 'claim': self.claim, 'passed': self.passed, 'detail': self.detail}
	
	@classmethod
	def __create__(cls, data):
		return cls(data['name'], data['claim'], data['passed'], data['detail'])


class AuditReport(Packable):
	'''All checks of `audit_coloring`'''
	
	def __init__(self, checks: Sequence[AuditCheck] = ()):
		self.checks = list(checks)
	
	@property
	def ok(self) -> bool:
		return all(check.passed for check in self.checks)
	
	def failures(self) -> List[AuditCheck]:
		return [check for check in self.checks if not check.passed]
	
	def __getitem__(self, name: str) -> AuditCheck:
		for check in self.checks:
			if check.name == name:
				return check
		raise KeyError(name)
	
	def outcomes(self) -> Dict[str, bool]:
		return {check.name: check.passed for check in self.checks}
	
	def __str__(self):
		return '\n'.join(str(check) for check in self.checks)
	
	def __pack__(self):
		return [pack_member(check) for check in self.checks]
	
	@classmethod
	def __create__(cls, data):
		return cls(unpack_member(check) for check in data)


def _fmt(items, limit=5):
	items = list(items)
	text = ', '.join(map(str, items[:limit]))
	return text + (', ...' if len(items) > limit else '')


def audit_coloring(red: ReducedInstance, c: Coloring, strict: bool = True) -> AuditReport:
	'''
	Check the structure every b-coloring of H must have.
	
	- b-vertex-count: exactly one b-vertex per color
	- b-vertex-location: the b-vertices are s*, V(G), the q-vertices, the anonymous centers and exactly one
	  x-vertex per edge
	- x-same-color: both x-vertices of an edge share their color
	- degree-candidates: exactly k + m vertices have degree >= k-1
	- superstar-injective: the superstar leaves have pairwise distinct colors
	- l-blocks-disjoint: the color sets C_{e,v} of distinct L-blocks are disjoint
	- y-content: Y_e carries C_{e,u} if x_{e,v} is the b-vertex, and C_{e,v} if x_{e,u} is
	- balance: orienting every edge towards its b-vertex gives every v in-weight W_v / 2
	
	:param red: reduced instance
	:param c: b-coloring of H (with `strict=False` any proper coloring is audited)
	:param strict: require a b-coloring with k colors
	:return: report with one check per item above
	:raises AuditPreconditionError: if `c` does not meet the precondition
	'''
	if strict:
		defect = b_coloring_defect(red, c)
		if defect is not None:
			raise AuditPreconditionError(defect)
	else:
		try:
			if not is_proper(red, c):
				raise AuditPreconditionError('the coloring is not proper')
		except ColoringError as e:
			raise AuditPreconditionError(str(e))
	
	g, k, inst = red.graph, red.k, red.source
	found = b_vertices(red, c)
	bset = set().union(*found.values())
	checks = []
	
	wrong = [q for q in range(k) if len(found[q]) != 1]
	checks.append(AuditCheck('b-vertex-count', 'claim 2', not wrong,
	                         'colors without exactly one b-vertex: {}'.format(_fmt(wrong)) if wrong else ''))
	
	expected = {red.superstar, *red.orig.values(), *red.q.values(), *red.anon_centers}
	x_set = set(red.x.values())
	unexpected = sorted(bset - expected - x_set)
	absent = sorted(expected - bset)
	_, undecided = _orient_by_b_vertices(red, bset)
	problems = []
	if unexpected:
		problems.append('unexpected b-vertices {}'.format(_fmt('{} [{}]'.format(v, red.roles[v]) for v in unexpected)))
	if absent:
		problems.append('missing b-vertices {}'.format(_fmt('{} [{}]'.format(v, red.roles[v]) for v in absent)))
	if undecided:
		problems.append('edges without exactly one x b-vertex {}'.format(_fmt(undecided)))
	checks.append(AuditCheck('b-vertex-location', 'claim 2', not problems, '; '.join(problems)))
	
	split = [(u, v) for i, (u, v) in enumerate(red.edges, 1) if c[red.x[i, u]] != c[red.x[i, v]]]
	checks.append(AuditCheck('x-same-color', 'claim 2', not split,
	                         'edges with differently colored x-vertices: {}'.format(_fmt(split)) if split else ''))
	
	high = sum(1 for v in g.vertices if degree(g, v) >= k - 1)
	checks.append(AuditCheck('degree-candidates', 'claim 2', high == k + inst.m,
	                         '{} vertices of degree >= k-1, expected {}'.format(high, k + inst.m)))
	
	leaf_colors = [c[hid] for hid in red.superstar_leaves]
	repeated = sorted({q for q in leaf_colors if leaf_colors.count(q) > 1})
	checks.append(AuditCheck('superstar-injective', 'claim 3.1', not repeated,
	                         'repeated leaf colors: {}'.format(_fmt(repeated)) if repeated else ''))
	
	blocks = {key: {c[hid] for hid in hids} for key, hids in red.l_blocks.items()}
	owner = {}
	clashes = []
	for key in sorted(blocks):
		for q in sorted(blocks[key]):
			if q in owner and owner[q] != key:
				clashes.append('color {} on L{} and L{}'.format(q, owner[q], key))
			owner.setdefault(q, key)
	checks.append(AuditCheck('l-blocks-disjoint', 'claim 3.1', not clashes, _fmt(clashes)))
	
	bad_y = []
	for i, (u, v) in enumerate(red.edges, 1):
		ys = {c[hid] for hid in red.y[i]}
		cu, cv = blocks[i, u], blocks[i, v]
		bu, bv = red.x[i, u] in bset, red.x[i, v] in bset
		if bv and not bu:
			ok = ys == cu
		elif bu and not bv:
			ok = ys == cv
		else:
			ok = ys in (cu, cv)
		if not ok:
			bad_y.append((u, v))
	checks.append(AuditCheck('y-content', 'claim 3.2', not bad_y,
	                         'edges whose Y-colors do not match the b-vertex side: {}'.format(_fmt(bad_y))
	                         if bad_y else ''))
	
	if undecided:
		checks.append(AuditCheck('balance', 'claim 4', False, 'orientation undefined'))
	else:
		o = Orientation(_orient_by_b_vertices(red, bset)[0])
		off = [v for v in inst.graph.vertices if 2 * in_weight(inst, o, v) != vertex_weight(inst, v)]
		checks.append(AuditCheck('balance', 'claim 4', not off,
		                         'in-weight differs from W_v/2 at {}'.format(_fmt(off)) if off else ''))
	
	return AuditReport(checks)


def sample_recolorings(red: ReducedInstance, c: Coloring, count: int, seed: int = 0) -> List[Tuple[int, int]]:
	'''
	Single-vertex recolorings (vertex, new color) of `c`: one targeted recoloring per role kind (the first
	vertex of the kind moves to the next color) followed by `count` seeded random ones.
	
	:param red: reduced instance
	:param c: coloring of H
	:param count: number of random recolorings
	:param seed: random seed
	:return: list of (vertex, color) pairs, each color differing from the current one
	'''
	k = red.k
	changes = []
	firsts = {}
	for hid in red.graph.vertices:
		firsts.setdefault(red.roles[hid].kind, hid)
	for kind in ROLE_KINDS:
		if kind in firsts:
			hid = firsts[kind]
			changes.append((hid, (c[hid] + 1) % k))
	
	rng = np.random.RandomState(seed)
	verts = red.graph.vertices
	for _ in range(count):
		hid = verts[rng.randint(len(verts))]
		shift = int(rng.randint(1, k))
		changes.append((hid, (c[hid] + shift) % k))
	return changes


def build_pd_for_H(red: ReducedInstance, pd_G: PathDecomposition) -> PathDecomposition:
	'''
	Extend a path decomposition of G to one of H.
	
	s* joins every bag. After the leftmost bag B containing v, |P_v| bags B + {s*, p} are inserted (one per
	p in P_v); after the leftmost bag B containing both ends of e = uv, one bag
	B + {s*, x_{e,u}, x_{e,v}, q_{e,1}, q_{e,2}, t} per t in L_{e,u} + L_{e,v} + Y_e + Z_e. Finally the plain
	superstar leaves get bags {s*, leaf} and the anonymous stars a width-1 decomposition. The width grows by at
	most 6.
	
	:param red: reduced instance
	:param pd_G: valid path decomposition of the source graph
	:return: valid path decomposition of H
	'''
	g = red.source.graph
	violation = validate_pd(g, pd_G)
	if violation is not None:
		raise InvalidDecompositionError(violation)
	
	s = red.superstar
	first = pd_G.leftmost()
	vertex_at = {}
	for v in g.vertices:
		vertex_at.setdefault(first[v], []).append(v)
	edge_at = {}
	for i, (u, v) in enumerate(red.edges, 1):
		# the occurrence intervals of u and v meet, starting at the later of their first bags
		edge_at.setdefault(max(first[u], first[v]), []).append(i)
	
	bags = []
	for t, bag in enumerate(pd_G):
		base = {red.orig[v] for v in bag}
		base.add(s)
		bags.append(base)
		for v in vertex_at.get(t, ()):
			bags.extend(base | {p} for p in red.pads[v])
		for i in edge_at.get(t, ()):
			u, v = red.edges[i - 1]
			core = base | {red.x[i, u], red.x[i, v], red.q[i, 1], red.q[i, 2]}
			extra = red.l_blocks[i, u] + red.l_blocks[i, v] + red.y[i] + red.z[i]
			bags.extend(core | {hid} for hid in extra)
	
	bags.extend({s, leaf} for leaf in red.plain_superstar_leaves())
	for j, center in enumerate(red.anon_centers, 1):
		bags.extend({center, leaf} for leaf in red.anon_leaves[j])
	return PathDecomposition(bags)

