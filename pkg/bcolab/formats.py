'''
Plain-text file formats.

Lines are LF-terminated with space-separated tokens, lines starting with `c` are comments, and vertices are
positive integers (1..n when written by this module).

====================  ==========================================================
kind                  grammar
====================  ==========================================================
``circori``           ``p circori <n> <m>`` then m lines ``e <u> <v> <w>`` (w >= 1)
``bcol``              ``p bcol <n> <m> <k>`` then m lines ``e <u> <v>``
``pd``                ``s pd <d> <maxbagsize> <n>`` then ``b <idx> <v...>`` for idx = 1..d
``orientation``       lines ``a <tail> <head>``
``coloring``          lines ``v <vertex> <color>`` (colors 0-based)
``rolemap``           lines ``n <id> <role tokens>``, e.g. ``n 17 L 2 1 3``
``order``             one line ``l <v1> <v2> ... <vn>``
====================  ==========================================================
'''

from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, TextIO, Tuple
import io
import logging

from .bcoloring import BColInstance, Coloring
from .circori import CircOriInstance
from .decomposition import PathDecomposition, LinearOrder
from .errors import ParseError, PreconditionError
from .graphs import Graph, Orientation, canonical_labels
from .reduction import VertexRole

logger = logging.getLogger(__name__)


class _Lines(object):
	'''Tokenized content lines of one file, remembering where the reader is'''
	
	def __init__(self, kind: str, fp: TextIO):
		self.kind = kind
		self.last = 0
		self.rows = []
		for line_no, raw in enumerate(fp, 1):
			line = raw.rstrip('\n').rstrip('\r')
			self.last = line_no
			tokens = line.split()
			if not tokens or tokens[0] == 'c':
				continue
			self.rows.append((line_no, line, tokens))
	
	def fail(self, reason: str, row: Tuple[int, str, List[str]] = None):
		if row is None:
			raise ParseError(self.kind, self.last, '', reason)
		raise ParseError(self.kind, row[0], row[1], reason)
	
	def ints(self, row, tokens: List[str], minimum: int = None) -> List[int]:
		try:
			vals = [int(t) for t in tokens]
		except ValueError:
			self.fail('expected integers', row)
		if minimum is not None and any(v < minimum for v in vals):
			self.fail('values must be at least {}'.format(minimum), row)
		return vals
	
	def records(self, tag: str, size: Optional[int], rows=None, minimum: int = None) -> Iterator[Tuple[Any, List[int]]]:
		'''Yield the integer payload of every row starting with `tag` (exactly `size` numbers if given)'''
		for row in (self.rows if rows is None else rows):
			tokens = row[2]
			if tokens[0] != tag:
				self.fail('expected a line starting with {!r}'.format(tag), row)
			if size is not None and len(tokens) != size + 1:
				self.fail('expected {} numbers after {!r}'.format(size, tag), row)
			yield row, self.ints(row, tokens[1:], minimum=minimum)
	
	def header(self, tag: str, name: str, size: int) -> List[int]:
		if not len(self.rows):
			self.fail('missing header')
		row = self.rows[0]
		tokens = row[2]
		if tokens[:2] != [tag, name] or len(tokens) != size + 2:
			self.fail('expected header {!r} with {} numbers'.format('{} {}'.format(tag, name), size), row)
		return self.ints(row, tokens[2:], minimum=0)


def _graph(lines: _Lines, n: int, edges: List[Tuple[int, int]], rows) -> Graph:
	for row, (u, v) in zip(rows, edges):
		if not (1 <= u <= n and 1 <= v <= n):
			lines.fail('vertex outside 1..{}'.format(n), row)
		if u == v:
			lines.fail('self-loop', row)
	try:
		return Graph(range(1, n + 1), edges)
	except PreconditionError as e:
		lines.fail(str(e))


def read_circori(fp: TextIO) -> CircOriInstance:
	'''
	Parse a Circulating Orientation instance.
	
	:param fp: readable text file
	:return: instance over vertices 1..n
	:raises ParseError: for malformed lines, wrong counts, weights below 1 or repeated edges
	'''
	lines = _Lines('circori', fp)
	n, m = lines.header('p', 'circori', 2)
	body = lines.rows[1:]
	if len(body) != m:
		lines.fail('expected {} edge lines, found {}'.format(m, len(body)))
	rows, edges, weights = [], [], {}
	for row, (u, v, w) in lines.records('e', 3, rows=body):
		if w < 1:
			lines.fail('edge weight must be at least 1', row)
		rows.append(row)
		edges.append((u, v))
		weights[u, v] = w
	return CircOriInstance(_graph(lines, n, edges, rows), weights)


def write_circori(inst: CircOriInstance, fp: TextIO) -> Dict[int, int]:
	'''
	Write `inst` with its vertices renumbered 1..n in ascending id order.
	
	:return: the renumbering (instance id -> file id)
	'''
	labels = canonical_labels(inst.graph)
	fp.write('p circori {} {}\n'.format(inst.n, inst.m))
	for (u, v), w in sorted(inst.weights().items()):
		a, b = sorted((labels[u], labels[v]))
		fp.write('e {} {} {}\n'.format(a, b, w))
	return labels


def read_bcol(fp: TextIO) -> BColInstance:
	'''
	Parse a b-Coloring instance.
	
	:param fp: readable text file
	:return: instance over vertices 1..n
	'''
	lines = _Lines('bcol', fp)
	n, m, k = lines.header('p', 'bcol', 3)
	body = lines.rows[1:]
	if len(body) != m:
		lines.fail('expected {} edge lines, found {}'.format(m, len(body)))
	rows, edges = [], []
	for row, (u, v) in lines.records('e', 2, rows=body):
		rows.append(row)
		edges.append((u, v))
	if k < 1:
		lines.fail('k must be at least 1', lines.rows[0])
	return BColInstance(_graph(lines, n, edges, rows), k)


def write_bcol(inst: BColInstance, fp: TextIO) -> Dict[int, int]:
	'''
	Write `inst` with its vertices renumbered 1..n in ascending id order.
	
	:return: the renumbering (instance id -> file id)
	'''
	g = inst.graph
	labels = canonical_labels(g)
	fp.write('p bcol {} {} {}\n'.format(g.n, g.m, inst.k))
	for u, v in sorted(tuple(sorted((labels[u], labels[v]))) for u, v in g.edges):
		fp.write('e {} {}\n'.format(u, v))
	return labels


def read_pd(fp: TextIO) -> PathDecomposition:
	'''
	Parse a path decomposition. Bags must be numbered 1..d in order and the header's maximum bag size must match.
	
	:param fp: readable text file
	:return: decomposition (validity with respect to a graph is checked by `validate_pd`)
	'''
	lines = _Lines('pd', fp)
	d, size, n = lines.header('s', 'pd', 3)
	body = lines.rows[1:]
	if len(body) != d:
		lines.fail('expected {} bag lines, found {}'.format(d, len(body)))
	bags = []
	for row, vals in lines.records('b', None, rows=body, minimum=1):
		if not len(vals) or vals[0] != len(bags) + 1:
			lines.fail('expected bag index {}'.format(len(bags) + 1), row)
		bag = vals[1:]
		if len(set(bag)) != len(bag):
			lines.fail('repeated vertex in bag', row)
		if any(v > n for v in bag):
			lines.fail('vertex outside 1..{}'.format(n), row)
		bags.append(bag)
	biggest = max((len(bag) for bag in bags), default=0)
	if biggest != size:
		lines.fail('header announces bags of size {} but the largest has {}'.format(size, biggest), lines.rows[0])
	return PathDecomposition(bags)


def write_pd(pd: PathDecomposition, fp: TextIO, n: int = None, labels: Mapping[int, int] = None) -> None:
	'''
	:param pd: decomposition
	:param fp: writable text file
	:param n: number of vertices of the graph (defaults to the largest written vertex id)
	:param labels: (optional) renumbering applied to every vertex
	'''
	if labels is not None:
		pd = pd.relabel(labels)
	if n is None:
		n = max(pd.vertices(), default=0)
	fp.write('s pd {} {} {}\n'.format(len(pd), max((len(bag) for bag in pd), default=0), n))
	for idx, bag in enumerate(pd, 1):
		fp.write(' '.join(['b', str(idx)] + [str(v) for v in sorted(bag)]) + '\n')


def read_orientation(fp: TextIO) -> Orientation:
	lines = _Lines('orientation', fp)
	arcs = []
	for row, (tail, head) in lines.records('a', 2, minimum=1):
		arcs.append((tail, head))
	try:
		return Orientation(arcs)
	except PreconditionError as e:
		lines.fail(str(e))


def write_orientation(o: Orientation, fp: TextIO, labels: Mapping[int, int] = None) -> None:
	for tail, head in o.arcs:
		if labels is not None:
			tail, head = labels[tail], labels[head]
		fp.write('a {} {}\n'.format(tail, head))


def read_coloring(fp: TextIO) -> Coloring:
	lines = _Lines('coloring', fp)
	c = Coloring()
	for row, (v, q) in lines.records('v', 2):
		if v < 1 or q < 0:
			lines.fail('vertices start at 1 and colors at 0', row)
		if v in c:
			lines.fail('vertex {} colored twice'.format(v), row)
		c[v] = q
	return c


def write_coloring(c: Coloring, fp: TextIO, labels: Mapping[int, int] = None) -> None:
	for v, q in c.items():
		fp.write('v {} {}\n'.format(v if labels is None else labels[v], q))


def read_rolemap(fp: TextIO) -> Dict[int, VertexRole]:
	'''
	Parse the role of every vertex of a reduced instance.
	
	:param fp: readable text file
	:return: vertex id -> role (L roles carry no leaf number, see `ReducedInstance.from_roles`)
	'''
	lines = _Lines('rolemap', fp)
	roles = {}
	for row in lines.rows:
		tokens = row[2]
		if tokens[0] != 'n' or len(tokens) < 3:
			lines.fail("expected 'n <id> <role tokens>'", row)
		hid = lines.ints(row, tokens[1:2], minimum=1)[0]
		if hid in roles:
			lines.fail('vertex {} listed twice'.format(hid), row)
		try:
			roles[hid] = VertexRole.from_tokens(tokens[2:])
		except ValueError as e:
			lines.fail(str(e), row)
	return roles


def write_rolemap(roles: Mapping[int, VertexRole], fp: TextIO) -> None:
	for hid in sorted(roles):
		fp.write('n {} {}\n'.format(hid, roles[hid]))


def read_order(fp: TextIO) -> LinearOrder:
	lines = _Lines('order', fp)
	if len(lines.rows) != 1:
		lines.fail('expected exactly one line')
	row = lines.rows[0]
	if row[2][0] != 'l':
		lines.fail("expected a line starting with 'l'", row)
	try:
		return LinearOrder(lines.ints(row, row[2][1:], minimum=1))
	except PreconditionError as e:
		lines.fail(str(e), row)


def write_order(order: LinearOrder, fp: TextIO) -> None:
	fp.write(' '.join(['l'] + [str(v) for v in order]) + '\n')


_readers = {
	'circori': read_circori,
	'bcol': read_bcol,
	'pd': read_pd,
	'orientation': read_orientation,
	'coloring': read_coloring,
	'rolemap': read_rolemap,
	'order': read_order,
}

_writers = {
	'circori': write_circori,
	'bcol': write_bcol,
	'pd': write_pd,
	'orientation': write_orientation,
	'coloring': write_coloring,
	'rolemap': write_rolemap,
	'order': write_order,
}

FORMATS = tuple(_readers)


def _lookup(table: Dict[str, Callable], kind: str) -> Callable:
	try:
		return table[kind]
	except KeyError:
		raise ValueError('unknown format {!r}, expected one of {}'.format(kind, ', '.join(FORMATS)))


def loads(kind: str, text: str) -> Any:
	'''Parse `text` as a file of the given kind'''
	return _lookup(_readers, kind)(io.StringIO(text))


def dumps(kind: str, obj: Any, **kwargs: Any) -> str:
	'''Serialize `obj` as a file of the given kind'''
	fp = io.StringIO()
	_lookup(_writers, kind)(obj, fp, **kwargs)
	return fp.getvalue()


def load(kind: str, path: str) -> Any:
	logger.debug('reading %s from %s', kind, path)
	with open(path, 'r', newline='\n') as fp:
		return _lookup(_readers, kind)(fp)


def dump(kind: str, obj: Any, path: str, **kwargs: Any) -> Any:
	logger.debug('writing %s to %s', kind, path)
	with open(path, 'w', newline='\n') as fp:
		return _lookup(_writers, kind)(obj, fp, **kwargs)



def load_graph(path: str) -> Graph:
	'''Read the graph of a `circori` or `bcol` file, whichever the header announces'''
	with open(path, 'r', newline='\n') as fp:
		text = fp.read()
	for line_no, line in enumerate(text.split('\n'), 1):
		tokens = line.split()
		if not tokens or tokens[0] == 'c':
			continue
		if tokens[:2] == ['p', 'circori']:
			return loads('circori', text).graph
		if tokens[:2] == ['p', 'bcol']:
			return loads('bcol', text).graph
		raise ParseError('graph', line_no, line, "expected a 'p circori' or 'p bcol' header")
	raise ParseError('graph', 0, '', 'empty file')
