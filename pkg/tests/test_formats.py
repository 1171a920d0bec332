import pytest

from bcolab import (Graph, Orientation, Coloring, CircOriInstance, BColInstance, PathDecomposition, LinearOrder,
                    build_instance, ReducedInstance, VertexRole)
from bcolab.formats import loads, dumps, load, dump, load_graph, FORMATS
from bcolab.errors import ParseError, WeightCapExceededError, FormatError
from _util_test import get_triangle, get_single_edge, get_cycle


def test_read_circori():
	text = 'c a weighted triangle\np circori 3 3\ne 1 2 2\n\ne 1 3 2\nc comment in between\ne 2 3 2\n'
	inst = loads('circori', text)
	assert inst == get_triangle()
	assert dumps('circori', inst) == 'p circori 3 3\ne 1 2 2\ne 1 3 2\ne 2 3 2\n'


@pytest.mark.parametrize('text,line_no', [
	('p circori 2 1\ne 1 2 0\n', 2),
	('p circori 2 1\ne 1 2 -1\n', 2),
	('p circori 2 1\ne 1 3 1\n', 2),
	('p circori 2 1\ne 1 1 1\n', 2),
	('p circori 2 2\ne 1 2 1\n', 2),
	('p circori 2 1\ne 1 2\n', 2),
	('p circori 2 1\nx 1 2 1\n', 2),
	('p circori 2 1\ne 1 two 1\n', 2),
	('p bcol 2 1 3\ne 1 2\n', 1),
	('', 0),
])
def test_bad_circori(text, line_no):
	with pytest.raises(ParseError) as info:
		loads('circori', text)
	assert info.value.line_no == line_no
	assert info.value.kind == 'circori'


def test_repeated_edge():
	with pytest.raises(ParseError):
		loads('circori', 'p circori 2 2\ne 1 2 1\ne 2 1 1\n')


def test_weight_cap_is_not_a_format_error():
	text = 'p circori 2 1\ne 1 2 20000\n'
	with pytest.raises(WeightCapExceededError) as info:
		loads('circori', text)
	assert not isinstance(info.value, FormatError)


def test_bcol():
	text = 'p bcol 5 5 3\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n'
	inst = loads('bcol', text)
	assert inst.graph == get_cycle(5) and inst.k == 3
	assert dumps('bcol', inst) == 'p bcol 5 5 3\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n'
	
	with pytest.raises(ParseError):
		loads('bcol', 'p bcol 2 1 0\ne 1 2\n')
	with pytest.raises(ParseError):
		loads('bcol', 'p bcol 2 1\ne 1 2\n')


def test_sparse_ids_are_renumbered():
	g = Graph([10, 20, 30], [(10, 30), (20, 30)])
	text = dumps('bcol', BColInstance(g, 2))
	assert text == 'p bcol 3 2 2\ne 1 3\ne 2 3\n'
	
	inst = CircOriInstance(g, {(10, 30): 1, (20, 30): 4})
	assert dumps('circori', inst) == 'p circori 3 2\ne 1 3 1\ne 2 3 4\n'


def test_pd():
	text = 's pd 2 2 3\nb 1 1 2\nb 2 2 3\n'
	pd = loads('pd', text)
	assert pd == PathDecomposition([[1, 2], [2, 3]])
	assert dumps('pd', pd) == text
	assert dumps('pd', pd, n=5) == 's pd 2 2 5\nb 1 1 2\nb 2 2 3\n'
	assert dumps('pd', pd, labels={1: 3, 2: 2, 3: 1}) == 's pd 2 2 3\nb 1 2 3\nb 2 1 2\n'


@pytest.mark.parametrize('text', [
	's pd 2 2 3\nb 1 1 2\nb 3 2 3\n',
	's pd 2 2 3\nb 1 1 2\n',
	's pd 1 3 3\nb 1 1 2\n',
	's pd 1 2 3\nb 1 1 1\n',
	's pd 1 2 3\nb 1 1 4\n',
	's pd 1 2 3\nb 1 0 2\n',
	's pd 1 2\nb 1 1 2\n',
])
def test_bad_pd(text):
	with pytest.raises(ParseError):
		loads('pd', text)


def test_empty_bag():
	pd = loads('pd', 's pd 2 1 1\nb 1\nb 2 1\n')
	assert len(pd) == 2 and not len(pd[0])


def test_orientation():
	o = loads('orientation', 'a 1 2\na 2 3\na 3 1\n')
	assert o == Orientation([(1, 2), (2, 3), (3, 1)])
	assert dumps('orientation', o) == 'a 1 2\na 3 1\na 2 3\n'
	assert dumps('orientation', o, labels={1: 7, 2: 8, 3: 9}) == 'a 7 8\na 9 7\na 8 9\n'
	
	with pytest.raises(ParseError):
		loads('orientation', 'a 1 2\na 2 1\n')
	with pytest.raises(ParseError):
		loads('orientation', 'a 1 1\n')


def test_coloring():
	c = loads('coloring', 'v 2 1\nv 1 0\n')
	assert c == Coloring({1: 0, 2: 1})
	assert dumps('coloring', c) == 'v 1 0\nv 2 1\n'
	
	with pytest.raises(ParseError):
		loads('coloring', 'v 1 0\nv 1 1\n')
	with pytest.raises(ParseError):
		loads('coloring', 'v 1 -1\n')
	with pytest.raises(ParseError):
		loads('coloring', 'v 0 1\n')


def test_rolemap():
	roles = loads('rolemap', 'n 17 L 2 1 3\nn 1 S\nn 4 X 1 2\n')
	assert roles == {17: VertexRole('L', edge=2, vertex=1, index=3), 1: VertexRole('S'),
	                 4: VertexRole('X', edge=1, vertex=2)}
	assert dumps('rolemap', roles) == 'n 1 S\nn 4 X 1 2\nn 17 L 2 1 3\n'
	
	for text in ['n 1\n', 'n 1 L 2 1\n', 'n 1 W\n', 'n 1 S\nn 1 S\n', 'm 1 S\n', 'n x S\n']:
		with pytest.raises(ParseError):
			loads('rolemap', text)


def test_order():
	order = loads('order', 'c a linear order\nl 3 1 2\n')
	assert order == LinearOrder([3, 1, 2])
	assert dumps('order', order) == 'l 3 1 2\n'
	
	for text in ['l 1 2 1\n', 'l 1\nl 2\n', 'k 1 2\n', '']:
		with pytest.raises(ParseError):
			loads('order', text)


def test_reduced_instance_files(tmp_path):
	red = build_instance(get_single_edge(2))
	labels = dump('bcol', red, str(tmp_path / 'h.bcol'))
	assert labels == {v: v for v in red.graph.vertices}
	dump('rolemap', red.roles, str(tmp_path / 'h.rolemap'))
	
	inst = load('bcol', str(tmp_path / 'h.bcol'))
	roles = load('rolemap', str(tmp_path / 'h.rolemap'))
	rec = ReducedInstance.from_roles(inst.graph, inst.k, roles)
	assert rec.source == red.source
	assert rec.roles == red.roles


def test_load_graph(tmp_path):
	path = tmp_path / 'g.circori'
	path.write_text('c header after a comment\np circori 2 1\ne 1 2 2\n')
	assert load_graph(str(path)) == Graph([1, 2], [(1, 2)])
	
	path = tmp_path / 'g.bcol'
	path.write_text('p bcol 3 2 2\ne 1 2\ne 2 3\n')
	assert load_graph(str(path)).m == 2
	
	path = tmp_path / 'g.pd'
	path.write_text('s pd 1 1 1\nb 1 1\n')
	with pytest.raises(ParseError):
		load_graph(str(path))


def test_unknown_format():
	assert 'circori' in FORMATS and 'order' in FORMATS
	with pytest.raises(ValueError):
		loads('dimacs', '')
