import pytest
from hypothesis import given

from bcolab import Graph, Orientation, degree, is_connected, is_independent_set, connected_components
from bcolab import canonical_labels
from bcolab.errors import InvalidGraphError, UnknownVertexError, OrientationMismatchError
from _util_test import get_complete, get_star, get_path, graphs


def test_degree():
	k3 = get_complete(3)
	assert all(degree(k3, v) == 2 for v in k3)
	assert degree(Graph([7]), 7) == 0
	assert degree(get_star(5), 1) == 5
	
	with pytest.raises(UnknownVertexError):
		degree(k3, 4)


def test_connectivity():
	assert is_connected(get_complete(3))
	assert not is_connected(Graph([1, 2, 3, 4], [(1, 2), (3, 4)]))
	assert is_connected(Graph([1]))
	assert is_connected(Graph())
	
	assert connected_components(Graph([1, 2, 3, 4], [(1, 2), (3, 4)])) == ((1, 2), (3, 4))


def test_independent_sets():
	k3 = get_complete(3)
	assert is_independent_set(k3, [2])
	assert not is_independent_set(k3, [1, 3])
	assert is_independent_set(get_star(3), [2, 3, 4])
	
	with pytest.raises(UnknownVertexError):
		is_independent_set(k3, [1, 9])


def test_invalid_graphs():
	with pytest.raises(InvalidGraphError):
		Graph([1, 2], [(1, 1)])
	with pytest.raises(InvalidGraphError):
		Graph([1, 2], [(1, 2), (2, 1)])
	with pytest.raises(InvalidGraphError):
		Graph([1, 2], [(1, 3)])
	with pytest.raises(InvalidGraphError):
		Graph([0, 1])


def test_sparse_ids():
	g = Graph([10, 40, 30], [(40, 10), (30, 40)])
	assert g.vertices == (10, 30, 40)
	assert g.edges == ((10, 40), (30, 40))
	assert g.neighbors(40) == (10, 30)
	
	labels = canonical_labels(g)
	assert labels == {10: 1, 30: 2, 40: 3}
	assert g.relabel(labels) == Graph([1, 2, 3], [(1, 3), (2, 3)])


def test_orientation():
	g = get_path(3)
	o = Orientation([(2, 1), (2, 3)])
	o.check_against(g)
	assert o.head(1, 2) == 1 and o.tail(1, 2) == 2
	assert o.arcs == ((2, 1), (2, 3))
	assert o.reversed() == Orientation([(1, 2), (3, 2)])
	
	with pytest.raises(OrientationMismatchError):
		Orientation([(1, 2)]).check_against(g)
	with pytest.raises(OrientationMismatchError):
		Orientation([(1, 2), (2, 3), (1, 3)]).check_against(g)
	with pytest.raises(InvalidGraphError):
		Orientation([(1, 2), (2, 1)])


@given(graphs())
def test_handshake(g):
	assert sum(degree(g, v) for v in g) == 2 * g.m


@given(graphs())
def test_orientation_projects_onto_edges(g):
	o = Orientation((v, u) if (u + v) % 2 else (u, v) for u, v in g.edges)
	o.check_against(g)
	assert sorted(tuple(sorted(arc)) for arc in o.arcs) == list(g.edges)


@given(graphs(connected=True))
def test_connected_strategy(g):
	assert is_connected(g)
	assert len(connected_components(g)) == 1
