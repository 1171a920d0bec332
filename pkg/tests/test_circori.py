import pytest
from hypothesis import given, settings, strategies as st

from bcolab import Graph, Orientation, CircOriInstance, vertex_weight, total_weight, in_weight, out_weight
from bcolab import is_circulating, parity_feasible, solve_circori_brute, solve_circori_naive
from bcolab import gen_yes_instance, gen_random_instance, is_connected
from bcolab.errors import (ZeroWeightError, WeightCapExceededError, InvalidGraphError, OrientationMismatchError,
                           CapExceededError, InfeasibleParametersError)
from _util_test import get_triangle, get_single_edge, get_cycle_orientation


def test_weights():
	tri = get_triangle()
	assert all(vertex_weight(tri, v) == 4 for v in tri.graph)
	assert total_weight(tri) == 6
	
	edge = get_single_edge(3)
	assert vertex_weight(edge, 1) == vertex_weight(edge, 2) == 3
	assert total_weight(get_single_edge(1)) == 1
	
	lonely = CircOriInstance(Graph([1, 2, 3], [(1, 2)]), {(2, 1): 1})
	assert vertex_weight(lonely, 3) == 0
	assert total_weight(CircOriInstance(Graph([1]), {})) == 0


def test_invalid_instances():
	with pytest.raises(ZeroWeightError):
		get_single_edge(0)
	with pytest.raises(InvalidGraphError):
		CircOriInstance(Graph([1, 2]), {(1, 2): 1})
	with pytest.raises(InvalidGraphError):
		CircOriInstance(Graph([1, 2], [(1, 2)]), {})
	with pytest.raises(WeightCapExceededError):
		CircOriInstance(Graph([1, 2], [(1, 2)]), {(1, 2): 50}, weight_cap=10)


def test_is_circulating():
	tri = get_triangle()
	cycle = get_cycle_orientation()
	assert is_circulating(tri, cycle)
	assert is_circulating(tri, cycle.reversed())
	assert all(in_weight(tri, cycle, v) == out_weight(tri, cycle, v) == 2 for v in tri.graph)
	
	assert not is_circulating(tri, Orientation([(1, 3), (2, 3), (1, 2)]))
	
	edge = get_single_edge(2)
	assert not is_circulating(edge, Orientation([(1, 2)]))
	assert not is_circulating(edge, Orientation([(2, 1)]))
	
	with pytest.raises(OrientationMismatchError):
		is_circulating(tri, Orientation([(1, 2)]))


def test_parity():
	assert parity_feasible(get_triangle())
	assert not parity_feasible(get_triangle((1, 1, 2)))
	assert parity_feasible(get_single_edge(2))


def test_solve_brute():
	assert solve_circori_brute(get_triangle()) == get_cycle_orientation()
	assert solve_circori_brute(get_single_edge(2)) is None
	assert solve_circori_brute(get_triangle((1, 1, 2))) is None
	
	with pytest.raises(CapExceededError):
		solve_circori_brute(get_triangle(), cap=2)


def test_solve_naive_matches_first_found():
	assert solve_circori_naive(get_triangle()) == get_cycle_orientation()
	assert solve_circori_naive(get_single_edge(2)) is None
	with pytest.raises(CapExceededError):
		solve_circori_naive(get_triangle(), cap=2)


def test_gen_yes_instance():
	inst, planted = gen_yes_instance(5, 3, 1, 2)
	assert inst.graph.edges == ((1, 2), (1, 3), (2, 3))
	assert len(set(inst.weights().values())) == 1
	assert is_circulating(inst, planted)
	
	for seed in range(20):
		inst, planted = gen_yes_instance(seed, 6, 3, 4, max_edges=12)
		assert is_connected(inst.graph)
		assert inst.m <= 12
		assert parity_feasible(inst)
		assert is_circulating(inst, planted)
		assert is_circulating(inst, solve_circori_brute(inst))
	
	assert gen_yes_instance(11, 7, 2, 3) == gen_yes_instance(11, 7, 2, 3)
	
	with pytest.raises(InfeasibleParametersError):
		gen_yes_instance(0, 2, 1, 1)
	with pytest.raises(InfeasibleParametersError):
		gen_yes_instance(0, 5, 1, 1, max_edges=3)


def test_gen_random_instance():
	for seed in range(10):
		inst = gen_random_instance(seed, 4, 4, 3)
		assert is_connected(inst.graph)
		assert inst.m == 4
		assert all(1 <= w <= 3 for w in inst.weights().values())
	
	# trees with unit weights have W_v = 1 at every leaf
	inst = gen_random_instance(0, 4, 3, 1)
	assert not parity_feasible(inst)
	
	with pytest.raises(InfeasibleParametersError):
		gen_random_instance(0, 4, 7, 1)


@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=3, max_value=7),
       st.integers(min_value=1, max_value=3))
@settings(max_examples=30, deadline=None)
def test_brute_agrees_with_enumeration(seed, n, wmax):
	m = min(10, n * (n - 1) // 2)
	inst = gen_random_instance(seed, n, m, wmax)
	found = solve_circori_brute(inst)
	assert found == solve_circori_naive(inst)
	if found is not None:
		assert is_circulating(inst, found)
	if not parity_feasible(inst):
		assert found is None
