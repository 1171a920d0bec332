import pytest
from hypothesis import given, settings, strategies as st

from bcolab import Graph, BColInstance, Coloring, is_proper, b_vertices, is_b_coloring, b_coloring_defect
from bcolab import solve_bcol_brute, solve_bcol_naive, color_classes, recoloring_defects, AbortTransaction
from bcolab.errors import ColoringError, ImproperColoringError, InvalidColorCountError, CapExceededError
from _util_test import get_complete, get_path, get_star, get_cycle, graphs


def _coloring(*colors):
	return Coloring(enumerate(colors, 1))


def test_is_proper():
	k3 = BColInstance(get_complete(3), 3)
	assert is_proper(k3, _coloring(0, 1, 2))
	assert not is_proper(k3, _coloring(0, 0, 1))
	assert is_proper(BColInstance(Graph([1, 2, 3]), 1), _coloring(0, 0, 0))
	
	with pytest.raises(ColoringError):
		is_proper(k3, _coloring(0, 1))
	with pytest.raises(ColoringError):
		is_proper(k3, _coloring(0, 1, 3))
	with pytest.raises(ColoringError):
		is_proper(k3, _coloring(0, 1, 2, 0))


def test_b_vertices():
	p4 = BColInstance(get_path(4), 2)
	assert b_vertices(p4, _coloring(0, 1, 0, 1)) == {0: {1, 3}, 1: {2, 4}}
	
	star = BColInstance(get_star(3), 2)
	assert b_vertices(star, _coloring(0, 1, 1, 1)) == {0: {1}, 1: {2, 3, 4}}
	
	k3 = BColInstance(get_complete(3), 3)
	assert b_vertices(k3, _coloring(0, 1, 2)) == {0: {1}, 1: {2}, 2: {3}}
	
	with pytest.raises(ImproperColoringError):
		b_vertices(k3, _coloring(0, 0, 1))


def test_is_b_coloring():
	assert is_b_coloring(BColInstance(get_path(4), 2), _coloring(0, 1, 0, 1))
	assert is_b_coloring(BColInstance(get_complete(3), 3), _coloring(0, 1, 2))
	
	star = BColInstance(get_star(3), 3)
	assert not is_b_coloring(star, _coloring(0, 1, 2, 1))
	assert b_coloring_defect(star, _coloring(0, 1, 2, 1)) == 'color 1 has no b-vertex'
	
	# malformed colorings are answered, not raised
	assert not is_b_coloring(star, _coloring(0, 1))
	assert 'monochromatic' in b_coloring_defect(star, _coloring(0, 0, 1, 2))


def test_invalid_k():
	with pytest.raises(InvalidColorCountError):
		BColInstance(get_path(2), 0)


def test_solve_bcol_brute():
	c5 = BColInstance(get_cycle(5), 3)
	found = solve_bcol_brute(c5)
	assert found == _coloring(0, 1, 0, 1, 2)
	assert is_b_coloring(c5, found)
	
	assert solve_bcol_brute(BColInstance(get_star(3), 3)) is None
	assert solve_bcol_brute(BColInstance(get_complete(3), 3)) == _coloring(0, 1, 2)
	assert solve_bcol_brute(BColInstance(get_path(2), 3)) is None
	
	with pytest.raises(CapExceededError):
		solve_bcol_brute(BColInstance(get_path(13), 2))
	with pytest.raises(CapExceededError):
		solve_bcol_brute(c5, budget=100)
	assert solve_bcol_brute(c5, budget=3 ** 5) == found


def test_solve_bcol_naive():
	c5 = BColInstance(get_cycle(5), 3)
	assert is_b_coloring(c5, solve_bcol_naive(c5))
	assert solve_bcol_naive(BColInstance(get_star(3), 3)) is None
	with pytest.raises(CapExceededError):
		solve_bcol_naive(c5, cap=10)


def test_coloring_transactions():
	c = _coloring(0, 1, 0, 1)
	p4 = BColInstance(get_path(4), 2)
	
	with c:
		c[2] = 0
		assert not is_proper(p4, c)
		raise AbortTransaction
	assert c == _coloring(0, 1, 0, 1)
	
	with c:
		c[4] = 0
	assert c[4] == 0
	
	c.begin()
	del c[1]
	assert 1 not in c
	c.abort()
	assert c[1] == 0 and not c.in_transaction()


def test_color_classes():
	assert color_classes(_coloring(0, 1, 0, 2)) == {0: {1, 3}, 1: {2}, 2: {4}}


@given(graphs(max_n=5, connected=True), st.integers(min_value=2, max_value=4))
@settings(max_examples=60, deadline=None)
def test_brute_agrees_with_enumeration(g, k):
	inst = BColInstance(g, k)
	found = solve_bcol_brute(inst)
	assert (found is None) == (solve_bcol_naive(inst) is None)
	if found is not None:
		assert is_b_coloring(inst, found)


@given(graphs(max_n=5, connected=True), st.integers(min_value=2, max_value=3), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_permuting_colors_keeps_b_colorings(g, k, rnd):
	inst = BColInstance(g, k)
	found = solve_bcol_brute(inst)
	if found is None:
		return
	perm = list(range(k))
	rnd.shuffle(perm)
	assert is_b_coloring(inst, found.permuted(dict(enumerate(perm))))


def test_recoloring_defects():
	p4 = BColInstance(get_path(4), 2)
	assert list(recoloring_defects(p4, _coloring(0, 1, 0, 1))) == [
		(1, 1, 'edge {1,2} is monochromatic (color 1)'),
		(2, 0, 'edge {1,2} is monochromatic (color 0)'),
		(3, 1, 'edge {2,3} is monochromatic (color 1)'),
		(4, 0, 'edge {3,4} is monochromatic (color 0)'),
	]
	with pytest.raises(ImproperColoringError):
		list(recoloring_defects(p4, _coloring(0, 0, 1, 0)))


@given(graphs(max_n=5, connected=True), st.integers(min_value=2, max_value=4))
@settings(max_examples=40, deadline=None)
def test_recoloring_verdicts_match_full_check(g, k):
	candidates = [(BColInstance(g, g.n), Coloring((v, v - 1) for v in g.vertices))]
	found = solve_bcol_brute(BColInstance(g, k))
	if found is not None:
		candidates.append((BColInstance(g, k), found))
	for inst, c in candidates:
		verdicts = list(recoloring_defects(inst, c))
		assert len(verdicts) == g.n * (inst.k - 1)
		for v, q, defect in verdicts:
			with c:
				c[v] = q
				assert (defect is None) == is_b_coloring(inst, c)
				raise AbortTransaction
