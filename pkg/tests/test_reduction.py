import pytest

from bcolab import (Graph, Orientation, CircOriInstance, PathDecomposition, Coloring, compute_k, build_instance,
                    reduce_instance, trivial_no_instance, forward_witness, extract_orientation, audit_coloring,
                    build_pd_for_H, check_invariants, degree_table, sample_recolorings, is_b_coloring, b_vertices,
                    validate_pd, pd_width, is_circulating, solve_circori_brute, gen_yes_instance, vertex_weight,
                    VertexRole, ReducedInstance, AbortTransaction)
from bcolab import json_pack, json_unpack
from bcolab.errors import (ParityInfeasibleError, DisconnectedGraphError, NotCirculatingError, InstanceMismatchError,
                           MalformedColoringError, AuditPreconditionError, ConstructionInvariantError,
                           InvalidDecompositionError)
from bcolab.reduction import expected_size
from _util_test import get_triangle, get_single_edge, get_cycle_orientation, get_triangle_pd


def _triangle():
	return build_instance(get_triangle())


def test_compute_k():
	assert compute_k(get_triangle()) == 26
	assert compute_k(get_single_edge(1)) == 9
	path = CircOriInstance(Graph([1, 2, 3], [(1, 2), (2, 3)]), {(1, 2): 1, (2, 3): 1})
	assert compute_k(path) == 15


def test_build_sizes():
	red = _triangle()
	assert red.k == 26
	assert red.graph.n == 499 == expected_size(red.source)
	
	red = build_instance(get_single_edge(2))
	assert red.k == 11
	assert red.graph.n == 92
	assert len(red.pads[1]) == 7
	assert len(red.z[1]) == 11 - 4 - 3


def test_build_rejects():
	with pytest.raises(ParityInfeasibleError):
		build_instance(get_triangle((1, 1, 2)))
	with pytest.raises(DisconnectedGraphError):
		build_instance(CircOriInstance(Graph([1, 2, 3, 4], [(1, 2), (3, 4)]), {(1, 2): 2, (3, 4): 2}))


def test_degree_table():
	red = _triangle()
	table = degree_table(red)
	assert table['S'] == (25,)
	assert table['Q'] == (26,)
	assert table['X'] == (25,)
	assert table['V'] == (26 + 2 - 1,)
	assert table['Y'] == table['Z'] == (4,)
	assert table['L'] == (5,)
	assert table['P'] == table['SL'] == table['AL'] == (1,)
	assert table['A'] == (25,)


def test_gadget_layout():
	red = _triangle()
	assert red.superstar == 1
	assert len(red.superstar_leaves) == 25
	assert red.superstar_leaves[:12] == [hid for key in sorted(red.l_blocks) for hid in red.l_blocks[key]]
	assert len(red.anon_centers) == 13
	assert red.roles[red.l_blocks[2, 1][0]] == VertexRole('L', edge=2, vertex=1, index=1, leaf=5)
	assert red.edge_index(3, 1) == 2
	assert red.plain_superstar_leaves() == red.superstar_leaves[12:]


def test_corrupted_instance():
	red = _triangle()
	g = red.graph
	edges = [e for e in g.edges if e != g.edges[0]]
	broken = ReducedInstance(Graph(g.vertices, edges), red.k, red.roles, red.source)
	with pytest.raises(ConstructionInvariantError):
		check_invariants(broken)


def test_reduce_instance():
	assert reduce_instance(get_triangle()).k == 26
	bad = get_triangle((1, 1, 2))
	with pytest.raises(ParityInfeasibleError):
		reduce_instance(bad)
	target = reduce_instance(bad, force_trivial_no=True)
	assert target.graph == trivial_no_instance().graph and target.k == 3


def test_forward_witness():
	red = _triangle()
	c = forward_witness(red, get_cycle_orientation())
	assert is_b_coloring(red, c)
	assert c[red.superstar] == 0
	assert c[red.orig[1]] == 1
	
	found = b_vertices(red, c)
	assert len(found) == 26 and all(len(vs) == 1 for vs in found.values())
	
	# e_1 = 12 is directed 1 -> 2, so Y_{e_1} repeats the colors of L_{e_1,1}
	assert sorted(c[y] for y in red.y[1]) == sorted(c[l] for l in red.l_blocks[1, 1])
	assert red.x[1, 2] in found[c[red.x[1, 2]]]


def test_forward_witness_rejects():
	red = _triangle()
	with pytest.raises(NotCirculatingError):
		forward_witness(red, Orientation([(1, 2), (1, 3), (2, 3)]))
	with pytest.raises(InstanceMismatchError):
		forward_witness(red, Orientation([(1, 2), (2, 3)]))


def test_roundtrip():
	red = _triangle()
	o = get_cycle_orientation()
	extracted = extract_orientation(red, forward_witness(red, o))
	assert extracted == o
	assert is_circulating(red.source, extracted)
	
	assert extract_orientation(red, forward_witness(red, o.reversed())) == o.reversed()


def test_roundtrip_generated():
	for seed in range(5):
		inst, _ = gen_yes_instance(seed, 4, 2, 2)
		o = solve_circori_brute(inst)
		red = build_instance(inst)
		c = forward_witness(red, o)
		assert is_b_coloring(red, c)
		assert audit_coloring(red, c).ok
		assert extract_orientation(red, c) == o


def test_extract_rejects():
	red = _triangle()
	c = forward_witness(red, get_cycle_orientation())
	
	# a pad taking its vertex's color breaks properness
	c[red.pads[1][0]] = c[red.orig[1]]
	with pytest.raises(MalformedColoringError):
		extract_orientation(red, c)


def _moved_role(red, a, b):
	roles = {**red.roles, a: red.roles[b], b: red.roles[a]}
	return ReducedInstance(red.graph, red.k, roles, red.source)


def test_extract_undecided_edge():
	red = _triangle()
	c = forward_witness(red, get_cycle_orientation())
	# edge {1,2} points to 2, so only x_{e_1,2} is a b-vertex
	assert red.x[1, 2] in b_vertices(red, c)[c[red.x[1, 2]]]
	
	both = _moved_role(red, red.x[1, 1], red.orig[1])
	with pytest.raises(MalformedColoringError) as info:
		extract_orientation(both, c)
	assert info.value.edge == (1, 2)
	assert 'both x-vertices' in str(info.value)
	
	neither = _moved_role(red, red.x[1, 2], red.plain_superstar_leaves()[0])
	with pytest.raises(MalformedColoringError) as info:
		extract_orientation(neither, c)
	assert info.value.edge == (1, 2)
	assert 'neither x-vertices' in str(info.value)


def test_audit():
	red = _triangle()
	c = forward_witness(red, get_cycle_orientation())
	report = audit_coloring(red, c)
	assert report.ok
	assert set(report.outcomes()) == {'b-vertex-count', 'b-vertex-location', 'x-same-color', 'degree-candidates',
	                                  'superstar-injective', 'l-blocks-disjoint', 'y-content', 'balance'}
	
	rec = json_unpack(json_pack(report))
	assert rec.outcomes() == report.outcomes()
	
	# the first leaf of L_{e_1,1} takes the color of the first leaf of L_{e_1,2}
	c[red.superstar_leaves[0]] = c[red.l_blocks[1, 2][0]]
	assert not is_b_coloring(red, c)
	with pytest.raises(AuditPreconditionError):
		audit_coloring(red, c)
	
	report = audit_coloring(red, c, strict=False)
	assert not report['superstar-injective'].passed
	assert not report['l-blocks-disjoint'].passed
	
	c[red.pads[1][0]] = c[red.orig[1]]
	with pytest.raises(AuditPreconditionError):
		audit_coloring(red, c, strict=False)


def test_recolorings_preserve_claims():
	inst, _ = gen_yes_instance(2, 3, 1, 1)
	red = build_instance(inst)
	c = forward_witness(red, solve_circori_brute(inst))
	changes = sample_recolorings(red, c, 25, seed=4)
	assert len(changes) == 11 + 25
	assert all(c[v] != q for v, q in changes)
	
	for v, q in changes:
		with c:
			c[v] = q
			if is_b_coloring(red, c):
				assert audit_coloring(red, c).ok
				assert is_circulating(inst, extract_orientation(red, c))
			raise AbortTransaction
	assert c == forward_witness(red, solve_circori_brute(inst))


def test_build_pd_for_H():
	red = _triangle()
	pd = build_pd_for_H(red, get_triangle_pd())
	assert validate_pd(red.graph, pd) is None
	assert pd_width(pd) == 8
	
	red = build_instance(get_single_edge(2))
	pd = build_pd_for_H(red, PathDecomposition([[1, 2]]))
	assert validate_pd(red.graph, pd) is None
	assert pd_width(pd) == 7
	
	with pytest.raises(InvalidDecompositionError):
		build_pd_for_H(red, PathDecomposition([[1]]))


def test_from_roles():
	red = _triangle()
	plain = {hid: role._replace(leaf=None) for hid, role in red.roles.items()}
	rec = ReducedInstance.from_roles(red.graph, red.k, plain)
	assert rec.source == red.source
	assert rec.roles == red.roles
	assert rec.superstar_leaves == red.superstar_leaves
	
	with pytest.raises(InstanceMismatchError):
		ReducedInstance.from_roles(red.graph, red.k, {hid: r for hid, r in plain.items() if hid != 1})


def test_from_roles_rejects_wrong_roles():
	red = _triangle()
	plain = {hid: role._replace(leaf=None) for hid, role in red.roles.items()}
	
	relabeled = dict(plain)
	relabeled[red.l_blocks[1, 1][0]] = VertexRole('SL', index=99)
	with pytest.raises(InstanceMismatchError):
		ReducedInstance.from_roles(red.graph, red.k, relabeled)
	
	# same sizes and degrees, but the Y-vertices sit in the wrong edge gadgets
	swapped = dict(plain)
	a, b = red.y[1][0], red.y[2][0]
	swapped[a], swapped[b] = plain[b], plain[a]
	full = {**red.roles, a: red.roles[b], b: red.roles[a]}
	check_invariants(ReducedInstance(red.graph, red.k, full, red.source))
	with pytest.raises(InstanceMismatchError):
		ReducedInstance.from_roles(red.graph, red.k, swapped)
	
	with pytest.raises(InstanceMismatchError):
		ReducedInstance.from_roles(red.graph, red.k + 1, plain)


def test_role_tokens():
	role = VertexRole('L', edge=2, vertex=1, index=3, leaf=7)
	assert role.tokens() == ['L', '2', '1', '3']
	assert str(role) == 'L 2 1 3'
	assert VertexRole.from_tokens(['L', '2', '1', '3']) == role._replace(leaf=None)
	assert VertexRole.from_tokens(['S']) == VertexRole('S')
	with pytest.raises(ValueError):
		VertexRole.from_tokens(['Q', '1'])
	with pytest.raises(ValueError):
		VertexRole.from_tokens(['W', '1'])


def test_pack_reduced_instance():
	red = build_instance(get_single_edge(2))
	rec = json_unpack(json_pack(red))
	assert isinstance(rec, ReducedInstance)
	assert rec.graph == red.graph and rec.roles == red.roles and rec.source == red.source
