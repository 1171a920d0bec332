from .packing import Packable, primitive, PRIMITIVE, SERIALIZABLE, JSONABLE, pack, unpack, pack_member, unpack_member
from .packing import save_pack, load_pack, json_pack, json_unpack
from .transactions import Transactionable, AbortTransaction
from .structured import adict, Table
from .config import settings, configure, setting

from .graphs import Graph, Orientation, degree, is_connected, is_independent_set, connected_components
from .graphs import canonical_labels
from .decomposition import PathDecomposition, LinearOrder, Violation, validate_pd, pd_width, pd_to_linear_order
from .decomposition import module_number, module_numbers, module_width, linear_module_width_brute, gen_pd_graph
from .circori import CircOriInstance, is_circulating, parity_feasible, solve_circori_brute, solve_circori_naive
from .circori import gen_yes_instance, gen_random_instance, vertex_weight, total_weight, in_weight, out_weight
from .bcoloring import BColInstance, Coloring, is_proper, b_vertices, is_b_coloring, b_coloring_defect
from .bcoloring import solve_bcol_brute, solve_bcol_naive, color_classes, recoloring_defects
from .reduction import VertexRole, ReducedInstance, compute_k, build_instance, reduce_instance, trivial_no_instance
from .reduction import forward_witness, extract_orientation, audit_coloring, AuditReport, build_pd_for_H
from .reduction import check_invariants, degree_table, sample_recolorings
from .harness import RunReport, run_suite
from .farming import Farmer

import os
__info__ = {'__file__':os.path.join(os.path.abspath(os.path.dirname(__file__)), '_info.py')}
with open(os.path.join(os.path.abspath(os.path.dirname(__file__)), '_info.py'), 'r') as f:
	exec(f.read(), __info__)
del os
del __info__['__file__']
__author__ = __info__['author']
__version__ = __info__['version']
