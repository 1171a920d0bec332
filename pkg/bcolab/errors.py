
# base classes (these select the exit code of the cli)

class FormatError(Exception):
	'''Input could not be parsed'''
	exit_code = 2

class PreconditionError(Exception):
	'''An operation was called with input violating its precondition'''
	exit_code = 3

class InvariantBreach(Exception):
	'''An internal invariant failed - this signals a bug, not bad input'''
	exit_code = 4


# parsing

class ParseError(FormatError):
	'''Error thrown when a line of an instance file does not follow the grammar'''
	def __init__(self, kind, line_no, line, reason):
		super().__init__('{} line {}: {} ({!r})'.format(kind, line_no, reason, line))
		self.kind = kind
		self.line_no = line_no
		self.line = line
		self.reason = reason


# graphs

class InvalidGraphError(PreconditionError):
	'''Error thrown when a graph would contain a self-loop, a parallel edge or an undeclared endpoint'''
	def __init__(self, reason):
		super().__init__('Invalid graph: {}'.format(reason))
		self.reason = reason

class UnknownVertexError(PreconditionError):
	'''Error thrown when a vertex id is not part of the graph'''
	def __init__(self, vertex):
		super().__init__('Unknown vertex: {}'.format(vertex))
		self.vertex = vertex

class OrientationMismatchError(PreconditionError):
	'''Error thrown when an orientation does not orient exactly the edges of a graph'''
	def __init__(self, missing=(), extra=()):
		msg = 'Orientation does not match the edge set'
		if len(missing):
			msg += ', unoriented edges: {}'.format(sorted(missing))
		if len(extra):
			msg += ', arcs without edge: {}'.format(sorted(extra))
		super().__init__(msg)
		self.missing = missing
		self.extra = extra


# decompositions

class InvalidDecompositionError(PreconditionError):
	'''Error thrown when an operation requires a valid path decomposition'''
	def __init__(self, violation):
		super().__init__('Invalid path decomposition: {}'.format(violation))
		self.violation = violation

class EmptyDecompositionError(PreconditionError):
	'''Error thrown when the width of a decomposition without bags is requested'''
	def __init__(self):
		super().__init__('The width of a decomposition without bags is undefined')

class OrderIndexError(PreconditionError):
	'''Error thrown when a prefix index is outside [1..n]'''
	def __init__(self, index, n):
		super().__init__('Prefix index {} is out of range [1..{}]'.format(index, n))
		self.index = index
		self.n = n

class MalformedOrderError(PreconditionError):
	'''Error thrown when a linear order is not a permutation of the vertices'''
	def __init__(self, reason):
		super().__init__('Malformed linear order: {}'.format(reason))
		self.reason = reason


# generators and solvers

class InfeasibleParametersError(PreconditionError):
	'''Error thrown when a generator cannot satisfy its parameters'''
	def __init__(self, generator, reason):
		super().__init__('{}: infeasible parameters ({})'.format(generator, reason))
		self.generator = generator
		self.reason = reason

class CapExceededError(PreconditionError):
	'''Error thrown when an exhaustive search would exceed its configured cap'''
	def __init__(self, solver, size, cap):
		super().__init__('{}: instance size {} exceeds the cap {}'.format(solver, size, cap))
		self.solver = solver
		self.size = size
		self.cap = cap


# circulating orientation

class ZeroWeightError(PreconditionError):
	'''Error thrown when an edge weight is not a positive integer'''
	def __init__(self, edge, weight):
		super().__init__('Edge {} has weight {}, but all weights must be at least 1'.format(edge, weight))
		self.edge = edge
		self.weight = weight

class WeightCapExceededError(PreconditionError):
	'''Error thrown when the total weight exceeds the unary cap'''
	def __init__(self, total, cap):
		super().__init__('Total weight {} exceeds the unary cap {}'.format(total, cap))
		self.total = total
		self.cap = cap

class DisconnectedGraphError(PreconditionError):
	'''Error thrown when the reduction is applied to a disconnected graph'''
	def __init__(self, components):
		super().__init__('The source graph has {} connected components, expected 1'.format(components))
		self.components = components

class ParityInfeasibleError(PreconditionError):
	'''Error thrown when some vertex weight is odd (no circulating orientation can exist)'''
	def __init__(self, vertices):
		super().__init__('Vertices with odd incident weight: {}'.format(sorted(vertices)))
		self.vertices = vertices

class NotCirculatingError(PreconditionError):
	'''Error thrown when an orientation is required to be circulating but is not'''
	def __init__(self, vertex, in_weight, out_weight):
		super().__init__('Orientation is not circulating at vertex {} (in {} != out {})'.format(
			vertex, in_weight, out_weight))
		self.vertex = vertex
		self.in_weight = in_weight
		self.out_weight = out_weight


# colorings

class ColoringError(PreconditionError):
	'''Error thrown when a coloring is not total or uses a color outside [0..k-1]'''
	def __init__(self, reason):
		super().__init__('Malformed coloring: {}'.format(reason))
		self.reason = reason

class InvalidColorCountError(PreconditionError):
	'''Error thrown when a b-Coloring instance asks for fewer than one color'''
	def __init__(self, k):
		super().__init__('The number of colors must be at least 1, got {}'.format(k))
		self.k = k

class ImproperColoringError(PreconditionError):
	'''Error thrown when a proper coloring is required'''
	def __init__(self, edge, color):
		super().__init__('Edge {} is monochromatic (color {})'.format(edge, color))
		self.edge = edge
		self.color = color


# reduction

class InstanceMismatchError(PreconditionError):
	'''Error thrown when a witness does not belong to the reduced instance'''
	def __init__(self, reason):
		super().__init__('Witness does not match the instance: {}'.format(reason))
		self.reason = reason

class MalformedColoringError(PreconditionError):
	'''Error thrown when a coloring cannot be turned into an orientation'''
	def __init__(self, reason, edge=None):
		super().__init__('Cannot extract an orientation: {}'.format(reason))
		self.reason = reason
		self.edge = edge

class AuditPreconditionError(PreconditionError):
	'''Error thrown when a coloring handed to the claim audit is not a b-coloring'''
	def __init__(self, reason):
		super().__init__('Audit requires a b-coloring with k colors: {}'.format(reason))
		self.reason = reason

class ConstructionInvariantError(InvariantBreach):
	'''Error thrown when the constructed instance violates the degree table or the size formula'''
	def __init__(self, reason):
		super().__init__('Reduced instance is malformed: {}'.format(reason))
		self.reason = reason

class BalanceViolationError(InvariantBreach):
	'''Error thrown when the orientation extracted from a b-coloring is not circulating'''
	def __init__(self, vertex, in_weight, out_weight):
		super().__init__('Extracted orientation is unbalanced at vertex {} (in {} != out {})'.format(
			vertex, in_weight, out_weight))
		self.vertex = vertex
		self.in_weight = in_weight
		self.out_weight = out_weight


# packing

class PackableClassCollisionError(Exception):
	'''Error thrown when trying to re-register a class already registered'''
	def __init__(self, addr, cls):
		super().__init__('A class with the address {} is already in the class register of Packable'.format(addr))
		self.cls = cls

class UnregisteredClassError(Exception):
	'''Error thrown when trying to pack an instance of an unregistered class'''
	def __init__(self, name):
		super().__init__('"{}" is not registered (does it subclass Packable?)'.format(name))

class UnknownSettingError(KeyError):
	'''Error thrown when a configuration file names a setting that does not exist'''
	def __init__(self, key):
		super().__init__('Unknown setting: {}'.format(key))
		self.key = key

class InvalidSettingError(ValueError):
	'''Error thrown when a setting value cannot be converted to the type of its default'''
	def __init__(self, key, value, expected):
		super().__init__('Invalid value for setting {}: {!r} (expected {})'.format(key, value, expected.__name__))
		self.key = key
		self.value = value
		self.expected = expected



# farming

class WorkerError(Exception):
	'''Error thrown when a job raised inside a worker process (carries the formatted remote traceback)'''
	def __init__(self, exc_type, exc_msg):
		super().__init__('Exception of type {} occurred in a worker:\n{}'.format(exc_type.__name__, exc_msg))
		self.exc_type = exc_type
		self.exc_msg = exc_msg
