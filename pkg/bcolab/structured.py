from typing import Any, Callable, Iterator, List

from .packing import Packable, pack_member, unpack_member


class adict(Packable, dict):
	'''
	Dictionary whose keys that are valid attribute names can also be used as attributes.
	
	d = adict(seed=3)
	d.passed = True
	assert d['passed'] and d.seed == 3
	'''
	
	def __getattr__(self, item):
		try:
			return self[item]
		except KeyError:
			raise AttributeError(item)
	
	def __setattr__(self, key, value):
		self[key] = value
	
	def __delattr__(self, item):
		try:
			del self[item]
		except KeyError:
			raise AttributeError(item)
	
	def __pack__(self):
		return [[pack_member(k), pack_member(v)] for k, v in self.items()]
	
	@classmethod
	def __create__(cls, data):
		return cls((unpack_member(k), unpack_member(v)) for k, v in data)
	

class Table(Packable, list):
	'''
	Essentially a database (elements are rows, keys are cols).
	Allowing nonrectangular entries, all rows are adicts.
	'''
	
	def select(self, key: str, skip: bool = True) -> Iterator[Any]:
		for x in self.selects(key, skip=skip):
			yield x[0]
	
	def selects(self, *keys: str, skip: bool = True) -> Iterator[List[Any]]:
		for x in self:
			l = []
			for k in keys:
				if k in x:
					l.append(x[k])
				elif skip:
					l = None
					break
				else:
					raise KeyError(k)
			if l is not None:
				yield l
	
	def filter(self, fn: Callable[[adict], bool]) -> 'Table':
		return self.__class__(x for x in self if fn(x))
	
	def __pack__(self):
		return [pack_member(row) for row in self]
	
	@classmethod
	def __create__(cls, data):
		return cls(unpack_member(row) for row in data)

