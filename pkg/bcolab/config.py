import os
import logging
from typing import Any, Dict, TextIO

import yaml

from .errors import UnknownSettingError, InvalidSettingError
from .structured import adict

logger = logging.getLogger(__name__)

_defaults = {
	'weight_cap': 10000, # unary discipline: total weight W
	'circori_edge_cap': 24,
	'naive_edge_cap': 16,
	'bcol_max_n': 12,
	'bcol_max_k': 5,
	'naive_assignments': 5000000,
	'order_brute_cap': 12,
	'gen_retries': 200,
	'workers': 0,
	'timeout': 120,
}

ENV_VAR = 'BCOLAB_CONFIG'


class Settings(adict):
	'''
	All tunable caps and budgets of the package.
	
	Only keys in the defaults are accepted, so a typo in a config file fails loudly instead of being ignored.
	'''
	
	def __init__(self, *args, **kwargs):
		super().__init__(_defaults)
		self.update(*args, **kwargs)
	
	def update(self, *args, **kwargs):
		for key, value in dict(*args, **kwargs).items():
			if key not in _defaults:
				raise UnknownSettingError(key)
			kind = type(_defaults[key])
			try:
				self[key] = kind(value)
			except (TypeError, ValueError):
				raise InvalidSettingError(key, value, kind)
	
	def load_yaml(self, fp: TextIO) -> 'Settings':
		'''
		Update the settings from a yaml document (a flat mapping).
		
		:param fp: readable file-like object
		:return: self
		:raises InvalidSettingError: if the document is not a mapping or a value has the wrong type
		'''
		data = yaml.safe_load(fp)
		if data is not None and not isinstance(data, dict):
			raise InvalidSettingError('<document>', data, dict)
		if data is not None:
			self.update(data)
		return self


settings = Settings()


def configure(path: str = None, **overrides: Any) -> Settings:
	'''
	Reset the global settings: defaults, then the file named by $BCOLAB_CONFIG, then `path`, then `overrides`.
	
	:param path: yaml file with settings
	:param overrides: explicit values
	:return: the global settings
	'''
	settings.clear()
	settings.update(_defaults)
	for src in (os.environ.get(ENV_VAR), path):
		if src:
			logger.debug('loading settings from %s', src)
			with open(src, 'r') as f:
				settings.load_yaml(f)
	settings.update(overrides)
	return settings


def setting(key: str, value: Any = None) -> Any:
	'''
	Resolve an explicit argument against the global settings.
	
	:param key: name of the setting
	:param value: explicitly passed value (wins if not None)
	:return: the value to use
	'''
	if value is not None:
		return value
	return settings[key]

