
name = 'bcolab'
long_name = 'bColab'

version = '0.1.0'

url = 'https://github.com/felixludos/bcolab'

description = 'Executable audit of the b-Coloring hardness reduction from Circulating Orientation'

author = 'Felix Leeb'
author_email = 'felixludos.info@gmail.com'

license = 'MIT'

readme = 'README.rst'

packages = ['bcolab']

entry_points = {'console_scripts': ['bcolab = bcolab.cli:main']}

python_requires = '>=3.7'

extras_require = {'test': ['pytest', 'hypothesis']}

import os
try:
	with open(os.path.join(os.path.abspath(os.path.dirname(os.path.dirname(__file__))), 'requirements.txt'), 'r') as f:
		install_requires = f.readlines()
except:
	install_requires = ['numpy', 'pyyaml']
del os

