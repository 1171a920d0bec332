import pytest

from bcolab import configure, setting, settings
from bcolab.errors import UnknownSettingError, InvalidSettingError


@pytest.fixture(autouse=True)
def _reset():
	configure()
	yield
	configure()


def test_defaults():
	assert setting('weight_cap') == 10000
	assert setting('weight_cap', 5) == 5
	assert settings.order_brute_cap == 12


def test_overrides(tmp_path):
	path = tmp_path / 'bcolab.yaml'
	path.write_text('weight_cap: 50\nworkers: 2\n')
	configure(str(path), workers=3)
	assert setting('weight_cap') == 50
	assert setting('workers') == 3
	
	configure()
	assert setting('workers') == 0


def test_env(tmp_path, monkeypatch):
	path = tmp_path / 'env.yaml'
	path.write_text('bcol_max_n: 8\n')
	monkeypatch.setenv('BCOLAB_CONFIG', str(path))
	assert configure().bcol_max_n == 8


def test_unknown_key(tmp_path):
	path = tmp_path / 'typo.yaml'
	path.write_text('weigth_cap: 50\n')
	with pytest.raises(UnknownSettingError):
		configure(str(path))
	with pytest.raises(UnknownSettingError):
		configure(colors=3)


def test_values_are_cast():
	assert configure(timeout='30').timeout == 30


def test_invalid_value(tmp_path):
	path = tmp_path / 'bad.yaml'
	path.write_text('weight_cap: abc\n')
	with pytest.raises(InvalidSettingError) as info:
		configure(str(path))
	assert info.value.key == 'weight_cap'
	
	path.write_text('- weight_cap\n')
	with pytest.raises(InvalidSettingError):
		configure(str(path))
	with pytest.raises(InvalidSettingError):
		configure(workers=None)
