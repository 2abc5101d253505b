'''Tests for the storage functions.'''
import os
from pathlib import Path

import pytest
import qwitt
import test_util

from qwitt import storage
from qwitt.cochains import Cochain2, Window
from qwitt.deformation import CochainSum, LinearTable, TruncatedAutomorphism, TruncatedDeformation


@test_util.custom_home
def test_config_home():
    '''Test that the settings home lives under XDG_CONFIG_HOME.'''
    home = storage.get_config_home()
    assert home == test_util.home_path('qwitt')
    assert Path(home).is_dir()


@test_util.custom_home
def test_empty_settings():
    '''Test that no settings file means no settings.'''
    assert storage.get_settings() == {}
    assert not Path(test_util.home_path('qwitt'), storage.SETTINGS_FILE).exists()


@test_util.custom_home
def test_set_get_config():
    '''Test that a setting is coerced, stored and read back.'''
    assert storage.set_config('window', '9') == 9
    assert storage.get_config('window') == 9
    assert storage.set_config('mode', 'sampled') == 'sampled'
    assert storage.get_settings() == {'window': 9, 'mode': 'sampled'}
    assert Path(test_util.home_path('qwitt'), storage.SETTINGS_FILE).exists()


@test_util.custom_home
def test_remove_config():
    '''Test removing a setting.'''
    storage.set_config('seed', 3)
    storage.remove_config('seed')
    assert storage.get_settings() == {}
    with pytest.raises(storage.StorageException):
        storage.remove_config('seed')


@test_util.custom_home
def test_config_throws():
    '''Test the exceptions of the settings functions.'''
    with pytest.raises(qwitt.util.ConfigException):
        storage.set_config('nosuchkey', '1')
    with pytest.raises(qwitt.util.ConfigException):
        storage.set_config('window', 'twelve')
    with pytest.raises(storage.StorageException):
        storage.get_config('window')


@test_util.custom_home
def test_broken_settings_file():
    '''Test that a damaged settings file is a storage error.'''
    with open(os.path.join(storage.get_config_home(), storage.SETTINGS_FILE), 'w') as fhandle:
        fhandle.write('window = = 3\n')
    with pytest.raises(storage.StorageException) as info:
        storage.get_settings()
    assert info.value.exit_code == 4


def test_read_run_file(tmp_path):
    '''Test that a run file is coerced key by key.'''
    fpath = tmp_path / 'run.toml'
    fpath.write_text('window = 7\nmode = "symbolic"\nparity = "odd"\n')
    assert storage.read_run_file(str(fpath)) == {'window': 7, 'mode': 'symbolic', 'parity': 'odd'}
    fpath.write_text('speed = 7\n')
    with pytest.raises(qwitt.util.ConfigException):
        storage.read_run_file(str(fpath))


def test_cochain2_dict():
    '''Test the file form of a 2-cochain.'''
    f = test_util.random_f('odd', 1, 2, core=1, seed=5)
    data = storage.cochain2_to_dict(f)
    assert data['kind'] == 'cochain2'
    assert (data['parity'], data['s'], data['N'], data['core']) == ('odd', 1, 2, 1)
    assert all(len(entry) == 4 and isinstance(entry[3], str) for entry in data['entries'])
    back = storage.cochain2_from_dict(data)
    assert back == f
    assert back.window == Window(2, 1)


def test_cochain1_dict():
    '''Test the file form of a 1-cochain.'''
    g = test_util.random_g('even', 0, 3, seed=2)
    data = storage.cochain1_to_dict(g)
    assert data['kind'] == 'cochain1'
    assert storage.cochain1_from_dict(data) == g


def test_cochain_dict_throws():
    '''Test that malformed cochain files are storage errors.'''
    good = storage.cochain2_to_dict(test_util.random_f('even', 0, 1))
    with pytest.raises(storage.StorageException):
        storage.cochain2_from_dict(dict(good, parity='neither'))
    with pytest.raises(storage.StorageException):
        storage.cochain2_from_dict({key: value for key, value in good.items() if key != 'entries'})
    with pytest.raises(storage.StorageException):
        storage.cochain2_from_dict(dict(good, entries=[['a', 0, 1, 'x + 1']]))
    with pytest.raises(storage.StorageException):
        storage.cochain1_from_dict({'parity': 'even', 's': 0, 'N': 1, 'entries': [['c', 0, '1']]})


def test_deformation_dict():
    '''Test the file form of a deformation.'''
    window = Window(3, 1)
    parts = [test_util.random_f('even', s, 3, core=1, seed=s) for s in (0, 2)]
    deformation = TruncatedDeformation(window, [CochainSum(window, parts)])
    data = storage.deformation_to_dict(deformation)
    assert (data['kind'], data['order'], data['N'], data['core']) == ('deformation', 1, 3, 1)
    assert len(data['brackets']) == 1 and len(data['brackets'][0]) == 2
    back = storage.deformation_from_dict(data)
    assert back.order == 1
    assert back.window == window
    assert back.brackets[0].components() == parts


def test_deformation_dict_throws():
    '''Test that an empty or inconsistent deformation file is rejected.'''
    with pytest.raises(storage.StorageException):
        storage.deformation_from_dict({'order': 0, 'N': 3, 'brackets': []})
    f = storage.cochain2_to_dict(Cochain2(0, 0, Window(3)))
    with pytest.raises(storage.StorageException):
        storage.deformation_from_dict({'order': 2, 'N': 3, 'brackets': [[f]]})


def test_automorphism_dict():
    '''Test the file form of an automorphism given by 1-cochains.'''
    window = Window(3, 1)
    g = test_util.random_g('even', 0, 3, core=1, seed=3)
    h = test_util.random_g('even', 1, 3, core=1, seed=4)
    automorphism = TruncatedAutomorphism(window, [[g, h], []])
    data = storage.automorphism_to_dict(automorphism)
    assert (data['kind'], data['order'], data['N'], data['core']) == ('automorphism', 2, 3, 1)
    assert [len(maps) for maps in data['maps']] == [2, 0]
    back = storage.automorphism_from_dict(data)
    assert back.order == 2
    assert back.cochains == [[g, h], []]
    assert back.maps[0].values == automorphism.maps[0].values
    assert back.maps[1].is_zero()


def test_automorphism_dict_throws():
    '''Test that tables and malformed automorphism files are rejected.'''
    window = Window(3, 1)
    with pytest.raises(storage.StorageException):
        storage.automorphism_to_dict(TruncatedAutomorphism(window, [LinearTable.zero(window)]))
    with pytest.raises(storage.StorageException):
        storage.automorphism_from_dict({'order': 0, 'N': 3, 'maps': []})
    g = storage.cochain1_to_dict(test_util.random_g('even', 0, 3, core=1))
    with pytest.raises(storage.StorageException):
        storage.automorphism_from_dict({'order': 3, 'N': 3, 'maps': [[g]]})


def test_unparsable_coefficient():
    '''Test that coefficients sympy cannot read are storage errors.'''
    good = storage.cochain2_to_dict(test_util.random_f('even', 0, 1))
    for text in ('(', '1/0', 'q / (q - q)', '*q'):
        with pytest.raises(storage.StorageException) as info:
            storage.cochain2_from_dict(dict(good, entries=[['b', 0, 0, text]]))
        assert info.value.exit_code == 4


def test_json_files(tmp_path):
    '''Test writing and reading JSON files.'''
    fpath = str(tmp_path / 'report.json')
    storage.write_json(fpath, {'b': [1, 2], 'a': None})
    assert storage.read_json(fpath) == {'b': [1, 2], 'a': None}
    assert open(fpath).read().endswith('\n')


def test_json_files_throw(tmp_path):
    '''Test the exceptions of the JSON functions.'''
    with pytest.raises(storage.StorageException):
        storage.read_json(str(tmp_path / 'missing.json'))
    broken = tmp_path / 'broken.json'
    broken.write_text('{"entries": [')
    with pytest.raises(storage.StorageException):
        storage.load_cochain2(str(broken))


def test_load_cochain2(tmp_path):
    '''Test loading a 2-cochain from a file.'''
    f = test_util.random_f('even', -1, 2)
    fpath = test_util.write_json(str(tmp_path / 'f.json'), storage.cochain2_to_dict(f))
    assert storage.load_cochain2(fpath) == f


def test_sweep_csv():
    '''Test the csv summary of a sweep.'''
    records = [
        {'parity': 'even', 's': 0, 'N': 6, 'N_core': 0, 'mode': 'sampled',
         'dim_Z_core': 3, 'dim_B_core': 3, 'dim_H2_core': 0, 'wall_time_ms': None},
        {'parity': 'odd', 's': 1, 'N': 6, 'N_core': 0, 'mode': 'sampled',
         'dim_Z_core': 0, 'dim_B_core': 0, 'dim_H2_core': 0, 'wall_time_ms': 12},
    ]
    lines = storage.sweep_csv(records).splitlines()
    assert lines[0] == ','.join(storage.CSV_COLUMNS)
    assert lines[1] == 'even,0,6,0,sampled,3,3,0,'
    assert lines[2] == 'odd,1,6,0,sampled,0,0,0,12'
