'''Storage functions for settings, input files and reports.'''
import csv
import io
import json
import os
import os.path
from pathlib import Path

import toml

from . import config
from . import qfield
from . import util
from .cochains import Cochain1, Cochain2, PARITY_NAMES, Window, parse_parity
from .deformation import CochainSum, TruncatedAutomorphism, TruncatedDeformation

ALLOWED_SETTING_KEYS = set(config.DEFAULTS)

SETTINGS_FILE = 'settings.toml'

CSV_COLUMNS = ['parity', 's', 'N', 'N_core', 'mode', 'dim_Z_core', 'dim_B_core',
               'dim_H2_core', 'wall_time_ms']


class StorageException(util.QWittException):
    '''Exception with reading or writing files.'''
    exit_code = 4


def get_config_home():
    '''Returns the home folder of the settings.'''
    xdg_home = os.environ.get('XDG_CONFIG_HOME')
    dot_config = os.path.join(os.path.expanduser('~'), '.config')
    dot_qwitt = os.path.join(os.path.expanduser('~'), '.qwitt')

    join = os.path.join
    home_path = util.cond(
        (xdg_home, lambda: join(xdg_home, 'qwitt')),
        (Path(dot_config).exists(), lambda: join(dot_config, 'qwitt')),
        (True, dot_qwitt)
    )()

    touch_directory(home_path)
    return home_path


def touch_directory(dirpath):
    '''Makes sure the whole directory path exists.'''
    Path(dirpath).mkdir(parents=True, exist_ok=True)


def _settings_path():
    '''Path of the settings file.'''
    return os.path.join(get_config_home(), SETTINGS_FILE)


def _read_config_file(fpath):
    '''Reads a toml file and returns its content.'''
    try:
        with open(fpath, 'r') as fhandle:
            return toml.load(fhandle)
    except (IOError, OSError) as exception:
        raise StorageException('cannot read {}: {}'.format(fpath, exception))
    except toml.TomlDecodeError as exception:
        raise StorageException('{} is not valid toml: {}'.format(fpath, exception))


def write_file(fpath, data):
    '''Writes the data to a toml file.'''
    with open(fpath, 'w') as fhandle:
        toml.dump(data, fhandle)


def get_settings():
    '''Returns the persistent settings (empty when never written).'''
    fpath = _settings_path()
    if not Path(fpath).exists():
        return {}
    return _read_config_file(fpath)


def _update_settings(data):
    '''Replaces the persistent settings.'''
    write_file(_settings_path(), data)


def coerce_setting(attr, value):
    '''Converts a textual value to the type of the setting.'''
    if attr not in ALLOWED_SETTING_KEYS:
        msg = '"{}" is an invalid key for the config'.format(attr)
        raise util.ConfigException(msg)
    default = config.DEFAULTS[attr]
    if attr == 'core' or isinstance(default, int):
        try:
            return int(value)
        except (TypeError, ValueError):
            raise util.ConfigException('"{}" needs an integer, got "{}"'.format(attr, value))
    return str(value)


def set_config(attr, value):
    '''sets attr to value'''
    value = coerce_setting(attr, value)
    data = get_settings()
    data[attr] = value
    _update_settings(data)
    return value


def get_config(attr):
    '''gets the value of attr from the settings file'''
    data = get_settings()
    if attr not in data:
        msg = '{} is not set'.format(attr)
        raise StorageException(msg)
    return data[attr]


def remove_config(attr):
    '''removes attr from the settings file'''
    data = get_settings()
    if attr not in data:
        msg = '{} is not set'.format(attr)
        raise StorageException(msg)
    del data[attr]
    _update_settings(data)


def read_run_file(fpath):
    '''Reads a toml run file with the same keys as the settings.'''
    data = _read_config_file(fpath)
    return {key: coerce_setting(key, value) for key, value in data.items()}


def _render(value):
    '''Canonical text of a coefficient.'''
    return value.render() if hasattr(value, 'render') else str(value)


def _parse(text, where):
    '''Parses a coefficient, as StorageException on failure.'''
    try:
        return qfield.parse(str(text))
    except (ValueError, TypeError, qfield.QFieldException) as exception:
        raise StorageException('{}: cannot parse coefficient "{}" ({})'.format(where, text, exception))


def _window(data):
    '''Window stored in a header.'''
    return Window(int(data['N']), data.get('core'))


def cochain2_to_dict(f):
    '''JSON-ready form of a 2-cochain.'''
    return {
        'kind': 'cochain2',
        'parity': PARITY_NAMES[f.parity],
        's': f.s,
        'N': f.window.N,
        'core': f.window.core,
        'entries': [[table, n, p, _render(value)] for table, n, p, value in f.entries()],
    }


def cochain2_from_dict(data, window=None):
    '''Inverse of cochain2_to_dict.'''
    try:
        window = window or _window(data)
        entries = [(table, int(n), int(p), _parse(value, 'cochain2'))
                   for table, n, p, value in data['entries']]
        return Cochain2.from_entries(parse_parity(data['parity']), int(data['s']), window, entries)
    except (KeyError, TypeError, ValueError) as exception:
        raise StorageException('malformed 2-cochain: {}'.format(exception))


def cochain1_to_dict(g):
    '''JSON-ready form of a 1-cochain.'''
    return {
        'kind': 'cochain1',
        'parity': PARITY_NAMES[g.parity],
        's': g.s,
        'N': g.window.N,
        'core': g.window.core,
        'entries': [[table, n, _render(value)] for table, n, value in g.entries()],
    }


def cochain1_from_dict(data, window=None):
    '''Inverse of cochain1_to_dict.'''
    try:
        window = window or _window(data)
        a, b = {}, {}
        for table, n, value in data['entries']:
            if table not in ('a', 'b'):
                raise ValueError('unknown table "{}"'.format(table))
            (a if table == 'a' else b)[int(n)] = _parse(value, 'cochain1')
        return Cochain1(parse_parity(data['parity']), int(data['s']), window, a, b)
    except (KeyError, TypeError, ValueError) as exception:
        raise StorageException('malformed 1-cochain: {}'.format(exception))


def deformation_to_dict(deformation):
    '''JSON-ready form of a deformation given by cochain sums.'''
    return {
        'kind': 'deformation',
        'order': deformation.order,
        'N': deformation.window.N,
        'core': deformation.window.core,
        'brackets': [[cochain2_to_dict(f) for f in bracket.components()]
                     for bracket in deformation.brackets],
    }


def deformation_from_dict(data):
    '''Inverse of deformation_to_dict.'''
    try:
        window = _window(data)
        brackets = [CochainSum(window, [cochain2_from_dict(f, window) for f in order])
                    for order in data['brackets']]
        if not brackets:
            raise ValueError('a deformation needs at least the order-1 bracket')
        if int(data.get('order', len(brackets))) != len(brackets):
            raise ValueError('order {} does not match {} brackets'.format(data['order'], len(brackets)))
    except (KeyError, TypeError, ValueError) as exception:
        raise StorageException('malformed deformation: {}'.format(exception))
    return TruncatedDeformation(window, brackets)


def automorphism_to_dict(automorphism):
    '''JSON-ready form of an automorphism given by 1-cochains.'''
    if any(cochains is None for cochains in automorphism.cochains):
        raise StorageException('only automorphisms given by 1-cochains can be written')
    return {
        'kind': 'automorphism',
        'order': automorphism.order,
        'N': automorphism.window.N,
        'core': automorphism.window.core,
        'maps': [[cochain1_to_dict(g) for g in cochains] for cochains in automorphism.cochains],
    }


def automorphism_from_dict(data, field=qfield.SYMBOLIC):
    '''Inverse of automorphism_to_dict.'''
    try:
        window = _window(data)
        maps = [[cochain1_from_dict(g, window) for g in order] for order in data['maps']]
        if not maps:
            raise ValueError('an automorphism needs at least phi_1')
        if int(data.get('order', len(maps))) != len(maps):
            raise ValueError('order {} does not match {} maps'.format(data['order'], len(maps)))
    except (KeyError, TypeError, ValueError) as exception:
        raise StorageException('malformed automorphism: {}'.format(exception))
    return TruncatedAutomorphism(window, maps, field)


def certificate_to_dict(certificate):
    '''Certificate summary with its cochains.'''
    record = certificate.to_dict()
    record['f'] = cochain2_to_dict(certificate.f)
    record['g'] = cochain1_to_dict(certificate.g)
    record['residual'] = cochain2_to_dict(certificate.residual)
    return record


def read_json(fpath):
    '''Loads a JSON input file.'''
    try:
        with open(fpath, 'r') as fhandle:
            return json.load(fhandle)
    except (IOError, OSError) as exception:
        raise StorageException('cannot read {}: {}'.format(fpath, exception))
    except ValueError as exception:
        raise StorageException('{} is not valid JSON: {}'.format(fpath, exception))


def write_json(fpath, data):
    '''Writes data as JSON.'''
    write_output(dumps(data), fpath)


def load_cochain2(fpath):
    '''Reads a 2-cochain file.'''
    return cochain2_from_dict(read_json(fpath))


def load_deformation(fpath):
    '''Reads a deformation file.'''
    return deformation_from_dict(read_json(fpath))


def dumps(data):
    '''Deterministic JSON text.'''
    return json.dumps(data, indent=2)


def sweep_csv(records):
    '''CSV summary of sector reports; wall_time_ms is empty unless timed.'''
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow([record.get(column, '') if record.get(column) is not None else ''
                         for column in CSV_COLUMNS])
    return buffer.getvalue()


def write_output(text, fpath=None):
    '''Writes a report to fpath, or unstyled to stdout.'''
    if not fpath:
        util.text_response(text.rstrip('\n'))
        return
    try:
        with open(fpath, 'w') as fhandle:
            fhandle.write(text if text.endswith('\n') else text + '\n')
    except (IOError, OSError) as exception:
        raise StorageException('cannot write {}: {}'.format(fpath, exception))
