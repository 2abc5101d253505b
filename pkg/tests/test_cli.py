'''Tests for cli implementation.'''

import pytest
import test_util

from qwitt import cli
from qwitt import storage
from qwitt.cochains import Cochain2, Window
from qwitt.coboundary import d1
from qwitt.qfield import SYMBOLIC


def run(runner, *args):
    '''Invokes the qwitt command group.'''
    return runner.invoke(cli.main, [str(arg) for arg in args])


@test_util.custom_home
def test_verify_algebra(runner, tmp_path):
    '''Tests that the bracket has no defects on a small window.'''
    out = str(tmp_path / 'algebra.json')
    result = run(runner, 'verify-algebra', '--window', 1, '--out', out)
    assert result.exit_code == 0
    assert '0 defects' in result.output
    report = test_util.read_json(out)
    assert report['command'] == 'verify-algebra'
    assert report['defect_count'] == 0
    assert report['checked']['jacobi'] == 6 ** 3
    assert report['checked']['supersymmetry'] == 6 ** 2
    assert 'jobs' not in report['config']


@test_util.custom_home
def test_verify_algebra_fault(runner, tmp_path, monkeypatch):
    '''Tests that a broken structure constant is reported with exit code 2.'''
    monkeypatch.setattr('qwitt.algebra.structure_constant',
                        lambda x, y, field=SYMBOLIC: field.one)
    out = str(tmp_path / 'algebra.json')
    result = run(runner, 'verify-algebra', '--window', 1, '--out', out)
    assert result.exit_code == 2
    report = test_util.read_json(out)
    assert report['defect_count'] > 0
    assert len(report['defects']) <= cli.MAX_WITNESSES


@test_util.custom_home
def test_inadmissible_q(runner):
    '''Tests that q=1 is refused with a configuration error.'''
    result = run(runner, 'verify-algebra', '--window', 1, '--mode', 'sampled', '--q', 1)
    assert result.exit_code == 3
    assert '"exit_code": 3' in result.output


@test_util.custom_home
def test_unparsable_q(runner):
    '''Tests that a --q that is no rational number is a configuration error.'''
    result = run(runner, 'verify-algebra', '--window', 1, '--mode', 'sampled', '--q', 'two')
    assert result.exit_code == 3
    assert '"error": "InadmissibleSample"' in result.output
    assert 'Traceback' not in result.output


@test_util.custom_home
def test_core_margin(runner):
    '''Tests that a core too close to the window edge is refused.'''
    result = run(runner, 'h2-sweep', '--window', 8, '--core', 4)
    assert result.exit_code == 3
    assert '"error": "ConfigException"' in result.output


@test_util.custom_home
def test_empty_s_range(runner):
    '''Tests that s_min > s_max is a configuration error.'''
    result = run(runner, 'h2-sweep', '--s-min', 2, '--s-max', 1)
    assert result.exit_code == 3


@test_util.custom_home
def test_missing_file(runner, tmp_path):
    '''Tests that a missing input file is a storage error.'''
    result = run(runner, 'reduce', str(tmp_path / 'nosuchfile.json'))
    assert result.exit_code == 4
    assert '"exit_code": 4' in result.output


@test_util.custom_home
def test_h2_sweep_csv(runner, tmp_path):
    '''Tests the csv report of a sweep.'''
    out = str(tmp_path / 'sweep.csv')
    result = run(runner, 'h2-sweep', '--parity', 'even', '--s-min', 0, '--s-max', 0,
                 '--window', 10, '--core', 4, '--mode', 'sampled', '--format', 'csv', '--out', out)
    assert result.exit_code == 0
    with open(out) as fhandle:
        lines = fhandle.read().splitlines()
    assert lines[0] == ','.join(storage.CSV_COLUMNS)
    assert len(lines) == 2
    assert lines[1].startswith('even,0,10,4,sampled(q=2),')
    assert lines[1].split(',')[7] == '0'


@test_util.custom_home
def test_h2_sweep_json(runner, tmp_path):
    '''Tests the json report of a sweep.'''
    out = str(tmp_path / 'sweep.json')
    result = run(runner, 'h2-sweep', '--parity', 'odd', '--s-min', 1, '--s-max', 1,
                 '--window', 10, '--core', 4, '--mode', 'sampled', '--timing', '--out', out)
    assert result.exit_code == 0
    report = test_util.read_json(out)
    assert report['config']['field'] == 'sampled(q=2)'
    (sector,) = report['sectors']
    assert (sector['parity'], sector['s'], sector['N'], sector['N_core']) == ('odd', 1, 10, 4)
    assert isinstance(sector['wall_time_ms'], int)
    assert sector['dim_H2_core'] == 0
    assert report['nonzero_sectors'] == 0


@test_util.custom_home
def test_jobs_do_not_change_reports(runner, tmp_path):
    '''Tests that worker processes give byte identical reports.'''
    outs = [str(tmp_path / 'jobs{}.json'.format(jobs)) for jobs in (1, 2)]
    for jobs, out in zip((1, 2), outs):
        result = run(runner, 'h2-sweep', '--s-min', 0, '--s-max', 0, '--window', 10, '--core', 4,
                     '--mode', 'sampled', '--jobs', jobs, '--out', out)
        assert result.exit_code == 0
    with open(outs[0]) as first, open(outs[1]) as second:
        assert first.read() == second.read()


@test_util.custom_home
def test_unparsable_input(runner, tmp_path):
    '''Tests that a coefficient that is no rational function of q is a parse error.'''
    data = storage.cochain2_to_dict(Cochain2(0, 0, Window(8, 2)))
    data['entries'] = [['b', 0, 1, '(q + 1']]
    path = test_util.write_json(str(tmp_path / 'f.json'), data)
    result = run(runner, 'reduce', path)
    assert result.exit_code == 4
    assert '"error": "StorageException"' in result.output
    assert 'Traceback' not in result.output


@test_util.custom_home
def test_reduce_zero(runner, tmp_path):
    '''Tests that the zero cocycle reduces with an empty g.'''
    path = test_util.write_json(str(tmp_path / 'f.json'),
                                storage.cochain2_to_dict(Cochain2(0, 0, Window(8, 2))))
    out = str(tmp_path / 'certificate.json')
    result = run(runner, 'reduce', path, '--out', out)
    assert result.exit_code == 0
    certificate = test_util.read_json(out)['certificate']
    assert certificate['residual_is_zero']
    assert certificate['g']['entries'] == []


@test_util.custom_home
def test_reduce_coboundary(runner, tmp_path):
    '''Tests that a stored coboundary gets a certificate.'''
    window = Window(7, 1)
    g = test_util.random_g(1, 1, 7, core=1, seed=4).evaluate(test_util.Q2)
    path = test_util.write_json(str(tmp_path / 'f.json'),
                                storage.cochain2_to_dict(d1(g, window, test_util.Q2)))
    out = str(tmp_path / 'certificate.json')
    result = run(runner, 'reduce', path, '--mode', 'sampled', '--out', out)
    assert result.exit_code == 0
    assert test_util.read_json(out)['certificate']['residual_is_zero']


@test_util.custom_home
def test_deform_check(runner, tmp_path):
    '''Tests that a coboundary deformation is a trivializable cocycle.'''
    window = Window(4, 1)
    g = test_util.random_g(0, 0, 4, core=1)
    data = {'kind': 'deformation', 'order': 1, 'N': 4, 'core': 1,
            'brackets': [[storage.cochain2_to_dict(d1(g, window))]]}
    path = test_util.write_json(str(tmp_path / 'deformation.json'), data)
    out = str(tmp_path / 'result.json')
    result = run(runner, 'deform-check', path, '--out', out)
    assert result.exit_code == 0
    assert 'trivializable: yes' in result.output
    report = test_util.read_json(out)
    assert report['result']['cocycle']
    assert report['deformation'] == {'order': 1, 'N': 4, 'core': 1}
    automorphism = storage.automorphism_from_dict(report['automorphism'])
    assert automorphism.order == 1
    assert automorphism.window == window
    assert [g.s for g in automorphism.cochains[0]] == [0]


@test_util.custom_home
def test_config(runner):
    '''Tests setting, reading and removing a persistent setting.'''
    result = run(runner, 'config', 'set', 'window', 9)
    assert result.exit_code == 0
    assert storage.get_config('window') == 9
    result = run(runner, 'config', 'get', 'window')
    assert result.exit_code == 0
    assert result.output.strip() == '9'
    result = run(runner, 'config', 'remove', 'window')
    assert result.exit_code == 0
    assert storage.get_settings() == {}


@test_util.custom_home
def test_config_throws(runner):
    '''Tests the exit codes of invalid config commands.'''
    assert run(runner, 'config', 'set', 'nosuchkey', 1).exit_code == 3
    assert run(runner, 'config', 'set', 'window').exit_code == 3
    assert run(runner, 'config', 'get', 'window').exit_code == 4


@test_util.custom_home
def test_resolve_layers(tmp_path):
    '''Tests DEFAULTS < settings < --config file < flags.'''
    storage.set_config('window', 20)
    storage.set_config('seed', 5)
    run_file = tmp_path / 'run.toml'
    run_file.write_text('window = 14\nmode = "sampled"\n')
    run_config = cli.RunConfig.resolve('h2-sweep', {'window': 10, 'mode': None},
                                       str(run_file))
    assert run_config.window == 10
    assert run_config.mode == 'sampled'
    assert run_config.seed == 5
    assert run_config.parity == 'both'
    assert run_config.grid == Window(10, 4)
    assert run_config.sample_q is None


def test_resolve_sample_q():
    '''Tests the q a sampled run starts from.'''
    values = dict(cli.config.DEFAULTS)
    assert cli.RunConfig('h2-sweep', values).sample_q == '2'
    assert cli.RunConfig('h2-sweep', dict(values, q='3/2')).sample_q == '3/2'


@pytest.mark.parametrize('key,value', [
    ('mode', 'fast'), ('window', 0), ('jobs', 0), ('samples', 0), ('core', 7),
])
def test_validate_throws(key, value):
    '''Tests that invalid values are configuration errors.'''
    values = dict(cli.config.DEFAULTS, window=12)
    values[key] = value
    with pytest.raises(cli.util.ConfigException):
        cli.RunConfig('h2-sweep', values).validate()


def test_sectors():
    '''Tests the canonical order of sectors.'''
    values = dict(cli.config.DEFAULTS, s_min=-1, s_max=0)
    assert cli.RunConfig('h2-sweep', values).sectors() == [(0, -1), (0, 0), (1, -1), (1, 0)]
    values['parity'] = 'odd'
    assert cli.RunConfig('h2-sweep', values).sectors() == [(1, -1), (1, 0)]


def test_error_record():
    '''Tests the JSON record of a failed run.'''
    record = cli.error_record(storage.StorageException('cannot read x'))
    assert record == {'error': 'StorageException', 'message': 'cannot read x', 'exit_code': 4}
