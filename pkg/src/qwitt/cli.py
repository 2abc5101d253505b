'''Command Line Interface for the cohomology checks of W^q.
'''
import functools
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from . import algebra
from . import coboundary
from . import config
from . import deformation
from . import h2solver
from . import qfield
from . import reduce
from . import storage
from . import util
from .cochains import (PARITY_NAMES, Window, parse_parity, random_cochain1, random_cochain2,
                       slot_vectors)

CHOICES = {
    'parity': ('even', 'odd', 'both'),
    'mode': ('auto', 'symbolic', 'sampled'),
    'format': ('json', 'csv'),
    'coefficients': ('integer', 'polynomial'),
}

# Keys left out of the embedded config; they do not change any computed value.
UNREPORTED = ('jobs',)

MAX_WITNESSES = 20

TWO_PATH_SAMPLES = 20


class RunConfig(object):
    '''DEFAULTS < settings.toml < --config FILE < flags, validated.'''

    def __init__(self, command, values, out=None, timing=False):
        self.command = command
        self.values = values
        self.out = out
        self.timing = bool(timing)

    @classmethod
    def resolve(cls, command, flags, config_file=None):
        '''Merges every configuration layer for `command`.'''
        values = dict(config.DEFAULTS)
        for key, value in storage.get_settings().items():
            values[key] = storage.coerce_setting(key, value)
        if config_file:
            values.update(storage.read_run_file(config_file))
        values.update({key: value for key, value in flags.items()
                       if key in config.DEFAULTS and value is not None})
        run = cls(command, values, flags.get('out'), flags.get('timing'))
        run.validate()
        return run

    def __getattr__(self, name):
        values = self.__dict__.get('values', {})
        if name in values:
            return values[name]
        raise AttributeError(name)

    def validate(self):
        '''Raises ConfigException on the first invalid value.'''
        for key, allowed in CHOICES.items():
            if self.values[key] not in allowed:
                raise util.ConfigException('{} must be one of {}, got "{}"'.format(
                    key, ', '.join(allowed), self.values[key]))
        if self.s_min > self.s_max:
            raise util.ConfigException('s range is empty: s_min {} > s_max {}'.format(
                self.s_min, self.s_max))
        for key in ('window', 'jobs', 'samples'):
            if self.values[key] < 1:
                raise util.ConfigException('{} must be at least 1'.format(key))
        if self.core is not None:
            if self.core < 0 or self.window < self.core + config.CORE_MARGIN:
                raise util.ConfigException('window {} needs core <= {} (got core {})'.format(
                    self.window, self.window - config.CORE_MARGIN, self.core))
        if self.q is not None:
            qfield.QSample.parse(self.q)

    @property
    def grid(self):
        '''The window of the run.'''
        return Window(self.window, self.core)

    @property
    def shift(self):
        '''Largest |s| of the run.'''
        return max(abs(self.s_min), abs(self.s_max))

    @property
    def sample_q(self):
        '''Explicit q, the default q, or None to draw one from the seed.'''
        if self.q is not None:
            return self.q
        return config.DEFAULT_Q if self.seed == 0 else None

    def parities(self):
        '''0 and/or 1'''
        if self.parity == 'both':
            return [0, 1]
        return [parse_parity(self.parity)]

    def sectors(self):
        '''(parity, s) in canonical order.'''
        return [(parity, s) for parity in self.parities()
                for s in range(self.s_min, self.s_max + 1)]

    def field(self, window=None, shift=None):
        '''The field the run computes in.'''
        window = window or self.grid
        shift = self.shift if shift is None else shift
        return h2solver.field_for(self.mode, window, self.sample_q, self.seed, shift)

    def to_dict(self, field=None):
        '''Resolved config as embedded in reports.'''
        record = {'command': self.command}
        for key in sorted(self.values):
            if key not in UNREPORTED:
                record[key] = self.values[key]
        record['core'] = self.grid.core
        if field is not None:
            record['field'] = field.describe()
        return record


def error_record(exception):
    '''JSON error record of a failed run.'''
    return {
        'error': type(exception).__name__,
        'message': str(exception),
        'exit_code': exception.exit_code,
    }


def _render(value):
    '''Text of a field value.'''
    return value.render() if hasattr(value, 'render') else str(value)


def _render_monomial(a):
    '''t^n or theta t^n'''
    (n,) = list(a.even) or list(a.odd)
    return 'theta t^{}'.format(n) if a.odd else 't^{}'.format(n)


def _map_sectors(worker, tasks, jobs):
    '''Runs worker over tasks, J processes at a time, in canonical order.'''
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks))
    else:
        results = [worker(task) for task in tasks]
    return sorted(results, key=lambda record: (parse_parity(record['parity']), record['s']))


def _emit(run, data, rows=None):
    '''Writes the report in the configured format.'''
    if run.format == 'csv' and rows is not None:
        storage.write_output(storage.sweep_csv(rows), run.out)
    else:
        storage.write_output(storage.dumps(data), run.out)


def do_verify_algebra(run):
    '''Hom-Jacobi, super-antisymmetry and sigma-derivation defects on the window.'''
    N = run.window
    field = run.field(Window(N, 0), 0)
    vectors = [algebra.generator(parity, n) for n in range(-N, N + 1) for parity in (0, 1)]
    monomials = [algebra.AElement.monomial(n, odd, field.one)
                 for n in range(-N, N + 1) for odd in (False, True)]
    checked = {'jacobi': 0, 'supersymmetry': 0, 'sigma_derivation': 0}
    defects = []
    for x in vectors:
        for y in vectors:
            checked['supersymmetry'] += 1
            value = algebra.supersymmetry_defect(x, y, field)
            if value:
                defects.append({'check': 'supersymmetry', 'args': [x.render(), y.render()],
                                'value': value.render()})
            for z in vectors:
                checked['jacobi'] += 1
                value = algebra.jacobi_defect(x, y, z, field)
                if value:
                    defects.append({'check': 'jacobi',
                                    'args': [x.render(), y.render(), z.render()],
                                    'value': value.render()})
    for a in monomials:
        for b in monomials:
            checked['sigma_derivation'] += 1
            value = algebra.sigma_derivation_defect('delta', a, b, field)
            if value:
                defects.append({'check': 'sigma_derivation',
                                'args': [_render_monomial(a), _render_monomial(b)],
                                'value': repr(value)})
    return {
        'command': 'verify-algebra',
        'config': run.to_dict(field),
        'checked': checked,
        'defect_count': len(defects),
        'defects': defects[:MAX_WITNESSES],
    }


def _explained(g, defect, field):
    '''True when complex_obstruction reproduces every LLL defect of d2(d1(g)).'''
    for (slot, n, m, p), value in defect.nonzero():
        if slot != 'LLL':
            continue
        x, y, z = slot_vectors(slot, n, m, p)
        target = coboundary.d2_target(g.parity, g.s, slot, n, m, p)
        obstruction = coboundary.complex_obstruction(g, x, y, z, field).coefficient(target)
        if obstruction is None or obstruction != value:
            return False
    return True


def _complex_sector(task):
    '''verify-complex for one sector.'''
    parity, s, N, core, mode, q, seed, shift, samples, coefficients = task
    window = Window(N, core)
    field = h2solver.field_for(mode, window, q, seed, shift)
    defective, first = 0, None
    for i in range(samples):
        g = random_cochain1(parity, s, window, '{}:{}'.format(seed, i), coefficients)
        g = g.evaluate(field)
        defect = coboundary.complex_defect(g, window, field)
        if defect.is_zero():
            continue
        defective += 1
        if first is None:
            first = {'sample': i,
                     'defects': coboundary.defect_records(defect)[:MAX_WITNESSES],
                     'explained_by_obstruction': _explained(g, defect, field)}
    discrepancies = []
    for i in range(min(samples, TWO_PATH_SAMPLES)):
        f = random_cochain2(parity, s, window, '{}:{}'.format(seed, i), coefficients)
        for key, left, right in coboundary.two_path_discrepancies(f.evaluate(field), window, field):
            discrepancies.append({'sample': i, 'slot': key[0], 'indices': list(key[1:]),
                                  'generic': _render(left), 'rows': _render(right)})
    return {
        'parity': PARITY_NAMES[parity],
        's': s,
        'samples': samples,
        'complex_defect_samples': defective,
        'first_defect': first,
        'two_path_discrepancies': discrepancies,
    }


def do_verify_complex(run):
    '''Complex property and two-path agreement per sector.'''
    field = run.field()
    window = run.grid
    tasks = [(parity, s, window.N, window.core, run.mode, run.sample_q, run.seed, run.shift,
              run.samples, run.coefficients) for parity, s in run.sectors()]
    sectors = _map_sectors(_complex_sector, tasks, run.jobs)
    return {
        'command': 'verify-complex',
        'config': run.to_dict(field),
        'sectors': sectors,
    }


def _sweep_sector(task):
    '''h2-sweep for one sector.'''
    parity, s, N, core, mode, q, seed, shift, timing = task
    window = Window(N, core)
    field = h2solver.field_for(mode, window, q, seed, shift)
    start = time.perf_counter()
    report = h2solver.h2_core_dimension(parity, s, window, field)
    if timing:
        report.wall_time_ms = int(round((time.perf_counter() - start) * 1000))
    return report.to_dict()


def do_h2_sweep(run):
    '''Core quotient dimension of every sector of the run.'''
    window = run.grid
    if window.N < window.core + config.CORE_MARGIN:
        raise util.ConfigException('h2-sweep needs window >= core + {} (window {}, core {})'.format(
            config.CORE_MARGIN, window.N, window.core))
    field = run.field()
    tasks = [(parity, s, window.N, window.core, run.mode, run.sample_q, run.seed, run.shift,
              run.timing) for parity, s in run.sectors()]
    sectors = _map_sectors(_sweep_sector, tasks, run.jobs)
    return {
        'command': 'h2-sweep',
        'config': run.to_dict(field),
        'sectors': sectors,
        'nonzero_sectors': sum(1 for record in sectors if record['dim_H2_core']),
    }


def do_reduce(run, path):
    '''Certificate for the 2-cocycle stored at path.'''
    f = storage.load_cochain2(path)
    field = run.field(f.window, abs(f.s))
    certificate = reduce.reduce_sector(f, f.window, field)
    return {
        'command': 'reduce',
        'config': run.to_dict(field),
        'certificate': storage.certificate_to_dict(certificate),
    }


def do_deform_check(run, path):
    '''Order-1 cocycle check and trivialization of a stored deformation.'''
    deformed = storage.load_deformation(path)
    shift = max([abs(f.s) for f in deformed.bracket(1).components()] or [0])
    field = run.field(deformed.window, shift)
    trivialization = deformation.trivialize_first_order(deformed, field)
    return {
        'command': 'deform-check',
        'config': run.to_dict(field),
        'deformation': {'order': deformed.order, 'N': deformed.window.N,
                        'core': deformed.window.core},
        'result': trivialization.to_dict(),
        'automorphism': storage.automorphism_to_dict(trivialization.automorphism),
    }


def do_set_config(attr, value):
    '''Sets config of attr to value'''
    return storage.set_config(attr, value)


def do_get_config(attr):
    '''Returns the configuration of attr'''
    return storage.get_config(attr)


def do_rm_config(attr):
    '''Removes attr from config file'''
    storage.remove_config(attr)


def handle_verify_algebra(run):
    '''Handler for verify-algebra.'''
    report = do_verify_algebra(run)
    _emit(run, report)
    count = report['defect_count']
    if count:
        first = report['defects'][0]
        util.warning('{} defects, first: {} at ({}) = {}'.format(
            count, first['check'], ', '.join(first['args']), first['value']))
        return 2
    util.detail('0 defects', nl=False)
    util.pretty(' ({} Jacobi triples)'.format(report['checked']['jacobi']))
    return 0


def handle_verify_complex(run):
    '''Handler for verify-complex.'''
    report = do_verify_complex(run)
    _emit(run, report)
    findings = 0
    for sector in report['sectors']:
        label = '{} s={}'.format(sector['parity'], sector['s'])
        if sector['two_path_discrepancies']:
            findings += 1
            first = sector['two_path_discrepancies'][0]
            util.warning('{}: d2 paths differ at {} {}: generic {}, rows {}'.format(
                label, first['slot'], first['indices'], first['generic'], first['rows']))
        if sector['complex_defect_samples']:
            findings += 1
            util.warning('{}: d2(d1(g)) nonzero for {} of {} samples'.format(
                label, sector['complex_defect_samples'], sector['samples']))
        else:
            util.boring('{}: d2(d1(g)) = 0'.format(label))
    return 2 if findings else 0


def handle_h2_sweep(run):
    '''Handler for h2-sweep.'''
    report = do_h2_sweep(run)
    _emit(run, report, report['sectors'])
    for sector in report['sectors']:
        util.pretty('{} s={}: '.format(sector['parity'], sector['s']), nl=False)
        util.detail('dim H2 core = {}'.format(sector['dim_H2_core']))
    return 2 if report['nonzero_sectors'] else 0


def handle_reduce(run, path):
    '''Handler for reduce.'''
    report = do_reduce(run, path)
    _emit(run, report)
    certificate = report['certificate']
    util.pretty('certificate ({}): residual zero on '.format(certificate['method']), nl=False)
    util.detail(certificate['zero_on'])
    return 0 if certificate['residual_is_zero'] else 2


def handle_deform_check(run, path):
    '''Handler for deform-check.'''
    report = do_deform_check(run, path)
    _emit(run, report)
    result = report['result']
    util.pretty('order-1 cocycle: ', nl=False)
    util.detail('yes' if result['cocycle'] else 'no')
    util.pretty('trivializable: ', nl=False)
    util.detail('yes' if result['trivializable'] else 'no')
    return 0 if result['cocycle'] and result['trivializable'] else 2


def handle_config(action, key, value):
    '''Handler for configuration of settings'''
    if action == 'set':
        if value is None:
            raise util.ConfigException('config set needs a value for {}'.format(key))
        stored = do_set_config(key, value)
        util.detail('{}'.format(key), nl=False)
        util.pretty(' set to "', nl=False)
        util.detail('{}'.format(stored), nl=False)
        util.pretty('"')
    elif action == 'get':
        util.text_response('{}'.format(do_get_config(key)))
    elif action == 'remove':
        do_rm_config(key)
        util.detail('{}'.format(key), nl=False)
        util.pretty(' removed from config')


def reports_errors(command):
    '''Turns QWittExceptions into an error record and the matching exit code.'''
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            code = command(*args, **kwargs)
        except util.QWittException as exception:
            util.error(str(exception))
            util.text_response(storage.dumps(error_record(exception)))
            sys.exit(exception.exit_code)
        if code:
            sys.exit(code)
    return wrapper


HELP = {
    'parity': 'Sectors to run: even, odd or both',
    's_min': 'Lowest degree s',
    's_max': 'Highest degree s',
    'window': 'Window size N (indices |n| <= N)',
    'core': 'Core size (default: window - 6)',
    'mode': 'auto, symbolic, or sampled at a rational q',
    'q': 'Sample value p/r for sampled mode',
    'seed': 'Seed for random cochains and the drawn q',
    'format': 'Report format: json or csv',
    'out': 'Write the report to this file instead of stdout',
    'config': 'toml file with run settings (flags override it)',
    'jobs': 'Number of worker processes',
    'timing': 'Record wall_time_ms per sector',
    'samples': 'Random cochains per sector',
    'coefficients': 'Random coefficients: integer or polynomial in q',
    'action': 'Configure behaviour get/set/remove',
}

RUN_OPTIONS = [
    click.option('--parity', type=click.Choice(CHOICES['parity']), default=None,
                 help=HELP['parity']),
    click.option('--s-min', type=int, default=None, help=HELP['s_min']),
    click.option('--s-max', type=int, default=None, help=HELP['s_max']),
    click.option('--window', '-N', type=int, default=None, help=HELP['window']),
    click.option('--core', type=int, default=None, help=HELP['core']),
    click.option('--mode', type=click.Choice(CHOICES['mode']), default=None, help=HELP['mode']),
    click.option('--q', default=None, help=HELP['q']),
    click.option('--seed', type=int, default=None, help=HELP['seed']),
    click.option('--format', type=click.Choice(CHOICES['format']), default=None,
                 help=HELP['format']),
    click.option('--out', '-o', default=None, help=HELP['out']),
    click.option('--config', 'config_file', default=None, help=HELP['config']),
    click.option('--jobs', '-j', type=int, default=None, help=HELP['jobs']),
    click.option('--timing', is_flag=True, default=False, help=HELP['timing']),
    click.option('--samples', type=int, default=None, help=HELP['samples']),
    click.option('--coefficients', type=click.Choice(CHOICES['coefficients']), default=None,
                 help=HELP['coefficients']),
]


def run_options(command):
    '''Adds the shared run flags.'''
    for option in reversed(RUN_OPTIONS):
        command = option(command)
    return command


@click.group()
def main():
    '''Cohomology and deformation checks for the q-deformed Witt superalgebra.'''


@main.command('verify-algebra')
@run_options
@reports_errors
def verify_algebra(config_file, **flags):
    '''Check the Hom-Jacobi identity and the sigma-derivation rule.'''
    return handle_verify_algebra(RunConfig.resolve('verify-algebra', flags, config_file))


@main.command('verify-complex')
@run_options
@reports_errors
def verify_complex(config_file, **flags):
    '''Check d2(d1(g)) = 0 and the two d2 paths on random cochains.'''
    return handle_verify_complex(RunConfig.resolve('verify-complex', flags, config_file))


@main.command('h2-sweep')
@run_options
@reports_errors
def h2_sweep(config_file, **flags):
    '''Core dimension of H2 for every sector.'''
    return handle_h2_sweep(RunConfig.resolve('h2-sweep', flags, config_file))


@main.command('reduce')
@click.argument('path')
@run_options
@reports_errors
def reduce_command(path, config_file, **flags):
    '''Certificate that the 2-cocycle in PATH is a coboundary on the core.'''
    return handle_reduce(RunConfig.resolve('reduce', flags, config_file), path)


@main.command('deform-check')
@click.argument('path')
@run_options
@reports_errors
def deform_check(path, config_file, **flags):
    '''Cocycle check and first-order trivialization of the deformation in PATH.'''
    return handle_deform_check(RunConfig.resolve('deform-check', flags, config_file), path)


@main.command('config')
@click.argument('action', type=click.Choice(['set', 'get', 'remove']))
@click.argument('key')
@click.argument('value', required=False)
@reports_errors
def config_command(action, key, value):
    '''Configure persistent settings (set KEY VALUE, get KEY, remove KEY).'''
    handle_config(action, key, value)
