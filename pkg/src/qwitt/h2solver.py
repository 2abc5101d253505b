'''Cocycle equations per (parity, s) sector and the window quotient Z/B.'''
from . import config
from . import linalg
from . import qfield
from . import util
from .cochains import (SLOTS, Cochain1, Cochain2, PARITY_NAMES, core_columns, pair_columns,
                       parse_parity, triples)
from .coboundary import pair_vectors, d1_terms, row_terms
from .qfield import SYMBOLIC


class SparseSystem(object):
    '''Labeled sparse rows over canonical unknowns (block a, then b, then c).'''

    def __init__(self, parity, s, window, columns, rows):
        self.parity = parity
        self.s = s
        self.window = window
        self.columns = columns
        self.index = {col: i for i, col in enumerate(columns)}
        self.rows = rows

    @property
    def matrix(self):
        '''{row number: {column number: coeff}}'''
        return {i: row for i, (_, row) in enumerate(self.rows)}

    def row(self, label):
        '''Row as {column label: coeff}, or None when absent.'''
        for key, row in self.rows:
            if key == label:
                return {self.columns[col]: value for col, value in row.items()}
        return None

    def check(self, vector, field=SYMBOLIC):
        '''Labels of the rows that the sparse vector {column number: value} violates.'''
        broken = []
        for label, row in self.rows:
            total = field.zero
            for col, coeff in row.items():
                if col in vector:
                    total = total + coeff * vector[col]
            if total:
                broken.append(label)
        return broken

    def __repr__(self):
        return 'SparseSystem({}, s={}, {} rows x {} columns)'.format(
            PARITY_NAMES[self.parity], self.s, len(self.rows), len(self.columns))


def build_system(parity, s, window, field=SYMBOLIC):
    '''One row per canonical (slot, n, m, p) whose pairs lie in the window.'''
    parity = parse_parity(parity)
    columns = pair_columns(window)
    index = {col: i for i, col in enumerate(columns)}
    rows = []
    for slot in SLOTS:
        for n, m, p in triples(window, slot):
            row = {}
            for key, coeff in row_terms(parity, s, slot, n, m, p, field):
                row[index[key]] = coeff
            if row:
                rows.append(((slot, n, m, p), row))
    return SparseSystem(parity, s, window, columns, rows)


def nullspace(system, field=SYMBOLIC):
    '''Kernel basis of the system as sparse vectors {column number: value}.'''
    return linalg.nullspace(system.matrix, len(system.columns), field)


def unit_labels(window):
    '''Unknowns of a 1-cochain: (a, n) then (b, n).'''
    return [(table, n) for table in ('a', 'b') for n in window.indices()]


def coboundary_image_basis(parity, s, window, field=SYMBOLIC):
    '''{(table, n): sparse vector of d1(unit cochain) over the canonical columns}.'''
    parity = parse_parity(parity)
    columns = pair_columns(window)
    images = {unit: {} for unit in unit_labels(window)}
    for col, (table, n, p) in enumerate(columns):
        x, y = pair_vectors(table, n, p)
        for unit, coeff in d1_terms(parity, s, x, y, field):
            vector = images[unit]
            value = vector.get(col, field.zero) + coeff
            if value:
                vector[col] = value
            else:
                vector.pop(col, None)
    return images


def _project(vectors, keep):
    '''Restriction of sparse vectors to the column numbers in `keep`.'''
    return [{col: value for col, value in vector.items() if col in keep} for vector in vectors]


class QuotientReport(object):
    '''Dimensions of the core projections of Z and B for one sector.'''

    FIELDS = ('parity', 's', 'N', 'N_core', 'mode', 'rows', 'columns', 'dim_Z',
              'dim_Z_core', 'dim_B_core', 'dim_ZB_core', 'dim_H2_core', 'nested')

    def __init__(self, parity, s, window, mode, rows, columns, dim_Z,
                 dim_Z_core, dim_B_core, dim_ZB_core, certificates=None):
        self.parity = parity
        self.s = s
        self.window = window
        self.mode = mode
        self.rows = rows
        self.columns = columns
        self.dim_Z = dim_Z
        self.dim_Z_core = dim_Z_core
        self.dim_B_core = dim_B_core
        self.dim_ZB_core = dim_ZB_core
        self.certificates = certificates or []
        self.wall_time_ms = None

    @property
    def dim_H2_core(self):
        '''dim pi(Z) - dim(pi(Z) and pi(B))'''
        return self.dim_Z_core - self.dim_ZB_core

    @property
    def nested(self):
        '''True when pi(B) lies inside pi(Z).'''
        return self.dim_ZB_core == self.dim_B_core

    def to_dict(self):
        '''JSON-ready record.'''
        record = {
            'parity': PARITY_NAMES[self.parity],
            's': self.s,
            'N': self.window.N,
            'N_core': self.window.core,
            'mode': self.mode,
            'rows': self.rows,
            'columns': self.columns,
            'dim_Z': self.dim_Z,
            'dim_Z_core': self.dim_Z_core,
            'dim_B_core': self.dim_B_core,
            'dim_ZB_core': self.dim_ZB_core,
            'dim_H2_core': self.dim_H2_core,
            'nested': self.nested,
            'certificates': self.certificates,
        }
        if self.wall_time_ms is not None:
            record['wall_time_ms'] = self.wall_time_ms
        return record

    def __repr__(self):
        return 'QuotientReport({}, s={}, H2_core={})'.format(
            PARITY_NAMES[self.parity], self.s, self.dim_H2_core)


def h2_core_dimension(parity, s, window, field=SYMBOLIC, kernel=None):
    '''Core quotient dimension of the sector (parity, s).'''
    parity = parse_parity(parity)
    system = build_system(parity, s, window, field)
    ncols = len(system.columns)
    if kernel is None:
        kernel = nullspace(system, field)
    images = list(coboundary_image_basis(parity, s, window, field).values())
    keep = set(system.index[col] for col in core_columns(window))
    z_core = _project(kernel, keep)
    b_core = _project(images, keep)
    dim_z = linalg.span_rank(z_core, ncols, field)
    dim_b = linalg.span_rank(b_core, ncols, field)
    dim_sum = linalg.span_rank(z_core + b_core, ncols, field)
    report = QuotientReport(parity, s, window, field.describe(), len(system.rows), ncols,
                            len(kernel), dim_z, dim_b, dim_z + dim_b - dim_sum)
    if not report.nested:
        util.warning('{} s={}: coboundaries are not all window cocycles on the core '
                     '(dim B {} > dim Z and B {})'.format(
                         PARITY_NAMES[parity], s, dim_b, report.dim_ZB_core))
    return report


def h1_window_dimension(parity, s, window, field=SYMBOLIC):
    '''Dimension of the window 1-cocycles (kernel of d1 on window-supported 1-cochains).'''
    units = unit_labels(window)
    images = coboundary_image_basis(parity, s, window, field)
    ncols = len(pair_columns(window))
    return len(units) - linalg.span_rank([images[unit] for unit in units], ncols, field)


def solve_coboundary(f, window=None, field=SYMBOLIC, region='core'):
    '''A 1-cochain g with d1(g) = f on every core (or window) pair, or None.'''
    window = window or f.window
    units = unit_labels(window)
    unit_index = {unit: i for i, unit in enumerate(units)}
    columns = core_columns(window) if region == 'core' else pair_columns(window)
    matrix, rhs = {}, {}
    for row, (table, n, p) in enumerate(columns):
        x, y = pair_vectors(table, n, p)
        entries = {}
        for unit, coeff in d1_terms(f.parity, f.s, x, y, field):
            col = unit_index[unit]
            value = entries.get(col, field.zero) + coeff
            if value:
                entries[col] = value
            else:
                entries.pop(col, None)
        matrix[row] = entries
        value = field.coerce(f.value(table, n, p))
        if value:
            rhs[row] = value
    solution = linalg.solve(matrix, len(units), rhs, field)
    if solution is None:
        return None
    a, b = {}, {}
    for col, value in solution.items():
        table, n = units[col]
        (a if table == 'a' else b)[n] = value
    return Cochain1(f.parity, f.s, window, a, b)


def forced_zero_check(parity, s, window, field=SYMBOLIC, kernel=None):
    '''Core column labels on which every kernel vector vanishes.'''
    system = build_system(parity, s, window, field)
    if kernel is None:
        kernel = nullspace(system, field)
    support = set()
    for vector in kernel:
        support.update(vector)
    return [col for col in core_columns(window) if system.index[col] not in support]


def kernel_cochains(system, kernel):
    '''Kernel vectors as Cochain2 values of the system's sector.'''
    return [Cochain2.from_vector(system.parity, system.s, system.window, system.columns,
                                 [vector.get(i, 0) for i in range(len(system.columns))])
            for vector in kernel]


def field_for(mode, window, q=None, seed=0, shift=0):
    '''The field a run computes in: symbolic, or sampled at an admissible q.'''
    if mode == 'auto':
        mode = 'symbolic' if window.N <= config.SYMBOLIC_LIMIT else 'sampled'
    if mode == 'symbolic':
        return SYMBOLIC
    if mode != 'sampled':
        raise util.ConfigException('unknown mode "{}"'.format(mode))
    if q is None:
        sample = qfield.sample_from_seed(seed, window, shift)
    else:
        sample = q if isinstance(q, qfield.QSample) else qfield.QSample.parse(q)
    if not qfield.is_admissible(sample, window, shift):
        raise qfield.InadmissibleSample('q={} is not admissible for N={} (radius {})'.format(
            sample.render(), window.N, qfield.admissibility_radius(window, shift)))
    return qfield.Sampled(sample)


__all__ = ['SparseSystem', 'QuotientReport', 'build_system', 'nullspace',
           'coboundary_image_basis', 'h2_core_dimension', 'h1_window_dimension',
           'solve_coboundary', 'forced_zero_check', 'kernel_cochains', 'field_for']
