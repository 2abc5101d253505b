'''Exact sparse linear algebra over a qfield field (symbolic or sampled).

Matrices are dicts of row dicts {row: {col: value}} as in sympy's SDM. Rows
are reduced fraction free: r <- p * r - r[c] * pivot_row, followed by content
removal through field.primitive, so that coefficients stay polynomial.

Pivot choice is deterministic: the active column with the fewest nonzeros
(ties by lowest column), then the row of that column with the fewest nonzeros
(ties by lowest row index).
'''


class Echelon(object):
    '''Result of elimination: pivot columns in elimination order and their rows.'''

    __slots__ = ('ncols', 'pivots', 'rows', 'inconsistent')

    def __init__(self, ncols, pivots, rows, inconsistent=False):
        self.ncols = ncols
        self.pivots = pivots
        self.rows = rows
        self.inconsistent = inconsistent

    @property
    def rank(self):
        '''Number of pivots.'''
        return len(self.pivots)

    def nonpivots(self):
        '''Free columns, ascending.'''
        pivot_set = set(self.pivots)
        return [col for col in range(self.ncols) if col not in pivot_set]


def _combine(field, pivot_row, pivot_col, row):
    '''Eliminates pivot_col from row using pivot_row, fraction free.'''
    factor = row[pivot_col]
    head = pivot_row[pivot_col]
    result = {}
    for col, value in row.items():
        result[col] = head * value
    for col, value in pivot_row.items():
        updated = result.get(col, field.zero) - factor * value
        result[col] = updated
    result = {col: value for col, value in result.items() if value}
    if not result:
        return result
    cols = sorted(result)
    scaled = field.primitive([result[col] for col in cols])
    return dict(zip(cols, scaled))


def eliminate(matrix, ncols, field, augmented=None):
    '''Row echelon form of a sparse matrix.

    `augmented` names a column (the right hand side) that is carried along
    but never chosen as pivot; a row left with only that column makes the
    system inconsistent.
    '''
    active = {}
    for index, row in sorted(matrix.items()):
        row = {col: value for col, value in row.items() if value}
        if row:
            active[index] = row
    where = {}
    for index, row in active.items():
        for col in row:
            where.setdefault(col, set()).add(index)

    pivots, pivot_rows = [], []
    inconsistent = False
    while active:
        candidates = [(len(rows), col) for col, rows in where.items()
                      if rows and col != augmented]
        if not candidates:
            inconsistent = augmented is not None and any(active.values())
            break
        _, col = min(candidates)
        index = min(where[col], key=lambda i: (len(active[i]), i))
        pivot_row = active.pop(index)
        for other in pivot_row:
            where[other].discard(index)
        pivots.append(col)
        pivot_rows.append(pivot_row)
        for target in sorted(where[col]):
            old = active[target]
            new = _combine(field, pivot_row, col, old)
            for other in old:
                where[other].discard(target)
            if new:
                active[target] = new
                for other in new:
                    where.setdefault(other, set()).add(target)
            else:
                del active[target]
    return Echelon(ncols, pivots, pivot_rows, inconsistent)


def rank(matrix, ncols, field):
    '''Rank of a sparse matrix.'''
    return eliminate(matrix, ncols, field).rank


def nullspace(matrix, ncols, field):
    '''A basis of the kernel as sparse vectors {col: value}, one per free column.'''
    echelon = eliminate(matrix, ncols, field)
    basis = []
    for free in echelon.nonpivots():
        vector = {free: field.one}
        _back_substitute(echelon, vector, field)
        cols = sorted(vector)
        values = field.primitive([vector[col] for col in cols])
        basis.append({col: value for col, value in zip(cols, values) if value})
    return basis


def _back_substitute(echelon, vector, field, rhs_col=None):
    '''Fills pivot variables of `vector` in reverse pivot order.'''
    for col, row in reversed(list(zip(echelon.pivots, echelon.rows))):
        total = field.zero
        for other, value in row.items():
            if other == col:
                continue
            if other == rhs_col:
                total = total - value
            elif other in vector:
                total = total + value * vector[other]
        if total:
            vector[col] = -total / row[col]
        else:
            vector.pop(col, None)


def solve(matrix, ncols, rhs, field):
    '''A particular solution {col: value} of A x = rhs, or None when inconsistent.

    rhs is a sparse {row: value}; free variables are set to zero.
    '''
    augmented = {}
    rhs_col = ncols
    for index in set(matrix) | set(rhs):
        row = dict(matrix.get(index, {}))
        if rhs.get(index):
            row[rhs_col] = rhs[index]
        augmented[index] = row
    echelon = eliminate(augmented, ncols + 1, field, augmented=rhs_col)
    if echelon.inconsistent:
        return None
    vector = {}
    _back_substitute(echelon, vector, field, rhs_col=rhs_col)
    return vector


def from_vectors(vectors):
    '''Sparse matrix whose rows are the given sparse vectors.'''
    return {index: dict(vector) for index, vector in enumerate(vectors)}


def span_rank(vectors, ncols, field):
    '''Dimension of the span of sparse vectors.'''
    return rank(from_vectors(vectors), ncols, field)
