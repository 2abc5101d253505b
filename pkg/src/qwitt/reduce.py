'''Constructive coboundary certificates.

Every reducer builds a 1-cochain g from the values of a 2-cocycle f through
explicit recursions, then verifies h = f - d1(g) on the window core with the
generic d1. A recursion that leaves a nonzero residual is reported through
util.warning, and the certificate falls back to an exact sparse solve.
'''
from . import qfield
from . import util
from .cochains import Cochain1, Cochain2, PARITY_NAMES, core_columns
from .coboundary import delta1, pair_vectors
from .algebra import generator
from .h2solver import solve_coboundary
from .qfield import SYMBOLIC


class WrongSector(util.QWittException):
    '''The reducer does not handle the sector of the cochain.'''
    exit_code = 3


class RecursionOutOfWindow(util.QWittException):
    '''A recursion needs a value outside of the window.'''


class ResidualNonzero(util.QWittException):
    '''f - d1(g) does not vanish on the core for any g.'''

    def __init__(self, slot, value):
        self.slot = slot
        self.value = value
        super(ResidualNonzero, self).__init__(
            'residual {}[{}, {}] = {} does not vanish: not a coboundary on the core'.format(
                slot[0], slot[1], slot[2], _render(value)))


def _render(value):
    '''Text of a field value.'''
    return value.render() if hasattr(value, 'render') else str(value)


class Certificate(object):
    '''f, the 1-cochain g and the residual h = f - d1(g) on the core.'''

    def __init__(self, f, g, residual, method, checks=None):
        self.f = f
        self.g = g
        self.residual = residual
        self.method = method
        self.checks = checks or []

    @property
    def zero_on(self):
        '''The index set the residual was verified on.'''
        return 'pairs with |n|, |p|, |n+p| <= {}'.format(self.f.window.core)

    @property
    def residual_is_zero(self):
        '''True when h vanishes on the declared set.'''
        return not self.residual.values

    def to_dict(self):
        '''JSON-ready summary (the cochains are serialized by storage).'''
        return {
            'parity': PARITY_NAMES[self.f.parity],
            's': self.f.s,
            'method': self.method,
            'zero_on': self.zero_on,
            'residual_is_zero': self.residual_is_zero,
            'checks': [{'name': name, 'holds': holds} for name, holds in self.checks],
        }


def residual(f, g, window=None, field=SYMBOLIC):
    '''h = f - d1(g) on the core pairs, computed with the generic d1.'''
    window = window or f.window
    values = {}
    for table, n, p in core_columns(window):
        x, y = pair_vectors(table, n, p)
        target = generator(x.parity + y.parity + f.parity, n + p + f.s)
        image = delta1(g, x, y, field).coefficient(target)
        value = field.coerce(f.value(table, n, p))
        if image is not None:
            value = value - image
        if value:
            values[(table, n, p)] = value
    return Cochain2(f.parity, f.s, window, values)


def _require_sector(f, sectors, name):
    '''Raises WrongSector unless (parity, s) of f is accepted.'''
    if not sectors(f.parity, f.s):
        raise WrongSector('{} does not handle {} cochains of degree {}'.format(
            name, PARITY_NAMES[f.parity], f.s))


def _divide(num, den, what):
    '''num / den with an explicit zero guard on den.'''
    if not den:
        raise qfield.DivisionByZero('{} vanishes'.format(what))
    return num / den


class _Values(object):
    '''Reads f through its window, coerced into the working field.'''

    def __init__(self, f, window, field):
        self.f = f
        self.window = window
        self.field = field

    def __call__(self, table, n, p):
        if not self.window.pair_defined(n, p):
            raise RecursionOutOfWindow('the recursion needs {}[{}, {}] outside of {}'.format(
                table, n, p, self.window))
        return self.field.coerce(self.f.value(table, n, p))


def _reach(window):
    '''Largest index the recursions have to cover.'''
    if window.N < 3:
        raise RecursionOutOfWindow('recursions need a window of at least 3, got {}'.format(window.N))
    return max(window.core, 2)


def _cochain(f, window, a, b, reach):
    '''The 1-cochain of the sector of f with coefficients on |n| <= reach.'''
    keep = lambda values: {n: v for n, v in values.items() if abs(n) <= reach}
    return Cochain1(f.parity, f.s, window, keep(a), keep(b))


def _certify(f, g, window, field, checks):
    '''Certificate for the recursion's g, or the solved g when the recursion misses.'''
    h = residual(f, g, window, field)
    named = [(name, all(not h.value(table, n, p, field) for table, n, p in slots))
             for name, slots in checks(window)]
    if not h.values:
        return Certificate(f, g, h, 'recursion', named)
    (table, n, p, value) = h.entries()[0]
    x, y = pair_vectors(table, n, p)
    util.warning('{} s={}: recursion leaves h({}, {}) = {} (f = {})'.format(
        PARITY_NAMES[f.parity], f.s, x.render(), y.render(), _render(value),
        _render(field.coerce(f.value(table, n, p)))))
    solved = solve_coboundary(f, window, field)
    if solved is None:
        raise ResidualNonzero((table, n, p), value)
    h = residual(f, solved, window, field)
    return Certificate(f, solved, h, 'solved', named)


def _core_range(window):
    '''Indices k with |k| <= core.'''
    return range(-window.core, window.core + 1)


def _pairs(window, table, first=None, second=None):
    '''Core slots with a fixed first or second index.'''
    slots = []
    for k in _core_range(window):
        n, p = (first, k) if first is not None else (k, second)
        if window.in_core(n, p) and not (table == 'a' and n == p):
            slots.append((table, n, p))
    return slots


def _generic_checks(window):
    return [('h(L[0], L[p]) = 0', _pairs(window, 'a', first=0)),
            ('h(L[0], G[p]) = 0', _pairs(window, 'b', first=0))]


def _even_s0_checks(window):
    return [('h(L[n], L[1]) = 0', _pairs(window, 'a', second=1)),
            ('h(L[-1], L[2]) = 0', [('a', -1, 2)] if window.in_core(-1, 2) else []),
            ('h(L[1], G[m]) = 0', _pairs(window, 'b', first=1)),
            ('h(L[-1], G[1]) = 0', [('b', -1, 1)] if window.in_core(-1, 1) else [])]


def _odd_s1_checks(window):
    return [('h(L[n], L[1]) = 0', _pairs(window, 'a', second=1)),
            ('h(L[1], G[m]) = 0', _pairs(window, 'b', first=1)),
            ('h(L[-1], G[1]) = 0', [('b', -1, 1)] if window.in_core(-1, 1) else [])]


def _odd_sm1_checks(window):
    return [('h(L[1], L[n]) = 0', _pairs(window, 'a', first=1)),
            ('h(L[1], G[m]) = 0', _pairs(window, 'b', first=1))]


def _generic_sequences(f, window, field, divisor_l, divisor_g):
    '''g(L[p]) = f(L[0], L[p]) / divisor_l(p), g(G[p]) = f(L[0], G[p]) / divisor_g(p).'''
    F = _Values(f, window, field)
    a, b = {}, {}
    for p in window.indices():
        a[p] = _divide(F('a', 0, p), divisor_l(p), 'the divisor of g(L[{}])'.format(p))
        b[p] = _divide(F('b', 0, p), divisor_g(p), 'the divisor of g(G[{}])'.format(p))
    return a, b


def _is_generic(parity, s):
    '''Sectors without a special recursion.'''
    return (parity == 0 and s not in (0, 2)) or (parity == 1 and s not in (1, -1))


def reduce_generic(f, window=None, field=SYMBOLIC):
    '''Certificate for a cocycle of a generic sector.

    even: g(L[p]) = f(L[0], L[p]) / (q^p {s}),   g(G[p]) = f(L[0], G[p]) / (q^(p+1) {s})
    odd:  g(L[p]) = f(L[0], L[p]) / (q^p {s+1}), g(G[p]) = f(L[0], G[p]) / (q^(p+1) {s-1})
    '''
    window = window or f.window
    _require_sector(f, _is_generic, 'reduce_generic')
    P, Q, s = field.q_power, field.qnum, f.s
    if f.parity == 0:
        a, b = _generic_sequences(f, window, field,
                                  lambda p: P(p) * Q(s), lambda p: P(p + 1) * Q(s))
    else:
        a, b = _generic_sequences(f, window, field,
                                  lambda p: P(p) * Q(s + 1), lambda p: P(p + 1) * Q(s - 1))
    g = Cochain1(f.parity, s, window, a, b)
    return _certify(f, g, window, field, _generic_checks)


def reduce_even_s2(f, window=None, field=SYMBOLIC):
    '''Certificate for an even cocycle of degree 2 (division by {2}).'''
    window = window or f.window
    _require_sector(f, lambda parity, s: (parity, s) == (0, 2), 'reduce_even_s2')
    P, Q = field.q_power, field.qnum
    a, b = _generic_sequences(f, window, field,
                              lambda p: P(p) * Q(2), lambda p: P(p + 1) * Q(2))
    g = Cochain1(0, 2, window, a, b)
    return _certify(f, g, window, field, _generic_checks)


def reduce_even_s0(f, window=None, field=SYMBOLIC):
    '''Certificate for an even cocycle of degree 0: g(L[n]) = a[n] L[n], g(G[n]) = b[n] G[n].'''
    window = window or f.window
    _require_sector(f, lambda parity, s: (parity, s) == (0, 0), 'reduce_even_s0')
    reach = _reach(window)
    F = _Values(f, window, field)
    Q, zero = field.qnum, field.zero

    a = {1: zero, 0: F('a', 0, 1)}
    for n in range(-1, -reach - 1, -1):
        a[n] = a[n + 1] + _divide(F('a', n, 1), Q(1) - Q(n), '{1} - {n}')
    a[2] = _divide(F('a', -1, 2), Q(2) - Q(-1), '{2} - {-1}') - a[-1]
    for n in range(2, reach):
        a[n + 1] = a[n] + _divide(F('a', n, 1), Q(n) - Q(1), '{n} - {1}')

    b = {0: zero}
    for m in range(-1, -reach - 1, -1):
        b[m] = b[m + 1] - _divide(F('b', 1, m), Q(1) - Q(m + 1), '{1} - {m+1}')
    b[1] = -a[-1] + _divide(F('b', -1, 1), Q(2) - Q(-1), '{2} - {-1}')
    for m in range(1, reach):
        b[m + 1] = b[m] + _divide(F('b', 1, m), Q(1) - Q(m + 1), '{1} - {m+1}')

    g = _cochain(f, window, a, b, reach)
    return _certify(f, g, window, field, _even_s0_checks)


def reduce_odd_s1(f, window=None, field=SYMBOLIC):
    '''Certificate for an odd cocycle of degree 1: g(L[n]) = a[n] G[n+1], g(G[n]) = b[n] L[n+1].'''
    window = window or f.window
    _require_sector(f, lambda parity, s: (parity, s) == (1, 1), 'reduce_odd_s1')
    reach = _reach(window)
    F = _Values(f, window, field)
    Q, P, one, zero = field.qnum, field.q_power, field.one, field.zero

    f_m11, f_01, f_2m1 = F('a', -1, 1), F('a', 0, 1), F('a', 2, -1)
    a = {-1: zero}
    a[1] = (_divide(f_m11, P(2) - one, 'q^2 - 1')
            + _divide(f_01, P(2) - P(3), 'q^2 - q^3'))
    a[0] = (_divide(f_m11, P(1) - one, 'q - 1')
            + _divide((one + P(-2)) * f_01, one - P(1), '1 - q'))
    a[2] = (_divide((one - P(1)) * f_2m1, P(4) - P(-1), 'q^4 - q^-1')
            + _divide((P(3) - one) * f_m11, (P(5) - one) * (P(2) - one), '(q^5 - 1)(q^2 - 1)')
            - _divide((P(3) - one) * f_01, (P(5) - one) * (P(3) - P(2)), '(q^5 - 1)(q^3 - q^2)'))
    for n in range(-2, -reach - 1, -1):
        a[n] = _divide(-F('a', n, 1) + (Q(3) - Q(n)) * a[1] + (Q(n) - Q(1)) * a[n + 1],
                       Q(n + 2) - Q(1), '{n+2} - {1}')
    for n in range(2, reach):
        a[n + 1] = _divide(F('a', n, 1) - (Q(3) - Q(n)) * a[1] + (Q(n + 2) - Q(1)) * a[n],
                           Q(n) - Q(1), '{n} - {1}')

    b = {0: zero, 1: _divide(F('b', -1, 1), Q(2) - Q(-1), '{2} - {-1}')}
    for m in range(-1, -reach - 1, -1):
        b[m] = b[m + 1] + _divide(F('b', 1, m), Q(m + 1) - Q(1), '{m+1} - {1}')
    for m in range(1, reach):
        b[m + 1] = b[m] + _divide(F('b', 1, m), Q(1) - Q(m + 1), '{1} - {m+1}')

    g = _cochain(f, window, a, b, reach)
    return _certify(f, g, window, field, _odd_s1_checks)


def reduce_odd_sm1(f, window=None, field=SYMBOLIC):
    '''Certificate for an odd cocycle of degree -1: g(L[n]) = a[n] G[n-1], g(G[n]) = b[n] L[n-1].'''
    window = window or f.window
    _require_sector(f, lambda parity, s: (parity, s) == (1, -1), 'reduce_odd_sm1')
    reach = _reach(window)
    F = _Values(f, window, field)
    Q, P, one, zero = field.qnum, field.q_power, field.one, field.zero

    a = {1: zero}
    for n in range(0, -reach - 1, -1):
        a[n] = a[n + 1] - _divide(F('a', 1, n), Q(1) - Q(n), '{1} - {n}')
    a[2] = -_divide(F('a', 2, -1), Q(2) - Q(-1), '{2} - {-1}') - a[-1]
    for n in range(2, reach):
        a[n + 1] = a[n] + _divide(F('a', 1, n), Q(1) - Q(n), '{1} - {n}')

    b = {0: _divide(-P(1) * F('b', 1, 0), one + P(1), '1 + q')}
    for m in range(-1, -reach - 1, -1):
        b[m] = _divide((Q(m + 1) - Q(1)) * b[m + 1] + F('b', 1, m),
                       Q(m - 1) - Q(1), '{m-1} - {1}')
    b[1] = P(1) * F('b', -1, 1) - P(1) * _divide(Q(3), Q(2), '{2}') * F('b', 1, 0)
    for m in range(1, reach):
        b[m + 1] = _divide((Q(1) - Q(m - 1)) * b[m] + F('b', 1, m),
                           Q(1) - Q(m + 1), '{1} - {m+1}')

    g = _cochain(f, window, a, b, reach)
    return _certify(f, g, window, field, _odd_sm1_checks)


def reduce_sector(f, window=None, field=SYMBOLIC):
    '''Runs the reducer that handles the sector of f.'''
    sector = (f.parity, f.s)
    reducer = util.cond(
        (sector == (0, 0), reduce_even_s0),
        (sector == (0, 2), reduce_even_s2),
        (sector == (1, 1), reduce_odd_s1),
        (sector == (1, -1), reduce_odd_sm1),
        (True, reduce_generic),
    )
    return reducer(f, window, field)
