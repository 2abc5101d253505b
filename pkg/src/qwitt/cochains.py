'''Homogeneous 1- and 2-cochains of W^q on a finite window.

A cochain of parity P and degree s sends generators of degree n (and pairs of
degrees n, p) to multiples of the generator of degree n+s (n+p+s) whose parity
is the sum of the input parities and P.

Tables:
    a  the (L[n], L[p]) slot, antisymmetric, stored for n < p
    b  the (L[n], G[p]) slot, stored for every (n, p)
    c  the (G[n], G[p]) slot, symmetric, stored for n <= p
'''
import random

from . import config
from . import qfield
from . import util
from .algebra import EVEN_KIND, ODD_KIND, Element, L, G, generator, sign
from .algebra import alpha, alpha_coefficient
from .qfield import SYMBOLIC

PARITY_NAMES = {0: 'even', 1: 'odd'}
TABLES = ('a', 'b', 'c')
SLOTS = ('LLL', 'LLG', 'LGG', 'GGG')


class WindowException(util.QWittException):
    '''An invalid window.'''
    exit_code = 3


class OutOfWindow(util.QWittException):
    '''An index outside of the window was needed.'''
    exit_code = 3


def parse_parity(value):
    '''0/1 from 'even'/'odd' (or 0/1).'''
    if value in (0, 1):
        return value
    for number, name in PARITY_NAMES.items():
        if value == name:
            return number
    raise ValueError('"{}" is not a parity, use even or odd'.format(value))


class Window(object):
    '''Truncation |n| <= N of the grading, with an interior core.'''

    __slots__ = ('N', 'core')

    def __init__(self, N, core=None):
        if core is None:
            core = max(N - config.CORE_MARGIN, 0)
        if N < 1:
            raise WindowException('window must be positive, got {}'.format(N))
        if not 0 <= core < N:
            raise WindowException('core {} must lie in [0, {})'.format(core, N))
        self.N = N
        self.core = core

    def indices(self):
        '''All degrees of the window, ascending.'''
        return range(-self.N, self.N + 1)

    def contains(self, n):
        '''|n| <= N'''
        return abs(n) <= self.N

    def pair_defined(self, n, p):
        '''|n|, |p|, |n+p| <= N'''
        return abs(n) <= self.N and abs(p) <= self.N and abs(n + p) <= self.N

    def in_core(self, n, p):
        '''|n|, |p|, |n+p| <= core'''
        bound = self.core
        return abs(n) <= bound and abs(p) <= bound and abs(n + p) <= bound

    def triple_defined(self, n, m, p):
        '''Every partial sum of (n, m, p) lies in the window.'''
        return all(abs(v) <= self.N for v in (n, m, p, n + m, n + p, m + p, n + m + p))

    def __eq__(self, other):
        return isinstance(other, Window) and (self.N, self.core) == (other.N, other.core)

    def __hash__(self):
        return hash((self.N, self.core))

    def __repr__(self):
        return 'Window(N={}, core={})'.format(self.N, self.core)


def pair_columns(window):
    '''Canonical unknown labels: block a, then b, then c, each sorted by (n, p).'''
    columns = []
    indices = list(window.indices())
    for table in TABLES:
        for n in indices:
            for p in indices:
                if not window.pair_defined(n, p):
                    continue
                if table == 'a' and n >= p:
                    continue
                if table == 'c' and n > p:
                    continue
                columns.append((table, n, p))
    return columns


def core_columns(window):
    '''The canonical labels whose pair lies in the core.'''
    return [col for col in pair_columns(window) if window.in_core(col[1], col[2])]


def triples(window, slot):
    '''Canonical (n, m, p) for a slot with every partial sum in the window.'''
    indices = list(window.indices())
    for n in indices:
        for m in indices:
            for p in indices:
                if not window.triple_defined(n, m, p):
                    continue
                if slot == 'LLL' and not n < m < p:
                    continue
                if slot == 'LLG' and not n < m:
                    continue
                if slot == 'LGG' and not m <= p:
                    continue
                if slot == 'GGG' and not n <= m <= p:
                    continue
                yield n, m, p


def slot_vectors(slot, n, m, p):
    '''The basis triple of a slot.'''
    return tuple((L if kind == 'L' else G)(index) for kind, index in zip(slot, (n, m, p)))


def canonical_key(table, n, p):
    '''(key, sign) such that table[n, p] = sign * stored[key]; sign 0 for a[n, n].'''
    if table == 'a':
        if n == p:
            return (table, n, p), 0
        if n > p:
            return (table, p, n), -1
    if table == 'c' and n > p:
        return (table, p, n), 1
    return (table, n, p), 1


class Cochain1(object):
    '''Homogeneous 1-cochain g of parity `parity` and degree `s`.

    even: g(L[n]) = a[n] L[n+s], g(G[n]) = b[n] G[n+s]
    odd:  g(L[n]) = a[n] G[n+s], g(G[n]) = b[n] L[n+s]
    '''

    __slots__ = ('parity', 's', 'window', 'a', 'b')

    def __init__(self, parity, s, window, a=None, b=None):
        self.parity = parse_parity(parity)
        self.s = s
        self.window = window
        self.a = {n: v for n, v in (a or {}).items() if v}
        self.b = {n: v for n, v in (b or {}).items() if v}
        for n in list(self.a) + list(self.b):
            if not window.contains(n):
                raise OutOfWindow('1-cochain index {} outside of {}'.format(n, window))

    @classmethod
    def zero(cls, parity, s, window):
        '''The zero cochain.'''
        return cls(parity, s, window)

    @classmethod
    def identity(cls, window):
        '''The identity map restricted to the window.'''
        ones = {n: qfield.ONE for n in window.indices()}
        return cls(0, 0, window, ones, dict(ones))

    @classmethod
    def unit(cls, parity, s, window, table, n, field=SYMBOLIC):
        '''The cochain with a single coefficient one.'''
        values = {n: field.one}
        if table == 'a':
            return cls(parity, s, window, a=values)
        return cls(parity, s, window, b=values)

    def value(self, table, n, field=SYMBOLIC):
        '''Coefficient a[n] or b[n] (zero when unset).'''
        return getattr(self, table).get(n, field.zero)

    def apply(self, x, field=SYMBOLIC):
        '''g(x) for a basis vector x.'''
        if not self.window.contains(x.degree):
            raise OutOfWindow('g({}) needs an index outside of {}'.format(x.render(), self.window))
        table = self.a if x.kind == EVEN_KIND else self.b
        coeff = table.get(x.degree)
        if not coeff:
            return Element()
        target = generator(x.parity + self.parity, x.degree + self.s)
        return Element({target: coeff})

    def apply_element(self, element, field=SYMBOLIC):
        '''g extended linearly to elements.'''
        result = Element()
        for vector, coeff in element.terms.items():
            result = result + self.apply(vector, field).scale(coeff)
        return result

    def entries(self):
        '''Nonzero (table, n, value) in canonical order.'''
        return ([('a', n, self.a[n]) for n in sorted(self.a)]
                + [('b', n, self.b[n]) for n in sorted(self.b)])

    def evaluate(self, field):
        '''The same cochain with coefficients brought into `field`.'''
        return Cochain1(self.parity, self.s, self.window,
                        {n: field.coerce(v) for n, v in self.a.items()},
                        {n: field.coerce(v) for n, v in self.b.items()})

    def __add__(self, other):
        _check_sector(self, other)
        return Cochain1(self.parity, self.s, self.window,
                        _merge(self.a, other.a), _merge(self.b, other.b))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        '''factor * g'''
        return Cochain1(self.parity, self.s, self.window,
                        {n: factor * v for n, v in self.a.items()},
                        {n: factor * v for n, v in self.b.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return (self.parity, self.s) == (other.parity, other.s) and not (self - other).entries()

    __hash__ = None

    def __repr__(self):
        return 'Cochain1({}, s={}, {} entries)'.format(
            PARITY_NAMES[self.parity], self.s, len(self.entries()))


class Cochain2(object):
    '''Homogeneous 2-cochain f of parity `parity` and degree `s`.

    even: f(L,L) = a L, f(L,G) = b G, f(G,G) = c L
    odd:  f(L,L) = a G, f(L,G) = b L, f(G,G) = c G
    with target degree n+p+s. Only pairs with |n|, |p|, |n+p| <= N are slots.
    '''

    __slots__ = ('parity', 's', 'window', 'values')

    def __init__(self, parity, s, window, values=None):
        self.parity = parse_parity(parity)
        self.s = s
        self.window = window
        self.values = {}
        for (table, n, p), value in (values or {}).items():
            self._store(table, n, p, value)

    def _store(self, table, n, p, value):
        '''Adds value at (table, n, p), canonicalizing the key.'''
        if not self.window.pair_defined(n, p):
            raise OutOfWindow('slot {}[{}, {}] outside of {}'.format(table, n, p, self.window))
        key, key_sign = canonical_key(table, n, p)
        if key_sign == 0:
            if value:
                raise ValueError('a[{0}, {0}] must vanish'.format(n))
            return
        value = value if key_sign == 1 else -value
        if key in self.values:
            value = self.values[key] + value
        if value:
            self.values[key] = value
        else:
            self.values.pop(key, None)

    @classmethod
    def from_entries(cls, parity, s, window, entries):
        '''Cochain from (table, n, p, value) tuples in any key order.'''
        cochain = cls(parity, s, window)
        for table, n, p, value in entries:
            cochain._store(table, n, p, value)
        return cochain

    @classmethod
    def from_vector(cls, parity, s, window, columns, vector):
        '''Cochain from values on canonical column labels.'''
        return cls(parity, s, window, dict(zip(columns, vector)))

    def value(self, table, n, p, field=SYMBOLIC):
        '''table[n, p] read through the (anti)symmetry.'''
        key, key_sign = canonical_key(table, n, p)
        if key_sign == 0:
            return field.zero
        stored = self.values.get(key)
        if stored is None:
            return field.zero
        return stored if key_sign == 1 else -stored

    def coefficient(self, x, y, field=SYMBOLIC):
        '''Scalar c with f(x, y) = c * target(x, y).'''
        n, p = x.degree, y.degree
        if not self.window.pair_defined(n, p):
            raise OutOfWindow('f({}, {}) is outside of {}'.format(x.render(), y.render(), self.window))
        if x.kind == EVEN_KIND and y.kind == EVEN_KIND:
            return self.value('a', n, p, field)
        if x.kind == EVEN_KIND:
            return self.value('b', n, p, field)
        if y.kind == EVEN_KIND:
            # f(G[n], L[p]) = -(-1)^{1*0} f(L[p], G[n])
            return -self.value('b', p, n, field)
        return self.value('c', n, p, field)

    def target(self, x, y):
        '''The basis vector f(x, y) is a multiple of.'''
        return generator(x.parity + y.parity + self.parity, x.degree + y.degree + self.s)

    def apply(self, x, y, field=SYMBOLIC):
        '''f(x, y) for basis vectors.'''
        coeff = self.coefficient(x, y, field)
        if not coeff:
            return Element()
        return Element({self.target(x, y): coeff})

    def entries(self):
        '''Nonzero (table, n, p, value) in canonical order.'''
        return [key + (self.values[key],) for key in sorted(self.values, key=_column_order)]

    def vector(self, columns, field=SYMBOLIC):
        '''Values on the given canonical column labels.'''
        return [self.values.get(col, field.zero) for col in columns]

    def evaluate(self, field):
        '''The same cochain with coefficients brought into `field`.'''
        return Cochain2(self.parity, self.s, self.window,
                        {k: field.coerce(v) for k, v in self.values.items()})

    def restrict(self, keep):
        '''The cochain with only the slots for which keep(table, n, p) holds.'''
        return Cochain2(self.parity, self.s, self.window,
                        {k: v for k, v in self.values.items() if keep(*k)})

    def __add__(self, other):
        _check_sector(self, other)
        return Cochain2(self.parity, self.s, self.window, _merge(self.values, other.values))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        '''factor * f'''
        return Cochain2(self.parity, self.s, self.window,
                        {k: factor * v for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, Cochain2):
            return NotImplemented
        return (self.parity, self.s) == (other.parity, other.s) and not (self - other).values

    __hash__ = None

    def __repr__(self):
        return 'Cochain2({}, s={}, {} entries)'.format(
            PARITY_NAMES[self.parity], self.s, len(self.values))


def _column_order(key):
    '''Sort key for canonical labels: block a, b, c then (n, p).'''
    table, n, p = key
    return (TABLES.index(table), n, p)


class Cochain3Defect(object):
    '''Values of a 3-cochain (the output of d2) on canonical slots.'''

    __slots__ = ('parity', 's', 'window', 'values')

    def __init__(self, parity, s, window, values=None):
        self.parity = parse_parity(parity)
        self.s = s
        self.window = window
        self.values = {k: v for k, v in (values or {}).items() if v}

    def value(self, slot, n, m, p, field=SYMBOLIC):
        '''Defect at a canonical slot (zero when absent).'''
        return self.values.get((slot, n, m, p), field.zero)

    def nonzero(self):
        '''Nonzero ((slot, n, m, p), value) in canonical order.'''
        return sorted(self.values.items(), key=lambda item: (SLOTS.index(item[0][0]),) + item[0][1:])

    def is_zero(self):
        '''True when every defect vanishes.'''
        return not self.values

    def __repr__(self):
        return 'Cochain3Defect({}, s={}, {} nonzero)'.format(
            PARITY_NAMES[self.parity], self.s, len(self.values))


def _check_sector(left, right):
    '''Raises unless both cochains share parity and degree.'''
    if (left.parity, left.s) != (right.parity, right.s):
        raise ValueError('cannot combine cochains of different sectors')


def _merge(left, right):
    '''Adds two sparse maps, dropping zeros.'''
    result = dict(left)
    for key, value in right.items():
        result[key] = result[key] + value if key in result else value
    return {k: v for k, v in result.items() if v}


def _random_value(rng, coefficients):
    '''An integer in [-9, 9], or a degree <= 2 polynomial in q with such coefficients.'''
    if coefficients == 'polynomial':
        terms = [rng.randint(-9, 9) for _ in range(3)]
        value = qfield.ZERO
        for power, coeff in enumerate(terms):
            value = value + qfield.q_power(power) * coeff
        return value
    return qfield.QRat.const(rng.randint(-9, 9))


def random_cochain1(parity, s, window, seed, coefficients='integer'):
    '''Deterministic pseudo-random 1-cochain supported in the window.'''
    rng = random.Random('cochain1:{}:{}:{}:{}'.format(parse_parity(parity), s, window.N, seed))
    a = {n: _random_value(rng, coefficients) for n in window.indices()}
    b = {n: _random_value(rng, coefficients) for n in window.indices()}
    return Cochain1(parity, s, window, a, b)


def random_cochain2(parity, s, window, seed, coefficients='integer'):
    '''Deterministic pseudo-random 2-cochain on every slot of the window.'''
    rng = random.Random('cochain2:{}:{}:{}:{}'.format(parse_parity(parity), s, window.N, seed))
    values = {col: _random_value(rng, coefficients) for col in pair_columns(window)}
    return Cochain2(parity, s, window, values)


def apply_bilinear(f, x, y, field=SYMBOLIC):
    '''Bilinear extension of f.apply to elements (or basis vectors).'''
    x = x if isinstance(x, Element) else Element({x: field.one})
    y = y if isinstance(y, Element) else Element({y: field.one})
    result = Element()
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            result = result + f.apply(u, v, field).scale(cu * cv)
    return result


def hom_compat_defect(f, args, field=SYMBOLIC):
    '''f(alpha(x1), ..., alpha(xk)) - alpha(f(x1, ..., xk)) for basis vectors.'''
    if isinstance(f, Cochain1):
        (x,) = args
        return f.apply(x, field).scale(alpha_coefficient(x, field)) - alpha(f.apply(x, field), field)
    x, y = args
    value = f.apply(x, y, field)
    factor = alpha_coefficient(x, field) * alpha_coefficient(y, field)
    return value.scale(factor) - alpha(value, field)


def koszul(*parities):
    '''(-1)^(product of the given parities)'''
    product = 1
    for value in parities:
        product *= value
    return sign(product)


__all__ = ['Window', 'Cochain1', 'Cochain2', 'Cochain3Defect', 'OutOfWindow',
           'WindowException', 'random_cochain1', 'random_cochain2', 'apply_bilinear',
           'hom_compat_defect', 'pair_columns', 'core_columns', 'triples',
           'slot_vectors', 'canonical_key', 'parse_parity', 'PARITY_NAMES', 'ODD_KIND']
