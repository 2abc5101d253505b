'''The q-deformed Witt Hom-Lie superalgebra W^q and its coefficient algebra A.

W^q is spanned by even generators L[n] and odd generators G[n], n in Z, with

    [L[n], L[m]] = ({m} - {n}) L[n+m]
    [L[n], G[m]] = ({m+1} - {n}) G[n+m]
    [G[n], L[m]] = -({n+1} - {m}) G[n+m]
    [G[n], G[m]] = 0

and the twisting map alpha(L[n]) = (1 + q^n) L[n], alpha(G[n]) = (1 + q^(n+1)) G[n].

Every function takes an optional `field` (qfield.SYMBOLIC by default, or a
qfield.Sampled instance) that decides where the structure constants live.
'''
import re
from collections import namedtuple

from . import qfield
from .qfield import SYMBOLIC

EVEN_KIND = 'L'
ODD_KIND = 'G'

_TERM = re.compile(r'^(?P<coeff>.+) \* (?P<kind>[LG])\[(?P<degree>-?\d+)\]$')


def sign(exponent):
    '''(-1)^exponent'''
    return -1 if exponent % 2 else 1


class BasisVector(namedtuple('BasisVector', ['kind', 'degree'])):
    '''Homogeneous generator L[n] (even) or G[n] (odd).'''

    __slots__ = ()

    @property
    def parity(self):
        '''0 for L, 1 for G.'''
        return 0 if self.kind == EVEN_KIND else 1

    def sort_key(self):
        '''Canonical order: by degree, L before G.'''
        return (self.degree, self.parity)

    def render(self):
        '''Text form, e.g. `G[-1]`.'''
        return '{}[{}]'.format(self.kind, self.degree)


def L(n):
    '''The even generator L[n].'''
    return BasisVector(EVEN_KIND, n)


def G(n):
    '''The odd generator G[n].'''
    return BasisVector(ODD_KIND, n)


def generator(parity, n):
    '''L[n] for parity 0, G[n] for parity 1.'''
    return G(n) if parity % 2 else L(n)


def parity(x):
    '''Parity of a basis vector or of a homogeneous element.'''
    if isinstance(x, BasisVector):
        return x.parity
    parities = set(v.parity for v in x.terms)
    if len(parities) > 1:
        raise ValueError('element is not homogeneous')
    return parities.pop() if parities else 0


class Element(object):
    '''Finite linear combination of basis vectors, no zero coefficients.'''

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {}
        for vector, coeff in (terms or {}).items():
            if coeff:
                self.terms[vector] = coeff

    @classmethod
    def basis(cls, vector, coeff=None):
        '''coeff * vector (coeff defaults to the symbolic one).'''
        return cls({vector: qfield.ONE if coeff is None else coeff})

    def coefficient(self, vector):
        '''Coefficient of `vector`, or None when absent.'''
        return self.terms.get(vector)

    def items(self):
        '''(vector, coeff) pairs in canonical order.'''
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def __bool__(self):
        return bool(self.terms)

    __nonzero__ = __bool__

    def __add__(self, other):
        terms = dict(self.terms)
        for vector, coeff in other.terms.items():
            if vector in terms:
                terms[vector] = terms[vector] + coeff
            else:
                terms[vector] = coeff
        return Element(terms)

    def __neg__(self):
        return Element({v: -c for v, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        '''factor * self'''
        if not factor:
            return Element()
        return Element({v: factor * c for v, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return (self - other).terms == {}

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def render(self):
        '''`c * L[n] + c * G[m]`, or `0`.'''
        if not self.terms:
            return '0'
        return ' + '.join('{} * {}'.format(_render_coeff(c), v.render())
                          for v, c in self.items())

    def __repr__(self):
        return 'Element({})'.format(self.render())


def _render_coeff(coeff):
    '''Renders a QRat or a plain rational.'''
    if isinstance(coeff, qfield.QRat):
        return coeff.render()
    return '({})'.format(coeff)


def _split_terms(text):
    '''Splits at ` + ` outside parentheses.'''
    parts, depth, start = [], 0, 0
    index = 0
    while index < len(text):
        char = text[index]
        if char == '(':
            depth += 1
        elif char == ')':
            depth -= 1
        elif depth == 0 and text.startswith(' + ', index):
            parts.append(text[start:index])
            start = index + 3
            index += 2
        index += 1
    parts.append(text[start:])
    return parts


def parse_element(text):
    '''Parses the `c * L[n] + ...` rendering back into a symbolic Element.'''
    text = text.strip()
    if text == '0':
        return Element()
    terms = {}
    for part in _split_terms(text):
        match = _TERM.match(part.strip())
        if not match:
            raise ValueError('cannot parse term "{}"'.format(part))
        vector = BasisVector(match.group('kind'), int(match.group('degree')))
        coeff = qfield.parse(match.group('coeff'))
        terms[vector] = terms[vector] + coeff if vector in terms else coeff
    return Element(terms)


def structure_constant(x, y, field=SYMBOLIC):
    '''The scalar c with [x, y] = c * (generator of degree x+y).'''
    n, m = x.degree, y.degree
    if x.kind == EVEN_KIND and y.kind == EVEN_KIND:
        return field.qnum(m) - field.qnum(n)
    if x.kind == EVEN_KIND:
        return field.qnum(m + 1) - field.qnum(n)
    if y.kind == EVEN_KIND:
        return -(field.qnum(n + 1) - field.qnum(m))
    return field.zero


def _bracket_basis(x, y, field):
    '''[x, y] for two basis vectors.'''
    coeff = structure_constant(x, y, field)
    if not coeff:
        return Element()
    return Element({generator(x.parity + y.parity, x.degree + y.degree): coeff})


def _as_element(x, field):
    '''Promotes a basis vector to an element with coefficient one.'''
    if isinstance(x, BasisVector):
        return Element({x: field.one})
    return x


def bracket(x, y, field=SYMBOLIC):
    '''The bilinear bracket of W^q.'''
    if isinstance(x, BasisVector) and isinstance(y, BasisVector):
        return _bracket_basis(x, y, field)
    result = Element()
    for u, cu in _as_element(x, field).terms.items():
        for v, cv in _as_element(y, field).terms.items():
            result = result + _bracket_basis(u, v, field).scale(cu * cv)
    return result


def alpha_coefficient(x, field=SYMBOLIC):
    '''The eigenvalue of alpha on a basis vector.'''
    if x.kind == EVEN_KIND:
        return field.one + field.q_power(x.degree)
    return field.one + field.q_power(x.degree + 1)


def alpha(x, field=SYMBOLIC):
    '''The twisting map, extended linearly.'''
    if isinstance(x, BasisVector):
        return Element({x: alpha_coefficient(x, field)})
    return Element({v: alpha_coefficient(v, field) * c for v, c in x.terms.items()})


def jacobi_defect(x, y, z, field=SYMBOLIC):
    '''Cyclic sum of (-1)^{|x||z|} [alpha(x), [y, z]]; zero on W^q.'''
    px, py, pz = x.parity, y.parity, z.parity
    return (bracket(alpha(x, field), bracket(y, z, field), field).scale(sign(px * pz))
            + bracket(alpha(z, field), bracket(x, y, field), field).scale(sign(pz * py))
            + bracket(alpha(y, field), bracket(z, x, field), field).scale(sign(py * px)))


def supersymmetry_defect(x, y, field=SYMBOLIC):
    '''[x, y] + (-1)^{|x||y|} [y, x]; zero on W^q.'''
    return bracket(x, y, field) + bracket(y, x, field).scale(sign(x.parity * y.parity))


class AElement(object):
    '''Element of A = C[t, 1/t] + theta C[t, 1/t].

    even maps n to the coefficient of t^n, odd maps n to the coefficient of
    theta t^n. theta^2 = 0 holds because no theta^2 component exists.
    '''

    __slots__ = ('even', 'odd')

    def __init__(self, even=None, odd=None):
        self.even = {n: c for n, c in (even or {}).items() if c}
        self.odd = {n: c for n, c in (odd or {}).items() if c}

    @classmethod
    def monomial(cls, n, odd=False, coeff=None):
        '''t^n, or theta t^n when odd.'''
        coeff = qfield.ONE if coeff is None else coeff
        return cls(odd={n: coeff}) if odd else cls(even={n: coeff})

    @property
    def parity(self):
        '''0 or 1 for homogeneous elements.'''
        if self.odd and self.even:
            raise ValueError('element of A is not homogeneous')
        return 1 if self.odd else 0

    def __add__(self, other):
        return AElement(_merge(self.even, other.even), _merge(self.odd, other.odd))

    def __neg__(self):
        return AElement({n: -c for n, c in self.even.items()},
                        {n: -c for n, c in self.odd.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        even, odd = {}, {}
        for n, c in self.even.items():
            for m, d in other.even.items():
                even = _merge(even, {n + m: c * d})
            for m, d in other.odd.items():
                odd = _merge(odd, {n + m: c * d})
        for n, c in self.odd.items():
            for m, d in other.even.items():
                odd = _merge(odd, {n + m: c * d})
        return AElement(even, odd)

    def scale(self, factor):
        '''factor * self'''
        return AElement({n: factor * c for n, c in self.even.items()},
                        {n: factor * c for n, c in self.odd.items()})

    def __bool__(self):
        return bool(self.even or self.odd)

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self
        if not isinstance(other, AElement):
            return NotImplemented
        return not (self - other)

    __hash__ = None

    def __repr__(self):
        parts = ['{}*t^{}'.format(_render_coeff(c), n) for n, c in sorted(self.even.items())]
        parts += ['{}*theta*t^{}'.format(_render_coeff(c), n) for n, c in sorted(self.odd.items())]
        return 'AElement({})'.format(' + '.join(parts) or '0')


def _merge(left, right):
    '''Adds two sparse coefficient maps.'''
    result = dict(left)
    for key, value in right.items():
        result[key] = result[key] + value if key in result else value
    return {k: v for k, v in result.items() if v}


def sigma(a, field=SYMBOLIC):
    '''sigma(t^n) = q^n t^n, sigma(theta) = q theta.'''
    return AElement({n: field.q_power(n) * c for n, c in a.even.items()},
                    {n: field.q_power(n + 1) * c for n, c in a.odd.items()})


def delta(a, field=SYMBOLIC):
    '''Delta(t^n) = {n} t^n, Delta(theta t^n) = {n+1} theta t^n.'''
    return AElement({n: field.qnum(n) * c for n, c in a.even.items()},
                    {n: field.qnum(n + 1) * c for n, c in a.odd.items()})


# name -> (map, parity of the map)
DERIVATIONS = {
    'delta': (delta, 0),
}


def sigma_derivation_defect(name, a, b, field=SYMBOLIC):
    '''D(ab) - D(a) b - (-1)^{i|a|} sigma(a) D(b) for the named map D of parity i.'''
    derivation, derivation_parity = DERIVATIONS[name]
    twist = sign(derivation_parity * a.parity)
    return (derivation(a * b, field)
            - derivation(a, field) * b
            - (sigma(a, field) * derivation(b, field)).scale(twist))
