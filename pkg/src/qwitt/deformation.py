'''Order by order formal deformations of W^q.

A deformation of order k is the family [.,.]_0 = bracket, [.,.]_1, ..., [.,.]_k
of even bilinear maps; an automorphism is phi_0 = id, phi_1, ..., phi_k. The
equivalence phi_t([x, y]_t) = [phi_t x, phi_t y]'_t is solved for [.,.]'_k
order by order:

    [x, y]'_k = sum_{i+j=k} phi_i([x, y]_j) - sum_{i+j+l=k, l<k} [phi_i x, phi_j y]'_l
'''
from . import util
from .algebra import Element, L, G, alpha, bracket, sign
from .cochains import SLOTS, OutOfWindow, apply_bilinear, slot_vectors, triples
from .coboundary import delta2
from .h2solver import solve_coboundary
from .qfield import SYMBOLIC


class NotCoboundaryOnCore(util.QWittException):
    '''The order-1 bracket is not d1 of any 1-cochain on the core.'''


def basis(window):
    '''Every generator of the window, in canonical order.'''
    return [vector for n in window.indices() for vector in (L(n), G(n))]


def basis_pairs(window):
    '''Ordered pairs of generators whose degrees form a window pair.'''
    vectors = basis(window)
    return [(x, y) for x in vectors for y in vectors if window.pair_defined(x.degree, y.degree)]


class Bracket(object):
    '''The bracket of W^q as a bilinear map (order 0).'''

    parity = 0

    def apply(self, x, y, field=SYMBOLIC):
        '''[x, y]'''
        return bracket(x, y, field)


BRACKET = Bracket()


class CochainSum(object):
    '''Finite sum of even homogeneous 2-cochains of possibly different degrees.'''

    parity = 0

    def __init__(self, window, cochains=None):
        self.window = window
        self.cochains = list(cochains or [])
        for cochain in self.cochains:
            if cochain.parity != 0:
                raise ValueError('deformation brackets must be even')

    def apply(self, x, y, field=SYMBOLIC):
        '''Sum of the components on (x, y).'''
        result = Element()
        for cochain in self.cochains:
            result = result + cochain.apply(x, y, field)
        return result

    def components(self):
        '''The homogeneous parts.'''
        return list(self.cochains)

    def is_zero(self):
        '''True when every component vanishes.'''
        return all(not cochain.values for cochain in self.cochains)


class BilinearTable(object):
    '''Bilinear map given by its values on ordered basis pairs; None marks an undefined slot.'''

    parity = 0

    def __init__(self, window, values):
        self.window = window
        self.values = values

    def apply(self, x, y, field=SYMBOLIC):
        '''Value on (x, y); OutOfWindow on a missing or undefined slot.'''
        value = self.values.get((x, y))
        if value is None:
            raise OutOfWindow('[{}, {}] is undefined on {}'.format(x.render(), y.render(), self.window))
        return value

    def defined(self, x, y):
        '''True when the slot carries a value.'''
        return self.values.get((x, y)) is not None

    def nonzero_on_core(self):
        '''Core pairs (x, y) with a nonzero or undefined value.'''
        core = self.window.in_core
        return [(x, y) for (x, y), value in sorted(self.values.items(), key=_pair_key)
                if core(x.degree, y.degree) and (value is None or value)]


def _pair_key(item):
    '''Canonical order of ((x, y), value) items.'''
    (x, y), _ = item
    return (x.sort_key(), y.sort_key())


class LinearTable(object):
    '''Linear map given by its values on the generators; None marks an undefined value.'''

    def __init__(self, window, values):
        self.window = window
        self.values = values

    @classmethod
    def from_cochains(cls, window, cochains, field=SYMBOLIC):
        '''Sum of even 1-cochains as a table.'''
        values = {}
        for x in basis(window):
            image = Element()
            for cochain in cochains:
                image = image + cochain.apply(x, field)
            values[x] = image
        return cls(window, values)

    @classmethod
    def zero(cls, window):
        '''The zero map.'''
        return cls(window, {x: Element() for x in basis(window)})

    def apply(self, x, field=SYMBOLIC):
        '''Value on a generator; OutOfWindow when undefined.'''
        value = self.values.get(x)
        if value is None:
            raise OutOfWindow('{} has no image on {}'.format(x.render(), self.window))
        return value

    def apply_element(self, element, field=SYMBOLIC):
        '''Linear extension to elements.'''
        result = Element()
        for vector, coeff in element.terms.items():
            result = result + self.apply(vector, field).scale(coeff)
        return result

    def compose(self, other, field=SYMBOLIC):
        '''self after other, undefined where other leaves the window.'''
        values = {}
        for x in basis(self.window):
            try:
                values[x] = self.apply_element(other.apply(x, field), field)
            except OutOfWindow:
                values[x] = None
        return LinearTable(self.window, values)

    def __add__(self, other):
        values = {}
        for x in basis(self.window):
            left, right = self.values.get(x), other.values.get(x)
            values[x] = None if left is None or right is None else left + right
        return LinearTable(self.window, values)

    def __neg__(self):
        return LinearTable(self.window, {x: None if v is None else -v for x, v in self.values.items()})

    def is_zero(self):
        '''True when every defined value vanishes.'''
        return all(not value for value in self.values.values() if value is not None)

    def commutes_with_alpha(self, field=SYMBOLIC):
        '''alpha phi = phi alpha on every defined generator.'''
        for x, value in self.values.items():
            if value is None:
                continue
            if alpha(value, field) != self.apply_element(alpha(x, field), field):
                return False
        return True


class TruncatedDeformation(object):
    '''[.,.]_0 = bracket and the higher orders [.,.]_1, ..., [.,.]_k.'''

    def __init__(self, window, brackets):
        self.window = window
        self.brackets = list(brackets)
        self.alpha_commutes = None

    @property
    def order(self):
        '''k'''
        return len(self.brackets)

    def bracket(self, i):
        '''[.,.]_i as a bilinear object.'''
        if i == 0:
            return BRACKET
        return self.brackets[i - 1]

    @classmethod
    def trivial(cls, window, order):
        '''All higher brackets zero.'''
        return cls(window, [CochainSum(window) for _ in range(order)])


class TruncatedAutomorphism(object):
    '''phi_0 = id and the higher orders phi_1, ..., phi_k.

    Each phi_i is a LinearTable or a list of even 1-cochains; `cochains` keeps
    the lists (None for orders given as tables).
    '''

    def __init__(self, window, maps, field=SYMBOLIC):
        self.window = window
        maps = list(maps)
        self.cochains = [None if isinstance(m, LinearTable) else list(m) for m in maps]
        self.maps = [m if isinstance(m, LinearTable) else LinearTable.from_cochains(window, m, field)
                     for m in maps]

    @property
    def order(self):
        '''k'''
        return len(self.maps)

    @classmethod
    def identity(cls, window, order):
        '''phi_i = 0 for every i >= 1.'''
        return cls(window, [LinearTable.zero(window) for _ in range(order)])

    def phi(self, i, element, field=SYMBOLIC):
        '''phi_i applied to a generator or element.'''
        if not isinstance(element, Element):
            element = Element({element: field.one})
        if i == 0:
            return element
        return self.maps[i - 1].apply_element(element, field)

    def inverse(self, field=SYMBOLIC):
        '''Truncated inverse: psi_k = -sum_{i=1..k} phi_i psi_{k-i}.'''
        psi = []
        for k in range(1, self.order + 1):
            total = -self.maps[k - 1]
            for i in range(1, k):
                total = total + (-self.maps[i - 1].compose(psi[k - i - 1], field))
            psi.append(total)
        return TruncatedAutomorphism(self.window, psi)

    def commutes_with_alpha(self, field=SYMBOLIC):
        '''True when every phi_i commutes with alpha on the window.'''
        return all(m.commutes_with_alpha(field) for m in self.maps)


def _cyclic(x, y, z):
    '''The three cyclic orderings of (x, y, z).'''
    return ((x, y, z), (z, x, y), (y, z, x))


def deformation_defect(deformation, order, x, y, z, field=SYMBOLIC):
    '''Cyclic sum of (-1)^{|x||z|} [alpha(x), [y, z]_i]_{order-i}, i = 0..order.'''
    if not 0 <= order <= deformation.order:
        raise ValueError('order {} outside of 0..{}'.format(order, deformation.order))
    total = Element()
    for u, v, w in _cyclic(x, y, z):
        twist = sign(u.parity * w.parity)
        for i in range(order + 1):
            inner = deformation.bracket(i).apply(v, w, field)
            outer = apply_bilinear(deformation.bracket(order - i), alpha(u, field), inner, field)
            total = total + outer.scale(twist)
    return total


def first_order_cocycle_check(deformation, field=SYMBOLIC):
    '''(True, None) when every order-1 defect vanishes, else (False, ((slot, n, m, p), defect)).'''
    window = deformation.window
    for slot in SLOTS:
        for n, m, p in triples(window, slot):
            x, y, z = slot_vectors(slot, n, m, p)
            defect = deformation_defect(deformation, 1, x, y, z, field)
            if defect:
                return False, ((slot, n, m, p), defect)
    return True, None


def order_one_sign(slot):
    '''The order-1 defect equals this sign times d2([.,.]_1) on the slot.'''
    x, _, z = slot_vectors(slot, 0, 0, 0)
    return sign(x.parity * z.parity)


def _transformed_value(deformation, automorphism, primed, k, x, y, field):
    '''[x, y]'_k from the defining relation; OutOfWindow propagates.'''
    value = Element()
    for i in range(k + 1):
        value = value + automorphism.phi(i, deformation.bracket(k - i).apply(x, y, field), field)
    for l in range(k):
        for i in range(k - l + 1):
            j = k - l - i
            left = automorphism.phi(i, x, field)
            right = automorphism.phi(j, y, field)
            bilinear = BRACKET if l == 0 else primed[l - 1]
            value = value - apply_bilinear(bilinear, left, right, field)
    return value


def apply_equivalence(deformation, automorphism, field=SYMBOLIC):
    '''The deformation [.,.]' with phi_t([x, y]_t) = [phi_t x, phi_t y]'_t up to the common order.'''
    if deformation.order != automorphism.order:
        raise ValueError('orders differ: {} and {}'.format(deformation.order, automorphism.order))
    window = deformation.window
    primed = []
    for k in range(1, deformation.order + 1):
        values = {}
        for x, y in basis_pairs(window):
            try:
                values[(x, y)] = _transformed_value(deformation, automorphism, primed, k, x, y, field)
            except OutOfWindow:
                values[(x, y)] = None
        primed.append(BilinearTable(window, values))
    result = TruncatedDeformation(window, primed)
    result.alpha_commutes = automorphism.commutes_with_alpha(field)
    util.boring('equivalence applied up to order {} (phi commutes with alpha: {})'.format(
        deformation.order, 'yes' if result.alpha_commutes else 'no'))
    return result


def agree_on_core(left, right, field=SYMBOLIC):
    '''Orders 1..k of two deformations coincide on every core pair.'''
    if left.order != right.order:
        return False
    window = left.window
    for i in range(1, left.order + 1):
        for x, y in basis_pairs(window):
            if not window.in_core(x.degree, y.degree):
                continue
            try:
                if left.bracket(i).apply(x, y, field) != right.bracket(i).apply(x, y, field):
                    return False
            except OutOfWindow:
                return False
    return True


class Trivialization(object):
    '''phi_1 killing the order-1 bracket on the core, and what it does to the rest.'''

    def __init__(self, automorphism, transformed, cocycle, witness, components):
        self.automorphism = automorphism
        self.transformed = transformed
        self.cocycle = cocycle
        self.witness = witness
        self.components = components

    @property
    def residual_order_one(self):
        '''Core pairs where [.,.]'_1 is nonzero or undefined.'''
        return self.transformed.bracket(1).nonzero_on_core()

    @property
    def residual_order_two(self):
        '''[.,.]'_2 on the core, None for order-1 deformations.'''
        if self.transformed.order < 2:
            return None
        return self.transformed.bracket(2).nonzero_on_core()

    def to_dict(self):
        '''JSON-ready summary.'''
        witness = None
        if self.witness is not None:
            (slot, n, m, p), defect = self.witness
            witness = {'slot': slot, 'indices': [n, m, p], 'defect': defect.render()}
        order_two = self.residual_order_two
        return {
            'cocycle': self.cocycle,
            'witness': witness,
            'trivializable': not self.residual_order_one,
            'components': self.components,
            'alpha_commutes': self.transformed.alpha_commutes,
            'order_two_nonzero_on_core': None if order_two is None else len(order_two),
        }


def trivialize_first_order(deformation, field=SYMBOLIC):
    '''phi_1 = g with [.,.]_1 = d1(g) on the core, so that [.,.]'_1 vanishes there.'''
    window = deformation.window
    first = deformation.bracket(1)
    if not isinstance(first, CochainSum):
        raise ValueError('the order-1 bracket must be given as homogeneous cochains')
    cocycle, witness = first_order_cocycle_check(deformation, field)
    if not cocycle:
        (slot, n, m, p), _ = witness
        util.warning('order-1 bracket is not a cocycle: defect at {} ({}, {}, {})'.format(
            slot, n, m, p))
    maps, components = [], []
    for cochain in first.components():
        g = solve_coboundary(cochain, window, field)
        if g is None:
            raise NotCoboundaryOnCore('the degree {} part of [.,.]_1 is not a coboundary on the '
                                      'core of {}'.format(cochain.s, window))
        maps.append(g)
        components.append({'s': cochain.s, 'g_entries': len(g.entries())})
    automorphism = TruncatedAutomorphism(
        window, [maps] + [[] for _ in range(deformation.order - 1)], field)
    transformed = apply_equivalence(deformation, automorphism, field)
    return Trivialization(automorphism, transformed, cocycle, witness, components)


def defect_on_slot(deformation, slot, n, m, p, field=SYMBOLIC):
    '''Order-1 defect together with its expected value from the generic d2 of [.,.]_1.'''
    x, y, z = slot_vectors(slot, n, m, p)
    return (deformation_defect(deformation, 1, x, y, z, field),
            delta2(deformation.bracket(1), x, y, z, field).scale(order_one_sign(slot)))


__all__ = ['TruncatedDeformation', 'TruncatedAutomorphism', 'CochainSum', 'BilinearTable',
           'LinearTable', 'NotCoboundaryOnCore', 'deformation_defect',
           'first_order_cocycle_check', 'apply_equivalence', 'trivialize_first_order',
           'agree_on_core', 'defect_on_slot', 'order_one_sign']
