'''The coboundary operators d1 and d2 of the adjoint module.

Two independent paths are kept and checked against each other:

* the generic operators `delta1` / `delta2`, expanding

    d1(f)(x, y) = -f([x, y]) + (-1)^{|x||f|} [x, f(y)] - (-1)^{|y|(|f|+|x|)} [y, f(x)]

    d2(f)(x, y, z) = -f([x, y], a(z)) + (-1)^{|z||y|} f([x, z], a(y)) + f(a(x), [y, z])
                     + (-1)^{|x||f|} [a(x), f(y, z)]
                     - (-1)^{|y|(|f|+|x|)} [a(y), f(x, z)]
                     + (-1)^{|z|(|f|+|x|+|y|)} [a(z), f(x, y)]

  on elements, where `a` is the twisting map alpha;

* the coefficient rows (`row_terms`), one linear form in the unknowns
  a[n, p], b[n, p], c[n, p] per slot and triple, written out by hand for
  every parity.
'''
from . import util
from .algebra import EVEN_KIND, Element, L, G, bracket, alpha, alpha_coefficient
from .algebra import sign, structure_constant, generator
from .cochains import (Cochain1, Cochain2, Cochain3Defect, SLOTS, apply_bilinear,
                       canonical_key, pair_columns, slot_vectors, triples)
from .qfield import SYMBOLIC


def delta1(f, x, y, field=SYMBOLIC):
    '''Generic d1(f)(x, y) for a 1-cochain (anything with .apply and .parity).'''
    pf = f.parity
    return (-f.apply_element(bracket(x, y, field), field)
            + bracket(x, f.apply(y, field), field).scale(sign(x.parity * pf))
            - bracket(y, f.apply(x, field), field).scale(sign(y.parity * (pf + x.parity))))


def delta2(f, x, y, z, field=SYMBOLIC):
    '''Generic d2(f)(x, y, z) for any bilinear f exposing .apply(x, y, field) and .parity.'''
    pf = f.parity
    px, py, pz = x.parity, y.parity, z.parity
    return (-apply_bilinear(f, bracket(x, y, field), alpha(z, field), field)
            + apply_bilinear(f, bracket(x, z, field), alpha(y, field), field).scale(sign(pz * py))
            + apply_bilinear(f, alpha(x, field), bracket(y, z, field), field)
            + bracket(alpha(x, field), f.apply(y, z, field), field).scale(sign(px * pf))
            - bracket(alpha(y, field), f.apply(x, z, field), field).scale(sign(py * (pf + px)))
            + bracket(alpha(z, field), f.apply(x, y, field), field).scale(sign(pz * (pf + px + py))))


def _coefficient(element, target, field):
    '''Coefficient of `target` in a homogeneous element.'''
    value = element.coefficient(target)
    return field.zero if value is None else value


def d1(g, window=None, field=SYMBOLIC):
    '''d1(g) as a Cochain2 on every defined slot of the window.'''
    window = window or g.window
    values = {}
    for table, n, p in pair_columns(window):
        x, y = pair_vectors(table, n, p)
        target = generator(x.parity + y.parity + g.parity, n + p + g.s)
        values[(table, n, p)] = _coefficient(delta1(g, x, y, field), target, field)
    return Cochain2(g.parity, g.s, window, values)


z1_defect = d1


def pair_vectors(table, n, p):
    '''The basis pair of a 2-cochain slot.'''
    if table == 'a':
        return L(n), L(p)
    if table == 'b':
        return L(n), G(p)
    return G(n), G(p)


def d1_terms(parity, s, x, y, field=SYMBOLIC):
    '''d1(g)(x, y) as a linear form [((table, k), coeff)] in the 1-cochain coefficients.'''
    terms = []
    inner = x.parity + y.parity
    coeff = structure_constant(x, y, field)
    if coeff:
        terms.append(((_table1(inner), x.degree + y.degree), -coeff))
    for first, second, twist in ((x, y, sign(x.parity * parity)),
                                 (y, x, -sign(y.parity * (parity + x.parity)))):
        image = generator(second.parity + parity, second.degree + s)
        coeff = structure_constant(first, image, field)
        if coeff:
            terms.append(((_table1(second.parity), second.degree), coeff * twist))
    return terms


def _table1(parity):
    '''Table of a 1-cochain that acts on generators of the given parity.'''
    return 'a' if parity % 2 == 0 else 'b'


def d1_closed_form(g, n, p, field=SYMBOLIC):
    '''Closed forms of d1(g) on (L[n], L[p]) and (L[n], G[p]) for the s=0 even and s=1 odd sectors.

    Returns a dict {'LL': value, 'LG': value}.
    '''
    Q = field.qnum
    a = lambda k: g.value('a', k, field)
    b = lambda k: g.value('b', k, field)
    if (g.parity, g.s) == (0, 0):
        return {'LL': (Q(n) - Q(p)) * (a(n + p) - a(p) - a(n)),
                'LG': (Q(p + 1) - Q(n)) * (b(p) + a(n) - b(n + p))}
    if (g.parity, g.s) == (1, 1):
        return {'LL': (-(Q(p) - Q(n)) * a(n + p) + (Q(p + 2) - Q(n)) * a(p)
                       - (Q(n + 2) - Q(p)) * a(n)),
                'LG': -(Q(p + 1) - Q(n)) * (b(n + p) - b(p))}
    raise ValueError('no closed form for sector ({}, {})'.format(g.parity, g.s))


def _add_term(terms, table, i, j, coeff):
    '''Appends coeff * table[i, j] in canonical key form.'''
    key, key_sign = canonical_key(table, i, j)
    if key_sign == 0 or not coeff:
        return
    terms.append((key, coeff if key_sign == 1 else -coeff))


def _even_row(slot, n, m, p, s, field):
    '''Rows of d2 for an even 2-cochain of degree s.'''
    Q, P, one = field.qnum, field.q_power, field.one
    terms = []
    cond = util.cond(
        (slot == 'LLL', lambda: [
            ('a', n + m, p, -(one + P(p)) * (Q(m) - Q(n))),
            ('a', n + p, m, (one + P(m)) * (Q(p) - Q(n))),
            ('a', n, m + p, (one + P(n)) * (Q(p) - Q(m))),
            ('a', m, p, (one + P(n)) * (Q(m + p + s) - Q(n))),
            ('a', n, p, -(one + P(m)) * (Q(p + n + s) - Q(m))),
            ('a', n, m, (one + P(p)) * (Q(n + m + s) - Q(p))),
        ]),
        (slot == 'LLG', lambda: [
            ('b', n + m, p, -(one + P(p + 1)) * (Q(m) - Q(n))),
            ('b', m, n + p, -(one + P(m)) * (Q(p + 1) - Q(n))),
            ('b', n, m + p, (one + P(n)) * (Q(p + 1) - Q(m))),
            ('b', m, p, (one + P(n)) * (Q(m + p + 1 + s) - Q(n))),
            ('b', n, p, -(one + P(m)) * (Q(p + n + 1 + s) - Q(m))),
            ('a', n, m, -(one + P(p + 1)) * (Q(p + 1) - Q(n + m + s))),
        ]),
        (slot == 'LGG', lambda: [
            ('c', n + m, p, -(one + P(p + 1)) * (Q(m + 1) - Q(n))),
            ('c', n + p, m, -(one + P(m + 1)) * (Q(p + 1) - Q(n))),
            ('c', m, p, (one + P(n)) * (Q(m + p + s) - Q(n))),
        ]),
        (slot == 'GGG', lambda: [
            ('c', m, p, -(one + P(n + 1)) * (Q(n + 1) - Q(s + m + p))),
            ('c', n, p, -(one + P(m + 1)) * (Q(m + 1) - Q(s + n + p))),
            ('c', n, m, -(one + P(p + 1)) * (Q(p + 1) - Q(s + n + m))),
        ]),
    )
    for table, i, j, coeff in cond():
        _add_term(terms, table, i, j, coeff)
    return terms


def _odd_row(slot, n, m, p, s, field):
    '''Rows of d2 for an odd 2-cochain of degree s.'''
    Q, P, one = field.qnum, field.q_power, field.one
    terms = []
    cond = util.cond(
        (slot == 'LLL', lambda: [
            ('a', n + m, p, -(one + P(p)) * (Q(m) - Q(n))),
            ('a', n + p, m, (one + P(m)) * (Q(p) - Q(n))),
            ('a', n, m + p, (one + P(n)) * (Q(p) - Q(m))),
            ('a', m, p, (one + P(n)) * (Q(m + p + s + 1) - Q(n))),
            ('a', n, p, -(one + P(m)) * (Q(p + n + s + 1) - Q(m))),
            ('a', n, m, (one + P(p)) * (Q(n + m + s + 1) - Q(p))),
        ]),
        (slot == 'LLG', lambda: [
            ('b', n + m, p, -(one + P(p + 1)) * (Q(m) - Q(n))),
            ('b', m, n + p, -(one + P(m)) * (Q(p + 1) - Q(n))),
            ('b', n, m + p, (one + P(n)) * (Q(p + 1) - Q(m))),
            ('b', m, p, (one + P(n)) * (Q(m + p + s) - Q(n))),
            ('b', n, p, -(one + P(m)) * (Q(n + p + s) - Q(m))),
        ]),
        (slot == 'LGG', lambda: [
            ('c', n + m, p, -(one + P(p + 1)) * (Q(m + 1) - Q(n))),
            ('c', n + p, m, -(one + P(m + 1)) * (Q(p + 1) - Q(n))),
            ('c', m, p, (one + P(n)) * (Q(m + p + s + 1) - Q(n))),
            ('b', n, p, -(one + P(m + 1)) * (Q(m + 1) - Q(n + p + s))),
            ('b', n, m, -(one + P(p + 1)) * (Q(p + 1) - Q(n + m + s))),
        ]),
        (slot == 'GGG', []),
    )
    for table, i, j, coeff in cond():
        _add_term(terms, table, i, j, coeff)
    return terms


def row_terms(parity, s, slot, n, m, p, field=SYMBOLIC):
    '''The coefficient of d2(f) at (slot, n, m, p) as [((table, i, j), coeff)].

    Terms on the same unknown are merged; zero coefficients are dropped.
    '''
    raw = (_odd_row if parity else _even_row)(slot, n, m, p, s, field)
    merged = {}
    order = []
    for key, coeff in raw:
        if key in merged:
            merged[key] = merged[key] + coeff
        else:
            merged[key] = coeff
            order.append(key)
    return [(key, merged[key]) for key in order if merged[key]]


def d2_target(parity, s, slot, n, m, p):
    '''The generator that d2(f)(slot triple) is a multiple of.'''
    total = sum(1 for kind in slot if kind != EVEN_KIND) + parity
    return generator(total, n + m + p + s)


def d2(f, window=None, field=SYMBOLIC, slots=SLOTS):
    '''Generic d2(f) on every canonical triple of the window.'''
    window = window or f.window
    values = {}
    for slot in slots:
        for n, m, p in triples(window, slot):
            x, y, z = slot_vectors(slot, n, m, p)
            target = d2_target(f.parity, f.s, slot, n, m, p)
            values[(slot, n, m, p)] = _coefficient(delta2(f, x, y, z, field), target, field)
    return Cochain3Defect(f.parity, f.s, window, values)


def specialized_d2(f, window=None, field=SYMBOLIC, slots=SLOTS):
    '''d2(f) evaluated through the hand-written coefficient rows.'''
    window = window or f.window
    values = {}
    for slot in slots:
        for n, m, p in triples(window, slot):
            value = field.zero
            for (table, i, j), coeff in row_terms(f.parity, f.s, slot, n, m, p, field):
                value = value + coeff * f.value(table, i, j, field)
            values[(slot, n, m, p)] = value
    return Cochain3Defect(f.parity, f.s, window, values)


def two_path_discrepancies(f, window=None, field=SYMBOLIC):
    '''[(slot triple, generic value, row value)] wherever the two d2 paths differ.'''
    generic = d2(f, window, field)
    rows = specialized_d2(f, window, field)
    keys = sorted(set(generic.values) | set(rows.values),
                  key=lambda key: (SLOTS.index(key[0]),) + key[1:])
    found = []
    for key in keys:
        left = generic.value(*key, field=field)
        right = rows.value(*key, field=field)
        if left != right:
            found.append((key, left, right))
    return found


def complex_defect(g, window=None, field=SYMBOLIC):
    '''d2(d1(g)) on every triple where all slots of d1(g) are defined.'''
    window = window or g.window
    return d2(d1(g, window, field), window, field)


def _twist_defect(g, x, field):
    '''(alpha g - g alpha)(x)'''
    return alpha(g.apply(x, field), field) - g.apply(x, field).scale(alpha_coefficient(x, field))


def complex_obstruction(g, x, y, z, field=SYMBOLIC):
    '''[[x, y], Dz] - (-1)^{|y||z|} [[x, z], Dy] + (-1)^{|x|(|y|+|z|)} [[y, z], Dx], D = alpha g - g alpha.

    On triples of even generators this is the closed form of d2(d1(g)).
    '''
    px, py, pz = x.parity, y.parity, z.parity
    return (bracket(bracket(x, y, field), _twist_defect(g, z, field), field)
            - bracket(bracket(x, z, field), _twist_defect(g, y, field), field).scale(sign(py * pz))
            + bracket(bracket(y, z, field), _twist_defect(g, x, field), field).scale(sign(px * (py + pz))))


def commutes_with_alpha(g, field=SYMBOLIC):
    '''True when alpha g = g alpha on every generator of the window.'''
    for n in g.window.indices():
        for x in (L(n), G(n)):
            if _twist_defect(g, x, field):
                return False
    return True


def bracket_cochain(window, field=SYMBOLIC):
    '''The bracket of W^q as an even 2-cochain of degree 0.'''
    values = {}
    for table, n, p in pair_columns(window):
        x, y = pair_vectors(table, n, p)
        values[(table, n, p)] = structure_constant(x, y, field)
    return Cochain2(0, 0, window, values)


def defect_records(defect):
    '''JSON-ready list of {slot, indices, value}; empty means identically zero.'''
    return [{'slot': key[0], 'indices': list(key[1:]), 'value': _render(value)}
            for key, value in defect.nonzero()]


def _render(value):
    '''Canonical text of a QRat, str() of a rational.'''
    return value.render() if hasattr(value, 'render') else str(value)
