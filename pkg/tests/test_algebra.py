'''Tests for the bracket, the twisting map and the sigma-derivation.'''
import itertools

import pytest

from qwitt import algebra
from qwitt.algebra import G, L, AElement, Element, alpha, bracket, parse_element
from qwitt.qfield import ONE, SYMBOLIC, parse, q_power, qnum

import test_util


def small_basis(N):
    '''Every generator of degree at most N.'''
    return [algebra.generator(parity, n) for n in range(-N, N + 1) for parity in (0, 1)]


def test_structure_constants():
    '''The four bracket families.'''
    assert bracket(L(1), L(2)) == Element({L(3): q_power(1)})
    assert bracket(L(0), G(2)) == Element({G(2): qnum(3)})
    assert bracket(G(2), L(0)) == Element({G(2): -qnum(3)})
    assert not bracket(G(1), G(-3))


def test_bracket_of_elements():
    '''The bracket is bilinear.'''
    x = Element({L(1): ONE, G(0): qnum(2)})
    y = Element({L(-1): q_power(1)})
    expected = (bracket(L(1), L(-1)).scale(q_power(1))
                + bracket(G(0), L(-1)).scale(qnum(2) * q_power(1)))
    assert bracket(x, y) == expected


def test_alpha():
    '''alpha(L[n]) = (1 + q^n) L[n], alpha(G[n]) = (1 + q^(n+1)) G[n].'''
    assert algebra.alpha_coefficient(L(0)) == parse('2')
    assert algebra.alpha_coefficient(G(1)) == ONE + q_power(2)
    assert alpha(Element({L(2): ONE, G(-1): ONE})) == Element({L(2): ONE + q_power(2),
                                                             G(-1): parse('2')})


def test_supersymmetry():
    '''[x, y] = -(-1)^{|x||y|} [y, x] on a small window.'''
    vectors = small_basis(2)
    for x, y in itertools.product(vectors, repeat=2):
        assert not algebra.supersymmetry_defect(x, y)


def test_hom_jacobi_symbolic():
    '''The twisted super Jacobi identity holds exactly.'''
    vectors = small_basis(2)
    for x, y, z in itertools.product(vectors, repeat=3):
        assert not algebra.jacobi_defect(x, y, z), (x, y, z)


def test_hom_jacobi_sampled():
    '''The same identity at q = 2 on a larger window.'''
    vectors = small_basis(3)
    for x, y, z in itertools.product(vectors, repeat=3):
        assert not algebra.jacobi_defect(x, y, z, test_util.Q2)


def test_sigma_derivation():
    '''Delta(ab) = Delta(a) b + sigma(a) Delta(b) on monomials.'''
    monomials = [AElement.monomial(n, odd) for n in range(-3, 4) for odd in (False, True)]
    for a, b in itertools.product(monomials, repeat=2):
        assert algebra.sigma_derivation_defect('delta', a, b) == 0


def test_theta_squares_to_zero():
    '''theta t^n * theta t^m = 0.'''
    theta = AElement.monomial(1, odd=True)
    assert not theta * theta


def test_element_rendering():
    '''parse_element reads back the rendering.'''
    element = Element({L(-2): qnum(3), G(4): -q_power(-1)})
    assert element.render() == '(1 + q + q^2)/1 * L[-2] + (-q^-1)/1 * G[4]'
    assert parse_element(element.render()) == element
    assert parse_element('0') == Element()
    with pytest.raises(ValueError):
        parse_element('2 * X[1]')


def test_parity():
    '''Parities of vectors and homogeneous elements.'''
    assert algebra.parity(G(3)) == 1
    assert algebra.parity(Element({L(1): ONE, L(2): ONE})) == 0
    with pytest.raises(ValueError):
        algebra.parity(Element({L(1): ONE, G(2): ONE}))


def test_fields_agree():
    '''Sampled structure constants are the evaluated symbolic ones.'''
    for x, y in itertools.product(small_basis(2), repeat=2):
        symbolic = algebra.structure_constant(x, y, SYMBOLIC)
        assert test_util.Q2.coerce(symbolic) == algebra.structure_constant(x, y, test_util.Q2)
