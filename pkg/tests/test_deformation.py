'''Tests for truncated deformations and their trivialization.'''
import pytest

from qwitt import deformation
from qwitt.algebra import G, L, Element
from qwitt.cochains import Cochain1, Window
from qwitt.coboundary import d1
from qwitt.deformation import (CochainSum, LinearTable, TruncatedAutomorphism,
                               TruncatedDeformation)
from qwitt.qfield import qnum

import test_util

WINDOW = Window(4, 1)


def coboundary_deformation(order=1, seed=1):
    '''[.,.]_1 = d1(g) for an even degree-zero g, higher orders zero.'''
    g = test_util.random_g(0, 0, 4, core=1, seed=seed)
    brackets = [CochainSum(WINDOW, [d1(g, WINDOW)])]
    brackets += [CochainSum(WINDOW) for _ in range(order - 1)]
    return TruncatedDeformation(WINDOW, brackets)


def test_order_one_sign():
    '''Only GGG triples pick up a sign.'''
    assert [deformation.order_one_sign(slot) for slot in ('LLL', 'LLG', 'LGG', 'GGG')] == [1, 1, 1, -1]


def test_trivial_deformation():
    '''Zero higher brackets satisfy every deformation equation.'''
    trivial = TruncatedDeformation.trivial(Window(3), 2)
    assert trivial.order == 2
    assert deformation.first_order_cocycle_check(trivial) == (True, None)
    assert not deformation.deformation_defect(trivial, 2, L(1), G(0), G(-1))


def test_order_zero_defect_is_jacobi():
    '''At order zero the defect is the Hom-Jacobi sum.'''
    trivial = TruncatedDeformation.trivial(Window(3), 1)
    assert not deformation.deformation_defect(trivial, 0, L(-1), L(2), G(0))
    with pytest.raises(ValueError):
        deformation.deformation_defect(trivial, 2, L(0), L(1), L(2))


def test_coboundary_is_first_order_cocycle():
    '''d1(g) of an even degree-zero g passes the order-1 check.'''
    cocycle, witness = deformation.first_order_cocycle_check(coboundary_deformation())
    assert cocycle and witness is None


def test_random_bracket_fails_with_witness():
    '''A random order-1 bracket is caught, and the defect is the signed d2.'''
    f = test_util.random_f(0, 0, 3, seed=6)
    deformed = TruncatedDeformation(Window(3), [CochainSum(Window(3), [f])])
    cocycle, witness = deformation.first_order_cocycle_check(deformed)
    assert not cocycle
    (slot, n, m, p), defect = witness
    assert defect
    found, expected = deformation.defect_on_slot(deformed, slot, n, m, p)
    assert found == expected == defect


def test_defect_sign_on_ggg():
    '''On GGG triples the defect is minus d2.'''
    f = test_util.random_f(0, 0, 3, seed=8)
    deformed = TruncatedDeformation(Window(3), [CochainSum(Window(3), [f])])
    found, expected = deformation.defect_on_slot(deformed, 'GGG', -1, 0, 1)
    assert found == expected


def test_trivialize_coboundary():
    '''phi_1 = g removes [.,.]_1 = d1(g) on the core.'''
    result = deformation.trivialize_first_order(coboundary_deformation())
    assert result.cocycle
    assert result.residual_order_one == []
    assert result.residual_order_two is None
    record = result.to_dict()
    assert record['trivializable'] is True
    assert record['alpha_commutes'] is True
    assert record['components'][0]['s'] == 0
    (phi_1,) = result.automorphism.cochains
    assert [(g.parity, g.s) for g in phi_1] == [(0, 0)]


def test_trivialize_second_order():
    '''Order-2 deformations report what phi_1 leaves at order two.'''
    result = deformation.trivialize_first_order(coboundary_deformation(order=2))
    assert result.residual_order_one == []
    assert isinstance(result.residual_order_two, list)
    assert [len(maps) for maps in result.automorphism.cochains] == [1, 0]
    assert result.automorphism.maps[1].is_zero()


def test_trivialize_rejects_non_coboundary():
    '''A random bracket with (G, G) values is no coboundary on the core.'''
    f = test_util.random_f(0, 0, 4, core=1, seed=2)
    deformed = TruncatedDeformation(WINDOW, [CochainSum(WINDOW, [f])])
    with pytest.raises(deformation.NotCoboundaryOnCore):
        deformation.trivialize_first_order(deformed)


def test_identity_equivalence():
    '''The identity automorphism changes nothing.'''
    deformed = coboundary_deformation(seed=3)
    transformed = deformation.apply_equivalence(
        deformed, TruncatedAutomorphism.identity(WINDOW, 1))
    assert deformation.agree_on_core(deformed, transformed)
    assert transformed.alpha_commutes


def test_truncated_inverse():
    '''psi_1 = -phi_1 and psi_2 = phi_1 phi_1 when phi_2 = 0.'''
    g = Cochain1(0, 0, WINDOW, {1: qnum(2)})
    phi = TruncatedAutomorphism(WINDOW, [[g], LinearTable.zero(WINDOW)])
    psi = phi.inverse()
    assert psi.phi(1, L(1)) == Element({L(1): -qnum(2)})
    assert psi.phi(2, L(1)) == Element({L(1): qnum(2) * qnum(2)})
    assert psi.phi(2, G(0)) == Element()
    assert phi.commutes_with_alpha()


def test_odd_brackets_are_rejected():
    '''Deformation brackets are even maps.'''
    with pytest.raises(ValueError):
        CochainSum(WINDOW, [test_util.random_f(1, 0, 4, core=1)])
