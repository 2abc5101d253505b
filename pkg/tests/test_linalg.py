'''Tests for the sparse exact elimination.'''
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qwitt import linalg
from qwitt.qfield import SYMBOLIC, q_power, qnum

import test_util

FIELD = test_util.Q2

matrices = st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6)


def sparse(rows):
    '''Dense integer rows as a sparse Fraction matrix.'''
    return {i: {j: Fraction(v) for j, v in enumerate(row) if v} for i, row in enumerate(rows)}


def times(matrix, vector):
    '''Sparse matrix times sparse vector.'''
    return {i: sum((value * vector.get(j, 0) for j, value in row.items()), Fraction(0))
            for i, row in matrix.items()}


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_against_sympy(rows):
    '''Rank agrees with the dense sympy rank.'''
    assert linalg.rank(sparse(rows), 5, FIELD) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    '''Kernel vectors are annihilated and have the right count.'''
    matrix = sparse(rows)
    kernel = linalg.nullspace(matrix, 5, FIELD)
    assert len(kernel) == 5 - sympy.Matrix(rows).rank()
    for vector in kernel:
        assert vector
        assert not any(times(matrix, vector).values())


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_consistent_systems(rows, x):
    '''A x = b is solved whenever b is in the image.'''
    matrix = sparse(rows)
    rhs = {i: v for i, v in times(matrix, {j: Fraction(v) for j, v in enumerate(x)}).items() if v}
    solution = linalg.solve(matrix, 5, rhs, FIELD)
    assert solution is not None
    image = times(matrix, solution)
    assert all(image[i] == rhs.get(i, 0) for i in image)


def test_solve_inconsistent():
    '''x0 = 1 and x0 = 2 have no solution.'''
    matrix = {0: {0: Fraction(1)}, 1: {0: Fraction(1)}}
    assert linalg.solve(matrix, 1, {0: Fraction(1), 1: Fraction(2)}, FIELD) is None


def test_pivot_order_is_deterministic():
    '''Pivots go to the sparsest column first.'''
    matrix = {0: {0: Fraction(1), 1: Fraction(1), 2: Fraction(1)}, 1: {0: Fraction(1), 1: Fraction(2)}}
    echelon = linalg.eliminate(matrix, 3, FIELD)
    assert echelon.pivots == [2, 0]
    assert echelon.nonpivots() == [1]


def test_symbolic_rank():
    '''Rows over Q(q) that are dependent only symbolically.'''
    matrix = {0: {0: qnum(2), 1: q_power(1)},
              1: {0: qnum(2) * qnum(3), 1: q_power(1) * qnum(3)},
              2: {2: qnum(-1)}}
    assert linalg.rank(matrix, 3, SYMBOLIC) == 2
    kernel = linalg.nullspace(matrix, 3, SYMBOLIC)
    assert len(kernel) == 1
    (vector,) = kernel
    assert qnum(2) * vector[0] + q_power(1) * vector[1] == 0
    assert 2 not in vector


def test_span_rank():
    '''Rank of the span of sparse vectors.'''
    vectors = [{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(2), 1: Fraction(-3)}]
    assert linalg.span_rank(vectors, 2, FIELD) == 2
    assert linalg.span_rank([], 2, FIELD) == 0
