from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arrtop.exactla import (
    ChainComplexError,
    FMatrixSparse,
    complex_dims,
    rank,
    rank_dense,
    rref,
    solve_affine,
)
from arrtop.fields import FieldSpec

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F7 = FieldSpec.prime(7)


def sparse_from_rows(rows, nrows=None, ncols=None):
    m = FMatrixSparse(nrows or len(rows), ncols or len(rows[0]))
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                m.entries[(i, j)] = v
    return m


def test_rank_examples():
    assert rank(sparse_from_rows([[1, 2], [2, 4]]), Q) == 1
    assert rank(sparse_from_rows([[1, 1], [1, 1]]), F2) == 1
    assert rank(sparse_from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), Q) == 3
    assert rank(FMatrixSparse(4, 5), Q) == 0


def test_rank_with_fractions():
    m = sparse_from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(2)]])
    assert rank(m, Q) == 2
    singular = sparse_from_rows([[Fraction(1, 2), Fraction(1, 3)],
                                 [Fraction(3, 2), Fraction(1)]])
    assert rank(singular, Q) == 1


small_matrices = st.lists(
    st.lists(st.integers(min_value=-6, max_value=6), min_size=1, max_size=5),
    min_size=1, max_size=5).filter(lambda rows: len({len(r) for r in rows}) == 1)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_equals_transpose_rank(rows):
    m = sparse_from_rows(rows)
    assert rank(m, Q) == rank(m.transpose(), Q)
    assert rank(m, F7) == rank(m.transpose(), F7)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_bareiss_agrees_with_rref(rows):
    # dual route: fraction-free elimination vs Fraction row reduction
    m = sparse_from_rows(rows)
    assert rank(m, Q) == rank_dense([[Fraction(x) for x in row] for row in rows])


@settings(max_examples=40, deadline=None)
@given(small_matrices, st.sampled_from([2, 3, 7, 101]))
def test_modular_rank_bounded_by_rational_rank(rows, p):
    m = sparse_from_rows(rows)
    assert rank(m, FieldSpec.prime(p)) <= rank(m, Q)


def test_solve_affine_inconsistent():
    assert solve_affine([((Fraction(1),), Fraction(0)),
                         ((Fraction(1),), Fraction(1))], 1) is None


def test_rref_pivots():
    _, pivots = rref([[Fraction(0), Fraction(1)], [Fraction(0), Fraction(2)]])
    assert pivots == [1]


def test_complex_dims_zero_boundaries():
    zero = FMatrixSparse(2, 2)
    out = complex_dims([zero], [2, 2], Q)
    assert out.homology == [2, 2]
    assert out.ranks == [0]


def test_complex_dims_circle():
    # two vertices, two edges, boundary of the circle model
    d1 = sparse_from_rows([[-1, 1], [1, -1]])
    out = complex_dims([d1], [2, 2], Q)
    assert out.homology == [1, 1]


def test_complex_dims_rejects_nonzero_composition():
    d2 = sparse_from_rows([[1], [0]])      # C_2 -> C_1
    d1 = sparse_from_rows([[1, 0]])        # C_1 -> C_0
    with pytest.raises(ChainComplexError):
        complex_dims([d1, d2], [1, 2, 1], Q)


def test_complex_dims_shape_mismatch():
    with pytest.raises(ValueError):
        complex_dims([FMatrixSparse(3, 2)], [2, 2], Q)


def test_complex_dims_euler_property():
    d1 = sparse_from_rows([[-1, 1, 0], [1, -1, 1], [0, 0, -1]])
    out = complex_dims([d1], [3, 3], Q)
    assert out.dims[0] - out.dims[1] == out.homology[0] - out.homology[1]
