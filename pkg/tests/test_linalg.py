from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_rank, matrices, small_fractions
from xalg.errors import ShapeError
from xalg.linalg import (BilinearMap, Matrix, Subspace, identity, image_basis, inverse, kernel_basis,
                         mat_mul, rank, solve, subspace_contains, vec)


def naive_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def test_identity_product():
    m = Matrix.from_rows([[1, 2], [0, 1]])
    assert mat_mul(identity(2), m) == m
    assert mat_mul(m, identity(2)) == m


def test_rational_product():
    assert (Matrix.from_rows([[Fraction(1, 2)]]) @ Matrix.from_rows([[Fraction(2, 3)]])).tolist() == [[Fraction(1, 3)]]


def test_product_shape_mismatch():
    with pytest.raises(ShapeError):
        Matrix.zeros(2, 3) @ Matrix.zeros(2, 3)


@given(matrices(3, 3, 1, 1), st.data())
def test_product_matches_naive(shape, data):
    r, c, rows = shape
    k = data.draw(st.integers(1, 3))
    other = data.draw(st.lists(st.lists(small_fractions, min_size=k, max_size=k), min_size=c, max_size=c))
    assert (Matrix.from_rows(rows, c) @ Matrix.from_rows(other, k)).tolist() == naive_mul(rows, other)


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(2, 2)) == Subspace.full(2)
    assert kernel_basis(identity(2)).dim == 0
    k = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert k == Subspace.span([[1, -1]], 2)


@given(matrices(4, 4))
def test_kernel_is_kernel_of_right_dimension(shape):
    r, c, rows = shape
    m = Matrix(r, c, tuple(tuple(x) for x in rows))
    k = kernel_basis(m)
    assert all(not any(m.apply(v)) for v in k.basis)
    assert k.dim == c - brute_rank(rows, c)
    assert rank(m) == brute_rank(rows, c)
    assert image_basis(m).dim == rank(m)


def test_solve_examples():
    assert solve(identity(2), [3, 4]) == vec([3, 4])
    x = solve(Matrix.from_rows([[1, 1]]), [0])
    assert Matrix.from_rows([[1, 1]]).apply(x) == vec([0])
    assert solve(Matrix.from_rows([[0]]), [1]) is None


@given(matrices(3, 3, 1, 1), st.data())
def test_solve_is_exact_or_inconsistent(shape, data):
    r, c, rows = shape
    m = Matrix.from_rows(rows, c)
    rhs = data.draw(st.lists(small_fractions, min_size=r, max_size=r))
    x = solve(m, rhs)
    if x is None:
        aug = [row + [b] for row, b in zip(rows, rhs)]
        assert brute_rank(aug, c + 1) > brute_rank(rows, c)
    else:
        assert m.apply(x) == vec(rhs)


def test_inverse_roundtrip():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert m @ inverse(m) == identity(2)


def test_contains_examples():
    s = Subspace.span([[1, -1]], 2)
    assert subspace_contains(s, [0, 0])
    assert subspace_contains(Subspace.full(3), [5, -1, 2])
    assert not subspace_contains(s, [1, 1])


@given(st.lists(st.lists(small_fractions, min_size=3, max_size=3), max_size=4),
       st.lists(small_fractions, min_size=4, max_size=4))
def test_span_contains_combinations(vectors, coeffs):
    s = Subspace.span(vectors, 3)
    combo = [sum((c * v[i] for c, v in zip(coeffs, vectors)), Fraction(0)) for i in range(3)]
    assert subspace_contains(s, combo)
    assert s.dim == brute_rank(vectors, 3)


AFF1 = BilinearMap.from_table(2, 2, 2, {(0, 1): {1: 1}, (1, 0): {1: -1}})


def test_bilinear_examples():
    assert AFF1(vec([0, 0]), vec([1, 2])) == vec([0, 0])
    assert BilinearMap.zeros(2, 2, 2)(vec([1, 2]), vec([3, 4])) == vec([0, 0])
    assert AFF1(vec([1, 0]), vec([0, 1])) == vec([0, 1])


tensors = st.lists(st.lists(st.lists(small_fractions, min_size=2, max_size=2), min_size=2, max_size=2),
                   min_size=2, max_size=2)
vectors2 = st.lists(small_fractions, min_size=2, max_size=2).map(vec)


@given(tensors, vectors2, vectors2, vectors2, small_fractions)
def test_bilinearity(t, u, u2, v, c):
    f = BilinearMap.from_nested(t, 2, 2, 2)
    lhs = f(tuple(a + c * b for a, b in zip(u, u2)), v)
    rhs = tuple(a + c * b for a, b in zip(f(u, v), f(u2, v)))
    assert lhs == rhs
    assert f.swapped()(v, u) == f(u, v)
    brute = tuple(sum((t[k][i][j] * u[i] * v[j] for i in range(2) for j in range(2)), Fraction(0))
                  for k in range(2))
    assert f(u, v) == brute


def test_bilinear_shape_errors():
    with pytest.raises(ShapeError):
        AFF1(vec([1]), vec([1, 0]))
