from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlie_kit.errors import ShapeError
from nlie_kit.exact import (
    I,
    EchelonBasis,
    GaussianRational,
    Matrix,
    as_scalar,
    block_diag,
    commutator,
    format_scalar,
    gaussian,
    kernel_basis,
    kron,
    parse_scalar,
    rank,
    span_dimension,
    to_dense,
    to_sparse,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(gaussian, fractions, fractions)


def matrices(rows, cols, elements=fractions):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        Matrix.from_lists
    )


square3 = matrices(3, 3)


def test_i_squared():
    assert I * I == -1
    assert isinstance(I * I, Fraction)


def test_gaussian_collapses_to_fraction():
    assert gaussian(Fraction(3, 4), 0) == Fraction(3, 4)
    assert type(gaussian(Fraction(3, 4), 0)) is Fraction


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b != 0:
        assert (a / b) * b == a


@given(gaussians)
def test_scalar_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_format_is_p_over_q():
    assert format_scalar(Fraction(0)) == "0/1"
    assert format_scalar(Fraction(-3, 6)) == "-1/2"
    assert parse_scalar("7") == 7


@given(st.lists(fractions, min_size=1, max_size=8))
def test_sparse_dense_round_trip(v):
    assert to_dense(to_sparse(v), len(v)) == tuple(v)


@given(square3, square3, square3)
def test_matrix_product_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(square3, square3)
def test_transpose_reverses_products(a, b):
    assert (a @ b).T == b.T @ a.T


@given(square3, square3, square3)
def test_commutator_jacobi(a, b, c):
    total = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert total.is_zero()


@given(matrices(2, 2), matrices(2, 2), matrices(3, 3), matrices(3, 3))
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, c) @ kron(b, d) == kron(a @ b, c @ d)


@given(matrices(2, 2), matrices(3, 3))
def test_block_diag_trace(a, b):
    assert block_diag(a, b).trace() == a.trace() + b.trace()


@given(matrices(3, 5))
def test_rank_nullity(m):
    kernel = kernel_basis(m)
    assert rank(m) + len(kernel) == 5
    for v in kernel:
        assert not m.apply(to_sparse(v))


@given(matrices(4, 4, gaussians))
def test_rank_nullity_gaussian(m):
    kernel = kernel_basis(m)
    assert rank(m) + len(kernel) == 4
    for v in kernel:
        assert not m.apply(to_sparse(v))


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_membership(vectors):
    basis = EchelonBasis(4)
    for v in vectors:
        basis.add(to_sparse(v))
    assert len(basis) == span_dimension(vectors)
    for v in vectors:
        sparse = to_sparse(v)
        assert sparse in basis
        coords = basis.coordinates(sparse)
        rebuilt: dict = {}
        for k, c in coords.items():
            for col, x in basis.rows()[k].items():
                rebuilt[col] = rebuilt.get(col, 0) + c * x
        assert {k: x for k, x in rebuilt.items() if x} == sparse


def test_coordinates_outside_span():
    basis = EchelonBasis(2)
    basis.add({0: Fraction(1)})
    with pytest.raises(ValueError):
        basis.coordinates({1: Fraction(1)})


def test_span_dimension_length_mismatch():
    with pytest.raises(ShapeError):
        span_dimension([(1, 2), (1, 2, 3)])


def test_kernel_of_rank_one():
    m = Matrix.from_lists([[1, 2, 3], [2, 4, 6]])
    assert rank(m) == 1
    assert kernel_basis(m) == [
        (Fraction(-2), Fraction(1), Fraction(0)),
        (Fraction(-3), Fraction(0), Fraction(1)),
    ]


def test_scalar_value():
    assert Matrix.identity(3).scale(Fraction(5, 2)).scalar_value() == Fraction(5, 2)
    assert Matrix.from_lists([[1, 0], [0, 2]]).scalar_value() is None


def test_gaussian_hash_matches_fraction_when_real():
    z = GaussianRational(Fraction(1, 2), Fraction(1))
    assert z - I == Fraction(1, 2)
    assert hash(gaussian(Fraction(1, 2), 0)) == hash(Fraction(1, 2))
