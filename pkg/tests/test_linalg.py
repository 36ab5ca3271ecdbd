"""Exact linear algebra: row reduction, subspace lattice, power matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kring import Matrix, Subspace, rref, span, vandermonde_det, vandermonde_matrix
from kring.errors import DomainError, StructureError

F = Fraction


def test_rref_identity_is_fixed():
    ident = Matrix.identity(3)
    assert rref(ident) == ident


def test_rref_rank_one_dependency():
    m = Matrix([[1, 1], [2, 2]])
    assert rref(m) == Matrix([[1, 1], [0, 0]])
    assert m.rank() == 1


def test_rref_small_power_matrix_full_rank():
    # nodes 0, 1, 2 against exponents 0, 1, 2, with 0**0 = 1
    m = Matrix([[F(a) ** k for k in range(3)] for a in range(3)])
    assert m.rank() == 3
    # product-formula oracle for the determinant
    nodes = [0, 1, 2]
    oracle = F(1)
    for i in range(3):
        for j in range(i + 1, 3):
            oracle *= nodes[j] - nodes[i]
    assert m.det() == oracle == 2


rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


@st.composite
def small_matrices(draw):
    nrows = draw(st.integers(1, 4))
    ncols = draw(st.integers(1, 4))
    rows = draw(
        st.lists(
            st.lists(rationals, min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        )
    )
    return Matrix(rows)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rref_is_idempotent(m):
    reduced = rref(m)
    assert rref(reduced) == reduced


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_kernel_vectors_annihilate(m):
    for v in m.kernel():
        assert m.mat_vec(v) == (F(0),) * m.nrows
    assert m.rank() + len(m.kernel()) == m.ncols


def test_matrix_inverse_roundtrip():
    m = Matrix([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    assert m * m.inverse() == Matrix.identity(3)
    with pytest.raises(StructureError):
        Matrix([[1, 1], [1, 1]]).inverse()


def test_solve_unique_system():
    m = Matrix([[2, 0], [1, 1]])
    assert m.solve([4, 3]) == (F(2), F(1))


def test_span_empty_is_zero():
    s = span(3, [])
    assert s.dim == 0
    assert s == Subspace.zero(3)


def test_sum_of_coordinate_lines():
    e1 = [1, 0, 0]
    e2 = [0, 1, 0]
    s = span(3, [e1]) + span(3, [e2])
    assert s.dim == 2


def test_intersection_hand_oracle():
    # span{e1+e2, e3} meets span{e1+e2, e1} exactly in span{e1+e2}
    a = span(3, [[1, 1, 0], [0, 0, 1]])
    b = span(3, [[1, 1, 0], [1, 0, 0]])
    meet = a.intersect(b)
    assert meet == span(3, [[1, 1, 0]])


@st.composite
def subspace_pairs(draw):
    dim = draw(st.integers(1, 4))
    vecs = st.lists(
        st.lists(rationals, min_size=dim, max_size=dim), min_size=0, max_size=3
    )
    return span(dim, draw(vecs)), span(dim, draw(vecs))


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_dimension_formula(pair):
    a, b = pair
    assert a.dim + b.dim == (a + b).dim + a.intersect(b).dim


@settings(max_examples=60, deadline=None)
@given(subspace_pairs(), st.lists(rationals, min_size=4, max_size=4))
def test_contains_agrees_with_span_growth(pair, vec):
    a, _ = pair
    v = vec[: a.ambient_dim]
    grown = a + span(a.ambient_dim, [v])
    assert a.contains(v) == (grown.dim == a.dim)


def test_subspace_canonical_equality():
    # two generating sets of the same plane give identical representations
    a = span(3, [[1, 1, 0], [0, 1, 1]])
    b = span(3, [[1, 2, 1], [2, 3, 1]])
    assert a == b
    assert a.basis == b.basis


def test_intersection_mismatched_ambient_raises():
    with pytest.raises(StructureError):
        span(2, [[1, 0]]).intersect(span(3, [[1, 0, 0]]))


def _vandermonde_product_oracle(g: int) -> Fraction:
    nodes = list(range(2 * g + 1))
    out = F(1)
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            out *= nodes[j] - nodes[i]
    return out


def test_vandermonde_det_known_values():
    assert vandermonde_det(1) == 2
    assert vandermonde_det(2) == 288


@pytest.mark.parametrize("g", range(1, 7))
def test_vandermonde_det_nonzero_and_matches_product(g):
    det = vandermonde_det(g)
    assert det != 0
    assert det == _vandermonde_product_oracle(g)


def test_vandermonde_zero_power_convention():
    # first row is (0^0, 0^1, ...) = (1, 0, 0, ...)
    m = vandermonde_matrix(1)
    assert m.rows[0] == (F(1), F(0), F(0))


def test_vandermonde_requires_positive_g():
    with pytest.raises(DomainError):
        vandermonde_det(0)
