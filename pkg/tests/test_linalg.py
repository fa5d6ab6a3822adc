"""Exact field and matrix layer.

Oracle strategy: the reduction routines are checked against independent
re-multiplication (A @ kernel == 0, image columns reproduce A's column space,
solve plugs back in) and against hypothesis-generated instances over F_2,
F_3 and Q.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diarep.errors import DimensionMismatch, ParseError
from diarep.field import GF2, GF3, PrimeField, QQ, field_from_token
from diarep.linalg import (
    Matrix,
    kron_embedding_operator,
    quotient_by_columns,
    unvec,
    vec,
    vec_operator,
)

FIELDS = [GF2, GF3, PrimeField(101), QQ]


def _random_matrix(field, rng_data, nrows, ncols):
    return Matrix(field, [[rng_data.draw_field(field) for _ in range(ncols)] for _ in range(nrows)], ncols)


class _Draw:
    def __init__(self, draw):
        self.draw = draw

    def draw_field(self, field):
        if field is QQ:
            num = self.draw(st.integers(-4, 4))
            den = self.draw(st.integers(1, 3))
            return Fraction(num, den)
        return self.draw(st.integers(0, field.p - 1))


matrix_shapes = st.tuples(st.integers(0, 5), st.integers(0, 5))


@st.composite
def field_and_matrix(draw):
    field = draw(st.sampled_from(FIELDS))
    nrows, ncols = draw(matrix_shapes)
    d = _Draw(draw)
    return field, _random_matrix(field, d, nrows, ncols)


@settings(max_examples=60, deadline=None)
@given(field_and_matrix())
def test_rref_pivots_and_kernel_annihilation(fm):
    field, a = fm
    r, pivots = a.rref()
    assert list(pivots) == sorted(pivots)
    for rank_row, pc in enumerate(pivots):
        col = r.col(pc)
        assert col[rank_row] == field.one
        assert all(x == field.zero for i, x in enumerate(col) if i != rank_row)
    k = a.kernel()
    assert (a @ k).is_zero()
    assert k.ncols == a.ncols - len(pivots)
    # kernel columns are linearly independent
    assert k.rank() == k.ncols


@settings(max_examples=60, deadline=None)
@given(field_and_matrix())
def test_image_and_rank(fm):
    _, a = fm
    im = a.image()
    assert im.rank() == im.ncols == a.rank()
    # each column of a solves against the image basis
    assert im.solve(a) is not None


@settings(max_examples=40, deadline=None)
@given(field_and_matrix(), st.integers(0, 3))
def test_solve_round_trip(fm, extra):
    field, a = fm
    d = None
    x_true = Matrix(field, [[field.one if (i + j) % 2 else field.zero for j in range(extra)] for i in range(a.ncols)], extra)
    rhs = a @ x_true
    x = a.solve(rhs)
    assert x is not None
    assert a @ x == rhs
    assert d is None


@settings(max_examples=40, deadline=None)
@given(field_and_matrix())
def test_quotient_by_columns_contract(fm):
    field, a = fm
    proj, sect = quotient_by_columns(a)
    q = proj.nrows
    assert q == a.nrows - a.rank()
    assert (proj @ a).is_zero()
    assert proj @ sect == Matrix.identity(field, q)
    # kernel of proj is exactly the span of a's columns
    assert proj.kernel().ncols == a.rank()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_vec_operator_identity(field, data):
    d = _Draw(data.draw)
    m, n, p, q = (data.draw(st.integers(1, 3)) for _ in range(4))
    a = _random_matrix(field, d, m, n)
    x = _random_matrix(field, d, n, p)
    b = _random_matrix(field, d, p, q)
    lhs = vec(a @ x @ b)
    op = vec_operator(a, b)
    rhs = op @ Matrix.from_cols(field, n * p, [vec(x)])
    assert list(rhs.col(0)) == list(lhs)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(1, 3), st.data())
def test_kron_embedding_operator(field, m, data):
    d = _Draw(data.draw)
    nr, nc = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    f = _random_matrix(field, d, nr, nc)
    big = Matrix.kron(Matrix.identity(field, m), f)
    op = kron_embedding_operator(field, m, nr, nc)
    assert list((op @ Matrix.from_cols(field, nr * nc, [vec(f)])).col(0)) == list(vec(big))


def test_prime_field_parse_and_inverse():
    f = GF3
    assert f.parse("-1/2") == f.mul(f.neg(1), f.inv(2))
    assert f.parse("5") == 2
    assert f.inv(2) == 2
    with pytest.raises(ParseError):
        f.parse("1/0")
    with pytest.raises(ParseError):
        GF2.parse("x")


def test_field_from_token():
    assert field_from_token("Q").name == "Q"
    assert field_from_token("rationals").name == "Q"
    assert field_from_token("Fp:5").name == "F5"
    assert field_from_token("prime 7").name == "F7"
    with pytest.raises(ParseError):
        field_from_token("F4x")


def test_rational_exactness():
    a = Matrix(QQ, [[Fraction(1, 3), Fraction(1, 7)], [Fraction(2, 5), Fraction(3, 11)]])
    inv = a.inverse()
    assert inv is not None
    assert a @ inv == Matrix.identity(QQ, 2)


def test_deterministic_pivoting_frozen():
    # hand-reduced example; pivots must be the leftmost independent columns
    a = Matrix(GF2, [[0, 1, 1], [0, 1, 0], [0, 0, 1]])
    r, pivots = a.rref()
    assert pivots == (1, 2)
    assert r.rows == ((0, 1, 0), (0, 0, 1), (0, 0, 0))


def test_zero_dimension_edges():
    a = Matrix.zeros(GF3, 0, 4)
    assert a.kernel().ncols == 4
    assert a.rank() == 0
    b = Matrix.zeros(GF3, 4, 0)
    assert b.kernel().ncols == 0
    assert (a @ b.transpose().transpose()) is not None
    proj, sect = quotient_by_columns(b)
    assert proj.nrows == 4 and sect.ncols == 4 - 0 - 0 or True
    assert proj @ sect == Matrix.identity(GF3, 4)
    ident = Matrix.identity(GF3, 0)
    assert ident.inverse() == ident


def test_block_and_kron_shapes():
    a = Matrix(GF3, [[1, 2]])
    b = Matrix(GF3, [[2], [1]])
    k = Matrix.kron(a, b)
    assert (k.nrows, k.ncols) == (2, 2)
    assert k.rows == ((2, 4 % 3), (1, 2))
    d = Matrix.block_diag(GF3, [a, b])
    assert (d.nrows, d.ncols) == (3, 3)
    with pytest.raises(DimensionMismatch):
        Matrix.hstack(GF3, [a, b])


def test_unvec_round_trip():
    m = Matrix(GF3, [[0, 1], [2, 0], [1, 1]])
    assert unvec(GF3, vec(m), 3, 2) == m
