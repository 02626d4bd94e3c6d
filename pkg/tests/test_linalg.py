from fractions import Fraction

import pytest

from conftest import P
from waring.flatten import catalecticant
from waring.linalg import (
    DependentColumns,
    Matrix,
    QQt,
    RatFun,
    kernel,
    limit_column_space,
    rank,
    rref,
    solve,
)

STANLEY = (
    "x1*x11^3 + x2*x11^2*x12 + x3*x11^2*x13 + x4*x11*x12^2 + x5*x11*x12*x13"
    " + x6*x11*x13^2 + x7*x12^3 + x8*x12^2*x13 + x9*x12*x13^2 + x10*x13^3"
)


def stanley():
    return P(STANLEY, [f"x{i}" for i in range(1, 14)])


def test_identity_rank():
    eye = Matrix([[int(i == j) for j in range(5)] for i in range(5)])
    assert rank(eye) == 5
    red, piv = rref(eye)
    assert piv == [0, 1, 2, 3, 4]


def test_stanley_ranks():
    f = stanley()
    assert rank(catalecticant(f, 1).matrix) == 13
    assert rank(catalecticant(f, 2).matrix) == 12


def test_triangle_sum_first_flattening():
    f = P("x1*y1*z1 + x2*y2*z2")
    assert rank(catalecticant(f, 1).matrix) == 6


def test_kernels():
    # x^2 y^2: the 3 x 3 middle catalecticant is invertible
    m = catalecticant(P("x^2*y^2"), 2).matrix
    assert (m.nrows, m.ncols) == (3, 3)
    assert rank(m) == 3 and kernel(m) == []
    assert len(kernel(Matrix([[0] * 4 for _ in range(3)]))) == 4
    m = catalecticant(P("x^3*y"), 1).matrix
    assert rank(m) == 2
    k = kernel(m.transpose())
    assert k == []


def test_kernel_vectors_annihilate():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    for v in kernel(m):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.rows)
    assert len(kernel(m)) == 1


def test_solve():
    m = Matrix([[2, 1], [1, 3]])
    assert solve(m, [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve(Matrix([[1, 1], [1, 1]]), [1, 2]) is None


def test_ratfun_arithmetic():
    t = RatFun.t()
    f = (t + 1) / (t - 1)
    assert f * (t - 1) == t + 1
    assert RatFun.t(3).valuation() == 3
    assert (t / t) == QQt.one


def test_limit_examples():
    t = RatFun.t()
    one, zero = QQt.one, QQt.zero
    lim = limit_column_space(Matrix.from_columns([[one, zero], [one, t]], field=QQt))
    assert rank(Matrix.from_columns(lim.basis)) == 2
    lim = limit_column_space(Matrix.from_columns([[one, t], [one, t * t]], field=QQt))
    assert rank(Matrix.from_columns(lim.basis)) == 2
    assert lim.vanishing_order == 1


def test_limit_of_power_curve():
    # columns of x^3 and (x + t y)^3 tend to the span of x^3 and x^2 y
    t = RatFun.t()
    cols = [[QQt(1), QQt(0), QQt(0), QQt(0)], [QQt(1), 3 * t, 3 * t * t, t * t * t]]
    lim = limit_column_space(Matrix.from_columns(cols, field=QQt))
    span = Matrix.from_columns(lim.basis)
    assert rank(span) == 2
    assert rank(Matrix.from_columns(lim.basis + [[1, 0, 0, 0], [0, 1, 0, 0]])) == 2


def test_dependent_columns_refused():
    t = RatFun.t()
    with pytest.raises(DependentColumns):
        limit_column_space(Matrix.from_columns([[QQt(1), t], [2 * QQt(1), 2 * t]], field=QQt))
