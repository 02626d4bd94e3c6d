from fractions import Fraction

import pytest

from conftest import P
from waring.errors import ParseError, PreconditionError
from waring.flatten import catalecticant_rank
from waring.poly import (
    LinearForm,
    Poly,
    contract,
    format_poly,
    linear,
    linear_change,
    monomials,
    parse_poly,
    poly_from_json,
    poly_to_json,
    power_of_linear,
    square_free,
    substitute,
)
from waring.scalar import QQ, QQI


def test_products():
    x, y = Poly.variable(0, 2), Poly.variable(1, 2)
    assert x * y == parse_poly("x0*x1")
    assert (x + y) * (x - y) == parse_poly("x0^2 - x1^2")


def test_trinomial_cube():
    f = power_of_linear(linear([1, 1, 1]), 3)
    assert len(f) == 10
    assert sum(c for _, c in f.items()) == 27
    assert f.evaluate([1, 1, 1]) == 27


def test_power_of_linear():
    assert power_of_linear(linear([1, 0]), 4) == parse_poly("x0^4", nvars=2)
    assert power_of_linear(linear([1, 1]), 2) == parse_poly("x0^2 + 2*x0*x1 + x1^2")
    assert power_of_linear(linear([1, 1, 1, 1]), 4).evaluate([1, 1, 1, 1]) == 256


def test_contraction():
    f = parse_poly("x0^5", nvars=2)
    assert contract(parse_poly("x0", nvars=2), f) == parse_poly("5*x0^4", nvars=2)
    g = parse_poly("x0^3*x1")
    assert contract(parse_poly("x1", nvars=2), g) == parse_poly("x0^3", nvars=2)
    h = parse_poly("x0*x1*x2")
    assert contract(h, h).terms == {(0, 0, 0): 1}


def test_substitute_examples():
    xy = P("x*y")
    x = LinearForm((1, 0), QQ)
    assert substitute(xy, [x, x]).terms == {(2, 0): 1}
    f = P("x^2*y*z")
    ims = [LinearForm((1, 0), QQ), LinearForm((0, 1), QQ), LinearForm((0, 1), QQ)]
    assert substitute(f, ims).terms == {(2, 2): 1}


def test_substitute_keeps_flattening_rank():
    f = parse_poly("x0^3 + x1^3 + x2^3")
    m = [[1, 2, 0], [0, 1, 3], [1, 0, 1]]
    assert catalecticant_rank(linear_change(f, m), 1) == catalecticant_rank(f, 1) == 3


def test_square_free():
    assert square_free(P("x^2*y + x*y^2"))
    assert not square_free(P("x^2*y"))
    assert square_free(P("x^5 - y^5"))


def test_parse_errors():
    with pytest.raises(ParseError, match="degrees"):
        parse_poly("x0^2 + x1")
    with pytest.raises(ParseError):
        parse_poly("x0^2 + y")
    with pytest.raises(ParseError):
        parse_poly("x0 +")
    with pytest.raises(ParseError):
        parse_poly("z^2", names=["x", "y"])


def test_parse_examples():
    f = parse_poly("x0^2*x1 - x2^3")
    assert (f.nvars, f.degree) == (3, 3)
    g = parse_poly("1/24*x0*x1*x2")
    assert g.coefficient((1, 1, 1)) == Fraction(1, 24)
    assert parse_poly("i*x0^2").field is QQI


def test_round_trip_text_and_json():
    for text in ("x0^2*x1 - 3/7*x2^3 + x0*x1*x2", "(1/2+i)*x0*x1 - x1^2"):
        f = parse_poly(text)
        assert parse_poly(format_poly(f), nvars=f.nvars) == f
        assert poly_from_json(poly_to_json(f)) == f


def test_homogeneity_enforced():
    with pytest.raises(PreconditionError):
        Poly(2, 2, {(1, 0): 1})


def test_monomial_order_is_graded_lex():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
