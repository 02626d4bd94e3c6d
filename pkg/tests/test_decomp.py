from fractions import Fraction

import pytest

from conftest import P
from waring.decomp import (
    Decomposition,
    Term,
    format_decomposition,
    parse_decomposition,
    product_decomposition,
    verify,
)
from waring.errors import ParseError, PreconditionError
from waring.poly import LinearForm, Poly
from waring.scalar import QQ


def xyz_identity(bump=Fraction(0)):
    k = Fraction(1, 24)
    rows = [(k + bump, (1, 1, 1)), (k, (1, -1, -1)), (-k, (1, -1, 1)), (-k, (1, 1, -1))]
    return Decomposition([Term(c, LinearForm(f, QQ), 3) for c, f in rows], 3, 3, QQ)


def test_xyz_identity():
    assert verify(xyz_identity(), P("x*y*z")).kind == "exact"


def test_perturbed_identity_names_a_monomial():
    v = verify(xyz_identity(Fraction(1, 1000)), P("x*y*z"))
    assert v.kind == "mismatch"
    assert v.witness is not None and sum(v.witness) == 3


def test_degree_mismatch():
    assert verify(xyz_identity(), P("x*y")).kind == "mismatch"


@pytest.mark.parametrize("n", [2, 4, 6])
def test_products(n):
    dec = product_decomposition(n)
    assert len(dec) == 2 ** (n - 1)
    target = Poly(n, n, {(1,) * n: 1})
    assert verify(dec, target).kind == "exact"


def test_two_variable_product():
    dec = product_decomposition(2)
    assert sorted((t.coeff, t.form.coeffs) for t in dec.terms) == [
        (Fraction(-1, 4), (1, -1)),
        (Fraction(1, 4), (1, 1)),
    ]


def test_text_round_trip():
    dec = xyz_identity()
    again = parse_decomposition(format_decomposition(dec), 3, 3)
    assert verify(again, P("x*y*z")).kind == "exact"


def test_text_with_floats_is_approximate():
    text = "0.5 | 1, 1\n-0.5 | 1, -1\n"
    dec = parse_decomposition(text, 2, 2)
    assert not dec.field.exact
    assert verify(dec, P("2*x*y")).kind == "approx"


def test_bad_text():
    with pytest.raises(ParseError):
        parse_decomposition("1 | 1, x\n", 3, 2)


def test_term_degree_checked():
    with pytest.raises(PreconditionError):
        Decomposition([Term(1, LinearForm((1, 0), QQ), 2)], 2, 3, QQ)
