import random

import pytest

from conftest import P
from waring.detperm import det_poly
from waring.flatten import (
    catalecticant_rank,
    essential_variables,
    flattening_lower_bound,
    koszul_lower_bound,
    span_dim,
)
from waring.poly import LinearForm, Poly, linear, parse_poly, power_of_linear
from waring.scalar import QQ


@pytest.mark.parametrize("d", [2, 3, 5])
def test_power_has_rank_one(d):
    f = power_of_linear(linear([1, 2, -1]), d)
    assert all(catalecticant_rank(f, s) == 1 for s in range(1, d))


def test_det3_first_flattening():
    assert catalecticant_rank(det_poly(3), 1) == 9


def test_span_dims():
    assert span_dim(parse_poly("x0^3 + x1^3", nvars=3)) == 2
    assert span_dim(P("x^2*u + y^2*v + x*y*z")) == 5
    assert span_dim(P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")) == 1


def test_flattening_bounds():
    fb = flattening_lower_bound(P("x*y*z*w"))
    assert (fb.value, fb.s) == (6, 2)
    fb = flattening_lower_bound(P("x^2*y*z"))
    assert (fb.value, fb.s) == (4, 2)
    assert flattening_lower_bound(P("x*y")).value == 2


def test_essential_variables_reduce():
    f = power_of_linear(linear([1, 1, 0]), 3) + power_of_linear(linear([1, -1, 0]), 3)
    red = essential_variables(f)
    assert red.essential == 2
    assert red.reduced.nvars == 2


@pytest.mark.parametrize(
    "text,value",
    [
        ("x*y*z", 4),
        ("x1*y1*z1 + x2*y2*z2", 8),
        ("x^2*u + y^2*v + x*y*z", 5),
        ("x*y*z*w", 7),
    ],
)
def test_koszul_values(text, value):
    assert koszul_lower_bound(P(text)).value == value


def test_koszul_never_exceeds_rank():
    rng = random.Random(7)
    for n, r in ((4, 3), (4, 5), (5, 4), (5, 6)):
        for _ in range(3):
            f = Poly.zero(n, 3, QQ)
            for _ in range(r):
                f = f + power_of_linear(LinearForm(tuple(QQ(rng.randint(-3, 3)) for _ in range(n)), QQ), 3)
            kb = koszul_lower_bound(f)
            if kb is not None:
                assert kb.value <= r
