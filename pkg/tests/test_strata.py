import itertools

import pytest

from conftest import P
from waring.detperm import det_poly, perm_poly
from waring.errors import PreconditionError
from waring.poly import Poly
from waring.strata import (
    detect_variable_factor,
    reducibility_bound,
    sigma_dim_bruteforce,
    sigma_dim_det,
    sigma_dim_monomial,
    sigma_dim_perm,
    sigma_lower_bound,
)


def test_monomial_strata():
    assert sigma_dim_monomial((1, 1, 1, 1, 1), 2).value == 1
    assert sigma_dim_monomial((2, 1, 1), 2).value == 0
    assert sigma_dim_monomial((2, 1, 1), 4).value == -1


def test_det_perm_strata():
    assert sigma_dim_det(4, 2).value == 6
    assert sigma_dim_perm(4, 2).value == 3
    assert sigma_dim_det(2, 1).value == -1
    assert not sigma_dim_perm(4, 2).exact


def test_sigma_bounds():
    f = P("x1*x2*x3*x4")
    (b,) = sigma_lower_bound(f, {2: sigma_dim_monomial((1, 1, 1, 1), 2)})
    assert b.value == 7
    (b,) = sigma_lower_bound(det_poly(3), {1: sigma_dim_det(3, 1)})
    assert b.value == 14
    (b,) = sigma_lower_bound(perm_poly(3), {1: sigma_dim_perm(3, 1)})
    assert b.value == 12


def test_sigma_needs_concise():
    f = Poly(3, 3, {(3, 0, 0): 1, (0, 3, 0): 1})
    with pytest.raises(PreconditionError):
        sigma_lower_bound(f, {1: sigma_dim_monomial((3, 0, 0), 1)})


def test_reducibility():
    assert reducibility_bound(4) == 6
    assert reducibility_bound(2, repeated_factor=True) == 3
    assert detect_variable_factor(P("x*y^2 + x*z^2")) == "reducible"
    assert detect_variable_factor(P("x^2*y")) == "repeated"
    assert detect_variable_factor(P("x^3 + y^3 + z^3")) is None


def test_bruteforce_examples():
    assert sigma_dim_bruteforce(P("x^2*y*z"), 1).value == 1
    assert sigma_dim_bruteforce(P("x^3 + y^3 + z^3"), 1).value == -1
    assert sigma_dim_bruteforce(P("x^2*u + y^2*v + x*y*z"), 1).value == 2


def test_bruteforce_matches_monomial_formula():
    for n in range(1, 5):
        for d in range(1, 8):
            for b in itertools.product(range(d + 1), repeat=n):
                if sum(b) != d:
                    continue
                f = Poly(n, d, {b: 1})
                for s in range(0, d + 1):
                    assert sigma_dim_bruteforce(f, s).value == sigma_dim_monomial(b, s).value, (b, s)


def test_strata_shrink_with_s():
    for text in ("x^2*u + y^2*v + x*y*z", "x^3*y*z + y^5", "x1*y1*z1 + x2*y2*z2"):
        f = P(text)
        dims = [sigma_dim_bruteforce(f, s).value for s in range(f.degree + 1)]
        assert dims == sorted(dims, reverse=True)
