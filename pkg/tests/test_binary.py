import random

import pytest

from conftest import P
from waring.binary import decompose, rank_of_binary_restriction, sylvester_rank
from waring.decomp import verify
from waring.errors import InexactField, PreconditionError
from waring.flatten import flattening_lower_bound
from waring.poly import LinearForm, Poly, contract, linear_change, square_free
from waring.scalar import CC, QQ


def monomial(a, b):
    return Poly(2, a + b, {(a, b): 1})


@pytest.mark.parametrize("a", range(1, 7))
@pytest.mark.parametrize("b", range(1, 7))
def test_binary_monomials(a, b):
    if a > b:
        return
    br = sylvester_rank(monomial(a, b))
    assert br.rank == max(a + 1, b + 1)
    assert br.border_rank == a + 1


def test_tangent_form():
    assert sylvester_rank(monomial(4, 1)).rank == 5


def test_sum_of_two_powers():
    for d in (3, 4, 7):
        br = sylvester_rank(Poly(2, d, {(d, 0): 1, (0, d): 1}))
        assert (br.rank, br.border_rank) == (2, 2)
        q = br.certificate.witness
        assert square_free(q)
        assert contract(q, Poly(2, d, {(d, 0): 1, (0, d): 1})).is_zero()


def test_restrictions():
    d = 5
    f = P(f"x^{d-1}*y + z^{d}")
    xy = (LinearForm((1, 0, 0), QQ), LinearForm((0, 1, 0), QQ))
    assert rank_of_binary_restriction(f, xy).rank == d
    assert rank_of_binary_restriction(P("x^3 + y^3 + z^3"), xy).rank == 2
    g = P("x^2*y^2 + x^3*z")
    assert rank_of_binary_restriction(g, xy).rank == 3
    with pytest.raises(PreconditionError):
        rank_of_binary_restriction(f, (xy[0], xy[0]))


def random_binary(rng, d):
    while True:
        f = Poly(2, d, {(d - j, j): rng.randint(-5, 5) for j in range(d + 1)})
        if not f.is_zero():
            return f


def test_random_binary_forms_are_consistent():
    rng = random.Random(11)
    for _ in range(200):
        d = rng.randint(3, 8)
        f = random_binary(rng, d)
        br = sylvester_rank(f)
        assert br.border_rank <= br.rank <= d
        assert br.border_rank == flattening_lower_bound(f).value
        assert br.rank in (br.border_rank, d - br.border_rank + 2)
        if br.certificate.witness is not None:
            assert contract(br.certificate.witness, f).is_zero()
            assert square_free(br.certificate.witness)


def test_gl2_invariance():
    rng = random.Random(5)
    for _ in range(20):
        f = random_binary(rng, rng.randint(3, 7))
        ref = sylvester_rank(f)
        for _ in range(10):
            while True:
                m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
                if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
                    break
            g = linear_change(f, m)
            got = sylvester_rank(g)
            assert (got.rank, got.border_rank) == (ref.rank, ref.border_rank)


@pytest.mark.parametrize("text", ["x^3 + y^3", "x^2*y", "x^4 - 2*x^2*y^2 + 3*y^4", "x^5 + x*y^4"])
def test_decompose_reproduces(text):
    f = P(text)
    dec = decompose(f)
    assert len(dec) == sylvester_rank(f).rank
    assert verify(dec, f).ok


def test_inexact_refused():
    f = Poly(2, 2, {(2, 0): 1}, CC(64))
    with pytest.raises(InexactField):
        sylvester_rank(f)
