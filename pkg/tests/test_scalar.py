from fractions import Fraction

import mpmath
import pytest

from waring.errors import ParseError
from waring.scalar import CC, QQ, QQI, GaussianRational, common_field, parse_gaussian, parse_rational


def test_rational_sum():
    assert QQ(Fraction(1, 2)) + QQ(Fraction(1, 3)) == Fraction(5, 6)


def test_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    assert i * i == -1


def test_omega_cubed():
    F = CC(256)
    ctx = F.ctx
    w = ctx.exp(2 * ctx.pi * ctx.mpc(0, 1) / 3)
    assert abs(w**3 - 1) < mpmath.mpf("1e-70")


def test_embed_zero_and_dyadic():
    F = CC(64)
    assert F(Fraction(0)) == 0
    assert F(Fraction(3, 4)) == F.ctx.mpc(0.75, 0)
    assert QQI(Fraction(0)) == 0


def test_embed_third_relative_error():
    lo, hi = CC(128), CC(512)
    x = lo(Fraction(1, 3))
    ref = hi(Fraction(1, 3))
    err = abs(hi.ctx.mpc(x.real, x.imag) - ref) / abs(ref)
    assert err < hi.ctx.mpf(2) ** -127


def test_gaussian_division_and_sqrt():
    a = GaussianRational(3, 4)
    assert a / a == 1
    assert GaussianRational(-9, 0).sqrt() in (GaussianRational(0, 3), GaussianRational(0, -3))
    assert GaussianRational(2, 0).sqrt() is None
    assert a.norm() == 25


def test_parsing():
    assert parse_rational("-7/3") == Fraction(-7, 3)
    assert parse_gaussian("1/2+3/4*i") == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    with pytest.raises(ParseError):
        parse_rational("1/x")


def test_common_field_promotes():
    assert common_field(QQ, QQI) is QQI
    assert not common_field(QQ, CC(128)).exact
