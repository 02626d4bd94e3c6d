"""Coefficient fields: rationals, Gaussian rationals and a big-float complex field.

A field object converts, parses and formats its elements. Elements are plain
Python numbers where possible (``Fraction``), a small value class for the
Gaussian rationals, and mpmath ``mpc`` values bound to a private context for
the floating field.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Any

import mpmath

from .errors import FieldMismatch, ParseError


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class GaussianRational:
    """Exact complex number p + q*i with rational p, q."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0) -> None:
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a Gaussian real part with an imaginary part")
            self.re, self.im = re.re, re.im
            return
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _lift(x: Any) -> GaussianRational | None:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, _RationalABC)):
            return GaussianRational(x)
        return None

    def __add__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other: Any) -> GaussianRational:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> GaussianRational:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> GaussianRational:
        return self

    def __eq__(self, other: Any) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def sqrt(self) -> GaussianRational | None:
        """Exact square root inside Q(i), or None if there is none."""
        if self.im == 0:
            r = rational_sqrt(self.re)
            if r is not None:
                return GaussianRational(r)
            r = rational_sqrt(-self.re)
            return None if r is None else GaussianRational(0, r)
        modulus = rational_sqrt(self.norm())
        if modulus is None:
            return None
        a = rational_sqrt((self.re + modulus) / 2)
        if a is None or a == 0:
            return None
        return GaussianRational(a, self.im / (2 * a))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


_RAT = r"[+-]?\d+(?:/\d+)?"


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace(" ", "")
    if not re.fullmatch(_RAT, s):
        raise ParseError(f"malformed rational {text!r}")
    return Fraction(s)


def _signed_magnitude(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return parse_rational(text)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``p/q+r/s*i`` style text (either part may be missing)."""
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ParseError("empty scalar")
    if not s.endswith("i"):
        return GaussianRational(parse_rational(s))
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        real_text, imag_text = body[:split], body[split:]
    else:
        real_text, imag_text = "", body
    try:
        re_part = parse_rational(real_text) if real_text else Fraction(0)
        im_part = _signed_magnitude(imag_text)
    except ParseError as exc:
        raise ParseError(f"malformed Gaussian rational {text!r}") from exc
    return GaussianRational(re_part, im_part)


class Field:
    """Common interface of the three coefficient fields."""

    name = "field"
    exact = True
    level = 0

    def __call__(self, x: Any) -> Any:
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        return self(0)

    @property
    def one(self) -> Any:
        return self(1)

    def is_zero(self, x: Any) -> bool:
        return x == 0

    def parse(self, text: str) -> Any:
        raise NotImplementedError

    def format(self, x: Any) -> str:
        return str(x)

    def __repr__(self) -> str:
        return self.name


class RationalField(Field):
    name = "QQ"
    level = 0

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise FieldMismatch(f"{x} is not rational")
            return x.re
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise FieldMismatch("floats are not accepted as exact rationals")
        return _frac(x)

    def parse(self, text: str) -> Fraction:
        return parse_rational(text)


class GaussianField(Field):
    name = "QQ(i)"
    level = 1

    def __call__(self, x: Any) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise FieldMismatch("floats are not accepted as exact Gaussian rationals")
        if isinstance(x, complex):
            raise FieldMismatch("complex floats are not exact")
        return GaussianRational(x)

    def parse(self, text: str) -> GaussianRational:
        return parse_gaussian(text)


class BigComplexField(Field):
    """Complex floating field at a fixed binary precision (mpmath backed)."""

    exact = False
    level = 2

    def __init__(self, prec: int = 256) -> None:
        if prec < 8:
            raise ValueError("precision must be at least 8 bits")
        self.prec = prec
        self.ctx = mpmath.MPContext()
        self.ctx.prec = prec
        self.name = f"CC[{prec}]"

    def __call__(self, x: Any) -> Any:
        ctx = self.ctx
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, GaussianRational):
            return ctx.mpc(self._rat(x.re), self._rat(x.im))
        if isinstance(x, (Fraction, _RationalABC)) and not isinstance(x, int):
            return ctx.mpc(self._rat(Fraction(x)))
        if hasattr(x, "real") and hasattr(x, "imag") and not isinstance(x, int):
            return ctx.mpc(ctx.mpf(x.real), ctx.mpf(x.imag))
        return ctx.mpc(x)

    def _rat(self, q: Fraction) -> Any:
        return self.ctx.mpf(q.numerator) / q.denominator

    def parse(self, text: str) -> Any:
        s = text.strip().replace(" ", "")
        try:
            g = parse_gaussian(s)
            return self(g)
        except ParseError:
            pass
        try:
            return self.ctx.mpc(complex(s.replace("*i", "j").replace("i", "j")))
        except ValueError as exc:
            raise ParseError(f"malformed complex scalar {text!r}") from exc

    def format(self, x: Any) -> str:
        digits = max(6, int(self.prec * 0.30103) - 2)
        re_s = self.ctx.nstr(x.real, digits)
        im_s = self.ctx.nstr(abs(x.imag), digits)
        if x.imag == 0:
            return re_s
        return f"{re_s}{'-' if x.imag < 0 else '+'}{im_s}*i"

    def abs(self, x: Any) -> Any:
        return abs(x)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, BigComplexField) and other.prec == self.prec

    def __hash__(self) -> int:
        return hash(("CC", self.prec))


QQ = RationalField()
QQI = GaussianField()


@lru_cache(maxsize=None)
def CC(prec: int = 256) -> BigComplexField:
    """Shared complex field instance at the given precision."""
    return BigComplexField(prec)


def common_field(*fields: Field) -> Field:
    """Smallest field containing all of ``fields``."""
    best = max(fields, key=lambda f: f.level)
    if best.level == 2:
        return CC(max(f.prec for f in fields if f.level == 2))
    return best


def is_exact_zero(x: Any) -> bool:
    return x == 0
