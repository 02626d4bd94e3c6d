"""Homogeneous polynomials over an exact or floating coefficient field.

Polynomials are sparse maps from exponent tuples to nonzero coefficients.
Monomial bases are listed in graded-lex order with ``x0`` largest, so the
first monomial of degree ``d`` is ``x0**d``. The dual variables act by
unnormalized differentiation, which is what ``contract`` implements.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

from . import univariate as up
from .errors import FieldMismatch, ParseError, PreconditionError
from .scalar import QQ, QQI, Field, GaussianRational, common_field

Exps = tuple


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exps, ...]:
    """All exponent tuples of the given degree in graded-lex order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[Exps, int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def multinomial(exps: Sequence[int]) -> int:
    out, total = 1, 0
    for a in exps:
        total += a
        out *= math.comb(total, a)
    return out


def falling(a: int, k: int) -> int:
    """a (a-1) ... (a-k+1)."""
    out = 1
    for i in range(k):
        out *= a - i
    return out


def _mul_terms(a: Mapping[Exps, Any], b: Mapping[Exps, Any]) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(nvars))


class Poly:
    """A homogeneous polynomial with a fixed number of variables and degree."""

    __slots__ = ("nvars", "degree", "field", "names", "_terms", "_hash")

    def __init__(
        self,
        nvars: int,
        degree: int,
        terms: Mapping[Exps, Any] | None = None,
        field: Field = QQ,
        names: Sequence[str] | None = None,
    ) -> None:
        if nvars < 0 or degree < 0:
            raise PreconditionError("nvars and degree must be non-negative")
        self.nvars = nvars
        self.degree = degree
        self.field = field
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != nvars:
            raise PreconditionError("names must match the number of variables")
        clean: dict = {}
        bad: set[int] = set()
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != nvars or any(a < 0 for a in e):
                raise PreconditionError(f"bad exponent vector {e} for {nvars} variables")
            c = field(c)
            if c == 0:
                continue
            if sum(e) != degree:
                bad.add(sum(e))
            clean[e] = clean.get(e, 0) + c
        if bad:
            raise PreconditionError(
                f"not homogeneous of degree {degree}: found degrees {sorted(bad)}"
            )
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def _raw(cls, nvars: int, degree: int, terms: dict, field: Field, names=None) -> Poly:
        p = cls.__new__(cls)
        p.nvars, p.degree, p.field = nvars, degree, field
        p.names = names
        p._terms = {e: c for e, c in terms.items() if c != 0}
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int, degree: int, field: Field = QQ, names=None) -> Poly:
        return cls(nvars, degree, {}, field, names)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Any = 1, field: Field = QQ, names=None) -> Poly:
        exps = tuple(exps)
        return cls(len(exps), sum(exps), {exps: coeff}, field, names)

    @classmethod
    def variable(cls, i: int, nvars: int, field: Field = QQ, names=None) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1}, field, names)

    # accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exps, Any]]:
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Any:
        return self._terms.get(tuple(exps), self.field.zero)

    def sorted_terms(self) -> list[tuple[Exps, Any]]:
        idx = monomial_index(self.nvars, self.degree)
        return sorted(self._terms.items(), key=lambda t: idx[t[0]])

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def support(self) -> tuple[int, ...]:
        """Indices of variables that occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return tuple(sorted(used))

    def var_names(self) -> tuple[str, ...]:
        return self.names if self.names is not None else default_names(self.nvars)

    def __len__(self) -> int:
        return len(self._terms)

    # field handling

    def to_field(self, field: Field) -> Poly:
        if field is self.field:
            return self
        if field.level < self.field.level:
            raise FieldMismatch(f"cannot move a {self.field} polynomial into {field}")
        return Poly._raw(self.nvars, self.degree, {e: field(c) for e, c in self._terms.items()}, field, self.names)

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise PreconditionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.field != other.field:
            raise FieldMismatch(f"field mismatch: {self.field} vs {other.field}")

    # arithmetic

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            raise PreconditionError("cannot add forms of different degree")
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly._raw(self.nvars, self.degree, out, self.field, self.names)

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, self.degree, {e: -c for e, c in self._terms.items()}, self.field, self.names)

    def __sub__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Any) -> Poly:
        c = self.field(c)
        return Poly._raw(self.nvars, self.degree, {e: c * v for e, v in self._terms.items()}, self.field, self.names)

    def __mul__(self, other: Any) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return Poly._raw(
                self.nvars, self.degree + other.degree, _mul_terms(self._terms, other._terms), self.field, self.names
            )
        return self.scale(other)

    def __rmul__(self, other: Any) -> Poly:
        return self.scale(other)

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise PreconditionError("exponent must be a non-negative integer")
        result = Poly._raw(self.nvars, 0, {(0,) * self.nvars: self.field.one}, self.field, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.degree, frozenset(self._terms.items())))
        return self._hash

    # calculus

    def derive(self, exps: Sequence[int]) -> Poly:
        """Apply the differential operator d^exps (unnormalized)."""
        exps = tuple(exps)
        k = sum(exps)
        if k > self.degree:
            raise PreconditionError("derivative order exceeds the degree")
        out = {}
        for e, c in self._terms.items():
            if all(a >= b for a, b in zip(e, exps)):
                factor = 1
                for a, b in zip(e, exps):
                    factor *= falling(a, b)
                out[tuple(a - b for a, b in zip(e, exps))] = c * factor
        return Poly._raw(self.nvars, self.degree - k, out, self.field, self.names)

    def diff(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return self.derive(e)

    def evaluate(self, point: Sequence[Any]) -> Any:
        if len(point) != self.nvars:
            raise PreconditionError("point has the wrong length")
        total = self.field.zero
        for e, c in self._terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = v * x**a
            total = total + v
        return total

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, field={self.field})"


@dataclass(frozen=True)
class LinearForm:
    """A linear form sum c_i x_i."""

    coeffs: tuple
    field: Field = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.field(c) for c in self.coeffs))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_poly(self, names=None) -> Poly:
        terms = {}
        for i, c in enumerate(self.coeffs):
            e = [0] * len(self.coeffs)
            e[i] = 1
            terms[tuple(e)] = c
        return Poly._raw(len(self.coeffs), 1, terms, self.field, names)

    @classmethod
    def from_poly(cls, p: Poly) -> LinearForm:
        if p.degree != 1:
            raise PreconditionError("not a linear form")
        coeffs = [p.field.zero] * p.nvars
        for e, c in p.items():
            coeffs[e.index(1)] = c
        return cls(tuple(coeffs), p.field)

    def to_field(self, field: Field) -> LinearForm:
        return LinearForm(self.coeffs, field)

    def __add__(self, other: LinearForm) -> LinearForm:
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __sub__(self, other: LinearForm) -> LinearForm:
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self) -> LinearForm:
        return LinearForm(tuple(-a for a in self.coeffs), self.field)

    def __mul__(self, c: Any) -> LinearForm:
        c = self.field(c)
        return LinearForm(tuple(c * a for a in self.coeffs), self.field)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_poly(self.to_poly())


def linear(coeffs: Sequence[Any], field: Field = QQ) -> LinearForm:
    return LinearForm(tuple(coeffs), field)


def power_of_linear(form: LinearForm, d: int, names=None) -> Poly:
    """Expand form**d by the multinomial theorem."""
    n = form.nvars
    field = form.field
    supp = [i for i, c in enumerate(form.coeffs) if c != 0]
    if not supp:
        return Poly.zero(n, d, field, names)
    pows = {i: [field.one] for i in supp}
    for i in supp:
        for _ in range(d):
            pows[i].append(pows[i][-1] * form.coeffs[i])
    out = {}
    for sub in monomials(len(supp), d):
        c = multinomial(sub)
        v = field(c)
        e = [0] * n
        for i, a in zip(supp, sub):
            e[i] = a
            if a:
                v = v * pows[i][a]
        out[tuple(e)] = v
    return Poly._raw(n, d, out, field, names)


def contract(q: Poly, f: Poly) -> Poly:
    """Apply q(d/dx) to f; the result has degree deg f - deg q."""
    if q.nvars != f.nvars:
        raise PreconditionError("contraction needs matching variable counts")
    if q.field != f.field:
        raise FieldMismatch(f"field mismatch: {q.field} vs {f.field}")
    if q.degree > f.degree:
        raise PreconditionError("contraction by a form of larger degree")
    out: dict = {}
    for eq, cq in q.items():
        for e, c in f.derive(eq).items():
            out[e] = out.get(e, 0) + cq * c
    return Poly._raw(f.nvars, f.degree - q.degree, out, f.field, f.names)


def substitute(f: Poly, images: Sequence[LinearForm | Poly], names=None) -> Poly:
    """Replace x_i by the linear form images[i]."""
    if len(images) != f.nvars:
        raise PreconditionError(f"expected {f.nvars} images, got {len(images)}")
    forms = [LinearForm.from_poly(g) if isinstance(g, Poly) else g for g in images]
    if len({g.nvars for g in forms}) > 1:
        raise PreconditionError("images must share a variable count")
    m = forms[0].nvars if forms else 0
    field = common_field(f.field, *(g.field for g in forms))
    f = f.to_field(field)
    forms = [g.to_field(field) for g in forms]
    cache: dict[tuple[int, int], dict] = {}

    def power(i: int, a: int) -> dict:
        key = (i, a)
        if key not in cache:
            cache[key] = power_of_linear(forms[i], a)._terms
        return cache[key]

    out: dict = {}
    for e, c in f.items():
        acc = {(0,) * m: c}
        for i, a in enumerate(e):
            if a:
                acc = _mul_terms(acc, power(i, a))
        for k, v in acc.items():
            out[k] = out.get(k, 0) + v
    return Poly._raw(m, f.degree, out, field, names)


def linear_change(f: Poly, matrix: Sequence[Sequence[Any]], field: Field | None = None) -> Poly:
    """Substitute x_i -> sum_j matrix[i][j] x_j."""
    field = field or f.field
    return substitute(f, [LinearForm(tuple(row), field) for row in matrix], names=f.names)


# binary forms


def binary_to_univariate(f: Poly) -> tuple[list, int]:
    """Dehomogenize a binary form at x1 = 1; return (coeffs in x0, power of x1 dividing f)."""
    if f.nvars != 2:
        raise PreconditionError("expected a binary form")
    d = f.degree
    coeffs = [f.field.zero] * (d + 1)
    for (a, b), c in f.items():
        coeffs[a] = c
    ymult = min((b for (_, b) in f._terms), default=0)
    return up.trim(coeffs), ymult


def univariate_to_binary(p: Sequence[Any], degree: int, field: Field) -> Poly:
    p = up.trim(p)
    terms = {(i, degree - i): c for i, c in enumerate(p)}
    return Poly(2, degree, terms, field)


def binary_gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor of two nonzero binary forms (monic in x0 after x1 factors)."""
    if f.is_zero() or g.is_zero():
        raise PreconditionError("gcd of a zero form")
    f_u, f_y = binary_to_univariate(f)
    g_u, g_y = binary_to_univariate(g)
    h = up.gcd(f_u, g_u)
    dh = len(h) - 1
    field = common_field(f.field, g.field)
    base = univariate_to_binary(h, dh, field)
    ym = min(f_y, g_y)
    return base * Poly.monomial((0, ym), 1, field) if ym else base


def square_free(f: Poly) -> bool:
    """True when the binary form f has no repeated linear factor."""
    if f.is_zero():
        return False
    p, ymult = binary_to_univariate(f)
    if ymult > 1:
        return False
    return up.degree(up.gcd(p, up.derivative(p))) == 0


# parsing and formatting

_VAR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^\d+(?:/\d+)?$")


def _split_top(s: str, seps: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        if depth == 0 and ch in seps and i > 0 and s[i - 1] not in "^*":
            parts.append(cur)
            cur = ch if ch in "+-" else ""
            continue
        cur += ch
    if depth != 0:
        raise ParseError("unbalanced parentheses")
    parts.append(cur)
    return parts


def parse_poly(
    text: str,
    names: Sequence[str] | None = None,
    nvars: int | None = None,
    field: Field | None = None,
) -> Poly:
    """Parse text such as ``3*x0^2*x1 - 1/2*x1^3``.

    With ``names`` the variables are the declared names; otherwise they must be
    ``x0, x1, ...``. The coefficient field is the smallest one containing all
    coefficients unless ``field`` is given.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    declared = list(names) if names is not None else None
    terms: list[tuple[dict[int, int], Any]] = []
    raws: list[str] = []
    max_index = -1
    gaussian = False
    for raw in _split_top(s, "+-"):
        if raw in ("", "+", "-"):
            raise ParseError(f"dangling sign in {text!r}")
        sign = -1 if raw[0] == "-" else 1
        body = raw[1:] if raw[0] in "+-" else raw
        coeff: Any = Fraction(sign)
        expo: dict[int, int] = {}
        for factor in body.split("*") if "(" not in body else _split_factors(body):
            if not factor:
                raise ParseError(f"empty factor in {raw!r}")
            if _NUM_RE.match(factor):
                coeff = coeff * Fraction(factor)
                continue
            if factor.startswith("("):
                from .scalar import parse_gaussian

                g = parse_gaussian(factor)
                gaussian = gaussian or g.im != 0
                coeff = GaussianRational(coeff) * g if g.im != 0 else coeff * g.re
                continue
            if factor == "i" and (declared is None or "i" not in declared):
                gaussian = True
                coeff = GaussianRational(coeff) * GaussianRational(0, 1)
                continue
            m = _VAR_RE.match(factor)
            if not m:
                raise ParseError(f"unrecognised factor {factor!r}")
            name, power = m.group(1), int(m.group(2)) if m.group(2) else 1
            if declared is not None:
                if name not in declared:
                    raise ParseError(f"undeclared variable {name!r}")
                idx = declared.index(name)
            else:
                vm = re.fullmatch(r"x(\d+)", name)
                if not vm:
                    raise ParseError(f"variable {name!r} is not of the form x<k>")
                idx = int(vm.group(1))
            expo[idx] = expo.get(idx, 0) + power
            max_index = max(max_index, idx)
        terms.append((expo, coeff))
        raws.append(raw)
    n = len(declared) if declared is not None else max(max_index + 1, nvars or 0)
    if nvars is not None and n > nvars:
        raise ParseError(f"variable index exceeds nvars={nvars}")
    if nvars is not None:
        n = nvars
    degrees = sorted({sum(e.values()) for e, c in terms if c != 0})
    if len(degrees) > 1:
        counts: dict[int, int] = {}
        for e, c in terms:
            if c != 0:
                counts[sum(e.values())] = counts.get(sum(e.values()), 0) + 1
        main = max(degrees, key=lambda k: (counts[k], k))
        odd = [f"{r.lstrip('+')} (degree {sum(e.values())})" for (e, c), r in zip(terms, raws) if c != 0 and sum(e.values()) != main]
        raise ParseError(f"polynomial is not homogeneous: term degrees {degrees}; offending terms: {', '.join(odd)}")
    deg = degrees[0] if degrees else sum(terms[0][0].values())
    fld = field or (QQI if gaussian else QQ)
    out: dict = {}
    for e, c in terms:
        vec = [0] * n
        for i, a in e.items():
            vec[i] = a
        key = tuple(vec)
        out[key] = out.get(key, 0) + c
    try:
        return Poly(n, deg, out, fld, declared)
    except FieldMismatch as exc:
        raise ParseError(str(exc)) from exc


def _split_factors(body: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        cur += ch
    parts.append(cur)
    return parts


def _format_coeff(c: Any, field: Field) -> tuple[str, str]:
    """Return (sign, magnitude text) where magnitude may be empty for 1."""
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        return sign, "" if mag == 1 else str(mag)
    if isinstance(c, GaussianRational) and c.im == 0:
        return _format_coeff(c.re, field)
    if isinstance(c, GaussianRational) and c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, "i" if mag == 1 else f"{mag}*i"
    return "+", f"({field.format(c)})"


def format_poly(f: Poly) -> str:
    """Canonical text form, terms in graded-lex order."""
    if f.is_zero():
        return "0"
    names = f.var_names()
    out = []
    for e, c in f.sorted_terms():
        sign, mag = _format_coeff(c, f.field)
        mono = "*".join(
            names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
        )
        if mono and mag:
            body = f"{mag}*{mono}"
        elif mono:
            body = mono
        else:
            body = mag or "1"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def poly_to_json(f: Poly) -> dict:
    return {
        "nvars": f.nvars,
        "degree": f.degree,
        "field": f.field.name,
        "names": list(f.var_names()),
        "terms": [[list(e), f.field.format(c)] for e, c in f.sorted_terms()],
        "text": format_poly(f),
    }


def poly_from_json(doc: Mapping[str, Any] | str) -> Poly:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
    try:
        fname = doc.get("field", "QQ")
        field: Field = QQI if fname == "QQ(i)" else QQ
        if fname.startswith("CC"):
            from .scalar import CC

            field = CC(int(fname[3:-1]))
        terms = {tuple(e): field.parse(str(c)) for e, c in doc["terms"]}
        return Poly(int(doc["nvars"]), int(doc["degree"]), terms, field, doc.get("names"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed structured polynomial: {exc}") from exc
