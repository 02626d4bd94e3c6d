"""Power-sum decompositions: representation, expansion, verification and I/O.

A decomposition is a list of terms c * l**d with l a linear form. Mixed
expressions (products of linear forms) are turned into power sums with the
polarization identity

    L1 ... Ld = 1/(2^(d-1) d!) * sum over eps in {+1,-1}^(d-1) of
                eps_1...eps_(d-1) * (L1 + eps_1 L2 + ... + eps_(d-1) Ld)^d

after which equal powers are merged.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import FieldMismatch, ParseError, PreconditionError
from .poly import LinearForm, Poly, power_of_linear
from .scalar import CC, QQ, QQI, Field, common_field


@dataclass(frozen=True)
class Term:
    coeff: Any
    form: LinearForm
    power: int


@dataclass
class Decomposition:
    terms: list
    nvars: int
    degree: int
    field: Field = QQ

    def __post_init__(self) -> None:
        for t in self.terms:
            if t.form.nvars != self.nvars:
                raise PreconditionError("term has the wrong number of variables")
            if t.power != self.degree:
                raise PreconditionError("term power differs from the degree")

    def __len__(self) -> int:
        return len(self.terms)

    def to_field(self, field: Field) -> Decomposition:
        return Decomposition(
            [Term(field(t.coeff), t.form.to_field(field), t.power) for t in self.terms],
            self.nvars,
            self.degree,
            field,
        )

    def expand(self) -> Poly:
        acc = Poly.zero(self.nvars, self.degree, self.field)
        for t in self.terms:
            acc = acc + power_of_linear(t.form.to_field(self.field), t.power).scale(t.coeff)
        return acc

    def merged(self) -> Decomposition:
        return Decomposition(merge_terms(self.terms, self.field), self.nvars, self.degree, self.field)


def _normalize(form: LinearForm, power: int, coeff: Any) -> tuple[LinearForm, Any]:
    """Scale the form so its first nonzero coefficient is 1."""
    lead = next(c for c in form.coeffs if c != 0)
    inv = 1 / lead if not isinstance(lead, int) else QQ(1) / lead
    return LinearForm(tuple(c * inv for c in form.coeffs), form.field), coeff * lead**power


def merge_terms(terms: Iterable[Term], field: Field) -> list[Term]:
    """Combine terms that are powers of proportional forms (exact fields only)."""
    if not field.exact:
        return [t for t in terms if t.coeff != 0 and not t.form.is_zero()]
    acc: dict = {}
    order: list = []
    for t in terms:
        if t.form.is_zero() or t.coeff == 0:
            continue
        form, c = _normalize(t.form, t.power, t.coeff)
        key = (form.coeffs, t.power)
        if key not in acc:
            acc[key] = (form, field.zero)
            order.append(key)
        acc[key] = (form, acc[key][1] + c)
    return [Term(acc[k][1], acc[k][0], k[1]) for k in order if acc[k][1] != 0]


@dataclass
class MixedTerm:
    """coeff * prod(form**exponent)."""

    coeff: Any
    factors: list

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)


def expand_mixed(mixed: Sequence[MixedTerm], nvars: int, field: Field) -> Poly:
    """Multiply out sum coeff * prod(l**e) directly, without polarizing."""
    if not mixed:
        raise PreconditionError("empty expression")
    acc = None
    for m in mixed:
        prod = None
        for form, e in m.factors:
            p = form.to_field(field).to_poly() ** e
            prod = p if prod is None else prod * p
        prod = prod.scale(field(m.coeff))
        acc = prod if acc is None else acc + prod
    return acc


def expand_product(coeff: Any, factors: Sequence[tuple[LinearForm, int]], field: Field) -> list[Term]:
    """Power sum equal to coeff * prod(l**e) by polarization, merged."""
    forms: list[LinearForm] = []
    for form, e in sorted(factors, key=lambda fe: -fe[1]):
        forms.extend([form.to_field(field)] * e)
    d = len(forms)
    if d == 0:
        raise PreconditionError("empty product")
    if d == 1:
        return [Term(field(coeff), forms[0], 1)]
    scale = field(coeff) / field(2 ** (d - 1) * math.factorial(d))
    out = []
    for eps in itertools.product((1, -1), repeat=d - 1):
        lf = forms[0]
        sign = 1
        for e, l in zip(eps, forms[1:]):
            lf = lf + l * e
            sign *= e
        out.append(Term(scale * sign, lf, d))
    return merge_terms(out, field)


def to_power_sum(mixed: Sequence[MixedTerm | Term], nvars: int, degree: int, field: Field) -> Decomposition:
    terms: list[Term] = []
    for m in mixed:
        if isinstance(m, Term):
            terms.append(Term(field(m.coeff), m.form.to_field(field), m.power))
        elif len(m.factors) == 1:
            form, e = m.factors[0]
            terms.append(Term(field(m.coeff), form.to_field(field), e))
        else:
            terms.extend(expand_product(m.coeff, m.factors, field))
    return Decomposition(merge_terms(terms, field), nvars, degree, field)


def product_decomposition(n: int, field: Field = QQ) -> Decomposition:
    """x1...xn as 2^(n-1) signed n-th powers of x1 +- x2 +- ... +- xn."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n == 1:
        return Decomposition([Term(field.one, LinearForm((1,), field), 1)], 1, 1, field)
    scale = field(1) / field(2 ** (n - 1) * math.factorial(n))
    terms = []
    for eps in itertools.product((1, -1), repeat=n - 1):
        terms.append(Term(scale * math.prod(eps), LinearForm((1,) + eps, field), n))
    return Decomposition(terms, n, n, field)


# verification


@dataclass
class Verdict:
    kind: str  # "exact", "approx" or "mismatch"
    max_residual: Any = 0
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.kind in ("exact", "approx")


def verify(decomp: Decomposition, target: Poly, tolerance: float = 1e-20) -> Verdict:
    """Expand and compare with the target coefficient by coefficient."""
    if decomp.nvars != target.nvars or decomp.degree != target.degree:
        return Verdict("mismatch", None, None)
    field = common_field(decomp.field, target.field)
    lhs = decomp.to_field(field).expand() if field != decomp.field else decomp.expand()
    rhs = target.to_field(field)
    diff = lhs - rhs
    if field.exact:
        if diff.is_zero():
            return Verdict("exact", 0, None)
        e, c = diff.sorted_terms()[0]
        return Verdict("mismatch", c, e)
    worst, where = field.ctx.mpf(0), None
    for e, c in diff.items():
        if abs(c) > worst:
            worst, where = abs(c), e
    if worst <= tolerance:
        return Verdict("approx", worst, None)
    return Verdict("mismatch", worst, where)


# text I/O: one term per line, "coeff | c1, c2, ..."

_DECIMAL = re.compile(r"\d\.\d|\d[eE][+-]?\d|\.\d")


def _guess_field(tokens: Iterable[str], prec: int) -> Field:
    fld: Field = QQ
    for tok in tokens:
        if _DECIMAL.search(tok):
            return CC(prec)
        if "i" in tok:
            fld = QQI
    return fld


def parse_decomposition(text: str, degree: int, nvars: int | None = None, prec: int = 256) -> Decomposition:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("|") != 1:
            raise ParseError(f"line {lineno}: expected 'coeff | c1, c2, ...'")
        left, right = (s.strip() for s in line.split("|"))
        entries = [s.strip() for s in right.split(",")]
        if not left or any(not e for e in entries):
            raise ParseError(f"line {lineno}: empty field")
        lines.append((lineno, left, entries))
    if not lines:
        raise ParseError("no terms")
    field = _guess_field([t for _, l, es in lines for t in [l, *es]], prec)
    widths = {len(es) for _, _, es in lines}
    if len(widths) != 1:
        raise ParseError("terms have different numbers of variables")
    n = widths.pop()
    if nvars is not None and n != nvars:
        raise ParseError(f"terms have {n} variables, target has {nvars}")
    terms = []
    for lineno, left, entries in lines:
        try:
            coeff = field.parse(left)
            coeffs = tuple(field.parse(e) for e in entries)
        except (ParseError, FieldMismatch) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        terms.append(Term(coeff, LinearForm(coeffs, field), degree))
    return Decomposition(terms, n, degree, field)


def format_decomposition(decomp: Decomposition) -> str:
    f = decomp.field
    return "\n".join(
        f"{f.format(t.coeff)} | " + ", ".join(f.format(c) for c in t.form.coeffs) for t in decomp.terms
    )


def decomposition_to_json(decomp: Decomposition) -> dict:
    f = decomp.field
    return {
        "field": f.name,
        "length": len(decomp),
        "degree": decomp.degree,
        "terms": [
            {"coeff": f.format(t.coeff), "form": [f.format(c) for c in t.form.coeffs]} for t in decomp.terms
        ],
    }


