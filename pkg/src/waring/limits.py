"""Limits of secant planes along explicit curves.

A family of curves c_1(t), ..., c_r(t) in the space of linear forms gives,
for t != 0, the plane spanned by the d-th powers c_j(t)^d. Its limit as
t -> 0 is computed exactly from the t-adic column reduction in linalg, and
anything in the limit plane has border rank at most r.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence

from . import univariate as up
from .errors import PreconditionError
from .linalg import Matrix, kernel, limit_polynomial_columns, rank
from .poly import LinearForm, Poly, monomials, multinomial, parse_poly, substitute
from .scalar import QQ

Curve = list  # one coefficient list in t per variable


@dataclass
class CurveFamily:
    nvars: int
    degree: int
    curves: list
    labels: list = dc_field(default_factory=list)
    names: tuple | None = None

    def __post_init__(self) -> None:
        for c in self.curves:
            if len(c) != self.nvars:
                raise PreconditionError("curve has the wrong number of coordinates")
        if not self.labels:
            self.labels = [curve_label(c, self.names) for c in self.curves]


@dataclass
class LimitPlane:
    basis: list
    vanishing_order: int
    nvars: int
    degree: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def curve(*coords: Sequence[Any]) -> Curve:
    """A curve from per-variable coefficient lists in t."""
    return [up.trim([Fraction(c) for c in co]) for co in coords]


def curve_label(c: Curve, names: Sequence[str] | None = None) -> str:
    names = names or [f"x{i}" for i in range(len(c))]
    parts = []
    for name, co in zip(names, c):
        for k, a in enumerate(co):
            if a == 0:
                continue
            coef = "" if a == 1 else ("-" if a == -1 else f"{a}*")
            tp = "" if k == 0 else ("t*" if k == 1 else f"t^{k}*")
            parts.append(f"{coef}{tp}{name}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def power_column(c: Curve, d: int) -> list:
    """Coefficients (polynomials in t) of c(t)^d on the degree-d monomials."""
    pw = [[[Fraction(1)]] for _ in c]
    for i, co in enumerate(c):
        for _ in range(d):
            pw[i].append(up.mul(pw[i][-1], co))
    col = []
    for e in monomials(len(c), d):
        acc = [Fraction(multinomial(e))]
        for i, k in enumerate(e):
            if k:
                acc = up.mul(acc, pw[i][k])
                if not acc:
                    break
        col.append(up.trim(acc))
    return col


def limit_plane(fam: CurveFamily) -> LimitPlane:
    """The limiting plane of span{c_j(t)^d} as t -> 0, with an exact basis.

    Raises DependentColumns when the powers are dependent for generic t.
    """
    cols = [power_column(c, fam.degree) for c in fam.curves]
    lim = limit_polynomial_columns(cols)
    mons = monomials(fam.nvars, fam.degree)
    basis = [Poly(fam.nvars, fam.degree, dict(zip(mons, v)), QQ, fam.names) for v in lim.basis]
    return LimitPlane(basis, lim.vanishing_order, fam.nvars, fam.degree)


def _coeff_matrix(polys: Sequence[Poly]) -> Matrix:
    mons = monomials(polys[0].nvars, polys[0].degree)
    return Matrix.from_columns([[p.coefficient(m) for m in mons] for p in polys], len(mons))


def contains(plane: LimitPlane, f: Poly) -> bool:
    """Exact membership of f in the plane (rank comparison)."""
    if f.nvars != plane.nvars or f.degree != plane.degree:
        raise PreconditionError("f does not live in the plane's space")
    if f.is_zero():
        return True
    base = rank(_coeff_matrix(plane.basis))
    return rank(_coeff_matrix(list(plane.basis) + [f.to_field(QQ)])) == base


def spans_equal(a: Sequence[Poly], b: Sequence[Poly]) -> bool:
    ra = rank(_coeff_matrix(a))
    return ra == rank(_coeff_matrix(b)) == rank(_coeff_matrix(list(a) + list(b)))


# monomial families


def default_lambdas(b: Sequence[int]) -> list[list[int]]:
    return [list(range(bi + 1)) for bi in b]


def monomial_family(b: Sequence[int], d: int, lambdas: Sequence[Sequence[Any]] | None = None) -> CurveFamily:
    """Curves x0 + t lam_{1,s1} x1 + t^2 lam_{2,s2} x2 + ... over 0 <= s_i <= b_i.

    b lists the exponents of x1..xn; the exponent of x0 is d - sum(b) >= 1.
    One curve per tuple (s_1, ..., s_n), in lexicographic order.
    """
    b = list(b)
    if any(x < 0 for x in b):
        raise PreconditionError("exponents must be non-negative")
    if d - sum(b) < 1:
        raise PreconditionError("need d > b_1 + ... + b_n so that x0 appears")
    lams = [list(map(Fraction, row)) for row in (lambdas if lambdas is not None else default_lambdas(b))]
    if len(lams) != len(b):
        raise PreconditionError("one row of lambdas per exponent")
    for i, (row, bi) in enumerate(zip(lams, b)):
        if len(row) < bi + 1:
            raise PreconditionError(f"lambda row {i + 1} needs {bi + 1} values")
        if len(set(row[: bi + 1])) != bi + 1:
            raise PreconditionError(f"repeated lambda values in row {i + 1} (Vandermonde degeneracy)")
    n = len(b)
    curves = []
    for s in itertools.product(*(range(bi + 1) for bi in b)):
        coords = [[1]]
        for i, si in enumerate(s, start=1):
            coords.append([0] * i + [lams[i - 1][si]])
        curves.append(curve(*coords))
    return CurveFamily(n + 1, d, curves)


def monomial_span(b: Sequence[int], d: int) -> list[Poly]:
    """x0^(d - sum a) x1^a1 ... xn^an for 0 <= a_i <= b_i."""
    out = []
    for a in itertools.product(*(range(bi + 1) for bi in b)):
        out.append(Poly.monomial((d - sum(a),) + a, 1, QQ))
    return out


def target_monomial(b: Sequence[int], d: int) -> Poly:
    return Poly.monomial((d - sum(b),) + tuple(b), 1, QQ)


# membership up to a change of coordinates


@dataclass
class Scaling:
    """Outcome of the search for f o D in the plane with D diagonal."""

    found: bool
    factors: list | None = None  # diagonal entries when they are rational
    reason: str = ""


def _int_row_reduce(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Unimodular row reduction: returns (H, U, pivots) with U @ A = H echelon."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots = []
    top = 0
    for c in range(ncols):
        if top >= m:
            break
        while True:
            nz = [i for i in range(top, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[top], H[p] = H[p], H[top]
            U[top], U[p] = U[p], U[top]
            done = True
            for i in range(top + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[top][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[top])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[top])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if any(H[i][c] for i in range(top, m)):
            pivots.append(c)
            top += 1
    return H, U, pivots


def _exact_root(q: Any, k: int) -> Any | None:
    """A k-th root of a rational q inside QQ, or None."""
    if k < 0:
        r = _exact_root(q, -k)
        return None if r is None else 1 / r
    if k == 1:
        return q
    q = Fraction(q)
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    rn, rd = round(num ** (1 / k)), round(den ** (1 / k))
    for a in (rn - 1, rn, rn + 1):
        for b_ in (rd - 1, rd, rd + 1):
            if a >= 0 and b_ > 0 and a**k == num and b_**k == den:
                return sign * Fraction(a, b_)
    return None


def _torus_solve(exps: list[tuple[int, ...]], q: list[Any]) -> Scaling:
    """Solve lam * prod(delta_i ** m_i) = q_m for all listed monomials m."""
    A = [[1] + list(m) for m in exps]
    H, U, pivots = _int_row_reduce(A)

    def char(row: list[int]) -> Any:
        acc = Fraction(1)
        for k, qm in zip(row, q):
            if k:
                acc = acc * Fraction(qm) ** k
        return acc

    for i in range(len(pivots), len(A)):
        if char(U[i]) != 1:
            return Scaling(False, reason="no diagonal scaling: a multiplicative relation fails")
    ncols = len(A[0])
    y: list[Any] = [Fraction(1)] * ncols
    exact = True
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        rhs = char(U[i])
        for j in range(c + 1, ncols):
            if H[i][j]:
                rhs = rhs / y[j] ** H[i][j]
        root = _exact_root(rhs, H[i][c])
        if root is None:
            exact = False
            break
        y[c] = root
    if not exact:
        return Scaling(True, None, "a scaling exists over C but needs irrational factors")
    return Scaling(True, list(y[1:]), "")


def scaling_into(plane: LimitPlane, f: Poly, search_cap: int = 500) -> Scaling:
    """Look for a diagonal change x_i -> delta_i x_i putting f into the plane.

    The plane vectors supported on the monomials of f must be one-dimensional
    with all coefficients nonzero; the ratios to the coefficients of f must
    then be a character of the torus, which is decided exactly.
    """
    if f.nvars != plane.nvars or f.degree != plane.degree:
        raise PreconditionError("f does not live in the plane's space")
    supp = [e for e, _ in f.sorted_terms()]
    mons = monomials(plane.nvars, plane.degree)
    # columns: plane basis, then unit vectors on supp(f) with a minus sign
    cols = [[p.coefficient(m) for m in mons] for p in plane.basis]
    for e in supp:
        cols.append([Fraction(-1) if m == e else Fraction(0) for m in mons])
    ker = kernel(Matrix.from_columns(cols, len(mons)))
    k = len(plane.basis)
    ws = [v[k:] for v in ker if any(v[k:])]
    if not ws:
        return Scaling(False, reason="no plane vector is supported on the monomials of f")
    if contains(plane, f):
        return Scaling(True, [Fraction(1)] * f.nvars, "")
    ws = [ws[i] for i in _independent_rows(ws)]
    if len(ws) == 1:
        candidates = [ws[0]]
    else:
        # several plane vectors on the support: search small combinations
        grid = (1, 2, -1, 3, -2)
        candidates = (
            [sum((Fraction(c) * v[i] for c, v in zip(cs, ws)), Fraction(0)) for i in range(len(supp))]
            for cs in itertools.islice(itertools.product(grid, repeat=len(ws)), search_cap)
        )
    fallback = None
    for w in candidates:
        if any(x == 0 for x in w):
            continue
        ratios = [wi / Fraction(f.coefficient(e)) for wi, e in zip(w, supp)]
        sc = _torus_solve(supp, ratios)
        if sc.found and sc.factors is not None:
            if not contains(plane, apply_scaling(f, sc.factors)):
                raise AssertionError("scaling solution failed verification")
            return sc
        if sc.found and fallback is None:
            fallback = sc
    if fallback is not None:
        return fallback
    if len(ws) == 1:
        if any(x == 0 for x in ws[0]):
            return Scaling(False, reason="every plane vector on the support of f misses a monomial of f")
        return Scaling(False, reason="no diagonal scaling: a multiplicative relation fails")
    return Scaling(False, reason="no diagonal scaling found among the searched combinations")


def _independent_rows(rows: list[list]) -> list[int]:
    keep: list[int] = []
    for i in range(len(rows)):
        if rank(Matrix([rows[j] for j in keep + [i]], len(rows[i]))) == len(keep) + 1:
            keep.append(i)
    return keep


def apply_scaling(f: Poly, factors: Sequence[Any]) -> Poly:
    terms = {}
    for e, c in f.items():
        terms[e] = c * math.prod((Fraction(x) ** k for x, k in zip(factors, e)), start=Fraction(1))
    return Poly(f.nvars, f.degree, terms, f.field, f.names)


# normal forms of border rank 3, 4, 5


@dataclass
class NormalFormFamily:
    key: str
    rank: int
    family: CurveFamily
    target: Poly
    rank_bracket: tuple
    corrected: bool = False


_VARS = ("x", "y", "z", "w", "u")

# Two published statements about border rank 3 that do not agree at the
# lower end; both are reported, neither is adjusted.
BORDER_THREE_RANK_STATEMENTS = (
    "summary: a degree-d form of border rank 3 has rank in [d-1, 2d-1], taking exactly three values, d-1 among them",
    "per-row: the tangent and osculating normal forms have rank at least d",
)


def _lin(names: Sequence[str], spec: dict) -> Curve:
    """spec maps a variable name to its coefficient list in t."""
    return curve(*[spec.get(n, [0]) for n in names])


def osculating_curves(k: int) -> list[Curve]:
    """gamma(0), gamma(t), ..., gamma((k-1)t) for gamma(s) = x + s y + s^2 z + ... (k variables)."""
    return [curve(*([[1]] + [[0] * i + [j**i] for i in range(1, k)])) for j in range(k)]


def osculating_target(k: int, d: int) -> Poly:
    """The t^(k-1) Taylor coefficient of (x + t y + t^2 z + ...)^d, as a primitive integer form.

    For k = 4 it is diagonally equivalent to x^(d-3) y^3 + x^(d-2) y z + x^(d-1) w;
    for k = 5 no such simplification exists since (x^(d-3) y^2 z)^2 = x^(d-4) y^4 * x^(d-2) z^2.
    """
    col = power_column(curve(*([[1]] + [[0] * i + [1] for i in range(1, k)])), d)
    terms = {m: c[k - 1] for m, c in zip(monomials(k, d), col) if len(c) > k - 1 and c[k - 1] != 0}
    g = math.gcd(*(int(c) for c in terms.values()))
    return Poly(k, d, {m: c / g for m, c in terms.items()}, QQ, _VARS[:k])


def normal_form_families(r: int, d: int) -> list[NormalFormFamily]:
    """Curve families with the normal forms of border rank r and r-dimensional span.

    Rows with ``corrected`` set replace a printed family whose limit plane
    misses its target: the border-rank-4 row x^(d-2) y^2 + x^(d-1) z + w^d uses
    the third curve x + 2ty + t^2 z, and the osculating rows use r points of
    one curve, whose limit is the osculating space and whose normal form is
    read off the top Taylor coefficient.
    """
    if r not in (3, 4, 5):
        raise PreconditionError("normal forms are tabulated for r = 3, 4, 5")
    if d < 3:
        raise PreconditionError("the tables need d >= 3")
    names = _VARS[:r]
    X, Y, Z, W, U = ({v: [1]} for v in _VARS)
    XY = {"x": [1], "y": [0, 1]}
    XY2Z = {"x": [1], "y": [0, 2], "z": [0, 0, 1]}
    XYZ2 = {"x": [1], "y": [0, 1], "z": [0, 0, 1]}
    XZ2 = {"x": [1], "z": [0, 0, 1]}
    ZW = {"z": [1], "w": [0, 1]}
    e1, e2 = d - 1, d - 2

    # key, curves, target, rank bracket, corrected
    rows3 = [
        ("fermat", [X, Y, Z], "x^D + y^D + z^D", (3, 3), False),
        ("tangent", [X, XY, Z], f"x^{e1}*y + z^D", (d, d + 1), False),
        ("osculating", [X, XY, XY2Z], f"x^{e2}*y^2 + x^{e1}*z", (d, 2 * d - 1), False),
    ]
    rows4 = [
        ("fermat", [X, Y, Z, W], "x^D + y^D + z^D + w^D", (4, 4), False),
        ("tangent", [X, XY, Z, W], f"x^{e1}*y + z^D + w^D", (d, d + 2), False),
        ("two_tangents", [X, XY, Z, ZW], f"x^{e1}*y + z^{e1}*w", (d, 2 * d), False),
        ("square", [X, XY, XYZ2, XZ2], f"x^{e2}*y*z", (d, 2 * d - 2), False),
        ("osculating_and_power", [X, XY, XY2Z, W], f"x^{e2}*y^2 + x^{e1}*z + w^D", (d, 2 * d), True),
        ("osculating", osculating_curves(4), osculating_target(4, d), (d, 3 * d - 3), True),
    ]
    if r == 3:
        rows = rows3
    elif r == 4:
        rows = rows4
    else:
        rows = [("fermat", [X, Y, Z, W, U], "x^D + y^D + z^D + w^D + u^D", (5, 5), False)]
        for key, curves, target, (lo, hi), corr in rows4[1:]:
            if isinstance(target, Poly):
                target = str(target)
            # adding u^d: restricting to u = 0 keeps the lower bound, the upper grows by one
            curves = [c + [[]] if isinstance(c, list) else c for c in curves]
            rows.append((key + "_plus_u", curves + [U], f"{target} + u^D", (lo, hi + 1), corr))
        rows.append(("osculating", osculating_curves(5), osculating_target(5, d), (d, None), True))
    out = []
    for key, specs, target, bracket, corr in rows:
        curves = [c if isinstance(c, list) else _lin(names, c) for c in specs]
        fam = CurveFamily(len(names), d, curves, names=names)
        if not isinstance(target, Poly):
            target = parse_poly(target.replace("D", str(d)), names=names)
        out.append(NormalFormFamily(key, r, fam, target, bracket, corr))
    return out


@dataclass
class Certificate:
    key: str
    degree: int
    plane: LimitPlane
    scaling: Scaling

    @property
    def ok(self) -> bool:
        return self.scaling.found


def certify_normal_form(nf: NormalFormFamily) -> Certificate:
    """Limit plane of the family and a diagonal scaling putting the target inside."""
    plane = limit_plane(nf.family)
    if contains(plane, nf.target):
        sc = Scaling(True, [Fraction(1)] * nf.target.nvars)
    else:
        sc = scaling_into(plane, nf.target)
    return Certificate(nf.key, nf.family.degree, plane, sc)


# the five-curve family for x^2 u + y^2 v + x y z


FIVE_NAMES = ("x", "y", "z", "u", "v")


def five_curve_family() -> CurveFamily:
    """a = x + t(u - z), b = y + t(v - z), c = x + y + t z, d = x + 2y, e = x + 3y."""
    n = FIVE_NAMES

    def c(spec):
        return _lin(n, spec)

    curves = [
        c({"x": [1], "u": [0, 1], "z": [0, -1]}),
        c({"y": [1], "v": [0, 1], "z": [0, -1]}),
        c({"x": [1], "y": [1], "z": [0, 1]}),
        c({"x": [1], "y": [2]}),
        c({"x": [1], "y": [3]}),
    ]
    return CurveFamily(5, 3, curves, names=n)


def five_curve_target() -> Poly:
    return parse_poly("x^2*u + y^2*v + x*y*z", names=FIVE_NAMES)


# x -> x, y -> y, z -> 6z, u -> -u + 4z, v -> -6v + 9z puts the target into the limit plane
FIVE_CURVE_CHANGE = (
    (1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 6, 0, 0),
    (0, 0, 4, -1, 0),
    (0, 0, 9, 0, -6),
)


def five_curve_certificate() -> tuple[LimitPlane, Poly, bool]:
    """(limit plane, transformed target, membership) for the five-curve family."""
    plane = limit_plane(five_curve_family())
    images = [LinearForm(tuple(Fraction(x) for x in row), QQ) for row in FIVE_CURVE_CHANGE]
    g = substitute(five_curve_target(), images, names=FIVE_NAMES)
    return plane, g, contains(plane, g)
