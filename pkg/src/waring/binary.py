"""Exact Waring rank of binary forms (Sylvester's algorithm, Comas-Seiguer form).

Let r be the least s for which some nonzero degree-s dual form q annihilates f
(q(d/dx) f = 0). Then the border rank is r, and the rank is r when that
kernel holds a square-free element and d - r + 2 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import univariate as up
from .errors import InexactField, LimitExceeded, PreconditionError
from .flatten import flattening_matrix
from .linalg import Matrix, kernel, solve
from .poly import LinearForm, Poly, binary_to_univariate, monomials, square_free, substitute
from .scalar import CC, QQ, QQI, Field, GaussianRational

SQUARE_FREE = "square-free kernel element"
MULTIPLE_ROOT = "every kernel element has a multiple root"


@dataclass
class BinaryCertificate:
    r: int
    kernel_dim: int
    case: str
    witness: Poly | None
    kernel_basis: list = dc_field(default_factory=list)


@dataclass
class BinaryRank:
    rank: int
    border_rank: int
    certificate: BinaryCertificate


def apolar_kernel(f: Poly, s: int) -> list[Poly]:
    """Basis of the degree-s dual forms annihilating f, as binary forms."""
    # columns of the (d-s, s) flattening are indexed by the degree-s dual monomials
    cat = flattening_matrix(f, f.degree - s)
    basis = kernel(cat.matrix)
    return [Poly(2, s, dict(zip(cat.col_basis, v)), f.field) for v in basis]


def _combine(basis: list[Poly], coeffs: tuple, fld: Field) -> Poly:
    acc = basis[0].scale(coeffs[0])
    for q, c in zip(basis[1:], coeffs[1:]):
        if c:
            acc = acc + q.scale(c)
    return acc


def _grid_by_sum(k: int, top: int):
    """Points of {0..top-1}^k, nonzero, in order of increasing coordinate sum."""

    def parts(total: int, slots: int):
        if slots == 1:
            if total < top:
                yield (total,)
            return
        for first in range(min(total, top - 1), -1, -1):
            for rest in parts(total - first, slots - 1):
                yield (first,) + rest

    for total in range(1, k * (top - 1) + 1):
        yield from parts(total, k)


def find_square_free(basis: list[Poly], grid_cap: int = 2_000_000, accept=None) -> Poly | None:
    """A square-free member of span(basis), or None if there is none.

    The discriminant of sum c_i Q_i has degree at most 2(r-1) in each c_i, so
    if it is not identically zero it is nonzero somewhere on any grid with 2r
    values per coordinate; the grid used is {0, 1, -1, ..., r}^k.
    ``accept`` optionally narrows the search to members passing a predicate.
    """
    if not basis:
        return None
    fld = basis[0].field
    r = basis[0].degree
    if len(basis) == 1:
        ok = square_free(basis[0]) and (accept is None or accept(basis[0]))
        return basis[0] if ok else None
    # 2r distinct values per coordinate: 0, 1, -1, 2, -2, ...
    values = [0] + [s * k for k in range(1, r + 1) for s in (1, -1)][: 2 * r - 1]
    for visited, c in enumerate(_grid_by_sum(len(basis), 2 * r)):
        if visited >= grid_cap:
            raise LimitExceeded(f"square-free search exceeded {grid_cap} grid points")
        q = _combine(basis, tuple(fld(values[x]) for x in c), fld)
        if not q.is_zero() and square_free(q) and (accept is None or accept(q)):
            return q
    return None


def sylvester_rank(f: Poly) -> BinaryRank:
    """Exact rank and border rank of a nonzero binary form over an exact field."""
    if f.nvars != 2:
        raise PreconditionError("sylvester_rank needs a binary form")
    if not f.field.exact:
        raise InexactField("sylvester_rank needs exact coefficients")
    if f.is_zero():
        raise PreconditionError("the zero form has no rank")
    d = f.degree
    if d == 0:
        raise PreconditionError("constants have no rank")
    for s in range(1, d + 1):
        basis = apolar_kernel(f, s)
        if basis:
            r = s
            break
    q = find_square_free(basis)
    if q is not None:
        cert = BinaryCertificate(r, len(basis), SQUARE_FREE, q, basis)
        return BinaryRank(r, r, cert)
    cert = BinaryCertificate(r, len(basis), MULTIPLE_ROOT, None, basis)
    return BinaryRank(d - r + 2, r, cert)


def rank_of_binary_restriction(f: Poly, plane: tuple[LinearForm, LinearForm]) -> BinaryRank:
    """Rank of f restricted to the plane spanned by two points.

    The restriction is f(u*p + v*q) for the two given coefficient vectors p, q.
    Restriction is a linear specialization, so the result bounds R(f) below.
    """
    p, q = plane
    if p.nvars != f.nvars or q.nvars != f.nvars:
        raise PreconditionError("plane vectors must match the variable count")
    from .linalg import rank

    if rank(Matrix([list(p.coeffs), list(q.coeffs)], f.nvars, p.field)) < 2:
        raise PreconditionError("degenerate plane: the two vectors are dependent")
    images = [LinearForm((a, b), p.field) for a, b in zip(p.coeffs, q.coeffs)]
    g = substitute(f, images)
    if g.is_zero():
        raise PreconditionError("f vanishes identically on the plane")
    return sylvester_rank(g)


# decompositions


def _rational_roots(p: list) -> list[Fraction] | None:
    """All roots of p over QQ with multiplicity one, if p splits over QQ; else None."""
    from math import gcd, isqrt

    p = up.trim([Fraction(c) for c in p])
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    roots: list[Fraction] = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) == 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    if max(a0, an) > 10**6:
        return None

    def divisors(n: int) -> list[int]:
        small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
        return sorted(set(small + [n // k for k in small]))

    cur = [Fraction(c) for c in ints]
    for num in divisors(a0):
        for den_ in divisors(an):
            for sign in (1, -1):
                x = Fraction(sign * num, den_)
                while len(cur) > 1 and up.evaluate(cur, x) == 0:
                    roots.append(x)
                    cur = up.divmod_(cur, [-x, Fraction(1)])[0]
    if len(cur) > 1:
        return None
    return roots


def _exact_roots(p: list, fld: Field) -> list | None:
    """Roots of a univariate polynomial inside the field, when it splits there."""
    p = up.trim(p)
    deg = len(p) - 1
    if deg <= 0:
        return []
    if fld is QQ:
        return _rational_roots(p)
    if fld is QQI:
        if deg == 1:
            return [-p[0] / p[1]]
        if deg == 2:
            a, b, c = p[2], p[1], p[0]
            disc = GaussianRational(b * b - 4 * a * c)
            s = disc.sqrt()
            if s is None:
                return None
            return [(-b + s) / (2 * a), (-b - s) / (2 * a)]
        if all(isinstance(c, GaussianRational) and c.im == 0 for c in p):
            rr = _rational_roots([c.re for c in p])
            return None if rr is None else [GaussianRational(x) for x in rr]
    return None


def _points_of(q: Poly, fld: Field) -> list[tuple] | None:
    """Points (a, b) with q(a, b) = 0 for a square-free binary form q."""
    p, ymult = binary_to_univariate(q)
    roots = _exact_roots(p, fld) if fld.exact else None
    if roots is None:
        return None
    pts = [(fld(x), fld.one) for x in roots]
    if ymult:
        pts.append((fld.one, fld.zero))
    return pts


def _numeric_points(q: Poly, prec: int) -> list[tuple]:
    F = CC(prec)
    ctx = F.ctx
    p, ymult = binary_to_univariate(q)
    coeffs = [F(c) for c in reversed(up.trim(p))]
    roots = ctx.polyroots(coeffs, maxsteps=200, extraprec=prec) if len(coeffs) > 1 else []
    pts = [(F(x), F.one) for x in roots]
    if ymult:
        pts.append((F.one, F.zero))
    return pts


def witness_of_order(f: Poly, order: int) -> Poly:
    """A square-free annihilating form of the given degree (order >= rank).

    Witnesses whose roots lie in the coefficient field are preferred.
    """
    basis = apolar_kernel(f, order)
    q = None
    if f.field.exact:
        try:
            q = find_square_free(basis, grid_cap=300, accept=lambda w: _points_of(w, f.field) is not None)
        except LimitExceeded:
            q = None
    if q is None:
        q = find_square_free(basis)
    if q is None:
        raise PreconditionError(f"no square-free annihilator of degree {order}")
    return q


def decompose(f: Poly, prec: int = 256):
    """A minimal power-sum decomposition of a binary form.

    Exact when the square-free witness splits over the coefficient field,
    otherwise its roots are found numerically and the decomposition lives
    over the complex big-float field.
    """
    from .decomp import Decomposition, Term

    info = sylvester_rank(f)
    R = info.rank
    q = witness_of_order(f, R)
    pts = _points_of(q, f.field)
    fld = f.field
    if pts is None:
        pts = _numeric_points(q, prec)
        fld = CC(prec)
    d = f.degree
    # f = sum lambda_k (a_k x + b_k y)^d; match coefficients of x^(d-j) y^j
    rows = []
    rhs = []
    for j, (a_e, b_e) in enumerate(monomials(2, d)):
        from math import comb

        rows.append([fld(comb(d, j)) * a**a_e * b**b_e for a, b in pts])
        rhs.append(fld(f.coefficient((a_e, b_e))))
    if fld.exact:
        lam = solve(Matrix(rows, len(pts), fld), rhs)
        if lam is None:
            raise PreconditionError("witness points do not reproduce the form")
    else:
        lam = _least_squares(rows, rhs, fld)
    terms = [Term(c, LinearForm((a, b), fld), d) for c, (a, b) in zip(lam, pts) if c != 0]
    return Decomposition(terms, nvars=2, degree=d, field=fld)


def _least_squares(rows: list[list], rhs: list, fld) -> list:
    ctx = fld.ctx
    A = ctx.matrix(rows)
    b = ctx.matrix(rhs)
    AH = A.transpose_conj()
    return list(ctx.lu_solve(AH * A, AH * b))
