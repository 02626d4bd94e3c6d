"""Catalecticant (flattening) matrices and the lower bounds they give.

Row i, column j of the degree-(s, d-s) catalecticant is the coefficient of the
i-th degree-s monomial in the contraction of f by the j-th degree-(d-s)
monomial. Rows and columns follow the graded-lex monomial order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import LimitExceeded, PreconditionError
from .linalg import Matrix, kernel, rank
from .poly import LinearForm, Poly, falling, monomial_index, monomials, substitute


MAX_ENTRIES = 4_000_000


@dataclass
class Catalecticant:
    matrix: Matrix
    row_basis: tuple
    col_basis: tuple
    s: int


def _sub_exponents(a: tuple, k: int):
    """All e <= a componentwise with |e| = k."""
    if not a:
        if k == 0:
            yield ()
        return
    head, rest = a[0], a[1:]
    rest_total = sum(rest)
    for e0 in range(min(head, k), max(0, k - rest_total) - 1, -1):
        for tail in _sub_exponents(rest, k - e0):
            yield (e0,) + tail


def flattening_matrix(f: Poly, s: int) -> Catalecticant:
    """Catalecticant for any 0 <= s <= deg f (no range restriction)."""
    d, n = f.degree, f.nvars
    if not 0 <= s <= d:
        raise PreconditionError(f"s={s} outside 0..{d}")
    size = math.comb(n + s - 1, s) * math.comb(n + d - s - 1, d - s)
    if size > MAX_ENTRIES:
        raise LimitExceeded(f"catalecticant with {size} entries exceeds the cap of {MAX_ENTRIES}")
    rows_b = monomials(n, s)
    cols_b = monomials(n, d - s)
    ridx = monomial_index(n, s)
    cidx = monomial_index(n, d - s)
    zero = f.field.zero
    mat = [[zero] * len(cols_b) for _ in rows_b]
    for a, c in f.items():
        for e in _sub_exponents(a, d - s):
            factor = 1
            for ai, ei in zip(a, e):
                factor *= falling(ai, ei)
            row = tuple(ai - ei for ai, ei in zip(a, e))
            mat[ridx[row]][cidx[e]] = mat[ridx[row]][cidx[e]] + c * factor
    return Catalecticant(Matrix(mat, len(cols_b), f.field), rows_b, cols_b, s)


def catalecticant(f: Poly, s: int) -> Catalecticant:
    """The (s, d-s) flattening for 1 <= s <= d-1."""
    if f.is_zero():
        raise PreconditionError("catalecticant of the zero form")
    if not 1 <= s <= f.degree - 1:
        raise PreconditionError(f"s={s} must satisfy 1 <= s <= {f.degree - 1}")
    return flattening_matrix(f, s)


def catalecticant_rank(f: Poly, s: int) -> int:
    return rank(catalecticant(f, s).matrix)


@dataclass
class FlatteningBound:
    value: int
    s: int
    ranks: dict


def flattening_lower_bound(f: Poly) -> FlatteningBound:
    """max over 1 <= s <= floor(d/2) of rank; ties go to the smaller s.

    Every s is evaluated since the rank sequence need not be unimodal.
    """
    if f.is_zero():
        raise PreconditionError("flattening bound of the zero form")
    d = f.degree
    if d == 1:
        return FlatteningBound(1, 1, {1: 1})
    ranks = {s: catalecticant_rank(f, s) for s in range(1, d // 2 + 1)}
    best = max(ranks.values())
    s_best = min(s for s, r in ranks.items() if r == best)
    return FlatteningBound(best, s_best, ranks)


def span_dim(f: Poly) -> int:
    """Dimension of the span of the first partial derivatives."""
    if f.is_zero():
        raise PreconditionError("span of the zero form")
    if f.degree == 0:
        return 0
    return rank(flattening_matrix(f, 1).matrix) if f.degree > 1 else 1


@dataclass
class Reduction:
    reduced: Poly
    change: list
    essential: int


def essential_variables(f: Poly) -> Reduction:
    """Rewrite f in span_dim(f) variables by an invertible linear change.

    ``change`` is the matrix M with x = M y; the reduced form is f(M y)
    restricted to its first k variables. Columns of M beyond k span the
    directions along which f is constant.
    """
    n = f.nvars
    if f.degree == 0:
        raise PreconditionError("degree 0 forms have no essential variables")
    cat = flattening_matrix(f, 1).matrix  # rows: x_i (dual), cols: degree d-1 monomials
    ker = kernel(cat.transpose())  # vectors v with sum v_i d_i f = 0
    k = n - len(ker)
    # complete the kernel to a basis with standard vectors
    chosen: list[list] = []
    basis_rows = [list(v) for v in ker]
    for i in range(n):
        e = [f.field.zero] * n
        e[i] = f.field.one
        trial = basis_rows + chosen + [e]
        if rank(Matrix(trial, n, f.field)) == len(trial):
            chosen.append(e)
        if len(chosen) == k:
            break
    cols = chosen + basis_rows
    m = [[cols[j][i] for j in range(n)] for i in range(n)]
    g = substitute(f, [LinearForm(tuple(row), f.field) for row in m])
    return Reduction(_drop(g, k), m, k)


def _drop(g: Poly, k: int) -> Poly:
    terms = {}
    for e, c in g.items():
        if any(e[k:]):
            raise PreconditionError("reduction left a dependence on a dropped variable")
        terms[e[:k]] = c
    return Poly(k, g.degree, terms, g.field)



# Koszul-Young flattenings


@dataclass
class KoszulBound:
    value: int
    p: int
    delta: int
    rank: int
    divisor: int


def koszul_matrix(f: Poly, p: int, delta: int) -> Matrix:
    """The map S^delta W* (x) L^p W -> S^(d-delta-1) W (x) L^(p+1) W.

    alpha (x) w goes to sum_i d_i(d^alpha f) (x) (e_i ^ w). A d-th power of a
    linear form maps to a matrix of rank C(n-1, p), so border rank is at
    least rank / C(n-1, p).
    """
    n, d = f.nvars, f.degree
    if not 0 <= delta <= d - 1:
        raise PreconditionError("need 0 <= delta <= d - 1")
    if not 0 <= p <= n - 1:
        raise PreconditionError("need 0 <= p <= n - 1")
    wedge_p = list(itertools.combinations(range(n), p))
    wedge_q = {w: k for k, w in enumerate(itertools.combinations(range(n), p + 1))}
    out_mons = monomial_index(n, d - delta - 1)
    nrows = len(out_mons) * len(wedge_q)
    cols = []
    for alpha in monomials(n, delta):
        fa = f.derive(alpha)
        partials = [fa.diff(i) for i in range(n)]
        for om in wedge_p:
            col = [f.field.zero] * nrows
            for i in range(n):
                if i in om:
                    continue
                w = tuple(sorted(om + (i,)))
                sign = -1 if sum(1 for x in om if x < i) % 2 else 1
                base = wedge_q[w] * len(out_mons)
                for e, c in partials[i].items():
                    col[base + out_mons[e]] = col[base + out_mons[e]] + c * sign
            cols.append(col)
    return Matrix.from_columns(cols, nrows, f.field)


def koszul_lower_bound(f: Poly, max_size: int = 1500) -> KoszulBound | None:
    """Best Koszul-Young flattening bound over p, with delta = floor((d-1)/2).

    Only shapes whose smaller side is at most ``max_size`` are tried; returns
    None when nothing fits or n < 3.
    """
    n, d = f.nvars, f.degree
    if n < 3 or d < 2 or f.is_zero():
        return None
    delta = (d - 1) // 2
    best = None
    for p in range(1, n - 1):
        ncols = math.comb(n + delta - 1, delta) * math.comb(n, p)
        nrows = math.comb(n + d - delta - 2, d - delta - 1) * math.comb(n, p + 1)
        if min(ncols, nrows) > max_size:
            continue
        r = rank(koszul_matrix(f, p, delta))
        div = math.comb(n - 1, p)
        val = -(-r // div)
        if best is None or val > best.value:
            best = KoszulBound(val, p, delta, r, div)
    return best
