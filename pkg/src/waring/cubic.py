"""Ternary cubics: Hessian, Aronhold invariant and the rank classification.

The Aronhold invariant is the symbolic bracket product (abc)(abd)(acd)(bcd)
evaluated on the symmetric coefficient tensor of f. It vanishes exactly on
the closure of sums of three cubes, so it decides whether the border rank of
a concise cubic is 3 or 4. With this normalization aronhold(xyz) = 1/54.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .binary import sylvester_rank
from .errors import InexactField, PreconditionError
from .flatten import essential_variables, span_dim
from .linalg import Matrix, rank
from .poly import Poly, monomials, parse_poly

_PERMS = [
    (p, 1 if sum(p[a] > p[b] for a in range(3) for b in range(a + 1, 3)) % 2 == 0 else -1)
    for p in itertools.permutations(range(3))
]


def _check(f: Poly) -> None:
    if f.nvars != 3 or f.degree != 3:
        raise PreconditionError("expected a ternary cubic")


def symmetric_tensor(f: Poly) -> dict[tuple[int, int, int], Any]:
    """T with f = sum T_ijk x_i x_j x_k."""
    _check(f)
    out = {}
    for i, j, k in itertools.product(range(3), repeat=3):
        e = [0, 0, 0]
        e[i] += 1
        e[j] += 1
        e[k] += 1
        out[i, j, k] = f.derive(e).coefficient((0, 0, 0)) / f.field(6)
    return out


def aronhold(f: Poly) -> Any:
    """Degree-4 invariant vanishing exactly on border rank <= 3."""
    t = symmetric_tensor(f)
    total = f.field.zero
    for (i1, j1, k1), s1 in _PERMS:
        for (i2, j2, l1), s2 in _PERMS:
            for (i3, k2, l2), s3 in _PERMS:
                a = t[i1, i2, i3]
                if a == 0:
                    continue
                a = a * (s1 * s2 * s3)
                for (j3, k3, l3), s4 in _PERMS:
                    b = t[j1, j2, j3] * t[k1, k2, k3] * t[l1, l2, l3]
                    if b != 0:
                        total = total + a * b * s4
    return total


def hessian(f: Poly) -> Poly:
    """det of the matrix of second partials (a cubic for a ternary cubic)."""
    _check(f)

    def second(i: int, j: int) -> Poly:
        e = [0, 0, 0]
        e[i] += 1
        e[j] += 1
        return f.derive(e)

    h = [[second(i, j) for j in range(3)] for i in range(3)]
    return (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )


def hessian_span(f: Poly) -> int:
    h = hessian(f)
    return 0 if h.is_zero() else span_dim(h)


def singularity_matrix(f: Poly) -> Matrix:
    """Coefficients of the partials of f and of its Hessian.

    Its determinant is, up to a constant, the resultant of the three partials
    of f (the discriminant); its corank grows with the number of singular points.
    """
    h = hessian(f)
    quads = monomials(3, 2)
    gens = [f.diff(i) for i in range(3)] + ([h.diff(i) for i in range(3)] if not h.is_zero() else [])
    return Matrix([[g.coefficient(m) for m in quads] for g in gens], 6, f.field)


def discriminant(f: Poly) -> Any:
    """Determinant of the singularity matrix (zero iff f is singular)."""
    m = singularity_matrix(f)
    if m.nrows < 6:
        return f.field.zero
    rows = [list(r) for r in m.rows]
    det = f.field.one
    for c in range(6):
        p = next((i for i in range(c, 6) if rows[i][c] != 0), None)
        if p is None:
            return f.field.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det = det * rows[c][c]
        for i in range(c + 1, 6):
            if rows[i][c] != 0:
                factor = rows[i][c] / rows[c][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    return det


@dataclass(frozen=True)
class CubicRow:
    key: str
    label: str
    normal_form: str
    rank: int
    border_rank: int


TABLE = [
    CubicRow("triple_line", "triple line", "x^3", 1, 1),
    CubicRow("concurrent_lines", "three concurrent lines", "x^2*y + x*y^2", 2, 2),
    CubicRow("double_line", "double line plus a line", "x^2*y", 3, 2),
    CubicRow("equianharmonic", "smooth, vanishing Aronhold invariant", "y^2*z - x^3 - z^3", 3, 3),
    CubicRow("harmonic", "smooth, harmonic", "y^2*z - x^3 - x*z^2", 4, 4),
    CubicRow("cusp", "cuspidal cubic", "y^2*z - x^3", 4, 3),
    CubicRow("triangle", "triangle", "x*y*z", 4, 4),
    CubicRow("conic_transversal", "conic plus a transversal line", "x^3 + x*y*z", 4, 4),
    CubicRow("smooth", "smooth, generic member of y^2 z = x^3 + a x z^2 + z^3", "y^2*z - x^3 - x*z^2 - z^3", 4, 4),
    CubicRow("nodal", "nodal cubic (a^3 = -27/4 in the same family)", "", 4, 4),
    CubicRow("conic_tangent", "conic plus a tangent line", "x^2*y + y^2*z", 5, 3),
]
ROWS = {r.key: r for r in TABLE}


def table_polynomial(key: str) -> Poly | None:
    row = ROWS[key]
    if not row.normal_form:
        return None
    return parse_poly(row.normal_form, names=("x", "y", "z"))


def nodal_member(prec: int = 256) -> Poly:
    """y^2 z - x^3 - a x z^2 - z^3 with a the real cube root of -27/4."""
    from .scalar import CC

    F = CC(prec)
    a = -F.ctx.cbrt(F.ctx.mpf(27) / 4)
    terms = {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -F(a), (0, 0, 3): -1}
    return Poly(3, 3, terms, F, ("x", "y", "z"))


@dataclass
class CubicClass:
    row: CubicRow
    span_dim: int
    aronhold_zero: bool | None
    hessian_span: int | None
    singular_rank: int | None
    certified: bool

    @property
    def rank(self) -> int:
        return self.row.rank

    @property
    def border_rank(self) -> int:
        return self.row.border_rank


def classify(f: Poly) -> CubicClass:
    """Locate a ternary cubic in the rank table.

    The decision uses only GL-invariant data: the span of first partials, the
    Aronhold invariant, the span of the Hessian's partials and, for the rows
    sharing ranks (4, 4), the rank of the singularity matrix.
    """
    _check(f)
    if not f.field.exact:
        raise InexactField("classification needs exact coefficients")
    if f.is_zero():
        raise PreconditionError("the zero cubic")
    n = span_dim(f)
    if n == 1:
        return CubicClass(ROWS["triple_line"], 1, None, None, None, True)
    if n == 2:
        g = essential_variables(f).reduced
        br = sylvester_rank(g)
        key = "concurrent_lines" if br.rank == 2 else "double_line"
        return CubicClass(ROWS[key], 2, None, None, None, True)
    s = aronhold(f)
    hs = hessian_span(f)
    if s == 0:
        key = {3: "equianharmonic", 2: "cusp", 1: "conic_tangent"}.get(hs)
        if key is None:
            raise PreconditionError("unexpected Hessian for a concise cubic")
        return CubicClass(ROWS[key], 3, True, hs, None, True)
    sr = rank(singularity_matrix(f))
    if sr == 3:
        key = "triangle"
    elif sr == 4:
        key = "conic_transversal"
    elif sr == 5:
        key = "nodal"
    else:
        # smooth: harmonic exactly when disc = -1259712 * S^3 in this normalization
        key = "harmonic" if discriminant(f) == -1259712 * s**3 else "smooth"
    return CubicClass(ROWS[key], 3, False, hs, sr, True)
