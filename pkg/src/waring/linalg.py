"""Exact linear algebra: echelon forms, ranks and kernels, plus limits of
column spans along a rational curve t -> 0.

Rational matrices are eliminated fraction-free on integer rows (each row is
scaled by the lcm of its denominators, and rows are kept primitive). Other
exact fields use ordinary Gauss-Jordan elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import univariate as up
from .errors import InexactField, PreconditionError
from .scalar import QQ, Field


class Matrix:
    """A dense matrix stored as a list of rows."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Sequence[Sequence[Any]], ncols: int | None = None, field: Field | Any = QQ) -> None:
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise PreconditionError("ragged matrix")
        self.field = field

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Any]], nrows: int | None = None, field: Any = QQ) -> Matrix:
        if not cols:
            return cls([[] for _ in range(nrows or 0)], 0, field)
        return cls([list(r) for r in zip(*cols)], len(cols), field)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows, self.field)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise PreconditionError("shape mismatch in product")
        cols = other.columns()
        return Matrix(
            [[sum((a * b for a, b in zip(r, c)), 0) for c in cols] for r in self.rows], other.ncols, self.field
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows and self.ncols == other.ncols

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


def _is_rational_matrix(m: Matrix) -> bool:
    return all(isinstance(x, (int, Fraction)) for r in m.rows for x in r)


def _integer_rows(rows: Sequence[Sequence[Any]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (pivot rows, pivot columns)."""
    work = [r for r in rows if any(r)]
    pivots: list[int] = []
    done: list[list[int]] = []
    for c in range(ncols):
        if not work:
            break
        p = next((i for i, r in enumerate(work) if r[c] != 0), None)
        if p is None:
            continue
        prow = work.pop(p)
        a = prow[c]
        rest = []
        for r in work:
            b = r[c]
            if b:
                g = math.gcd(a, b)
                fa, fb = a // g, b // g
                r = [fa * x - fb * y for x, y in zip(r, prow)]
                if not any(r):
                    continue
                r = _primitive(r)
            rest.append(r)
        work = rest
        done.append(prow)
        pivots.append(c)
    return done, pivots


def _field_echelon(rows: list[list[Any]], ncols: int) -> tuple[list[list[Any]], list[int]]:
    """Gauss-Jordan over an exact field; rows come back reduced with unit pivots."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = 1 / work[r][c] if not isinstance(work[r][c], int) else Fraction(1, work[r][c])
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def _check_exact(m: Matrix) -> None:
    if getattr(m.field, "exact", True) is False:
        raise InexactField("exact elimination requested over a floating field")


def rank(m: Matrix) -> int:
    _check_exact(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if _is_rational_matrix(m):
        return len(_int_echelon(_integer_rows(m.rows), m.ncols)[1])
    return len(_field_echelon(m.rows, m.ncols)[1])


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    _check_exact(m)
    if m.nrows == 0 or m.ncols == 0:
        return Matrix([], m.ncols, m.field), []
    if _is_rational_matrix(m):
        ech, piv = _int_echelon(_integer_rows(m.rows), m.ncols)
        rows = [[Fraction(x) for x in r] for r in ech]
        for k in range(len(rows) - 1, -1, -1):
            c = piv[k]
            lead = rows[k][c]
            rows[k] = [x / lead for x in rows[k]]
            for i in range(k):
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
        return Matrix(rows, m.ncols, m.field), piv
    rows, piv = _field_echelon(m.rows, m.ncols)
    return Matrix(rows, m.ncols, m.field), piv


def kernel(m: Matrix) -> list[list]:
    """Basis of the right kernel {v : m v = 0}."""
    red, piv = rref(m)
    one = m.field.one if hasattr(m.field, "one") else Fraction(1)
    zero = one - one
    free = [j for j in range(m.ncols) if j not in set(piv)]
    basis = []
    for fcol in free:
        v = [zero] * m.ncols
        v[fcol] = one
        for row, pc in zip(red.rows, piv):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def left_kernel(m: Matrix) -> list[list]:
    """Basis of {w : w^T m = 0}."""
    return kernel(m.transpose())


def solve(m: Matrix, b: Sequence[Any]) -> list | None:
    """One solution of m x = b, or None when inconsistent."""
    aug = Matrix([list(r) + [bi] for r, bi in zip(m.rows, b)], m.ncols + 1, m.field)
    red, piv = rref(aug)
    if m.ncols in piv:
        return None
    one = m.field.one if hasattr(m.field, "one") else Fraction(1)
    x = [one - one] * m.ncols
    for row, pc in zip(red.rows, piv):
        x[pc] = row[-1]
    return x


def in_column_span(basis: Sequence[Sequence[Any]], v: Sequence[Any], field: Any = QQ) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    m = Matrix.from_columns(basis, field=field)
    return rank(Matrix.from_columns(list(basis) + [list(v)], field=field)) == rank(m)


# rational functions in one variable t over QQ


class RatFun:
    """An element of QQ(t), kept as num/den with den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[Any] = (), den: Sequence[Any] = (1,)) -> None:
        n = up.trim([Fraction(x) for x in num])
        d = up.trim([Fraction(x) for x in den])
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        if not n:
            self.num, self.den = [], [Fraction(1)]
            return
        g = up.gcd(n, d)
        if len(g) > 1:
            n = up.divmod_(n, g)[0]
            d = up.divmod_(d, g)[0]
        lead = d[-1]
        self.num = [x / lead for x in n]
        self.den = [x / lead for x in d]

    @classmethod
    def const(cls, c: Any) -> RatFun:
        return cls([c])

    @classmethod
    def t(cls, power: int = 1) -> RatFun:
        if power >= 0:
            return cls([0] * power + [1])
        return cls([1], [0] * (-power) + [1])

    @staticmethod
    def _lift(x: Any) -> RatFun | None:
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun([x])
        return None

    def __add__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFun(up.add(self.num, o.num), self.den)
        return RatFun(up.add(up.mul(self.num, o.den), up.mul(o.num, self.den)), up.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        out = RatFun.__new__(RatFun)
        out.num, out.den = [-x for x in self.num], self.den
        return out

    def __sub__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFun(up.mul(self.num, o.num), up.mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(up.mul(self.num, o.den), up.mul(self.den, o.num))

    def __rtruediv__(self, other: Any) -> RatFun:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((tuple(self.num), tuple(self.den)))

    def __call__(self, t: Any) -> Any:
        d = up.evaluate(self.den, t)
        if d == 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return up.evaluate(self.num, t) / d

    def valuation(self) -> int | None:
        """Order of vanishing at t = 0 (negative for a pole), None for zero."""
        if not self.num:
            return None
        return up.valuation(self.num) - up.valuation(self.den)

    def __repr__(self) -> str:
        return f"RatFun({self.num}, {self.den})"


class RatFunField:
    """Field-like marker so matrices over QQ(t) can report their field."""

    name = "QQ(t)"
    exact = True
    level = 3
    one = RatFun([1])
    zero = RatFun([])

    def __call__(self, x: Any) -> RatFun:
        return x if isinstance(x, RatFun) else RatFun([x])


QQt = RatFunField()


class DependentColumns(PreconditionError):
    """Raised when curve columns are linearly dependent over QQ(t)."""

    def __init__(self, witness: list[RatFun]) -> None:
        super().__init__("columns are dependent over QQ(t)")
        self.witness = witness


@dataclass
class ColumnLimit:
    basis: list[list[Fraction]]
    vanishing_order: int
    steps: int


def _to_polynomial_columns(m: Matrix) -> tuple[list[list[list[Fraction]]], list[list[Fraction]]]:
    """Clear denominators column by column; entries become coefficient lists."""
    cols, clears = [], []
    for j in range(m.ncols):
        entries = [QQt(x) for x in m.column(j)]
        den: list[Fraction] = [Fraction(1)]
        for e in entries:
            if len(e.den) > 1:
                den = up.mul(den, up.divmod_(e.den, up.gcd(den, e.den))[0])
        polys = [up.mul(e.num, up.divmod_(den, e.den)[0]) if e.num else [] for e in entries]
        cols.append(polys)
        clears.append(den)
    return cols, clears


def limit_column_space(m: Matrix, max_steps: int = 100000) -> ColumnLimit:
    """Limit as t -> 0 of the column span of a matrix over QQ(t).

    Columns are reduced over QQ(t) with constant-coefficient column
    operations. Whenever the leading coefficient vectors are dependent, the
    dependency is applied to the column of largest t-degree, which then gains
    a factor of t that is cleared. The leading vectors at the end span the
    limit, and the total power of t cleared is the vanishing order.
    """
    pcols, clears = _to_polynomial_columns(m)
    return limit_polynomial_columns(pcols, clears, max_steps)


def limit_polynomial_columns(
    pcols: list[list[list[Fraction]]], clears: list[list[Fraction]] | None = None, max_steps: int = 100000
) -> ColumnLimit:
    """limit_column_space for columns given as lists of polynomial entries in t.

    ``pcols[j][i]`` is the coefficient list (lowest degree first) of row i of
    column j. ``clears`` are the denominators already cleared per column, used
    only to report a dependency witness in terms of the original columns.
    """
    r = len(pcols)
    nrows = len(pcols[0]) if pcols else 0
    if clears is None:
        clears = [[Fraction(1)]] * r
    if r > nrows:
        raise DependentColumns([])
    # series[j][k] is the coefficient vector of t^k in column j
    series: list[list[list[Fraction]]] = []
    for col in pcols:
        depth = max((len(p) for p in col), default=0)
        series.append([[Fraction(p[k]) if k < len(p) else Fraction(0) for p in col] for k in range(depth)])
    transform = [[RatFun([1]) if i == j else RatFun() for i in range(r)] for j in range(r)]
    order = 0
    steps = 0
    while True:
        for j in range(r):
            s = series[j]
            v = next((k for k, vec in enumerate(s) if any(vec)), None)
            if v is None:
                witness = [transform[j][i] * RatFun(clears[i]) for i in range(r)]
                raise DependentColumns(witness)
            if v:
                series[j] = s[v:]
                order += v
                tv = RatFun.t(-v)
                transform[j] = [x * tv for x in transform[j]]
            while series[j] and not any(series[j][-1]):
                series[j].pop()
        lead = Matrix.from_columns([s[0] for s in series], nrows)
        ker = kernel(lead)
        if not ker:
            return ColumnLimit([list(s[0]) for s in series], order, steps)
        steps += 1
        if steps > max_steps:
            raise PreconditionError("limit computation did not terminate within the step cap")
        kappa = ker[0]
        involved = [j for j in range(r) if kappa[j] != 0]
        j0 = max(involved, key=lambda j: (len(series[j]), j))
        depth = max(len(series[j]) for j in involved)
        new = []
        for k in range(depth):
            acc = [Fraction(0)] * nrows
            for j in involved:
                if k < len(series[j]):
                    c = kappa[j]
                    acc = [a + c * x for a, x in zip(acc, series[j][k])]
            new.append(acc)
        series[j0] = new
        transform[j0] = [
            sum((transform[j][i] * kappa[j] for j in involved), RatFun()) for i in range(r)
        ]


def generic_rank(m: Matrix) -> int:
    """Rank over QQ(t) by direct elimination."""
    conv = Matrix([[QQt(x) for x in row] for row in m.rows], m.ncols, QQt)
    return len(_field_echelon(conv.rows, conv.ncols)[1])


def map_entries(m: Matrix, fn: Callable[[Any], Any], field: Any = None) -> Matrix:
    return Matrix([[fn(x) for x in r] for r in m.rows], m.ncols, field or m.field)
