"""Explicit power-sum expressions for the named forms, plus pinned values.

Entries with rational or Gaussian constants verify exactly; entries with
cube roots of unity or other radicals are evaluated in the big-float field.
A summand a^2 b is expanded as (1/6)((a+b)^3 - (a-b)^3 - 2 b^3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .decomp import Decomposition, Term, product_decomposition, verify
from .errors import PreconditionError
from .linalg import Matrix, solve
from .poly import LinearForm, Poly, parse_poly, power_of_linear
from .scalar import CC, QQ, QQI, Field, GaussianRational

XYZ = ("x", "y", "z")


@dataclass
class CatalogEntry:
    key: str
    description: str
    target: Poly
    decomposition: Decomposition
    claimed_rank: int | None = None
    derived: bool = False
    note: str = ""

    @property
    def length(self) -> int:
        return len(self.decomposition)


class _Builder:
    """Accumulates power terms of one degree over a field."""

    def __init__(self, field: Field, nvars: int, degree: int) -> None:
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms: list[Term] = []

    def form(self, coeffs) -> LinearForm:
        return LinearForm(tuple(self.field(c) for c in coeffs), self.field)

    def power(self, coeff: Any, coeffs) -> None:
        self.terms.append(Term(self.field(coeff), self.form(coeffs), self.degree))

    def square_times(self, coeff: Any, a, b) -> None:
        """coeff * a^2 b as three cubes."""
        F = self.field
        k = F(coeff) / F(6)
        s = [F(p) + F(q) for p, q in zip(a, b)]
        t = [F(p) - F(q) for p, q in zip(a, b)]
        self.power(k, s)
        self.power(-k, t)
        self.power(-2 * k, b)

    def build(self) -> Decomposition:
        return Decomposition(self.terms, self.nvars, self.degree, self.field)


def _cubic(text: str, field: Field = QQ) -> Poly:
    return parse_poly(text, names=XYZ).to_field(field) if field is not QQ else parse_poly(text, names=XYZ)


def _consts(F: Field) -> dict:
    ctx = F.ctx
    i = ctx.mpc(0, 1)
    return {
        "i": i,
        "w": ctx.exp(2 * ctx.pi * i / 3),
        "r3": ctx.sqrt(3),
        "q3": ctx.root(3, 4),
    }


def _concurrent_lines(prec: int) -> CatalogEntry:
    F = CC(prec)
    c = _consts(F)
    w, k = c["w"], 1 / (3 * c["r3"] * c["i"])
    b = _Builder(F, 3, 3)
    b.power(k, (w, -1, 0))
    b.power(-k, (w**2, -1, 0))
    return CatalogEntry("cubic.concurrent_lines", "xy(x+y) with cube roots of unity", _cubic("x^2*y + x*y^2", F), b.build(), 2)


def _double_line(prec: int) -> CatalogEntry:
    b = _Builder(QQ, 3, 3)
    b.square_times(1, (1, 0, 0), (0, 1, 0))
    return CatalogEntry("cubic.double_line", "x^2 y", _cubic("x^2*y"), b.build(), 3)


def _cusp(prec: int) -> CatalogEntry:
    b = _Builder(QQ, 3, 3)
    k = Fraction(1, 6)
    b.power(k, (0, 1, 1))
    b.power(-k, (0, 1, -1))
    b.power(-2 * k, (0, 0, 1))
    b.power(-1, (1, 0, 0))
    return CatalogEntry(
        "cubic.cusp",
        "y^2 z - x^3",
        _cubic("y^2*z - x^3"),
        b.build(),
        4,
        derived=True,
        note="sign of (y-z)^3 corrected to minus: with a plus sign the cubes give (y^3 + 3yz^2 - z^3)/3",
    )


def cusp_printed() -> Decomposition:
    """The cusp identity with the plus sign, which does not reproduce y^2 z - x^3."""
    b = _Builder(QQ, 3, 3)
    k = Fraction(1, 6)
    b.power(k, (0, 1, 1))
    b.power(k, (0, 1, -1))
    b.power(-2 * k, (0, 0, 1))
    b.power(-1, (1, 0, 0))
    return b.build()


def _triangle(prec: int) -> CatalogEntry:
    b = _Builder(QQ, 3, 3)
    k = Fraction(1, 24)
    b.power(k, (1, 1, 1))
    b.power(-k, (-1, 1, 1))
    b.power(-k, (1, -1, 1))
    b.power(-k, (1, 1, -1))
    return CatalogEntry("cubic.triangle", "xyz", _cubic("x*y*z"), b.build(), 4)


CONIC_TRANSVERSAL_FORMS = ((4, 1, 1), (4, -1, -1), (2, 1, -1), (2, -1, 1))


def conic_transversal_coefficients() -> list[Fraction]:
    """Solve sum c_k l_k^3 = x^3 + xyz over the four stated cubes."""
    target = _cubic("x^3 + x*y*z")
    cols = [power_of_linear(LinearForm(tuple(QQ(c) for c in f), QQ), 3) for f in CONIC_TRANSVERSAL_FORMS]
    mons = sorted({e for p in cols + [target] for e, _ in p.items()})
    m = Matrix([[p.coefficient(e) for p in cols] for e in mons], 4, QQ)
    sol = solve(m, [target.coefficient(e) for e in mons])
    if sol is None:
        raise PreconditionError("the four cubes do not span x^3 + xyz")
    return sol


def _conic_transversal(prec: int) -> CatalogEntry:
    b = _Builder(QQ, 3, 3)
    for c, f in zip(conic_transversal_coefficients(), CONIC_TRANSVERSAL_FORMS):
        b.power(c, f)
    return CatalogEntry(
        "cubic.conic_transversal",
        "x(x^2 + yz)",
        _cubic("x^3 + x*y*z"),
        b.build(),
        4,
        derived=True,
        note="coefficients solved exactly for the four cubes; the printed first term has exponent 4",
    )


def _harmonic(prec: int) -> CatalogEntry:
    F = CC(prec)
    c = _consts(F)
    i, r3, q3 = c["i"], c["r3"], c["q3"]
    k = -1 / (12 * r3)
    b = _Builder(F, 3, 3)
    for f in ((r3, q3 * i, 1), (r3, -q3 * i, 1), (r3, q3, -1), (r3, -q3, -1)):
        b.power(k, f)
    return CatalogEntry("cubic.harmonic", "y^2 z - x^3 - x z^2", _cubic("y^2*z - x^3 - x*z^2", F), b.build(), 4)


def _equianharmonic(prec: int) -> CatalogEntry:
    F = CC(prec)
    c = _consts(F)
    w, k = c["w"], 1 / (6 * c["r3"] * c["i"])
    b = _Builder(F, 3, 3)
    b.power(k, (0, -1, 2 * w + 1))
    b.power(-k, (0, -1, 2 * w**2 + 1))
    b.power(-1, (1, 0, 0))
    return CatalogEntry("cubic.equianharmonic", "y^2 z - x^3 - z^3", _cubic("y^2*z - x^3 - z^3", F), b.build(), 3)


def weierstrass_decomposition(a: Any, F: Field) -> Decomposition:
    """y^2 z - x^3 - a x z^2 - z^3 as z(y-z)(y+z) - x(x - sqrt(a) i z)(x + sqrt(a) i z), four cubes."""
    c = _consts(F)
    w, i = c["w"], c["i"]
    k = 1 / (6 * c["r3"] * i)
    s = F.ctx.sqrt(F(a)) * i
    b = _Builder(F, 3, 3)
    # 2 w z - (y - z) and 2 w^2 z - (y - z)
    b.power(k, (0, -1, 2 * w + 1))
    b.power(-k, (0, -1, 2 * w**2 + 1))
    # w p - q and w^2 p - q with p = x - s z, q = x + s z
    b.power(-k, (w - 1, 0, -w * s - s))
    b.power(k, (w**2 - 1, 0, -(w**2) * s - s))
    return b.build()


def _smooth(prec: int) -> CatalogEntry:
    F = CC(prec)
    return CatalogEntry(
        "cubic.smooth",
        "y^2 z - x^3 - x z^2 - z^3 (a = 1)",
        _cubic("y^2*z - x^3 - x*z^2 - z^3", F),
        weierstrass_decomposition(1, F),
        4,
    )


def _nodal(prec: int) -> CatalogEntry:
    from .cubic import nodal_member

    F = CC(prec)
    target = nodal_member(prec)
    a = -F.ctx.cbrt(F.ctx.mpf(27) / 4)
    return CatalogEntry("cubic.nodal", "nodal member a^3 = -27/4", target, weierstrass_decomposition(a, F), 4)


def _conic_tangent(prec: int) -> CatalogEntry:
    F = CC(prec)
    c = _consts(F)
    w, k = c["w"], 1 / (6 * c["r3"] * c["i"])
    b = _Builder(F, 3, 3)
    b.power(k, (-1, 2 * w + 1, 0))
    b.power(-k, (-1, 2 * w**2 + 1, 0))
    b.power(Fraction(1, 6), (0, 2, 1))
    b.power(Fraction(1, 6), (0, 0, 1))
    b.power(Fraction(-1, 3), (0, 1, 1))
    return CatalogEntry("cubic.conic_tangent", "y(x^2 + yz)", _cubic("x^2*y + y^2*z", F), b.build(), 5)


# x times a sum of squares


def lq_parameters(m: int, cube: bool = False) -> list[Fraction]:
    """a_j with sum a_j = 0 (or -1 with the extra x^3) and every -3 a_j a square in Q(i)."""
    if m < 2:
        raise PreconditionError("m must be at least 2")
    third = Fraction(1, 3)
    if cube:
        base = [third, Fraction(-4, 3)] if m % 2 == 0 else [third, Fraction(3, 4), Fraction(-25, 12)]
    else:
        base = [third, -third] if m % 2 == 0 else [Fraction(3), Fraction(16, 3), Fraction(-25, 3)]
    while len(base) < m:
        base += [third, -third]
    return base


def lq_decomposition(m: int, cube: bool = False) -> Decomposition:
    """x y_j^2 - a_j x^3 = (1/(6s)) ((s x + y_j)^3 - (-s x + y_j)^3) with s^2 = -3 a_j."""
    n = m + 1
    out = _Builder(QQI, n, 3)
    for j, a in enumerate(lq_parameters(m, cube)):
        s = GaussianRational(-3 * a, 0).sqrt()
        if s is None:
            raise PreconditionError("parameter is not a Gaussian square")
        k = QQI(1) / (6 * s)
        for sign in (1, -1):
            coeffs = [QQI(0)] * n
            coeffs[0] = s * sign
            coeffs[j + 1] = QQI(1)
            out.power(k * sign, coeffs)
    return out.build()


def lq_target(m: int, cube: bool = False) -> Poly:
    names = ("x",) + tuple(f"y{j}" for j in range(1, m + 1))
    text = " + ".join(f"x*y{j}^2" for j in range(1, m + 1)) + (" + x^3" if cube else "")
    return parse_poly(text, names=names)


def _lq(m: int, cube: bool) -> Callable[[int], CatalogEntry]:
    def build(prec: int) -> CatalogEntry:
        dec = lq_decomposition(m, cube)
        a = lq_parameters(m, cube)
        return CatalogEntry(
            f"lq{'_cube' if cube else ''}.m{m}",
            f"x(y1^2 + ... + y{m}^2){' + x^3' if cube else ''}",
            lq_target(m, cube).to_field(QQI),
            dec,
            2 * m,
            note="a = (" + ", ".join(str(x) for x in a) + ")",
        )

    return build


# sums of triangles and the five-variable cubic


def triangles_target(m: int) -> Poly:
    names = tuple(f"{v}{i}" for i in range(1, m + 1) for v in XYZ)
    text = " + ".join(f"x{i}*y{i}*z{i}" for i in range(1, m + 1))
    return parse_poly(text, names=names)


def triangles_decomposition(m: int) -> Decomposition:
    n = 3 * m
    b = _Builder(QQ, n, 3)
    k = Fraction(1, 24)
    for i in range(m):
        for sign, f in ((1, (1, 1, 1)), (-1, (-1, 1, 1)), (-1, (1, -1, 1)), (-1, (1, 1, -1))):
            coeffs = [0] * n
            coeffs[3 * i : 3 * i + 3] = f
            b.power(sign * k, coeffs)
    return b.build()


def _triangles(m: int) -> Callable[[int], CatalogEntry]:
    def build(prec: int) -> CatalogEntry:
        return CatalogEntry(f"triangles.m{m}", f"sum of {m} products x_i y_i z_i", triangles_target(m), triangles_decomposition(m), 4 * m)

    return build


FIVE = ("x", "y", "z", "u", "v")


def _five(prec: int) -> CatalogEntry:
    """(x+y+cz)^3 - (c^2x+z)^3 - (c^2y+z)^3 - x^2(-u-3x+3y-3cz) - y^2(-v+3x-3y-3cz), c^3 = 2,
    equals x^2 u + y^2 v + 6c xyz, so z is replaced by z / (6c)."""
    F = CC(prec)
    c = F.ctx.cbrt(2)
    k = 1 / (6 * c)
    b = _Builder(F, 5, 3)
    b.power(1, (1, 1, c * k, 0, 0))
    b.power(-1, (c**2, 0, k, 0, 0))
    b.power(-1, (0, c**2, k, 0, 0))
    b.square_times(-1, (1, 0, 0, 0, 0), (-3, 3, -3 * c * k, -1, 0))
    b.square_times(-1, (0, 1, 0, 0, 0), (3, -3, -3 * c * k, 0, -1))
    target = parse_poly("x^2*u + y^2*v + x*y*z", names=FIVE).to_field(F)
    return CatalogEntry(
        "five.x2u_y2v_xyz",
        "x^2 u + y^2 v + xyz with nine cubes",
        target,
        b.build(),
        None,
        derived=True,
        note="the uncorrected cubes give x^2 u + y^2 v + 6 * 2^(1/3) xyz; z is rescaled by 1/(6 * 2^(1/3))",
    )


def _product(n: int) -> Callable[[int], CatalogEntry]:
    def build(prec: int) -> CatalogEntry:
        names = tuple(f"x{i}" for i in range(1, n + 1))
        target = parse_poly("*".join(names), names=names)
        return CatalogEntry(f"product.n{n}", f"x1...x{n} with signed sums", target, product_decomposition(n), 8 if n == 4 else None)

    return build


def _ryser(n: int) -> Callable[[int], CatalogEntry]:
    def build(prec: int) -> CatalogEntry:
        from .detperm import perm_poly, ryser_power_sum

        return CatalogEntry(f"perm.n{n}", f"permanent of size {n} from the sign-vector identity", perm_poly(n), ryser_power_sum(n))

    return build


def _det(n: int) -> Callable[[int], CatalogEntry]:
    def build(prec: int) -> CatalogEntry:
        from .detperm import det_poly, det_power_sum

        return CatalogEntry(f"det.n{n}", f"determinant of size {n}, each term polarized", det_poly(n), det_power_sum(n))

    return build


_ENTRIES: dict[str, Callable[[int], CatalogEntry]] = {
    "cubic.concurrent_lines": _concurrent_lines,
    "cubic.double_line": _double_line,
    "cubic.cusp": _cusp,
    "cubic.triangle": _triangle,
    "cubic.conic_transversal": _conic_transversal,
    "cubic.harmonic": _harmonic,
    "cubic.equianharmonic": _equianharmonic,
    "cubic.smooth": _smooth,
    "cubic.nodal": _nodal,
    "cubic.conic_tangent": _conic_tangent,
    "lq.m2": _lq(2, False),
    "lq.m3": _lq(3, False),
    "lq_cube.m2": _lq(2, True),
    "lq_cube.m3": _lq(3, True),
    "triangles.m1": _triangles(1),
    "triangles.m2": _triangles(2),
    "triangles.m3": _triangles(3),
    "five.x2u_y2v_xyz": _five,
}
for _n in range(1, 7):
    _ENTRIES[f"product.n{_n}"] = _product(_n)
for _n in range(2, 5):
    _ENTRIES[f"perm.n{_n}"] = _ryser(_n)
    _ENTRIES[f"det.n{_n}"] = _det(_n)

TABLE_KEYS = tuple(k for k in _ENTRIES if k.startswith("cubic."))


def catalog_keys() -> list[str]:
    return list(_ENTRIES)


def catalog(key: str, prec: int = 256) -> CatalogEntry:
    try:
        build = _ENTRIES[key]
    except KeyError:
        raise PreconditionError(f"unknown catalog entry {key!r}") from None
    return build(prec)


def verify_entry(entry: CatalogEntry, tolerance: float = 1e-20):
    return verify(entry.decomposition, entry.target, tolerance)


# pins for the bound aggregator


def _signature(f: Poly) -> tuple:
    return (f.nvars, f.degree, len(f), sorted(str(c) for _, c in f.items()))


def equal_up_to_permutation(f: Poly, g: Poly) -> bool:
    """True when g is f with its variables renamed (n <= 8)."""
    if _signature(f) != _signature(g) or f.nvars > 8:
        return False
    gt = dict(g.items())
    fe = list(f.items())
    for perm in itertools.permutations(range(f.nvars)):
        if all(gt.get(tuple(e[perm[i]] for i in range(f.nvars))) == c for e, c in fe):
            return True
    return False


def _five_target() -> Poly:
    return parse_poly("x^2*u + y^2*v + x*y*z", names=FIVE)


def match_pins(f: Poly) -> list[tuple[str, int, str]]:
    """Bounds carried by explicit constructions for specific forms."""
    out = []
    if f.field.exact and f.nvars == 5 and f.degree == 3 and equal_up_to_permutation(f, _five_target()):
        out.append(("border_upper", 5, "limit of secant planes along five curves, after a linear change"))
        out.append(("rank_upper", 9, "explicit expression with nine cubes"))
    return out
