"""Monomial counts, closed-form bounds, and the aggregation of every bound
source into one report."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .binary import sylvester_rank
from .errors import InexactField, PreconditionError
from .flatten import essential_variables, flattening_lower_bound, koszul_lower_bound
from .poly import LinearForm, Poly, format_poly, substitute
from .strata import (
    detect_variable_factor,
    reducibility_bound,
    sigma_dim_bruteforce,
    sigma_dim_monomial,
    sigma_lower_bound,
)


def binom(a: int, b: int) -> int:
    """C(a, b), zero when b > a, b < 0 or a < 0."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def count_S(b: Sequence[int], delta: int) -> int:
    """Number of tuples 0 <= a_j <= b_j with sum delta, by inclusion-exclusion."""
    if any(x < 0 for x in b):
        raise PreconditionError("exponents must be non-negative")
    if delta < 0:
        return 0
    m = len(b)
    if m == 0:
        return 1 if delta == 0 else 0
    total = 0
    for k in range(m + 1):
        for idx in itertools.combinations(range(m), k):
            excess = sum(b[i] + 1 for i in idx)
            total += (-1) ** k * binom(delta - excess + m - 1, m - 1)
    return total


def count_T(b: Sequence[int]) -> int:
    return math.prod(1 + x for x in b)


@dataclass(frozen=True)
class MonomialBorder:
    lower: int
    upper: int
    exact: bool
    exponents: tuple


def monomial_border_bounds(exponents: Sequence[int]) -> MonomialBorder:
    """Border rank of x0^b0 ... xn^bn: S at floor(d/2) <= border <= T of the tail.

    Exponents are sorted internally (largest first); when the largest is at
    least the sum of the others both sides agree.
    """
    b = tuple(sorted((x for x in exponents if x), reverse=True))
    if not b:
        raise PreconditionError("the constant monomial has no border rank")
    d = sum(b)
    lower = count_S(b, d // 2)
    upper = count_T(b[1:])
    exact = b[0] >= sum(b[1:])
    return MonomialBorder(lower, upper, exact or lower == upper, b)


def monomial_rank_upper(exponents: Sequence[int]) -> int:
    """(b0+1)...(b_{n-1}+1) * b_n for b0 >= ... >= bn >= 1."""
    b = sorted((x for x in exponents if x), reverse=True)
    if not b:
        raise PreconditionError("the constant monomial has no rank")
    if len(b) == 1:
        return 1
    return math.prod(x + 1 for x in b[:-1]) * b[-1]


@dataclass(frozen=True)
class ProductBounds:
    n: int
    rank_lower: int
    rank_upper: int
    border_lower: int
    border_upper: int
    exact_rank: int | None


PRODUCT_RANK_PINS = {4: 8}


def product_bounds(n: int) -> ProductBounds:
    """Bounds for x1 ... xn; n = 4 carries the pinned exact rank 8."""
    if n < 1:
        raise PreconditionError("n must be positive")
    c = math.comb(n, n // 2)
    lo = c + (n + 1) // 2 - 1
    up = 2 ** (n - 1)
    exact = PRODUCT_RANK_PINS.get(n, up if lo == up else None)
    return ProductBounds(n, lo, up, c, up, exact)


def product_table(ns: Sequence[int] = range(1, 11)) -> list[dict]:
    out = []
    for n in ns:
        p = product_bounds(n)
        row = {"n": n, "rank_upper": p.rank_upper, "rank_lower": p.rank_lower, "border_lower": p.border_lower}
        if p.exact_rank is not None:
            row["exact_rank"] = p.exact_rank
        out.append(row)
    return out


def universal_upper(n: int, d: int) -> int:
    """Every form of degree d in n essential variables has rank <= C(n+d-1, d) - n + 1."""
    return math.comb(n + d - 1, d) - n + 1


# reports


@dataclass
class Bound:
    value: int
    sources: list = dc_field(default_factory=list)


@dataclass
class RankReport:
    poly_id: str
    nvars: int
    essential: int
    degree: int
    rank_lower: Bound
    rank_upper: Bound
    border_lower: Bound
    border_upper: Bound
    contributions: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def exact_rank(self) -> int | None:
        return self.rank_lower.value if self.rank_lower.value == self.rank_upper.value else None

    @property
    def exact_border(self) -> int | None:
        return self.border_lower.value if self.border_lower.value == self.border_upper.value else None

    def to_dict(self) -> dict:
        def b(x: Bound) -> dict:
            return {"value": x.value, "sources": list(x.sources)}

        out = {
            "poly": self.poly_id,
            "nvars": self.nvars,
            "essential_variables": self.essential,
            "degree": self.degree,
            "rank_lower": b(self.rank_lower),
            "rank_upper": b(self.rank_upper),
            "border_lower": b(self.border_lower),
            "border_upper": b(self.border_upper),
            "exact_rank": self.exact_rank,
            "exact_border": self.exact_border,
            "contributions": [{"kind": k, "value": v, "source": s} for k, v, s in self.contributions],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


_LOWER = ("rank_lower", "border_lower")


class _Collector:
    def __init__(self) -> None:
        self.best: dict[str, Bound] = {}
        self.log: list[tuple[str, int, str]] = []

    def add(self, kind: str, value: int, source: str) -> None:
        self.log.append((kind, value, source))
        cur = self.best.get(kind)
        better = cur is None or (value > cur.value if kind in _LOWER else value < cur.value)
        if better:
            self.best[kind] = Bound(value, [source])
        elif value == cur.value and source not in cur.sources:
            cur.sources.append(source)

    def exact(self, rank: int | None, border: int | None, source: str) -> None:
        if rank is not None:
            self.add("rank_lower", rank, source)
            self.add("rank_upper", rank, source)
        if border is not None:
            self.add("border_lower", border, source)
            self.add("border_upper", border, source)


def _drop_unused(f: Poly) -> Poly | None:
    """f written in the variables it actually contains, if they are all essential."""
    used = [i for i in range(f.nvars) if any(e[i] for e, _ in f.items())]
    terms = {tuple(e[i] for i in used): c for e, c in f.items()}
    names = tuple(f.var_names()[i] for i in used)
    return Poly(len(used), f.degree, terms, f.field, names)


def _components(f: Poly) -> list[list[int]]:
    """Variable sets of the blocks of f (terms linked by shared variables)."""
    parent = list(range(f.nvars))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e, _ in f.items():
        vs = [i for i, k in enumerate(e) if k]
        for a in vs[1:]:
            parent[find(a)] = find(vs[0])
    groups: dict[int, list[int]] = {}
    for i in range(f.nvars):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _restrict(f: Poly, keep: Sequence[int]) -> Poly:
    terms = {tuple(e[i] for i in keep): c for e, c in f.items() if all(e[i] == 0 or i in keep for i in range(f.nvars))}
    return Poly(len(keep), f.degree, terms, f.field, tuple(f.var_names()[i] for i in keep))


def _binary_restrictions(f: Poly, out: _Collector, max_vars: int = 5) -> None:
    """Send each variable to 0, u or v; every restriction bounds rank and border rank below."""
    n = f.nvars
    if n > max_vars or n < 3:
        return
    best = None
    U = LinearForm((1, 0), f.field)
    V = LinearForm((0, 1), f.field)
    Z = LinearForm((0, 0), f.field)
    for assign in itertools.product((0, 1, 2), repeat=n):
        if 1 not in assign or 2 not in assign or assign.index(1) > assign.index(2):
            continue
        images = [(Z, U, V)[a] for a in assign]
        g = substitute(f, images)
        if g.is_zero():
            continue
        br = sylvester_rank(g)
        if best is None or (br.rank, br.border_rank) > (best[0].rank, best[0].border_rank):
            best = (br, assign)
    if best is not None:
        br, assign = best
        names = f.var_names()
        desc = ", ".join(f"{names[i]}->{'0uv'[a]}" for i, a in enumerate(assign))
        src = f"restriction to a binary form ({desc}) with exact binary rank"
        out.add("rank_lower", br.rank, src)
        out.add("border_lower", br.border_rank, src)


def _sum_of_squares_times_variable(f: Poly) -> tuple[int, bool] | None:
    """Recognize x * (sum c_j y_j^2) [+ c x^3]: returns (m, has_cube)."""
    if f.degree != 3 or f.nvars < 3:
        return None
    for x in range(f.nvars):
        ys = set()
        cube = False
        ok = True
        for e, _ in f.items():
            if e[x] == 3:
                cube = True
            elif e[x] == 1 and sum(e) - 1 == 2 and max(k for i, k in enumerate(e) if i != x) == 2:
                ys.add(next(i for i, k in enumerate(e) if k == 2))
            else:
                ok = False
                break
        if ok and len(ys) == f.nvars - 1 and len(ys) >= 2:
            return len(ys), cube
    return None


# pins: exact values established by arguments that are not algorithms
RANK_PINS = {
    (1, 1, 1, 1): (8, "pinned: rank of x1x2x3x4 is 8 (pencil-of-quadrics argument)"),
    (2, 1, 1): (6, "pinned: rank of x^2yz is 6 (restriction argument)"),
}


def aggregate(
    f: Poly,
    koszul: bool = True,
    restrictions: bool = True,
    extra: Sequence[Callable[[Poly, _Collector], None]] = (),
) -> RankReport:
    """Run every applicable bound source and keep the best of each kind."""
    if not f.field.exact:
        raise InexactField("bounds need exact coefficients")
    out = _Collector()
    notes: list[str] = []
    pid = format_poly(f)
    if f.is_zero():
        out.exact(0, 0, "the zero form")
        return _finish(pid, f, 0, out, notes)
    d = f.degree
    red = essential_variables(f)
    n = red.essential
    if n < f.nvars:
        notes.append(f"reduced to {n} essential variables by a linear change")
    work = _drop_unused(f)
    if work.nvars != n:
        work = red.reduced
    if d <= 1 or n == 1:
        out.exact(1, 1, "a power of a single linear form")
        return _finish(pid, f, n, out, notes)
    if d == 2:
        out.exact(n, n, "quadric of full rank in its essential variables")
        return _finish(pid, f, n, out, notes)
    if n == 2:
        br = sylvester_rank(work)
        out.exact(br.rank, br.border_rank, f"binary form: Sylvester algorithm ({br.certificate.case})")
        return _finish(pid, f, n, out, notes)
    if n == 3 and d == 3:
        from .cubic import classify

        cls = classify(work)
        out.exact(cls.rank, cls.border_rank, f"plane cubic classified as {cls.row.label}")
        return _finish(pid, f, n, out, notes)

    uu = universal_upper(n, d)
    out.add("rank_upper", uu, "universal upper bound C(n+d-1, d) - n + 1")
    out.add("border_upper", uu, "universal upper bound C(n+d-1, d) - n + 1")

    fb = flattening_lower_bound(work)
    out.add("border_lower", fb.value, f"catalecticant rank at s = {fb.s}")
    if koszul:
        kb = koszul_lower_bound(work, max_size=400)
        if kb is not None:
            out.add(
                "border_lower",
                kb.value,
                f"Koszul flattening (p = {kb.p}): rank {kb.rank} / C(n-1, p) = {kb.divisor}",
            )

    _sigma_bounds(work, out)

    kind = detect_variable_factor(work)
    if kind is not None:
        out.add(
            "rank_lower",
            reducibility_bound(n, kind == "repeated"),
            "reducible form" + (" with a repeated factor" if kind == "repeated" else ""),
        )

    if restrictions:
        _binary_restrictions(work, out)

    if work.is_monomial():
        _monomial_sources(work, out)

    _termwise_upper(work, out)
    _component_upper(work, out, koszul, restrictions)

    lq = _sum_of_squares_times_variable(work)
    if lq is not None:
        m, cube = lq
        out.add("rank_upper", 2 * m, "x times a sum of m squares: m binary pieces of rank 2")

    from .catalog import match_pins

    for kind_, value, source in match_pins(work):
        out.add(kind_, value, source)

    for fn in extra:
        fn(work, out)
    return _finish(pid, f, n, out, notes)


def _sigma_bounds(work: Poly, out: _Collector) -> None:
    d = work.degree
    if work.is_monomial():
        e = next(iter(work.terms))
        dims = {s: sigma_dim_monomial(tuple(e), s) for s in range(1, d)}
        label = "exact singular locus of a monomial"
    elif work.nvars <= 12 and d <= 8:
        dims = {s: sigma_dim_bruteforce(work, s) for s in range(1, d)}
        label = "singular locus from coordinate subspaces"
    else:
        return
    for sb in sigma_lower_bound(work, dims):
        out.add(
            "rank_lower",
            sb.value,
            f"singular locus bound at s = {sb.s}: rank {sb.cat_rank} + dim {sb.stratum.value} + 1 ({label})",
        )


def _monomial_sources(work: Poly, out: _Collector) -> None:
    e = tuple(next(iter(work.terms)))
    mb = monomial_border_bounds(e)
    out.add("border_lower", mb.lower, "monomial count S at floor(d/2)")
    out.add("border_upper", mb.upper, "monomial limit plane: T of the smaller exponents")
    out.add("rank_upper", monomial_rank_upper(e), "monomial rank upper (b0+1)...(b_{n-1}+1) b_n")
    if all(x == 1 for x in mb.exponents):
        pb = product_bounds(len(mb.exponents))
        out.add("rank_lower", pb.rank_lower, "product of variables: hyperplane restriction bound")
    pin = RANK_PINS.get(mb.exponents)
    if pin is not None:
        out.add("rank_lower", pin[0], pin[1])
        out.add("rank_upper", pin[0], pin[1])


def _termwise_upper(work: Poly, out: _Collector) -> None:
    """Subadditivity over terms, each bounded by the monomial formulas."""
    if len(work) < 2:
        return
    r = sum(monomial_rank_upper(e) for e, _ in work.items())
    b = sum(monomial_border_bounds(e).upper for e, _ in work.items())
    out.add("rank_upper", r, "sum of monomial rank bounds over the terms")
    out.add("border_upper", b, "sum of monomial border bounds over the terms")


def _component_upper(work: Poly, out: _Collector, koszul: bool, restrictions: bool) -> None:
    comps = _components(work)
    if len(comps) < 2:
        return
    parts = [aggregate(_restrict(work, c), koszul=koszul, restrictions=restrictions) for c in comps]
    r = sum(p.rank_upper.value for p in parts)
    b = sum(p.border_upper.value for p in parts)
    out.add("rank_upper", r, f"sum over {len(comps)} blocks in disjoint variables")
    out.add("border_upper", b, f"sum over {len(comps)} blocks in disjoint variables")


def _finish(pid: str, f: Poly, n: int, out: _Collector, notes: list) -> RankReport:
    best = out.best
    bl = best.get("border_lower", Bound(1, ["nonzero form"]))
    rl = best.get("rank_lower", Bound(bl.value, ["rank is at least border rank"]))
    if rl.value < bl.value:
        rl = Bound(bl.value, ["rank is at least border rank"] + [s for s in bl.sources])
    ru = best["rank_upper"]
    bu = best.get("border_upper", Bound(ru.value, ["border rank is at most rank"]))
    if ru.value < bu.value:
        bu = Bound(ru.value, ["border rank is at most rank"] + list(ru.sources))
    if not (bl.value <= bu.value and rl.value <= ru.value and bl.value <= ru.value):
        raise AssertionError(f"inconsistent bounds for {pid}: {out.log}")
    return RankReport(pid, f.nvars, n, f.degree, rl, ru, bl, bu, out.log, notes)
