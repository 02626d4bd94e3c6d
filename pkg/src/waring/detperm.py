"""Determinant and permanent: polynomials, explicit expressions and bounds."""

from __future__ import annotations

import itertools
import math

from .decomp import Decomposition, MixedTerm, expand_mixed, to_power_sum
from .errors import LimitExceeded, PreconditionError
from .poly import LinearForm, Poly, substitute
from .scalar import QQ, Field
from .strata import sigma_dim_det, sigma_dim_perm


MAX_BUILD = 7


def matrix_names(n: int) -> tuple[str, ...]:
    """x{i}{j} with flat index i*n + j (underscored once indices reach two digits)."""
    sep = "" if n <= 10 else "_"
    return tuple(f"x{i}{sep}{j}" for i in range(n) for j in range(n))


def _sign(perm: tuple[int, ...]) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def _matrix_poly(n: int, signed: bool) -> Poly:
    if n < 1:
        raise PreconditionError("n must be positive")
    if n > MAX_BUILD:
        raise LimitExceeded(f"building det/perm is capped at n <= {MAX_BUILD}")
    terms = {}
    for perm in itertools.permutations(range(n)):
        e = [0] * (n * n)
        for i, j in enumerate(perm):
            e[i * n + j] = 1
        terms[tuple(e)] = _sign(perm) if signed else 1
    return Poly(n * n, n, terms, QQ, matrix_names(n))


def det_poly(n: int) -> Poly:
    return _matrix_poly(n, True)


def perm_poly(n: int) -> Poly:
    return _matrix_poly(n, False)


def ryser_terms(n: int, field: Field = QQ) -> list[MixedTerm]:
    """perm_n = 2^(1-n) sum over eps with eps_1 = 1 of prod_i sum_j eps_i eps_j x_ij."""
    if n < 1:
        raise PreconditionError("n must be positive")
    out = []
    scale = field(1) / field(2 ** (n - 1))
    for tail in itertools.product((1, -1), repeat=n - 1):
        eps = (1,) + tail
        factors = []
        for i in range(n):
            coeffs = [0] * (n * n)
            for j in range(n):
                coeffs[i * n + j] = eps[i] * eps[j]
            factors.append((LinearForm(tuple(coeffs), field), 1))
        out.append(MixedTerm(scale, factors))
    return out


def ryser_expansion(n: int) -> Poly:
    """The Ryser-type sum multiplied out; equals perm_poly(n)."""
    return expand_mixed(ryser_terms(n), n * n, QQ)


def laplace_expansion(n: int) -> Poly:
    """det along the first row: sum_j (-1)^j x_0j * minor_0j."""
    if n == 1:
        return det_poly(1)
    sub = det_poly(n - 1)
    acc = Poly.zero(n * n, n, QQ)
    for j in range(n):
        cols = [c for c in range(n) if c != j]
        images = []
        for i in range(1, n):
            for c in cols:
                coeffs = [0] * (n * n)
                coeffs[i * n + c] = 1
                images.append(LinearForm(tuple(coeffs), QQ))
        minor = substitute(sub, images)
        x = Poly.variable(j, n * n, QQ)
        acc = acc + (x * minor).scale((-1) ** j)
    return Poly(n * n, n, dict(acc.items()), QQ, matrix_names(n))


def ryser_power_sum(n: int, field: Field = QQ) -> Decomposition:
    """Expand each product into n-th powers: at most 4^(n-1) terms."""
    return to_power_sum(ryser_terms(n, field), n * n, n, field)


def det_terms(n: int, field: Field = QQ) -> list[MixedTerm]:
    """The Leibniz expansion as signed products of variables."""
    out = []
    for perm in itertools.permutations(range(n)):
        factors = []
        for i, j in enumerate(perm):
            coeffs = [0] * (n * n)
            coeffs[i * n + j] = 1
            factors.append((LinearForm(tuple(coeffs), field), 1))
        out.append(MixedTerm(field(_sign(perm)), factors))
    return out


def det_power_sum(n: int, field: Field = QQ) -> Decomposition:
    """2^(n-1) n! powers: each Leibniz monomial written as a product of n variables."""
    return to_power_sum(det_terms(n, field), n * n, n, field)


def gurvits_upper(n: int) -> int:
    return 4 ** (n - 1)


def det_upper(n: int) -> int:
    return 2 ** (n - 1) * math.factorial(n)


def detperm_bounds(kind: str, n: int) -> dict:
    """Rank and border rank bounds for det_n or perm_n (n >= 2), a = floor(n/2).

    border: the a-th catalecticant has rank C(n, a)^2 (spanned by a x a minors
    or subpermanents); rank: that plus dim of the singular locus plus one.
    """
    if kind not in ("det", "perm"):
        raise PreconditionError("kind must be 'det' or 'perm'")
    if n < 2:
        raise PreconditionError("n must be at least 2")
    a = n // 2
    border = math.comb(n, a) ** 2
    dim = sigma_dim_det(n, a) if kind == "det" else sigma_dim_perm(n, a)
    upper = det_upper(n) if kind == "det" else gurvits_upper(n)
    return {
        "kind": kind,
        "n": n,
        "a": a,
        "border_lower": border,
        "rank_lower": border + dim.value + 1,
        "rank_upper": upper,
        "stratum_dim": dim.value,
    }


TABLE_ROWS = (
    ("det", "rank_upper"),
    ("det", "rank_lower"),
    ("det", "border_lower"),
    ("perm", "rank_upper"),
    ("perm", "rank_lower"),
    ("perm", "border_lower"),
)


def detperm_table(ns=range(2, 9)) -> list[dict]:
    """Six rows (det and perm: rank upper, rank lower, border lower) over n."""
    ns = list(ns)
    cols = {n: {k: detperm_bounds(k, n) for k in ("det", "perm")} for n in ns}
    return [
        {"kind": kind, "bound": field, "values": {n: cols[n][kind][field] for n in ns}}
        for kind, field in TABLE_ROWS
    ]


def verify_flattening(kind: str, n: int) -> tuple[int, int]:
    """(catalecticant rank at floor(n/2), C(n, floor(n/2))^2) by building the matrix."""
    from .flatten import catalecticant_rank

    if n > 4:
        raise LimitExceeded("matrix-level verification is capped at n <= 4")
    f = det_poly(n) if kind == "det" else perm_poly(n)
    a = n // 2
    return catalecticant_rank(f, a), math.comb(n, a) ** 2
