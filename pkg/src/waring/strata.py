"""Dimensions of the loci where all derivatives of order <= s vanish, and the
rank lower bounds they feed.

For a form f in n essential variables and 1 <= s <= d,

    R(f) >= rank(s-th catalecticant) + dim(locus_s) + 1,

where the locus is taken in projective space and the empty set has
dimension -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import LimitExceeded, PreconditionError
from .flatten import catalecticant_rank, span_dim
from .poly import Poly, monomials

MONOMIAL = "monomial combinatorics"
DET = "determinant formula"
PERM = "permanent formula (lower bound)"
REDUCIBLE = "reducible form"
BRUTE = "coordinate-subspace search"


@dataclass(frozen=True)
class StratumDim:
    value: int
    method: str
    exact: bool


def sigma_dim_monomial(b: tuple[int, ...], s: int) -> StratumDim:
    """For x^b the locus is a union of coordinate subspaces.

    dim = n - 1 - (least |S| with sum_{i in S} b_i >= s + 1), or -1 if no S works.
    """
    if s < 0:
        raise PreconditionError("s must be non-negative")
    if any(x < 0 for x in b):
        raise PreconditionError("exponents must be non-negative")
    n = len(b)
    total, size = 0, 0
    for x in sorted(b, reverse=True):
        if total >= s + 1:
            break
        total += x
        size += 1
    if total < s + 1:
        return StratumDim(-1, MONOMIAL, True)
    return StratumDim(n - 1 - size, MONOMIAL, True)


def sigma_dim_det(n: int, a: int) -> StratumDim:
    """Matrices of rank <= n - a - 2: dimension n^2 - 1 - (a+1)^2."""
    if not 1 <= a <= n:
        raise PreconditionError("need 1 <= a <= n")
    return StratumDim(max(-1, n * n - 1 - (a + 1) ** 2), DET, True)


def sigma_dim_perm(n: int, a: int) -> StratumDim:
    """A certified lower bound n(n - a - 1) - 1 from matrices with a zero block."""
    if not 1 <= a <= n:
        raise PreconditionError("need 1 <= a <= n")
    return StratumDim(max(-1, n * (n - a - 1) - 1), PERM, False)


def sigma_dim_bruteforce(f: Poly, s: int, max_vars: int = 12, max_degree: int = 8) -> StratumDim:
    """Certified lower bound from coordinate subspaces and small integer points.

    The subspace {x_i = 0 : i in Z} lies in the locus exactly when every term of
    f has total exponent > s on Z. A point of {-1, 0, 1, 2}^n at which all
    derivatives of order <= s vanish certifies dimension >= 0.
    """
    n, d = f.nvars, f.degree
    if n > max_vars or d > max_degree:
        raise LimitExceeded(f"brute-force strata capped at n <= {max_vars}, d <= {max_degree}")
    if s < 0:
        raise PreconditionError("s must be non-negative")
    exps = [e for e, _ in f.items()]
    best = -1
    for size in range(1, n):
        if n - 1 - size <= best:
            break
        for zset in itertools.combinations(range(n), size):
            if all(sum(e[i] for i in zset) > s for e in exps):
                best = n - 1 - size
                break
        if best >= 0:
            break
    if best < 0 and n <= 6 and s < d:
        derivs = [f.derive(e) for k in range(s + 1) for e in monomials(n, k)]
        for pt in itertools.product((-1, 0, 1, 2), repeat=n):
            if not any(pt):
                continue
            if all(g.evaluate(pt) == 0 for g in derivs):
                best = 0
                break
    return StratumDim(best, BRUTE, False)


@dataclass(frozen=True)
class SigmaBound:
    value: int
    s: int
    cat_rank: int
    stratum: StratumDim


def sigma_lower_bound(f: Poly, stratum_dims: dict[int, StratumDim]) -> list[SigmaBound]:
    """Apply the singular-locus bound for each supplied s.

    f must be concise (its partials span all variables), otherwise the bound
    is not valid and an error is raised.
    """
    if span_dim(f) != f.nvars:
        raise PreconditionError("f is not concise: reduce to essential variables first")
    d = f.degree
    out = []
    for s, sd in sorted(stratum_dims.items()):
        if not 1 <= s <= d - 1:
            continue
        cr = catalecticant_rank(f, s)
        out.append(SigmaBound(cr + sd.value + 1, s, cr, sd))
    return out


def reducibility_bound(n: int, repeated_factor: bool = False) -> int:
    """Reducible concise forms in n >= 2 variables: rank >= 2n - 2 (2n - 1 with a repeated factor)."""
    if n < 2:
        raise PreconditionError("needs at least two essential variables")
    return 2 * n - 1 if repeated_factor else 2 * n - 2


def detect_variable_factor(f: Poly) -> str | None:
    """'repeated' if some x_i^2 divides f, 'reducible' if some x_i divides f, else None."""
    if f.degree < 2 or f.is_zero():
        return None
    mins = [min(e[i] for e, _ in f.items()) for i in range(f.nvars)]
    if any(m >= 2 for m in mins):
        return "repeated"
    if any(m >= 1 for m in mins):
        return "reducible"
    return None

