"""Dense univariate polynomials as coefficient lists, lowest degree first."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

UPoly = list


def _as_field(x: Any) -> Any:
    return Fraction(x) if isinstance(x, int) else x


def trim(p: Sequence[Any]) -> list:
    q = list(p)
    while q and q[-1] == 0:
        q.pop()
    return q


def degree(p: Sequence[Any]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p: Sequence[Any], q: Sequence[Any]) -> list:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    return trim(out)


def sub(p: Sequence[Any], q: Sequence[Any]) -> list:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return trim(out)


def scale(p: Sequence[Any], c: Any) -> list:
    return trim([c * a for a in p])


def mul(p: Sequence[Any], q: Sequence[Any]) -> list:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_(p: Sequence[Any], q: Sequence[Any]) -> tuple[list, list]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    if len(r) < len(q):
        return [], r
    quot = [0] * (len(r) - len(q) + 1)
    lead = _as_field(q[-1])
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lead
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r.pop()
        r = trim(r)
    return trim(quot), r


def monic(p: Sequence[Any]) -> list:
    p = trim(p)
    if not p:
        return []
    lead = _as_field(p[-1])
    return [a / lead for a in p]


def gcd(p: Sequence[Any], q: Sequence[Any]) -> list:
    """Monic gcd over a field (the zero polynomial if both are zero)."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(p: Sequence[Any]) -> list:
    return trim([i * a for i, a in enumerate(p)][1:])


def evaluate(p: Sequence[Any], x: Any) -> Any:
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def shift_down(p: Sequence[Any], k: int) -> list:
    """Divide by t**k, assuming the low coefficients vanish."""
    return trim(list(p)[k:])


def valuation(p: Sequence[Any]) -> int | None:
    for i, a in enumerate(p):
        if a != 0:
            return i
    return None
