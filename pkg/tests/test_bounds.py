import itertools
import math

import pytest
from hypothesis import given, strategies as st

from conftest import P
from waring.bounds import (
    aggregate,
    count_S,
    count_T,
    monomial_border_bounds,
    monomial_rank_upper,
    product_bounds,
    product_table,
    universal_upper,
)
from waring.errors import InexactField
from waring.poly import Poly
from waring.scalar import CC


def enumerate_S(b, delta):
    return sum(1 for a in itertools.product(*(range(x + 1) for x in b)) if sum(a) == delta)


def test_count_S_small_values():
    assert count_S((1, 1, 1, 1, 1), 2) == 10
    assert count_S((2, 1, 1), 2) == 4
    assert count_S((3,), 2) == 1
    assert count_S((1, 1), 5) == 0
    assert count_S((), 0) == 1


def test_count_S_matches_enumeration():
    checked = 0
    for n in range(1, 6):
        for b in itertools.product(range(0, 10), repeat=n):
            if list(b) != sorted(b, reverse=True) or math.prod(x + 1 for x in b) > 10**4:
                continue
            for delta in range(sum(b) + 1):
                assert count_S(b, delta) == enumerate_S(b, delta), (b, delta)
            checked += 1
    assert checked > 500


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_count_S_partitions_T(b):
    assert sum(count_S(b, k) for k in range(sum(b) + 1)) == count_T(b)


def test_monomial_border_bounds():
    mb = monomial_border_bounds((3, 1, 1))
    assert (mb.lower, mb.upper, mb.exact) == (4, 4, True)
    mb = monomial_border_bounds((1, 1, 2))
    assert mb.exponents == (2, 1, 1) and mb.lower == 4
    assert monomial_border_bounds((1, 1, 1, 1)).lower == 6


def test_monomial_rank_upper():
    assert monomial_rank_upper((1, 1, 1, 1)) == 8
    assert monomial_rank_upper((2, 1, 1)) == 6
    assert monomial_rank_upper((5,)) == 1


def test_product_table():
    rows = product_table()
    assert [r["rank_upper"] for r in rows] == [2 ** (n - 1) for n in range(1, 11)]
    assert [r["rank_lower"] for r in rows] == [1, 2, 4, 7, 12, 22, 38, 73, 130, 256]
    assert [r["border_lower"] for r in rows] == [1, 2, 3, 6, 10, 20, 35, 70, 126, 252]
    assert product_bounds(4).exact_rank == 8


def test_universal_upper():
    assert universal_upper(2, 5) == 5
    assert universal_upper(3, 3) == 8


@pytest.mark.parametrize(
    "text,rank,border",
    [
        ("x^3*y^2", (4, 4), (3, 3)),
        ("x^2*y + y^2*z", (5, 5), (3, 3)),
        ("x*y*z*w", (8, 8), (7, 8)),
        ("x^2*y*z", (6, 6), (4, 4)),
        ("x^2*u + y^2*v + x*y*z", (8, 9), (5, 5)),
        ("x*y1^2 + x*y2^2 + x*y3^2", (6, 6), (5, 6)),
        ("x^4 + y^4 + z^4 + w^4", (4, 4), (4, 4)),
    ],
)
def test_aggregate_values(text, rank, border):
    r = aggregate(P(text))
    assert (r.rank_lower.value, r.rank_upper.value) == rank
    assert (r.border_lower.value, r.border_upper.value) == border
    assert all(r.rank_lower.sources) and all(r.border_upper.sources)


def test_aggregate_trivial_cases():
    assert aggregate(Poly.zero(2, 3)).exact_rank == 0
    assert aggregate(P("x^2 + y^2 + z^2")).exact_rank == 3
    r = aggregate(Poly(3, 3, {(3, 0, 0): 1, (2, 1, 0): 3, (1, 2, 0): 3, (0, 3, 0): 1}))
    assert r.exact_rank == 1 and r.essential == 1


def test_aggregate_refuses_floats():
    with pytest.raises(InexactField):
        aggregate(Poly(2, 2, {(2, 0): 1}, CC(64)))


def test_report_is_ordered():
    d = aggregate(P("x^3*y^2*z")).to_dict()
    assert d["border_lower"]["value"] <= d["border_upper"]["value"] <= d["rank_upper"]["value"]
    assert d["border_lower"]["value"] <= d["rank_lower"]["value"] <= d["rank_upper"]["value"]
    assert d["contributions"]
