import pytest

from waring.decomp import verify
from waring.detperm import (
    det_poly,
    det_power_sum,
    detperm_bounds,
    detperm_table,
    laplace_expansion,
    matrix_names,
    perm_poly,
    ryser_expansion,
    ryser_power_sum,
    verify_flattening,
)
from waring.errors import LimitExceeded

TABLE = {
    ("det", "rank_upper"): [4, 24, 192, 1920, 23040, 322560, 5160960],
    ("det", "rank_lower"): [4, 14, 43, 116, 420, 1258, 4939],
    ("det", "border_lower"): [4, 9, 36, 100, 400, 1225, 4900],
    ("perm", "rank_upper"): [4, 16, 64, 256, 1024, 4096, 16384],
    ("perm", "rank_lower"): [4, 12, 40, 110, 412, 1246, 4924],
    ("perm", "border_lower"): [4, 9, 36, 100, 400, 1225, 4900],
}


def test_table_rows():
    rows = detperm_table()
    assert len(rows) == 6
    for r in rows:
        assert [r["values"][n] for n in range(2, 9)] == TABLE[r["kind"], r["bound"]]


def test_bounds_dict():
    b = detperm_bounds("det", 4)
    assert (b["a"], b["border_lower"], b["stratum_dim"], b["rank_lower"]) == (2, 36, 6, 43)


def test_polynomials():
    assert len(det_poly(3)) == 6
    assert perm_poly(2).coefficient((1, 0, 0, 1)) == 1
    assert det_poly(2).coefficient((0, 1, 1, 0)) == -1
    assert matrix_names(2) == ("x00", "x01", "x10", "x11")
    with pytest.raises(LimitExceeded):
        det_poly(8)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_expansions(n):
    assert ryser_expansion(n) == perm_poly(n)
    assert laplace_expansion(n) == det_poly(n)


@pytest.mark.parametrize("n", [2, 3])
def test_power_sums(n):
    assert verify(ryser_power_sum(n), perm_poly(n)).kind == "exact"
    assert verify(det_power_sum(n), det_poly(n)).kind == "exact"
    assert len(ryser_power_sum(n)) <= 4 ** (n - 1)


@pytest.mark.parametrize("n", [2, 3])
def test_flattening_ranks(n):
    for kind in ("det", "perm"):
        got, want = verify_flattening(kind, n)
        assert got == want
