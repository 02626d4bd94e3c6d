import json
import subprocess
import sys

import pytest

from waring.cli import main, read_poly
from waring.poly import parse_poly


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_binary_rank(capsys):
    code, doc, _ = run(capsys, "binary-rank", "x0^2*x1^3")
    assert code == 0
    assert (doc["rank"], doc["border_rank"]) == (4, 3)
    assert doc["source"]


def test_monomial_bounds(capsys):
    _, doc, _ = run(capsys, "monomial-bounds", "1,1,1,1")
    assert doc["border_lower"]["value"] == 6
    assert doc["rank_lower"]["value"] == 7
    assert doc["exact_rank"] == 8


def test_paper_tables(capsys):
    _, doc, _ = run(capsys, "paper-tables", "--which", "det-perm")
    assert doc["rows"][1]["values"]["7"] == 1258
    assert doc["rows"][3]["values"]["8"] == 16384
    _, doc, _ = run(capsys, "paper-tables", "--which", "products")
    assert [r["border_lower"] for r in doc["rows"]][-1] == 252
    _, doc, _ = run(capsys, "paper-tables", "--which", "cubics")
    assert len(doc["rows"]) == 11


def test_bounds_with_names(capsys):
    _, doc, _ = run(capsys, "bounds", "x^2*u + y^2*v + x*y*z")
    assert doc["exact_border"] == 5
    assert (doc["rank_lower"]["value"], doc["rank_upper"]["value"]) == (8, 9)
    for key in ("rank_lower", "rank_upper", "border_lower", "border_upper"):
        assert doc[key]["sources"]


def test_limit_plane(capsys):
    _, doc, _ = run(capsys, "limit-plane", "--monomial", "1,1", "--degree", "3")
    assert doc["equals_monomial_span"] and doc["contains_target"]
    _, doc, _ = run(capsys, "limit-plane", "--normal-form", "square", "--rank", "4", "--degree", "5")
    assert doc["certified"] and "rank_statements" not in doc
    _, doc, _ = run(capsys, "limit-plane", "--normal-form", "osculating", "--rank", "3", "--degree", "4")
    assert doc["certified"] and doc["rank_bracket"] == [4, 7]
    assert len(doc["rank_statements"]) == 2
    _, doc, _ = run(capsys, "limit-plane", "--five-curve")
    assert doc["contains_target"]


def test_cubic_classify(capsys):
    _, doc, _ = run(capsys, "cubic-classify", "x^2*y + y^2*z")
    assert doc["row"] == "conic_tangent" and doc["rank"] == 5


def test_verify_decomp_file(capsys, tmp_path):
    path = tmp_path / "xyz.txt"
    path.write_text("1/24 | 1, 1, 1\n1/24 | 1, -1, -1\n-1/24 | 1, -1, 1\n-1/24 | 1, 1, -1\n")
    _, doc, _ = run(capsys, "verify-decomp", "--target", "x0*x1*x2", "--decomp", str(path))
    assert doc["verdict"] == "exact"
    path.write_text("1/24 | 1, 1, 1\n")
    _, doc, _ = run(capsys, "verify-decomp", "--target", "x0*x1*x2", "--decomp", str(path))
    assert doc["verdict"] == "mismatch" and doc["witness_monomial"]


def test_verify_catalog_entry(capsys):
    _, doc, _ = run(capsys, "verify-decomp", "--catalog", "cubic.conic_tangent")
    (e,) = doc["entries"]
    assert e["verdict"] == "approx" and e["length"] == 5


@pytest.mark.parametrize(
    "args,code",
    [
        (["bounds", "x0^2 + x1"], 2),
        (["bounds", "x0^2*x1", "--vars", "a,b"], 2),
        (["limit-plane", "--monomial", "1,1"], 3),
        (["verify-decomp", "--catalog", "nope"], 3),
        (["detperm-table", "--max-n", "3"], 0),
    ],
)
def test_exit_codes(capsys, args, code):
    got, _, err = run(capsys, *args)
    assert got == code
    if code:
        assert json.loads(err)["message"]


def test_limit_exceeded_code(capsys):
    got, _, err = run(capsys, "detperm-table", "--max-n", "5", "--verify-flattenings", "--max-verify-n", "5")
    assert got == 4
    got, _, err = run(capsys, "flatten-rank", "x0^10*x1^10*x2^10*x3^10*x4^10*x5^10")
    assert got == 4 and "cap" in json.loads(err)["message"]


def test_reports_round_trip(capsys):
    for args in (["bounds", "x0^3*x1 + 2/3*x2^4"], ["binary-rank", "x0^3 - 7*x1^3"], ["cubic-classify", "x0*x1*x2 + x0^3"]):
        _, doc, _ = run(capsys, *args)
        text = doc["poly"]
        f = read_poly(args[1])
        assert parse_poly(text, nvars=f.nvars) == f


def test_deterministic_output():
    cmd = [sys.executable, "-m", "waring", "bounds", "x*y*z*w + x^4"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["command"] == "bounds"
