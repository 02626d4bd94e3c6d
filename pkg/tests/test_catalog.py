import random
from fractions import Fraction

import pytest

from conftest import P
from waring.bounds import aggregate
from waring.catalog import (
    TABLE_KEYS,
    catalog,
    catalog_keys,
    conic_transversal_coefficients,
    cusp_printed,
    equal_up_to_permutation,
    lq_decomposition,
    lq_parameters,
    verify_entry,
)
from waring.decomp import Decomposition, Term, verify
from waring.errors import PreconditionError

FAST = [k for k in catalog_keys() if k not in ("perm.n4",)]


@pytest.mark.parametrize("key", FAST)
def test_entry_verifies(key):
    e = catalog(key)
    v = verify_entry(e)
    assert v.ok, (key, v)
    if e.decomposition.field.exact:
        assert v.kind == "exact"
    else:
        assert v.max_residual < 1e-20


def test_table_has_ten_rows():
    assert len(TABLE_KEYS) == 10


def test_printed_cusp_sign_fails():
    assert verify(cusp_printed(), catalog("cubic.cusp").target).kind == "mismatch"


def test_conic_transversal_constants():
    assert conic_transversal_coefficients() == [Fraction(1, 96), Fraction(1, 96), Fraction(-1, 48), Fraction(-1, 48)]
    assert catalog("cubic.conic_transversal").derived


def test_lq_entries_are_gaussian():
    for m in (2, 3, 4, 5):
        for cube in (False, True):
            a = lq_parameters(m, cube)
            assert sum(a) == (-1 if cube else 0)
            dec = lq_decomposition(m, cube)
            assert len(dec) == 2 * m
            assert dec.field.name == "QQ(i)"
    e = catalog("lq.m2")
    assert e.length == 4 and verify_entry(e).kind == "exact"


def test_lengths_respect_lower_bounds():
    for key in ("cubic.double_line", "cubic.cusp", "cubic.triangle", "cubic.conic_transversal",
                "lq.m2", "lq.m3", "triangles.m2", "product.n4"):
        e = catalog(key)
        assert e.length >= aggregate(e.target).rank_lower.value, key


def corrupt(dec, rng):
    terms = list(dec.terms)
    i = rng.randrange(len(terms))
    t = terms[i]
    delta = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 50))
    terms[i] = Term(t.coeff + dec.field(delta), t.form, t.power)
    return Decomposition(terms, dec.nvars, dec.degree, dec.field)


@pytest.mark.parametrize("key", ["cubic.double_line", "cubic.cusp", "cubic.triangle", "cubic.conic_transversal",
                                 "lq.m2", "lq_cube.m3", "triangles.m2", "product.n5", "det.n3"])
def test_corruptions_rejected(key):
    rng = random.Random(key)
    e = catalog(key)
    for _ in range(100):
        assert verify(corrupt(e.decomposition, rng), e.target).kind == "mismatch"


def test_permutation_matching():
    assert equal_up_to_permutation(P("x^2*u + y^2*v + x*y*z"), P("a*b*c + b^2*d + a^2*e"))
    assert not equal_up_to_permutation(P("x^2*u + y^2*v + x*y*z"), P("a*b*c + b^2*d + 2*a^2*e"))


def test_unknown_entry():
    with pytest.raises(PreconditionError):
        catalog("cubic.nope")
