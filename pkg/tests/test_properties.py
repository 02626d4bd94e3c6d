import random

from hypothesis import given, settings, strategies as st

from waring.flatten import catalecticant_rank
from waring.linalg import Matrix, rank
from waring.poly import Poly, contract, linear_change, monomials
from waring.scalar import QQ
from waring.strata import sigma_dim_bruteforce


@st.composite
def forms(draw, nvars=st.integers(2, 4), degree=st.integers(2, 5), max_terms=6):
    n = draw(nvars)
    d = draw(degree)
    mons = monomials(n, d)
    picks = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-4, 4).filter(bool), min_size=len(picks), max_size=len(picks)))
    return Poly(n, d, dict(zip(picks, coeffs)))


@st.composite
def invertible(draw, n):
    while True:
        m = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n))
        if rank(Matrix(m, n, QQ)) == n:
            return m


@given(forms(), st.data())
def test_leibniz_rule(f, data):
    g = data.draw(forms(nvars=st.just(f.nvars), degree=st.integers(1, 3)))
    i = data.draw(st.integers(0, f.nvars - 1))
    assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(forms(degree=st.integers(3, 5)), st.data())
def test_contraction_composes(f, data):
    n = f.nvars
    a = data.draw(st.sampled_from(monomials(n, 1)))
    b = data.draw(st.sampled_from(monomials(n, 1)))
    qa, qb = Poly(n, 1, {a: 1}), Poly(n, 1, {b: 1})
    assert contract(qa * qb, f) == contract(qa, contract(qb, f))
    assert contract(qa, f) == f.derive(a)


@settings(max_examples=25)
@given(forms(), st.data())
def test_catalecticant_gl_invariance(f, data):
    ranks = [catalecticant_rank(f, s) for s in range(1, f.degree)]
    for _ in range(20):
        m = data.draw(invertible(f.nvars))
        g = linear_change(f, m)
        assert [catalecticant_rank(g, s) for s in range(1, f.degree)] == ranks


@given(forms())
def test_transpose_symmetry(f):
    d = f.degree
    for s in range(1, d):
        assert catalecticant_rank(f, s) == catalecticant_rank(f, d - s)


@given(forms(), st.data())
def test_subadditivity(f, data):
    g = data.draw(forms(nvars=st.just(f.nvars), degree=st.just(f.degree)))
    if (f + g).is_zero():
        return
    for s in range(1, f.degree):
        assert catalecticant_rank(f + g, s) <= catalecticant_rank(f, s) + catalecticant_rank(g, s)


def test_stanley_sequence_decreases():
    from test_linalg import stanley

    f = stanley()
    assert (catalecticant_rank(f, 1), catalecticant_rank(f, 2)) == (13, 12)


def test_ternary_ranks_nondecreasing():
    rng = random.Random(2024)
    for _ in range(200):
        d = rng.randint(2, 6)
        mons = monomials(3, d)
        terms = {m: rng.randint(-3, 3) for m in rng.sample(mons, rng.randint(1, min(len(mons), 8)))}
        f = Poly(3, d, terms)
        if f.is_zero():
            continue
        seq = [catalecticant_rank(f, s) for s in range(1, d // 2 + 1)]
        assert seq == sorted(seq), (f, seq)


@settings(max_examples=30)
@given(forms(nvars=st.integers(2, 4), degree=st.integers(2, 4)))
def test_strata_monotone(f):
    dims = [sigma_dim_bruteforce(f, s).value for s in range(f.degree + 1)]
    assert dims == sorted(dims, reverse=True)
