import pytest
from hypothesis import given, strategies as st

from prolie import catalog
from prolie.dsl import parse_dsl
from prolie.errors import InvalidWeighting, LayerDeficient
from prolie.exactlin import SparseVector, Subspace
from prolie.filtration import (
    nilpotency_profile,
    natural_basis,
    series,
    solvability_profile,
    span_closure,
    truncate,
)
from prolie.presentation import elem, elem_str

ABELIAN = "algebra ab\nbasis a, b, c\nweight a = 1\nweight b = 1\nweight c = 2\n"
GRADED = ["m1", "m2", "witt_pos", "W(0)", "W(1)", "n1"]
QUOTIENT_MODE = GRADED + ["witt_nonneg", "W(2)", "example_3_8"]


def unit(q, i, g="e"):
    return SparseVector.unit(q.pos[elem(g, i)])


def span_names(q, sub):
    return sorted(elem_str(q.basis[next(iter(v.keys()))]) for v in sub.basis())


def test_truncate_examples():
    q = truncate(catalog.load("m1"), 5)
    assert q.dim == 6 and q.names() == ["e(1)", "e(2)", "e(3)", "e(4)", "e(5)", "e(6)"]
    assert truncate(parse_dsl(ABELIAN), 7).dim == 3
    w = truncate(catalog.load("W(0)"), 4)
    assert w.names() == ["e(1)", "e(2)", "e(3)", "e(4)"]
    assert q.bracket(unit(q, 1), unit(q, 2)) == unit(q, 3)
    assert w.bracket(unit(w, 1), unit(w, 2)) == unit(w, 3)
    assert w.bracket(unit(w, 1), unit(w, 3)) == unit(w, 4) * 2
    assert not w.bracket(unit(w, 2), unit(w, 3))


def test_invalid_weighting_refused():
    bad = parse_dsl("algebra bad\nbasis a, b, c\nweight a = 1\nweight b = 2\nweight c = 2\nbracket [a, b] = c\n")
    with pytest.raises(InvalidWeighting):
        truncate(bad, 5)


def test_series_examples():
    assert series(truncate(catalog.load("m1"), 6), "lcs").dims == [7, 5, 4, 3, 2, 1, 0]
    ab = series(truncate(parse_dsl(ABELIAN), 4), "lcs")
    assert ab.dims == [3, 0] and not ab.stabilized
    wn = series(truncate(catalog.load("witt_nonneg"), 8), "lcs")
    assert wn.stabilized and wn.terms[-1].dim > 0


def test_span_closure_examples():
    q = truncate(catalog.load("m1"), 8)
    evens = span_closure(q, [unit(q, 2), unit(q, 4), unit(q, 6), unit(q, 8)], "subalgebra")
    assert span_names(q, evens) == ["e(2)", "e(4)", "e(6)", "e(8)"]
    assert span_names(q, span_closure(q, [unit(q, 2), unit(q, 4)], "subalgebra")) == ["e(2)", "e(4)"]
    ideal = span_closure(q, [unit(q, 1)], "ideal")
    assert span_names(q, ideal) == ["e(1)"] + ["e(%d)" % i for i in range(3, 10)]
    assert span_closure(q, [], "ideal").dim == 0


def test_profiles_examples():
    nil = nilpotency_profile(catalog.load("m1"), [8, 12])
    assert nil.layers[12][:4] == [2, 1, 1, 1]
    assert nil.verdict("pro_nilpotent").ok
    sol = solvability_profile(catalog.load("m1"), [8, 12])
    assert sol.verdict("pro_solvable").failed
    assert sol.verdict("pro_solvable").witness["zero_term"] == 3
    wn = nilpotency_profile(catalog.load("witt_nonneg"), [8, 12])
    assert wn.verdict("residually_nilpotent").failed
    assert solvability_profile(catalog.load("witt_nonneg"), [8, 12]).verdict("pro_solvable").ok
    ab = parse_dsl(ABELIAN)
    assert all(v.ok for v in nilpotency_profile(ab, [4, 8]).verdicts)
    assert all(v.ok for v in solvability_profile(ab, [4, 8]).verdicts)


def test_natural_basis_examples():
    q = truncate(catalog.load("m1"), 8)
    layers = natural_basis(q, 8)
    assert [[q.element_vector(v).as_dict() for v in layer] for layer in layers[:2]] == [
        [{elem("e", 1): 1}, {elem("e", 2): 1}], [{elem("e", 3): -1}]]
    assert all(len(layer) == 1 for layer in layers[1:])
    w = truncate(catalog.load("W(0)"), 8)
    lw = natural_basis(w, 8)
    assert len(lw[0]) == 2 and w.element_vector(lw[1][0]).as_dict() == {elem("e", 3): -1}
    assert len(natural_basis(truncate(parse_dsl(ABELIAN), 4), 4)[0]) == 3
    with pytest.raises(LayerDeficient):
        natural_basis(catalog.load("witt_nonneg"), 8)


@given(st.sampled_from(QUOTIENT_MODE), st.integers(2, 7), st.integers(1, 4))
def test_quotient_functoriality(name, small, extra):
    p = catalog.load(name)
    lo, hi = truncate(p, small), truncate(p, small + extra)

    def proj(v):
        return lo.vector(hi.element_vector(v))

    for i in range(hi.dim):
        for j in range(i + 1, hi.dim):
            assert proj(hi.bracket_pos(i, j)) == lo.bracket(proj(SparseVector.unit(i)), proj(SparseVector.unit(j)))


@pytest.mark.parametrize("name", QUOTIENT_MODE + ["a_inf"])
@pytest.mark.parametrize("kind", ["lcs", "derived"])
def test_series_terms_are_ideals(name, kind):
    q = truncate(catalog.load(name), 9)
    for term in series(q, kind).terms:
        for v in term.basis():
            for k in range(q.dim):
                assert term.contains(q.bracket(v, SparseVector.unit(k)))


@pytest.mark.parametrize("name", QUOTIENT_MODE + ["a_inf"])
def test_derived_inside_central_powers(name):
    q = truncate(catalog.load(name), 12)
    lcs = series(q, "lcs").terms
    der = series(q, "derived").terms
    for i, d in enumerate(der, start=1):
        k = 2 ** (i - 1)
        target = lcs[k - 1] if k - 1 < len(lcs) else (lcs[-1] if series(q, "lcs").stabilized else Subspace())
        assert d.issubset(target)


def _sum(a, b):
    return a + b


def test_ideal_sum_containments():
    q = truncate(catalog.load("m1"), 12)
    I = span_closure(q, [unit(q, 1)], "ideal")
    J = span_closure(q, [unit(q, 2)], "ideal")
    IJ = I + J

    def term(chain, k):
        return chain.terms[k - 1] if k - 1 < len(chain.terms) else Subspace()

    li, lj, lij = series(q, "lcs", I), series(q, "lcs", J), series(q, "lcs", IJ)
    for i in range(1, 5):
        assert term(lij, 2 * i - 1).issubset(_sum(term(li, i), term(lj, i)))
    di, dj, dij = series(q, "derived", I), series(q, "derived", J), series(q, "derived", IJ)
    for i in range(1, 4):
        assert term(dij, 2 * i).issubset(_sum(term(di, i), term(dj, i)))


@pytest.mark.parametrize("M", [8, 12])
def test_witt_nonneg_second_derived_is_positive_part(M):
    q = truncate(catalog.load("witt_nonneg"), M)
    r2 = series(q, "derived").terms[1]
    positive = Subspace(SparseVector.unit(q.pos[e]) for e in q.basis if e[1][0] >= 1)
    assert r2 == positive
    assert all(v.ok for v in nilpotency_profile(catalog.load("witt_pos"), [8, 12]).verdicts)
