from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import dense_kernel_dim, dense_rank
from prolie import catalog
from prolie.exactlin import (
    Matrix,
    SparseVector,
    Subspace,
    fmt,
    intersect,
    inverse,
    is_nilpotent,
    is_solvable_family,
    kernel_basis,
    kernel_with_free,
    rank,
    solve,
)
from prolie.filtration import truncate

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=12, square=False):
    r = draw(st.integers(1, max_rows))
    c = r if square else draw(st.integers(1, max_cols))
    dense = draw(st.lists(st.lists(st.one_of(st.just(Fraction(0)), small), min_size=c, max_size=c),
                          min_size=r, max_size=r))
    return Matrix.from_dense(dense)


def test_fmt():
    assert fmt(Fraction(6, 3)) == "2"
    assert fmt(Fraction(-1, 2)) == "-1/2"


def test_sparse_vector_drops_zeros():
    v = SparseVector({1: 2, 0: 1}) - SparseVector({1: 2})
    assert v.as_dict() == {0: 1}
    assert list(SparseVector({3: 1, 1: 1}).keys()) == [1, 3]
    assert not (v - v)


def test_kernel_examples():
    assert kernel_basis(Matrix.from_dense([[1, 1], [2, 2]])) == [SparseVector({0: -1, 1: 1})]
    assert kernel_basis(Matrix.identity(3)) == []
    # a_1 + a_i = a_(i+1) for i = 2..5 over a_1..a_6
    rows = [[1 if k == 0 else 0 for k in range(6)] for _ in range(4)]
    for r, i in enumerate(range(1, 5)):
        rows[r][i] += 1
        rows[r][i + 1] -= 1
    assert len(kernel_basis(Matrix.from_dense(rows))) == 2


@given(matrices())
def test_kernel_matches_dense_oracle(m):
    ker = kernel_basis(m)
    for v in ker:
        assert not m.apply(v)
    assert len(ker) == dense_kernel_dim(m.to_dense(), m.cols)
    assert rank(m) == dense_rank(m.to_dense())


@given(matrices())
def test_kernel_is_echelon_in_free_columns(m):
    free, ker = kernel_with_free(m)
    for f, v in zip(free, ker):
        assert v[f] == 1
        assert all(v[g] == 0 for g in free if g != f)


@given(matrices(square=True, max_rows=5))
def test_solve_and_inverse(m):
    b = m.apply(SparseVector({0: 1, m.cols - 1: 2}))
    x = solve(m, b)
    assert x is not None and m.apply(x) == b
    if rank(m) == m.rows:
        assert m @ inverse(m) == Matrix.identity(m.rows)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(m)


def test_nilpotent_examples():
    assert is_nilpotent(Matrix.from_dense([[0, 1], [0, 0]]))
    assert not is_nilpotent(Matrix.identity(3))
    q = truncate(catalog.load("m1"), 5)
    assert is_nilpotent(q.ad(q.pos[("e", (1,))]))
    with pytest.raises(ValueError):
        is_nilpotent(Matrix(2, 3))


def _charpoly_nilpotent(m):
    poly = sympy.Matrix(m.to_dense()).charpoly().all_coeffs()
    return all(c == 0 for c in poly[1:])


@st.composite
def maybe_nilpotent(draw):
    m = draw(matrices(square=True))
    if draw(st.booleans()):
        n = m.rows
        strict = Matrix(n, n, {(i, j): v for (i, j), v in m.entries().items() if j > i})
        g = Matrix.identity(n) + Matrix(n, n, {(n - 1, 0): draw(small)})
        return g @ strict @ inverse(g)
    return m


@given(maybe_nilpotent())
def test_nilpotent_matches_charpoly(m):
    assert is_nilpotent(m) == _charpoly_nilpotent(m)


def test_solvable_family_examples():
    assert is_solvable_family([Matrix.diagonal([1, 2]), Matrix.diagonal([0, 5])])
    e12 = Matrix(2, 2, {(0, 1): 1})
    e21 = Matrix(2, 2, {(1, 0): 1})
    assert not is_solvable_family([e12, e21])
    q = truncate(catalog.load("m1"), 6)
    assert is_solvable_family([q.ad(k) for k in range(q.dim)])


@given(st.lists(matrices(square=True, max_rows=3), min_size=1, max_size=3).filter(
    lambda ms: len({m.rows for m in ms}) == 1), st.lists(small, min_size=9, max_size=9))
def test_solvable_family_basis_change_invariant(ms, gs):
    n = ms[0].rows
    g = Matrix.identity(n) + Matrix(n, n, {(i, j): gs[i * 3 + j] for i in range(n) for j in range(n) if i < j})
    gi = inverse(g)
    assert is_solvable_family(ms) == is_solvable_family([g @ m @ gi for m in ms])


def test_subspace_operations():
    u = Subspace([SparseVector({0: 1}), SparseVector({1: 1})])
    v = Subspace([SparseVector({1: 1, 2: 1}), SparseVector({0: 1, 1: -1})])
    w = intersect(u, v)
    assert w.dim == 1 and w.contains(SparseVector({0: 1, 1: -1}))
    assert (u + v).dim == 3
    assert Subspace([SparseVector({1: 1})]).issubset(u)
    assert not u.contains(SparseVector({2: 1}))
