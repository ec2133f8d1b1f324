import random
from fractions import Fraction

import pytest

from prolie import catalog
from prolie.constructions import (
    ExtensionSpec,
    InnerAction,
    MatrixAction,
    TorusAction,
    build_extension,
    central_extension,
    coboundary_cocycle,
    current_algebra,
    derivation_pair_bracket,
    direct_sum,
    exp_derivation,
    semidirect_torus,
)
from prolie.derivations import center_and_inner, inner_derivation, torus_system
from prolie.dsl import parse_cocycle, parse_dsl, to_dsl
from prolie.errors import CodimBound, NameCollision, NonTerminating, NotAlternating, NotCocycle, RadicalViolation
from prolie.exactlin import Matrix, SparseVector
from prolie.filtration import nilpotency_profile, truncate
from prolie.presentation import Presentation, check_jacobi, elem

ABELIAN = "algebra ab\nbasis a, b, c\nweight a = 1\nweight b = 1\nweight c = 1\n"


def e(i):
    return elem("e", i)


def x(name):
    return elem(name)


def br(q, a, b):
    return q.element_vector(q.bracket_pos(q.pos[a], q.pos[b]))


def cocycle(p, body, name="th"):
    return parse_cocycle("cocycle %s\n%s" % (name, body), p)


# semidirect products with a torus

def test_witt_semidirect_acts_by_index():
    p = catalog.load("witt_pos")
    _, t = torus_system(p, 8)
    R = semidirect_torus(p, t)
    assert R.name == "R_T(witt_pos)"
    q = truncate(R, 8)
    scale = br(q, e(1), x("x1"))[e(1)]
    assert scale != 0
    for i in range(1, 9):
        assert br(q, e(i), x("x1")) == SparseVector({e(i): i * scale})


def test_zero_torus_is_identity():
    p = catalog.load("example_3_8")
    _, t = torus_system(p, 8)
    assert t.dim == 0 and semidirect_torus(p, t) is p


def test_m1_semidirect_matches_normalized_torus():
    p = catalog.load("m1")
    _, t = torus_system(p, 10)
    q = truncate(semidirect_torus(p, t), 10)
    acts = []
    for k in (1, 2):
        acts.append([br(q, e(i), x("x%d" % k))[e(i)] for i in range(1, 11)])
        for i in range(1, 11):
            assert set(br(q, e(i), x("x%d" % k)).keys()) <= {e(i)}
    # solve for the combinations giving the two normalized actions
    want1 = [Fraction(1)] + [Fraction(i - 2) for i in range(2, 11)]
    want2 = [Fraction(0)] + [Fraction(1)] * 9
    for want in (want1, want2):
        m = Matrix.from_columns(10, [SparseVector(enumerate(a)) for a in acts])
        from prolie.exactlin import solve
        assert solve(m, SparseVector(enumerate(want))) is not None
    assert br(q, x("x1"), x("x2")) == SparseVector()


@pytest.mark.parametrize("name", ["m1", "W(0)", "W(1)", "W(2)", "n1", "witt_pos"])
def test_full_torus_codim_is_rank(name):
    p = catalog.load(name)
    ws = {"n1": [9, 15], "W(2)": [12, 16]}.get(name, [8, 12])
    _, t = torus_system(p, ws[-1])
    R, rep = build_extension(ExtensionSpec(p, [TorusAction(t, k) for k in range(t.dim)], window=ws[-1]), ws)
    assert rep["passed"]
    assert rep["checks"]["rank_equals_codim"].ok
    assert rep["codim"] == t.dim
    assert check_jacobi(semidirect_torus(p, t), ws[0]).ok


# general extensions

def test_m1_extension_passes_and_is_complete():
    p = catalog.load("m1")
    _, t = torus_system(p, 10)
    R, rep = build_extension(ExtensionSpec(p, [TorusAction(t, 0), TorusAction(t, 1)], window=10), [6, 8, 10])
    assert rep["passed"]
    assert set(rep["checks"]) == {"radical", "codim_bound", "jacobi", "square_in_radical",
                                  "derived_containment", "rank_equals_codim"}
    for M in (6, 8, 10):
        center, _, equal = center_and_inner(truncate(R, M))
        assert center == [] and equal


def test_inner_action_is_a_radical_violation():
    p = catalog.load("m1")
    with pytest.raises(RadicalViolation) as info:
        build_extension(ExtensionSpec(p, [InnerAction(SparseVector({e(1): 1}))]), [6, 8])
    assert info.value.witness["coefficients"] == [1]


def test_no_complement_is_identity():
    p = catalog.load("m1")
    R, rep = build_extension(ExtensionSpec(p, []), [6])
    assert R is p and rep["passed"] and rep["codim"] == 0


def test_too_many_complement_generators():
    p = catalog.load("W(0)")
    _, t = torus_system(p, 8)
    # three independent diagonal actions on a two-dimensional first layer
    q = truncate(p, 8)
    d = [Matrix.diagonal([Fraction(int(i == k)) for i in range(q.dim)]) for k in range(3)]
    acts = [MatrixAction({q.basis[i]: SparseVector({q.basis[i]: m[i, i]}) for i in range(q.dim) if m[i, i]})
            for m in d]
    with pytest.raises((CodimBound, RadicalViolation)):
        build_extension(ExtensionSpec(p, acts), [8])


def test_complement_name_collision():
    p = catalog.load("m1")
    with pytest.raises(NameCollision):
        ExtensionSpec(p, [InnerAction(SparseVector({e(1): 1}))], names=["e"])


# central extensions

def test_zero_cocycle_is_a_coboundary():
    p = catalog.load("m1")
    N, rep = central_extension(p, cocycle(p, "space v\n"), [8])
    assert rep["coboundary"] and rep["cocycle"].ok and rep["center_matches"]


def test_theta23_is_not_a_coboundary():
    p = catalog.load("m1")
    c = parse_cocycle(catalog.cocycle_source("m1_e2e3"), p)
    N, rep = central_extension(p, c, [10])
    assert rep["cocycle"].ok
    assert rep["coboundary"] is False and rep["nu"] is None
    assert rep["center_matches"]
    q = truncate(N, 10)
    assert br(q, e(2), e(3)) == SparseVector({x("v"): 1})


def test_theta12_is_the_coboundary_of_nu_e3():
    p = catalog.load("m1")
    c = coboundary_cocycle(p, {e(3): {"v": 1}}, 10)
    N, rep = central_extension(p, c, [10])
    assert rep["coboundary"]
    nu = rep["nu"]
    assert nu[e(3)] == SparseVector({x("v"): 1})
    assert br(truncate(N, 10), e(1), e(2)) == SparseVector({e(3): 1, x("v"): 1})


def test_not_a_cocycle():
    p = catalog.load("m1")
    with pytest.raises(NotCocycle):
        central_extension(p, cocycle(p, "space v\ntheta [e(2), e(4)] = v\n"), [8])


def test_not_alternating():
    p = catalog.load("m1")
    with pytest.raises(NotAlternating):
        central_extension(p, cocycle(p, "space v\ntheta [e(2), e(2)] = v\n"), [6])


def test_cocycle_space_collision():
    p = catalog.load("m1")
    c = cocycle(p, "space v\n")
    c.space = ("e",)
    with pytest.raises(NameCollision):
        central_extension(p, c, [6])


@pytest.mark.parametrize("seed", range(20))
def test_coboundaries_are_cocycles(seed):
    rng = random.Random(seed)
    p = catalog.load("m1")
    nu = {e(i): {"u": rng.randint(-3, 3), "w": rng.randint(-3, 3)} for i in range(1, 11)}
    c = coboundary_cocycle(p, nu, 10)
    N, rep = central_extension(p, c, [10])
    assert rep["cocycle"].ok and rep["coboundary"] and rep["center_matches"]


@pytest.mark.parametrize("name,coc", [("m1", "m1_e2e3"), ("W(0)", "W0_e2e3")])
def test_central_extension_stays_pronilpotent(name, coc):
    p = catalog.load(name)
    N, _ = central_extension(p, parse_cocycle(catalog.cocycle_source(coc), p), [12])
    base = nilpotency_profile(p, [8, 12]).verdicts[0]
    ext = nilpotency_profile(N, [8, 12]).verdicts[0]
    assert base.ok and ext.value == base.value


# current algebras, direct sums, derivation pairs

def test_current_algebra_bracket():
    C = current_algebra(catalog.load("m1"))
    assert C.name == "m1_current"
    q = truncate(C, 6)
    assert br(q, elem("e", 1, 1), elem("e", 2, 1)) == SparseVector({elem("e", 3, 2): 1})
    assert C.weight(elem("e", 2, 3)) == 4
    assert check_jacobi(C, 8).ok


def test_current_of_abelian_is_abelian():
    C = current_algebra(parse_dsl(ABELIAN), degree_max=3)
    q = truncate(C, 5)
    assert q.dim > 0 and not q.table()
    assert any("degree bound" in n for n in C.notes)


def test_direct_sum_profile():
    S = direct_sum(catalog.load("m1"), catalog.load("W(0)"))
    assert any("collision" in n for n in S.notes)
    prof = nilpotency_profile(S, [8, 12])
    assert prof.layers[12][:6] == [4, 2, 2, 2, 2, 2]
    q = truncate(S, 8)
    for a in q.basis:
        for b in q.basis:
            if a[0][0] != b[0][0]:
                assert br(q, a, b) == SparseVector()
    assert check_jacobi(S, 10).ok


def test_direct_sum_with_empty():
    p = catalog.load("m1")
    S = direct_sum(p, Presentation("nothing", (), (), ()))
    assert truncate(S, 8).table() == truncate(p, 8).table()


def test_derivation_pair_bracket():
    P = derivation_pair_bracket(1, 1)
    q = truncate(P, 6)
    assert br(q, elem("m", 1, 1), elem("m", 1, 2)) == SparseVector({elem("m", 1, 2): 1})
    assert check_jacobi(P, 10).ok
    assert parse_dsl(to_dsl(P)).name == P.name
    Z = derivation_pair_bracket(1, 1, "x", "x")
    assert not truncate(Z, 6).table()


# exponentials

def test_exp_of_zero_is_identity():
    q = truncate(catalog.load("m1"), 6)
    E, v = exp_derivation(q, Matrix.zeros(q.dim))
    assert E == Matrix.identity(q.dim) and v.ok


def test_exp_of_ad_e1_window_5():
    # window 5 keeps e(6), whose weight is 5, so the cascade has one more term
    q = truncate(catalog.load("m1"), 5)
    E, v = exp_derivation(q, inner_derivation(q, SparseVector.unit(q.pos[e(1)])))
    assert v.ok
    img = q.element_vector(E.column(q.pos[e(2)]))
    assert img == SparseVector({e(2): 1, e(3): 1, e(4): Fraction(1, 2), e(5): Fraction(1, 6), e(6): Fraction(1, 24)})


@pytest.mark.parametrize("M", range(5, 11))
def test_exp_is_an_automorphism(M):
    q = truncate(catalog.load("m1"), M)
    d = inner_derivation(q, SparseVector.unit(q.pos[e(1)]))
    E, v = exp_derivation(q, d)
    Einv, _ = exp_derivation(q, Matrix.zeros(q.dim) - d.matrix)
    assert v.ok and E @ Einv == Matrix.identity(q.dim)


def test_exp_refuses_non_nilpotent():
    q = truncate(catalog.load("m1"), 6)
    _, t = torus_system(q, 6)
    with pytest.raises(NonTerminating):
        exp_derivation(q, t.derivations()[0])
