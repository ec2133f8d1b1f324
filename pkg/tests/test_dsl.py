import pytest

from prolie import catalog
from prolie.constructions import current_algebra, derivation_pair_bracket, direct_sum, semidirect_torus
from prolie.derivations import torus_system
from prolie.dsl import parse_cocycle, parse_dsl, parse_sum, parse_term, to_dsl
from prolie.errors import DSLSyntaxError, OverlapError, UnknownName
from prolie.filtration import truncate
from prolie.presentation import elem

M1 = """algebra m1
basis e(i) for i >= 1
weight e(1) = 1
weight e(i) = i - 1 for i >= 2
bracket [e(1), e(i)] = e(i+1) for i >= 2
"""


def test_parse_m1():
    p = parse_dsl(M1)
    assert p.name == "m1" and len(p.rules) == 1
    assert p.bracket_basis(elem("e", 1), elem("e", 4)).as_dict() == {elem("e", 5): 1}


def test_missing_equals_points_after_bracket():
    bad = "algebra b\nbasis e(i) for i >= 1\nweight e(i) = i\nbracket [e(1), e(2)] e(3)\n"
    with pytest.raises(DSLSyntaxError) as info:
        parse_dsl(bad)
    err = info.value
    assert (err.line, err.col) == (4, 22)
    assert "=" in err.expected
    assert str(err).startswith("4:22:")


def test_overlap_detected_at_parse_time():
    text = ("algebra o\nbasis e(i) for i >= 1\nweight e(i) = i\n"
            "bracket [e(1), e(i)] = e(i + 1) for i >= 2\n"
            "bracket [e(1), e(i)] = 2*e(i + 1) for i >= 3 and i <= 4\n")
    with pytest.raises(OverlapError):
        parse_dsl(text)


def test_unknown_generator():
    with pytest.raises(UnknownName):
        parse_dsl("algebra u\nbasis e(i) for i >= 1\nweight e(i) = i\nbracket [e(1), f(2)] = e(3)\n")


def test_congruence_guards_and_rationals():
    text = ("algebra c\nbasis e(i) for i >= 1\nweight e(i) = i\n"
            "bracket [e(i), e(j)] = 1/2*e(i + j) for i < j and i - j % 3 == 1\n")
    p = parse_dsl(text)
    assert p.bracket_basis(elem("e", 2), elem("e", 3)).as_dict() == {}
    assert p.bracket_basis(elem("e", 1), elem("e", 3)).as_dict() == {elem("e", 4): 0.5}


def test_term_and_sum_parsing():
    p = catalog.load("m1")
    assert parse_term("e(7)", p) == elem("e", 7)
    assert parse_sum("e(1) + 2*e(3)", p).as_dict() == {elem("e", 1): 1, elem("e", 3): 2}


def _same_quotients(p, r, windows=(4, 8)):
    for M in windows:
        a, b = truncate(p, M), truncate(r, M)
        assert a.basis == b.basis and a.table() == b.table()


@pytest.mark.parametrize("name", ["m1", "m2", "witt_pos", "witt_nonneg", "W(2)", "n1", "example_3_8", "a_inf"])
def test_round_trip_catalog(name):
    p = catalog.load(name)
    r = parse_dsl(to_dsl(p))
    _same_quotients(p, r)


def test_round_trip_constructed():
    m1 = catalog.load("m1")
    _, t = torus_system(m1, 10)
    built = [
        semidirect_torus(m1, t),
        current_algebra(m1),
        direct_sum(m1, catalog.load("W(1)")),
        derivation_pair_bracket(),
        derivation_pair_bracket(2, 1, "y", "x"),
    ]
    for p in built:
        _same_quotients(p, parse_dsl(to_dsl(p)))


def test_cocycle_parse():
    m1 = catalog.load("m1")
    c = parse_cocycle(catalog.cocycle_source("m1_e2e3"), m1)
    assert c.space == ("v",) and len(c.rules) == 1
    with pytest.raises(UnknownName):
        parse_cocycle("cocycle bad\nspace v\ntheta [e(1), e(2)] = w\n", m1)
