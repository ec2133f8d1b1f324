"""Builtin example algebras shipped as ``.lie`` files.

``W(s)`` is a family: ``load("W(2)")`` substitutes the parameter.
"""

import re
from importlib import resources

from .dsl import parse_dsl
from .errors import UnknownName

# name -> (file, one-line description, expected verdicts)
ENTRIES = {
    "m1": ("m1.lie", "filiform algebra [e1, ei] = e(i+1)", {
        "pro_nilpotent": "holds", "residually_solvable": "holds", "pro_solvable": "fails", "rank": 2}),
    "m2": ("m2.lie", "filiform algebra [ei, e1] = e(i+1), [e2, ej] = e(j+2)", {
        "pro_nilpotent": "holds", "residually_solvable": "holds", "pro_solvable": "fails"}),
    "witt_pos": ("witt_pos.lie", "positive part of the Witt algebra", {
        "pro_nilpotent": "holds", "pro_solvable": "holds", "rank": 1}),
    "witt_nonneg": ("witt_nonneg.lie", "non-negative part of the Witt algebra", {
        "pro_solvable": "holds", "residually_nilpotent": "fails"}),
    "W(s)": ("W.lie", "deformed positive Witt algebra [ei, ej] = (j - i) e(i+j+s)", {
        "pro_nilpotent": "holds", "rank": 1}),
    "n1": ("n1.lie", "positive part of affine A1 via the mod 3 table", {
        "pro_nilpotent": "holds", "rank": 2, "maximal_rank": True}),
    "example_3_8": ("example_3_8.lie", "pro-nilpotent algebra all of whose derivations are strictly triangular", {
        "pro_nilpotent": "holds", "characteristically_pronilpotent": "holds", "rank": 0}),
    "a_inf": ("a_inf.lie", "solvable [e0, ei] = e(i-1); read as a union of finite subalgebras", {
        "pro_solvable": "fails", "residually_nilpotent": "fails"}),
}

# cocycle name -> (file, base algebra)
COCYCLES = {
    "m1_e2e3": ("m1_e2e3.cocycle", "m1"),
    "W0_e2e3": ("W0_e2e3.cocycle", "W(0)"),
}

_FAMILY = re.compile(r"^W\((-?\d+)\)$")


def names():
    return list(ENTRIES)


def _key(name):
    if name in ENTRIES:
        return name, None
    m = _FAMILY.match(name.replace(" ", ""))
    if m:
        return "W(s)", int(m.group(1))
    raise UnknownName("no catalog algebra named %r (have: %s)" % (name, ", ".join(ENTRIES)))


def source(name):
    """DSL text of a catalog algebra; ``W(s)`` defaults to ``s = 0``."""
    key, s = _key(name)
    text = resources.files("prolie").joinpath("catalog", ENTRIES[key][0]).read_text(encoding="utf-8")
    if key == "W(s)":
        s = 0 if s is None else s
        text = text.replace("algebra W(s)", "algebra W(%d)" % s).replace("param s = 0", "param s = %d" % s)
    return text


def load(name):
    return parse_dsl(source(name))


def describe(name):
    key, _ = _key(name)
    f, text, expected = ENTRIES[key]
    return {"name": key, "file": f, "description": text, "expected": dict(expected)}


def cocycle_source(name):
    if name not in COCYCLES:
        raise UnknownName("no catalog cocycle named %r (have: %s)" % (name, ", ".join(COCYCLES)))
    return resources.files("prolie").joinpath("catalog", COCYCLES[name][0]).read_text(encoding="utf-8")
