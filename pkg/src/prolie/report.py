"""Canonical reports: sorted-key JSON with rationals as strings, and a text view."""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .exactlin import Matrix, SparseVector, Subspace, fmt
from .presentation import elem_str
from .verdict import Verdict

SCHEMA = 1


def _is_elem(x):
    return (isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], str) and isinstance(x[1], tuple)
            and all(isinstance(i, int) for i in x[1]))


def _key(k, basis=None):
    if _is_elem(k):
        return elem_str(k)
    if basis is not None and isinstance(k, int) and 0 <= k < len(basis):
        return elem_str(basis[k])
    if isinstance(k, tuple):
        return "(" + ", ".join(_key(x) for x in k) + ")"
    if isinstance(k, Fraction):
        return fmt(k)
    return str(k)


def jsonable(x, basis=None):
    """Plain JSON data for any result object; ``basis`` names integer positions."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, float):
        return repr(x)
    if _is_elem(x):
        return elem_str(x)
    if isinstance(x, Verdict):
        return {"property": x.property, "value": x.value, "depth": x.depth,
                "witness": jsonable(x.witness, basis), "evidence": jsonable(x.evidence, basis)}
    if isinstance(x, SparseVector):
        return {_key(k, basis): fmt(v) for k, v in x.items()}
    if isinstance(x, Subspace):
        return [jsonable(v, basis) for v in x.basis()]
    if hasattr(x, "quotient") and hasattr(x, "matrix"):  # DerivationMatrix
        return jsonable(x.matrix, x.quotient.basis)
    if isinstance(x, Matrix):
        if basis is not None and x.rows == x.cols == len(basis):
            return {elem_str(basis[j]): jsonable(col, basis) for j, col in enumerate(x.columns()) if col}
        return [[fmt(v) for v in row] for row in x.to_dense()]
    if isinstance(x, dict):
        return {_key(k, None): jsonable(v, basis) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v, basis) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if hasattr(x, "__dict__"):
        return {k: jsonable(v, basis) for k, v in vars(x).items() if not k.startswith("_")}
    return str(x)


@dataclass
class Report:
    command: list
    input_hash: str
    windows: list
    results: dict
    verdicts: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    style: str = "text"

    @property
    def failed(self):
        return any(v.failed for v in self.verdicts)

    def as_dict(self, basis=None):
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": list(self.command),
            "input_hash": self.input_hash,
            "windows": list(self.windows),
            "results": jsonable(self.results, basis),
            "verdicts": [jsonable(v, basis) for v in self.verdicts],
            "warnings": list(self.warnings),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self):
        lines = ["prolie %s: %s" % (__version__, " ".join(self.command))]
        if self.windows:
            lines.append("windows: %s" % ", ".join(str(w) for w in self.windows))
        data = self.as_dict()
        for key in sorted(data["results"]):
            _text(lines, key, data["results"][key], 0)
        if self.verdicts:
            lines.append("verdicts:")
            for v in self.verdicts:
                lines.append("  %s" % _verdict_line(v))
        for w in self.warnings:
            lines.append("warning: %s" % w)
        return "\n".join(lines) + "\n"

    def render(self, style=None):
        return self.to_json() if (style or self.style) == "json" else self.to_text()


def _verdict_line(v):
    s = "%s: %s (depth %d)" % (v.property, v.value, v.depth)
    if v.witness is not None:
        s += " witness %s" % json.dumps(jsonable(v.witness), sort_keys=True, ensure_ascii=False)
    return s


def _short(v):
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def _text(lines, key, value, depth):
    pad = "  " * depth
    if isinstance(value, dict) and value and len(_short(value)) > 72:
        lines.append("%s%s:" % (pad, key))
        for k in sorted(value):
            _text(lines, k, value[k], depth + 1)
    elif isinstance(value, list) and value and len(_short(value)) > 72:
        lines.append("%s%s:" % (pad, key))
        for item in value:
            lines.append("%s  - %s" % (pad, item if isinstance(item, str) else _short(item)))
    else:
        lines.append("%s%s: %s" % (pad, key, value if isinstance(value, str) else _short(value)))
