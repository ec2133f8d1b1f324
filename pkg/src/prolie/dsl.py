"""Reader and writer for ``.lie`` algebra definitions.

A definition looks like::

    algebra m1
    basis e(i) for i >= 1
    weight e(1) = 1
    weight e(i) = i - 1 for i >= 2
    bracket [e(1), e(i)] = e(i+1) for i >= 2

Statements are separated by newlines or ``;`` and ``#`` starts a comment.
Further statements: ``param s = 2``, ``complement x1, x2``,
``cocycle [a, b] = ...`` (a central twist added on top of the brackets) and
``truncation subalgebra``. Cocycle files use ``cocycle NAME``, ``space v1, v2``
and ``theta [a, b] = ...``.
"""

import re
from fractions import Fraction

from .errors import AmbiguousRule, DSLSyntaxError, InvalidWeighting, OverlapError, UnknownName, UsageError
from .polyexpr import TRUE, Add, Cmp, Cong, Const, Guard, Mul, Neg, Var
from .presentation import BracketRule, Generator, Presentation, Term, WeightRule, probe_overlaps

__all__ = ["parse_dsl", "parse_cocycle", "to_dsl", "cocycle_to_dsl", "parse_term", "parse_sum", "Cocycle"]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>[\n;])|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>==|!=|<=|>=|[()\[\],=<>+\-*/%])"
)
KEYWORDS = {"algebra", "param", "basis", "complement", "weight", "bracket", "cocycle", "truncation", "for", "and",
            "space", "theta"}
CMPS = ("<", "<=", "==", "!=", ">=", ">", "=")
PROBE_WINDOW = 6


class Tok:
    __slots__ = ("kind", "text", "line", "col", "pos")

    def __init__(self, kind, text, line, col, pos):
        self.kind, self.text, self.line, self.col, self.pos = kind, text, line, col, pos

    def __repr__(self):
        return "Tok(%s %r @%d:%d)" % (self.kind, self.text, self.line, self.col)


def tokenize(src):
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DSLSyntaxError("unexpected character %r" % src[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            out.append(Tok("nl", text, line, col, pos))
            if text == "\n":
                line += 1
                line_start = m.end()
        elif kind not in ("ws", "comment"):
            if kind == "name" and text in KEYWORDS:
                kind = "kw"
            out.append(Tok(kind, text, line, col, pos))
        pos = m.end()
    out.append(Tok("eof", "", line, pos - line_start + 1, pos))
    return out


class Cocycle:
    """A named space ``V`` with rules ``theta[a, b] = sum over V``."""

    def __init__(self, name, space, rules):
        self.name = name
        self.space = tuple(space)
        self.rules = tuple(rules)

    def __repr__(self):
        return "Cocycle(%r, dim V=%d, %d rules)" % (self.name, len(self.space), len(self.rules))


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.gens = {}
        self.params = {}

    # token helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, expected=(), tok=None):
        t = tok or self.tok
        raise DSLSyntaxError(msg, t.line, t.col, expected)

    def at(self, text=None, kind=None):
        t = self.tok
        if kind is not None and t.kind != kind:
            return False
        return text is None or t.text == text

    def take(self, text=None, kind=None):
        t = self.tok
        if not self.at(text, kind):
            want = text if text is not None else kind.upper()
            got = t.text or "end of input"
            self.error("unexpected %r" % got, expected=[want])
        self.i += 1
        return t

    def maybe(self, text):
        if self.at(text) and self.tok.kind in ("op", "kw"):
            self.i += 1
            return True
        return False

    def skip_nl(self):
        while self.tok.kind == "nl":
            self.i += 1

    def end_stmt(self):
        if self.tok.kind == "eof":
            return
        if self.tok.kind != "nl":
            self.error("unexpected %r" % self.tok.text, expected=["end of statement"])
        self.skip_nl()

    def rest_of_line(self):
        t = self.tok
        end = self.src.find("\n", t.pos)
        if end < 0:
            end = len(self.src)
        text = self.src[t.pos:end]
        text = text.split("#", 1)[0].split(";", 1)[0].strip()
        while self.tok.kind not in ("nl", "eof") and self.tok.pos < t.pos + len(text):
            self.i += 1
        return text

    # expressions

    def poly(self):
        e = self.poly_term()
        while self.at(kind="op") and self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.poly_term()
            e = Add(e, rhs) if op == "+" else Add(e, Neg(rhs))
        return e

    def poly_term(self):
        e = self.poly_unary()
        while self.at("*", "op"):
            self.take()
            e = Mul(e, self.poly_unary())
        return e

    def poly_unary(self):
        if self.at("-", "op"):
            self.take()
            return Neg(self.poly_unary())
        return self.poly_atom()

    def poly_atom(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            if self.at("/", "op"):
                self.take()
                d = self.take(kind="int")
                if int(d.text) == 0:
                    self.error("zero denominator", tok=d)
                return Const(Fraction(int(t.text), int(d.text)))
            return Const(int(t.text))
        if t.kind == "name":
            if t.text in self.gens:
                self.error("generator %r used as a number" % t.text, expected=["INT", "VAR", "("])
            self.take()
            return Var(t.text)
        if self.at("(", "op"):
            self.take()
            e = self.poly()
            self.take(")", "op")
            return e
        self.error("unexpected %r" % (t.text or "end of input"), expected=["INT", "VAR", "("])

    def guard(self):
        atoms = [self.atom()]
        while self.maybe("and"):
            atoms.append(self.atom())
        return Guard(atoms)

    def atom(self):
        lhs = self.poly()
        if self.at("%", "op"):
            self.take()
            m = self.take(kind="int")
            if int(m.text) == 0:
                self.error("zero modulus", tok=m)
            self.take("==", "op")
            neg = self.maybe("-")
            r = int(self.take(kind="int").text)
            return Cong(lhs, int(m.text), -r if neg else r)
        if self.tok.kind == "op" and self.tok.text in CMPS:
            op = self.take().text
            return Cmp(lhs, op, self.poly())
        self.error("unexpected %r" % (self.tok.text or "end of input"), expected=list(CMPS[:-1]) + ["%"])

    def term(self):
        t = self.tok
        if t.kind != "name":
            self.error("unexpected %r" % (t.text or "end of input"), expected=["generator"])
        if t.text not in self.gens:
            raise UnknownName("%d:%d: unknown generator %r" % (t.line, t.col, t.text))
        self.take()
        coords = []
        if self.at("(", "op"):
            self.take()
            coords.append(self.poly())
            while self.maybe(","):
                coords.append(self.poly())
            self.take(")", "op")
        return Term(t.text, tuple(coords))

    def coef_then_term(self):
        if self.tok.kind == "name" and self.tok.text in self.gens:
            return Const(1), self.term()
        nxt = self.toks[self.i + 1]
        if self.tok.kind == "name" and not (nxt.kind == "op" and nxt.text == "*"):
            t = self.tok
            raise UnknownName("%d:%d: unknown generator %r" % (t.line, t.col, t.text))
        factors = [self.poly_unary()]
        self.take("*", "op")
        while not (self.tok.kind == "name" and self.tok.text in self.gens):
            factors.append(self.poly_unary())
            self.take("*", "op")
        c = factors[0]
        for f in factors[1:]:
            c = Mul(c, f)
        return c, self.term()

    def sum(self):
        if self.at("0", "int") and self.toks[self.i + 1].kind in ("nl", "eof") or (
            self.at("0", "int") and self.toks[self.i + 1].text == "for"
        ):
            self.take()
            return ()
        out = []
        sign = -1 if self.maybe("-") else 1
        while True:
            c, t = self.coef_then_term()
            out.append((c if sign > 0 else Neg(c), t))
            if self.maybe("+"):
                sign = 1
            elif self.maybe("-"):
                sign = -1
            else:
                break
        return tuple((c.simplify(), t) for c, t in out)

    def bracket_pair(self):
        self.take("[", "op")
        a = self.term()
        self.take(",", "op")
        b = self.term()
        self.take("]", "op")
        self.take("=", "op")
        return a, b

    # statements

    def header(self, kw):
        self.skip_nl()
        self.take(kw, "kw")
        if self.tok.kind in ("nl", "eof"):
            self.error("missing name", expected=["NAME"])
        name = self.rest_of_line()
        self.end_stmt()
        return name

    def parse_presentation(self):
        name = self.header("algebra")
        gens, weights, rules, trunc = [], [], [], "quotient"
        lines = {}
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "kw":
                self.error("unexpected %r" % t.text, expected=["param", "basis", "complement", "weight", "bracket",
                                                              "cocycle", "truncation"])
            self.take()
            kw = t.text
            if kw == "param":
                n = self.take(kind="name")
                self.take("=", "op")
                neg = self.maybe("-")
                v = int(self.take(kind="int").text)
                self.params[n.text] = -v if neg else v
            elif kw == "truncation":
                mode = self.take(kind="name")
                if mode.text not in ("quotient", "subalgebra"):
                    self.error("unknown truncation %r" % mode.text, expected=["quotient", "subalgebra"], tok=mode)
                trunc = mode.text
            elif kw == "basis":
                gens.append(self.gen())
                while self.maybe(","):
                    gens.append(self.gen())
            elif kw == "complement":
                for n in self.name_list():
                    g = Generator(n, (), TRUE, True)
                    self.gens[n] = g
                    gens.append(g)
            elif kw == "weight":
                term = self.term()
                self.take("=", "op")
                expr = self.poly()
                g = self.maybe("for") and self.guard() or TRUE
                weights.append(WeightRule(term, expr, g))
            elif kw in ("bracket", "cocycle"):
                a, b = self.bracket_pair()
                res = self.sum()
                g = self.maybe("for") and self.guard() or TRUE
                rules.append(BracketRule(a, b, res, g, central=(kw == "cocycle")))
                lines[len(rules) - 1] = t
            else:
                self.error("statement %r not allowed here" % kw, tok=t)
            self.end_stmt()
        if not gens:
            raise DSLSyntaxError("no basis declared", self.tok.line, self.tok.col, ["basis"])
        try:
            p = Presentation(name, gens, weights, rules, self.params, trunc)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return p

    def gen(self):
        n = self.take(kind="name")
        if n.text in self.gens:
            self.error("generator %r declared twice" % n.text, tok=n)
        vars_ = []
        dom = TRUE
        if self.maybe("("):
            vars_.append(self.take(kind="name").text)
            while self.maybe(","):
                vars_.append(self.take(kind="name").text)
            self.take(")", "op")
            self.take("for", "kw")
            dom = self.guard()
        g = Generator(n.text, tuple(vars_), dom)
        self.gens[n.text] = g
        return g

    def name_list(self):
        names = [self.take(kind="name").text]
        while self.maybe(","):
            names.append(self.take(kind="name").text)
        return names

    def parse_cocycle(self, base):
        for g in base.generators:
            self.gens[g.name] = g
        self.params.update(base.params)
        name = self.header("cocycle")
        space = []
        rules = []
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "kw" or t.text not in ("space", "theta"):
                self.error("unexpected %r" % t.text, expected=["space", "theta"])
            self.take()
            if t.text == "space":
                for n in self.name_list():
                    if n in self.gens:
                        self.error("name %r already used by the algebra" % n, tok=t)
                    g = Generator(n)
                    self.gens[n] = g
                    space.append(n)
            else:
                a, b = self.bracket_pair()
                res = self.sum()
                g = self.maybe("for") and self.guard() or TRUE
                for _, term in res:
                    if term.gen not in space:
                        raise UnknownName("%d:%d: %r is not in the cocycle space" % (t.line, t.col, term.gen))
                rules.append(BracketRule(a, b, res, g, central=True))
            self.end_stmt()
        return Cocycle(name, space, rules)


def parse_dsl(text, probe=PROBE_WINDOW):
    """Parse a ``.lie`` definition. Overlapping rules found on a small probe window raise OverlapError."""
    p = _Parser(text).parse_presentation()
    if probe:
        try:
            probe_overlaps(p, probe)
        except OverlapError:
            raise
        except AmbiguousRule as exc:
            raise OverlapError(str(exc), witness=exc.witness) from None
        except (InvalidWeighting, UsageError):
            pass
    return p


def parse_cocycle(text, base):
    return _Parser(text).parse_cocycle(base)


def parse_term(text, p):
    """Parse a single basis element such as ``e(3)`` against a presentation."""
    ps = _Parser(text)
    for g in p.generators:
        ps.gens[g.name] = g
    t = ps.term()
    if ps.tok.kind != "eof":
        ps.error("trailing input", expected=["end of input"])
    idx = []
    for c in t.coords:
        v = Fraction(c.eval(dict(p.params)))
        if v.denominator != 1:
            raise UsageError("non-integer index in %r" % text)
        idx.append(v.numerator)
    return (t.gen, tuple(idx))


def parse_sum(text, p):
    """Parse ``2*e(1) - e(3)`` into a SparseVector over basis elements."""
    from .exactlin import SparseVector

    ps = _Parser(text)
    for g in p.generators:
        ps.gens[g.name] = g
    res = ps.sum()
    if ps.tok.kind != "eof":
        ps.error("trailing input", expected=["end of input"])
    out = {}
    env = dict(p.params)
    for c, t in res:
        e = (t.gen, tuple(int(x.eval(env)) for x in t.coords))
        out[e] = out.get(e, 0) + Fraction(c.eval(env))
    return SparseVector(out)


# writer

def _sum_str(result):
    if not result:
        return "0"
    parts = []
    for k, (c, t) in enumerate(result):
        neg = False
        if isinstance(c, Neg):
            c, neg = c.a, True
        elif isinstance(c, Const) and c.v < 0:
            c, neg = Const(-Fraction(c.v)), True
        if isinstance(c, Const) and c.v == 1:
            body = str(t)
        elif isinstance(c, Const):
            body = "%s*%s" % (c, t)
        elif isinstance(c, Var):
            body = "%s*%s" % (c, t)
        else:
            body = "(%s)*%s" % (c, t)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _rule_str(r, kw):
    s = "%s [%s, %s] = %s" % (kw, r.left, r.right, _sum_str(r.result))
    if r.guard:
        s += " for %s" % r.guard
    return s


def to_dsl(p):
    """Canonical text for a presentation; ``parse_dsl(to_dsl(p))`` rebuilds it."""
    lines = ["algebra %s" % p.name]
    for note in p.notes:
        lines.append("# %s" % note)
    for k in sorted(p.params):
        lines.append("param %s = %d" % (k, p.params[k]))
    if p.truncation != "quotient":
        lines.append("truncation %s" % p.truncation)
    for g in p.generators:
        if g.complement:
            continue
        if g.arity:
            lines.append("basis %s(%s) for %s" % (g.name, ", ".join(g.vars), g.domain))
        else:
            lines.append("basis %s" % g.name)
    comp = [g.name for g in p.generators if g.complement]
    if comp:
        lines.append("complement %s" % ", ".join(comp))
    for w in p.weights:
        s = "weight %s = %s" % (w.term, w.expr)
        if w.guard:
            s += " for %s" % w.guard
        lines.append(s)
    for r in p.rules:
        lines.append(_rule_str(r, "cocycle" if r.central else "bracket"))
    return "\n".join(lines) + "\n"


def cocycle_to_dsl(c):
    lines = ["cocycle %s" % c.name]
    if c.space:
        lines.append("space %s" % ", ".join(c.space))
    for r in c.rules:
        lines.append(_rule_str(r, "theta"))
    return "\n".join(lines) + "\n"
