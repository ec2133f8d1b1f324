"""Lie algebras with a countable basis given by guarded bracket rules.

A basis element is a pair ``(name, idx)`` where ``idx`` is a tuple of
integers, one per index variable of the generator family. ``("e", (7,))``
prints as ``e(7)`` and an arity-0 generator ``("x1", ())`` prints as ``x1``.

Rules are written for one orientation; the other follows from antisymmetry.
Rules flagged ``central`` form a second additive layer used for cocycle
twists, so a central extension can reuse the base rules unchanged.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    AmbiguousRule,
    DomainEscape,
    IndexOutOfDomain,
    InvalidWeighting,
    UnknownName,
)
from .exactlin import SparseVector, fmt
from .polyexpr import TRUE, Const, Expr, Guard, Var, as_expr

__all__ = [
    "Generator",
    "Term",
    "WeightRule",
    "BracketRule",
    "Presentation",
    "elem",
    "elem_str",
    "vec",
    "vec_str",
    "bracket",
    "check_jacobi",
    "classify_weighting",
]

SCAN_PAD = 8


def elem(name, *idx):
    return (name, tuple(int(i) for i in idx))


def elem_str(e):
    name, idx = e
    if not idx:
        return name
    return "%s(%s)" % (name, ",".join(str(i) for i in idx))


def vec_str(v):
    """Readable form of a combination of basis elements, e.g. ``e(2) - 1/2*e(4)``."""
    out = []
    for e, c in sorted(v.items()):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        body = elem_str(e) if c == 1 else "%s*%s" % (fmt(c), elem_str(e))
        out.append((sign, body))
    if not out:
        return "0"
    head = ("-" if out[0][0] == "-" else "") + out[0][1]
    return " ".join([head] + ["%s %s" % x for x in out[1:]])


def vec(*pairs):
    """``vec((c1, e1), (c2, e2), ...)`` or ``vec(e)`` for a unit vector."""
    if len(pairs) == 1 and isinstance(pairs[0], tuple) and isinstance(pairs[0][0], str):
        return SparseVector.unit(pairs[0])
    return SparseVector((e, c) for c, e in pairs)


@dataclass(frozen=True)
class Generator:
    name: str
    vars: tuple = ()
    domain: Guard = TRUE
    complement: bool = False

    @property
    def arity(self):
        return len(self.vars)


@dataclass(frozen=True)
class Term:
    gen: str
    coords: tuple = ()

    def __str__(self):
        if not self.coords:
            return self.gen
        return "%s(%s)" % (self.gen, ", ".join(str(c) for c in self.coords))

    def subs(self, m):
        return Term(self.gen, tuple(c.subs(m).simplify() for c in self.coords))


@dataclass(frozen=True)
class WeightRule:
    term: Term
    expr: Expr
    guard: Guard = TRUE


@dataclass(frozen=True)
class BracketRule:
    left: Term
    right: Term
    result: tuple  # of (coefficient Expr, Term)
    guard: Guard = TRUE
    central: bool = False

    def vars(self):
        out = set()
        for t in (self.left, self.right):
            for c in t.coords:
                out |= c.free_vars()
        return out


def _bind(term, e, env, params):
    """Match ``term`` against element ``e``; return the extended binding or None."""
    name, idx = e
    if term.gen != name or len(term.coords) != len(idx):
        return None
    env = dict(env)
    for c, v in zip(term.coords, idx):
        if isinstance(c, Var) and c.name not in params and c.name not in env:
            env[c.name] = v
        elif c.eval(env) != v:
            return None
    return env


@dataclass(eq=False)
class Presentation:
    """An immutable presentation; bracket results are memoised per basis pair."""

    name: str
    generators: tuple
    weights: tuple
    rules: tuple = ()
    params: dict = field(default_factory=dict)
    truncation: str = "quotient"
    notes: tuple = ()

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.weights = tuple(self.weights)
        self.rules = tuple(self.rules)
        self.params = dict(self.params)
        self.notes = tuple(self.notes)
        if self.truncation not in ("quotient", "subalgebra"):
            raise ValueError("truncation must be 'quotient' or 'subalgebra'")
        self._gens = {}
        for order, g in enumerate(self.generators):
            if g.name in self._gens:
                raise ValueError("duplicate generator %r" % g.name)
            if g.complement and g.arity:
                raise ValueError("complement generator %r must have arity 0" % g.name)
            self._gens[g.name] = (order, g)
        for w in self.weights:
            self._check_term(w.term)
        for r in self.rules:
            self._check_pattern(r)
        self._bcache = {}
        self._wcache = {}

    # validation

    def _check_term(self, t):
        if t.gen not in self._gens:
            raise UnknownName("unknown generator %r" % t.gen)
        g = self._gens[t.gen][1]
        if len(t.coords) != g.arity:
            raise UnknownName("%s takes %d index(es), got %d" % (t.gen, g.arity, len(t.coords)))

    def _check_pattern(self, r):
        bound = set(self.params)
        for t in (r.left, r.right):
            self._check_term(t)
            for c in t.coords:
                if isinstance(c, Var) and c.name not in bound:
                    bound.add(c.name)
                elif not c.free_vars() <= bound:
                    raise AmbiguousRule(
                        "pattern coordinate %s must be a bare variable or use already bound ones" % c
                    )
        used = r.guard.free_vars()
        for coef, t in r.result:
            self._check_term(t)
            used |= coef.free_vars()
            for c in t.coords:
                used |= c.free_vars()
        missing = used - bound
        if missing:
            raise UnknownName("unbound name(s) %s in rule [%s, %s]" % (", ".join(sorted(missing)), r.left, r.right))

    # basis

    def generator(self, name):
        try:
            return self._gens[name][1]
        except KeyError:
            raise UnknownName("unknown generator %r" % name) from None

    def gen_order(self, name):
        return self._gens[name][0]

    def in_domain(self, e):
        name, idx = e
        if name not in self._gens:
            return False
        g = self._gens[name][1]
        if len(idx) != g.arity:
            return False
        env = dict(self.params)
        env.update(zip(g.vars, idx))
        return g.domain.holds(env)

    def check_element(self, e):
        if not self.in_domain(e):
            raise IndexOutOfDomain("%s is not a basis element of %s" % (elem_str(e), self.name))

    def weight(self, e):
        w = self._wcache.get(e)
        if w is not None:
            return w
        g = self.generator(e[0])
        found = set()
        for rule in self.weights:
            env = _bind(rule.term, e, self.params, self.params)
            if env is not None and rule.guard.holds(env):
                found.add(Fraction(rule.expr.eval(env)))
        if not found:
            if g.complement:
                found = {Fraction(0)}
            else:
                raise InvalidWeighting("no weight defined for %s" % elem_str(e))
        if len(found) > 1:
            raise AmbiguousRule("conflicting weights for %s" % elem_str(e))
        w = found.pop()
        if w.denominator != 1:
            raise InvalidWeighting("weight of %s is not an integer" % elem_str(e))
        w = w.numerator
        self._wcache[e] = w
        return w

    def complement_elements(self):
        return [(g.name, ()) for g in self.generators if g.complement]

    def is_finite(self):
        return all(g.arity == 0 for g in self.generators)

    def elements_upto(self, M):
        """All basis elements of weight <= M (complement elements always included)."""
        out = []
        for g in self.generators:
            if g.complement:
                continue
            if g.arity == 0:
                e = (g.name, ())
                if self.in_domain(e) and self.weight(e) <= M:
                    out.append(e)
                continue
            bounds = g.domain.bounds()
            ranges, open_top = [], []
            for v in g.vars:
                lo, hi = bounds.get(v, (None, None))
                if lo is None:
                    raise InvalidWeighting("index %s of %s has no lower bound" % (v, g.name))
                top = lo + max(M, 0) + 1 + SCAN_PAD
                if hi is not None and hi <= top:
                    ranges.append(range(lo, hi + 1))
                    open_top.append(None)
                else:
                    ranges.append(range(lo, top + 1))
                    open_top.append(top)
            for idx in product(*ranges):
                e = (g.name, idx)
                if not self.in_domain(e):
                    continue
                w = self.weight(e)
                if w > M:
                    continue
                if any(t is not None and i == t for i, t in zip(idx, open_top)):
                    raise InvalidWeighting(
                        "weights of %s do not grow with the index; %s still has weight %d" % (g.name, elem_str(e), w)
                    )
                out.append(e)
        out.sort(key=lambda e: (self.weight(e), self.gen_order(e[0]), e[1]))
        out.extend(self.complement_elements())
        return out

    # brackets

    def _apply(self, rule, a, b):
        env = _bind(rule.left, a, self.params, self.params)
        if env is None:
            return None
        env = _bind(rule.right, b, env, self.params)
        if env is None or not rule.guard.holds(env):
            return None
        out = {}
        for coef, t in rule.result:
            c = Fraction(coef.eval(env))
            if not c:
                continue
            idx = []
            for x in t.coords:
                v = Fraction(x.eval(env))
                if v.denominator != 1:
                    raise DomainEscape("non-integer index in [%s, %s]" % (elem_str(a), elem_str(b)))
                idx.append(v.numerator)
            e = (t.gen, tuple(idx))
            if not self.in_domain(e):
                raise DomainEscape(
                    "[%s, %s] produces %s outside the basis" % (elem_str(a), elem_str(b), elem_str(e))
                )
            out[e] = out.get(e, 0) + c
        return SparseVector(out)

    def _layer(self, rules, a, b):
        hits = []
        for r in rules:
            direct = self._apply(r, a, b)
            mirror = self._apply(r, b, a)
            if direct is None and mirror is None:
                continue
            if direct is not None and mirror is not None and direct != -mirror:
                raise AmbiguousRule(
                    "rule [%s, %s] is not antisymmetric on (%s, %s)" % (r.left, r.right, elem_str(a), elem_str(b)),
                    witness=(a, b),
                )
            hits.append((r, direct if direct is not None else -mirror))
        if len(hits) > 1:
            raise AmbiguousRule(
                "pair (%s, %s) matches %d rules: %s"
                % (elem_str(a), elem_str(b), len(hits), "; ".join("[%s, %s]" % (r.left, r.right) for r, _ in hits)),
                witness=(a, b),
            )
        return hits[0][1] if hits else SparseVector()

    def bracket_basis(self, a, b):
        """``[a, b]`` for basis elements, untruncated."""
        key = (a, b)
        hit = self._bcache.get(key)
        if hit is not None:
            return hit
        if a == b:
            res = SparseVector()
        else:
            self.check_element(a)
            self.check_element(b)
            main = [r for r in self.rules if not r.central]
            cent = [r for r in self.rules if r.central]
            res = self._layer(main, a, b)
            if cent:
                res = res + self._layer(cent, a, b)
        self._bcache[key] = res
        self._bcache[(b, a)] = -res
        return res

    def bracket(self, x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for e, c in self.bracket_basis(a, b).items():
                    out[e] = out.get(e, 0) + ca * cb * c
        return SparseVector(out)

    def with_rules(self, rules, name=None, extra_generators=(), extra_weights=()):
        return Presentation(
            name or self.name,
            self.generators + tuple(extra_generators),
            self.weights + tuple(extra_weights),
            tuple(rules),
            self.params,
            self.truncation,
            self.notes,
        )

    def inline_params(self):
        """Copy with parameters substituted into every expression."""
        if not self.params:
            return self
        m = {k: Const(v) for k, v in self.params.items()}
        gens = [Generator(g.name, g.vars, g.domain.subs(m), g.complement) for g in self.generators]
        ws = [WeightRule(w.term.subs(m), w.expr.subs(m).simplify(), w.guard.subs(m)) for w in self.weights]
        rs = [
            BracketRule(
                r.left.subs(m),
                r.right.subs(m),
                tuple((c.subs(m).simplify(), t.subs(m)) for c, t in r.result),
                r.guard.subs(m),
                r.central,
            )
            for r in self.rules
        ]
        return Presentation(self.name, gens, ws, rs, {}, self.truncation, self.notes)

    def __repr__(self):
        return "Presentation(%r, %d generators, %d rules)" % (self.name, len(self.generators), len(self.rules))


def bracket(p, x, y):
    """Bilinear bracket of two SparseVectors keyed by basis elements."""
    if not isinstance(x, SparseVector):
        x = SparseVector.unit(x)
    if not isinstance(y, SparseVector):
        y = SparseVector.unit(y)
    return p.bracket(x, y)


def jacobiator(p, a, b, c):
    ua, ub, uc = (SparseVector.unit(e) for e in (a, b, c))
    return (
        p.bracket(p.bracket_basis(a, b), uc)
        + p.bracket(p.bracket_basis(c, a), ub)
        + p.bracket(p.bracket_basis(b, c), ua)
    )


def check_jacobi(p, window):
    """Evaluate the Jacobiator on every basis triple of total weight <= window."""
    from .verdict import Verdict

    if window < 0:
        raise ValueError("window must be non-negative")
    els = p.elements_upto(window)
    n = len(els)
    wt = [p.weight(e) for e in els]
    checked = 0
    for i in range(n):
        for j in range(i + 1, n):
            if wt[i] + wt[j] > window:
                continue
            for k in range(j + 1, n):
                if wt[i] + wt[j] + wt[k] > window:
                    continue
                checked += 1
                r = jacobiator(p, els[i], els[j], els[k])
                if r:
                    return Verdict.fails(
                        "jacobi",
                        window,
                        witness={"triple": [els[i], els[j], els[k]], "residual": r},
                        evidence={"triples_checked": checked},
                    )
    return Verdict.holds("jacobi", window, evidence={"triples_checked": checked})


def classify_weighting(p, window):
    """``graded``, ``filtered``, ``cofiltered`` (subalgebra truncation) or ``invalid``."""
    try:
        els = p.elements_upto(window)
        for e in els:
            if p.weight(e) < 0:
                return "invalid"
        graded = True
        for i, a in enumerate(els):
            wa = p.weight(a)
            for b in els[i + 1:]:
                wb = p.weight(b)
                for t in p.bracket_basis(a, b):
                    wt = p.weight(t)
                    if p.truncation == "subalgebra":
                        if wt > max(wa, wb):
                            return "invalid"
                    elif wt < wa + wb:
                        return "invalid"
                    elif wt != wa + wb:
                        graded = False
    except InvalidWeighting:
        return "invalid"
    if p.truncation == "subalgebra":
        return "cofiltered"
    return "graded" if graded else "filtered"


def probe_overlaps(p, window):
    """Evaluate every bracket on the window so overlapping rules surface."""
    els = p.elements_upto(window)
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            p.bracket_basis(a, b)


def as_term(name, *coords):
    return Term(name, tuple(as_expr(c) for c in coords))
