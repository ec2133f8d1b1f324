"""Integer-polynomial index expressions and guards.

Expressions are small immutable trees. They print back to the DSL syntax
with minimal parentheses and evaluate on integer assignments.
"""

from fractions import Fraction
from functools import reduce

__all__ = ["Expr", "Const", "Var", "Add", "Mul", "Neg", "Cmp", "Cong", "Guard", "TRUE", "as_expr"]


def as_expr(x):
    if isinstance(x, Expr):
        return x
    return Const(x)


def _num(v):
    # keep integers as int so index arithmetic stays in ints
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class Expr:
    __slots__ = ()
    prec = 9

    def __add__(self, o):
        return Add(self, as_expr(o))

    def __radd__(self, o):
        return Add(as_expr(o), self)

    def __sub__(self, o):
        return Add(self, Neg(as_expr(o)))

    def __rsub__(self, o):
        return Add(as_expr(o), Neg(self))

    def __mul__(self, o):
        return Mul(self, as_expr(o))

    def __rmul__(self, o):
        return Mul(as_expr(o), self)

    def __neg__(self):
        return Neg(self)

    def is_constant(self):
        return not self.free_vars()

    def value(self):
        """Value of a variable-free expression."""
        return self.eval({})

    def simplify(self):
        """Fold constants and drop additive/multiplicative identities."""
        return self

    def __repr__(self):
        return "Expr(%s)" % self

    def __hash__(self):
        return hash(str(self))

    def __eq__(self, other):
        return isinstance(other, Expr) and type(self) is type(other) and str(self) == str(other)


class Const(Expr):
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = _num(Fraction(v))

    def eval(self, env):
        return self.v

    def free_vars(self):
        return frozenset()

    def subs(self, m):
        return self

    def __str__(self):
        v = Fraction(self.v)
        if v.denominator == 1:
            return str(v.numerator)
        return "%d/%d" % (v.numerator, v.denominator)

    @property
    def prec(self):
        v = Fraction(self.v)
        if v < 0:
            return 3
        return 2 if v.denominator != 1 else 9


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def eval(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise KeyError("unbound variable %r" % self.name) from None

    def free_vars(self):
        return frozenset((self.name,))

    def subs(self, m):
        if self.name in m:
            return as_expr(m[self.name])
        return self

    def __str__(self):
        return self.name


class Neg(Expr):
    __slots__ = ("a",)
    prec = 3

    def __init__(self, a):
        self.a = a

    def eval(self, env):
        return -self.a.eval(env)

    def free_vars(self):
        return self.a.free_vars()

    def subs(self, m):
        return Neg(self.a.subs(m))

    def simplify(self):
        a = self.a.simplify()
        if isinstance(a, Const):
            return Const(-Fraction(a.v))
        if isinstance(a, Neg):
            return a.a
        return Neg(a)

    def __str__(self):
        s = str(self.a)
        if self.a.prec < 3:
            s = "(%s)" % s
        return "-" + s


class Add(Expr):
    __slots__ = ("a", "b")
    prec = 1

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, env):
        return self.a.eval(env) + self.b.eval(env)

    def free_vars(self):
        return self.a.free_vars() | self.b.free_vars()

    def subs(self, m):
        return Add(self.a.subs(m), self.b.subs(m))

    def simplify(self):
        a, b = self.a.simplify(), self.b.simplify()
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(Fraction(a.v) + Fraction(b.v))
        if isinstance(b, Const) and b.v == 0:
            return a
        if isinstance(a, Const) and a.v == 0:
            return b
        if isinstance(b, Const) and b.v < 0:
            return Add(a, Neg(Const(-Fraction(b.v))))
        return Add(a, b)

    def __str__(self):
        left = str(self.a)
        if isinstance(self.b, Neg):
            inner = self.b.a
            right = str(inner)
            if inner.prec <= 1:
                right = "(%s)" % right
            return "%s - %s" % (left, right)
        right = str(self.b)
        if self.b.prec <= 1 or (isinstance(self.b, Const) and self.b.v < 0):
            right = "(%s)" % right
        return "%s + %s" % (left, right)


class Mul(Expr):
    __slots__ = ("a", "b")
    prec = 2

    def __init__(self, a, b):
        self.a, self.b = a, b

    def eval(self, env):
        return self.a.eval(env) * self.b.eval(env)

    def free_vars(self):
        return self.a.free_vars() | self.b.free_vars()

    def subs(self, m):
        return Mul(self.a.subs(m), self.b.subs(m))

    def simplify(self):
        a, b = self.a.simplify(), self.b.simplify()
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(Fraction(a.v) * Fraction(b.v))
        for x, y in ((a, b), (b, a)):
            if isinstance(x, Const):
                if x.v == 0:
                    return Const(0)
                if x.v == 1:
                    return y
        return Mul(a, b)

    def __str__(self):
        left = str(self.a)
        if self.a.prec < 2:
            left = "(%s)" % left
        right = str(self.b)
        if self.b.prec <= 2:
            right = "(%s)" % right
        return "%s*%s" % (left, right)


# guards

_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}
_FLIP = {"<": ">", "<=": ">=", "==": "==", "!=": "!=", ">=": "<=", ">": "<"}


class Cmp:
    """``lhs OP rhs`` with OP among < <= == != >= >."""

    __slots__ = ("lhs", "op", "rhs")

    def __init__(self, lhs, op, rhs):
        if op == "=":
            op = "=="
        if op not in _CMP:
            raise ValueError("unknown comparison %r" % op)
        self.lhs, self.op, self.rhs = as_expr(lhs), op, as_expr(rhs)

    def holds(self, env):
        return _CMP[self.op](self.lhs.eval(env), self.rhs.eval(env))

    def free_vars(self):
        return self.lhs.free_vars() | self.rhs.free_vars()

    def subs(self, m):
        return Cmp(self.lhs.subs(m), self.op, self.rhs.subs(m))

    def bound(self):
        """``(var, lo, hi)`` when the atom bounds a single bare variable by a constant."""
        lhs, op, rhs = self.lhs, self.op, self.rhs
        if isinstance(rhs, Var) and lhs.is_constant():
            lhs, op, rhs = rhs, _FLIP[op], lhs
        if not (isinstance(lhs, Var) and rhs.is_constant()):
            return None
        c = Fraction(rhs.value())
        lo = hi = None
        if op == ">=":
            lo = _ceil(c)
        elif op == ">":
            lo = _floor(c) + 1
        elif op == "<=":
            hi = _floor(c)
        elif op == "<":
            hi = _ceil(c) - 1
        elif op == "==":
            if c.denominator != 1:
                return None
            lo = hi = c.numerator
        else:
            return None
        return lhs.name, lo, hi

    def __str__(self):
        return "%s %s %s" % (self.lhs, self.op, self.rhs)

    def __eq__(self, other):
        return isinstance(other, Cmp) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


def _floor(c):
    return c.numerator // c.denominator


def _ceil(c):
    return -((-c.numerator) // c.denominator)


class Cong:
    """``expr % modulus == residue`` with a positive integer modulus."""

    __slots__ = ("expr", "modulus", "residue")

    def __init__(self, expr, modulus, residue):
        modulus = int(modulus)
        if modulus <= 0:
            raise ValueError("modulus must be positive")
        self.expr, self.modulus, self.residue = as_expr(expr), modulus, int(residue) % modulus

    def holds(self, env):
        v = self.expr.eval(env)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                return False
            v = v.numerator
        return v % self.modulus == self.residue

    def free_vars(self):
        return self.expr.free_vars()

    def subs(self, m):
        return Cong(self.expr.subs(m), self.modulus, self.residue)

    def bound(self):
        return None

    def __str__(self):
        e = str(self.expr)
        if self.expr.prec <= 2:
            e = "(%s)" % e
        return "%s %% %d == %d" % (e, self.modulus, self.residue)

    def __eq__(self, other):
        return isinstance(other, Cong) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


class Guard:
    """Conjunction of atoms; the empty guard is always true."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        self.atoms = tuple(atoms)

    def holds(self, env):
        return all(a.holds(env) for a in self.atoms)

    def free_vars(self):
        return reduce(frozenset.union, (a.free_vars() for a in self.atoms), frozenset())

    def subs(self, m):
        return Guard(a.subs(m) for a in self.atoms)

    def __and__(self, other):
        return Guard(self.atoms + other.atoms)

    def __bool__(self):
        return bool(self.atoms)

    def bounds(self):
        """Per-variable integer bounds read off the single-variable atoms."""
        out = {}
        for a in self.atoms:
            b = a.bound()
            if b is None:
                continue
            name, lo, hi = b
            cur_lo, cur_hi = out.get(name, (None, None))
            if lo is not None:
                cur_lo = lo if cur_lo is None else max(cur_lo, lo)
            if hi is not None:
                cur_hi = hi if cur_hi is None else min(cur_hi, hi)
            out[name] = (cur_lo, cur_hi)
        return out

    def __str__(self):
        return " and ".join(str(a) for a in self.atoms)

    def __repr__(self):
        return "Guard(%s)" % self

    def __eq__(self, other):
        return isinstance(other, Guard) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)


TRUE = Guard()
