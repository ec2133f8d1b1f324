"""Exact rational linear algebra on sparse data.

Scalars are :class:`fractions.Fraction`. Vectors and matrices are sparse maps
that never store zeros. Everything here is deterministic: pivots are chosen in
ascending key order so that repeated runs produce identical bases.
"""

from fractions import Fraction
from itertools import chain

try:  # elimination runs several times faster on gmpy2 rationals when available
    from gmpy2 import mpq as _fast
except ImportError:  # pragma: no cover
    _fast = None

Scalar = Fraction

__all__ = [
    "Scalar",
    "SparseVector",
    "Matrix",
    "Subspace",
    "kernel_basis",
    "kernel_with_free",
    "rank",
    "solve",
    "inverse",
    "is_nilpotent",
    "is_solvable_family",
    "intersect",
    "fmt",
]


def fmt(x):
    """Render a rational as ``"p"`` or ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _clean(d):
    return {k: v for k, v in d.items() if v}


class SparseVector:
    """A finitely supported vector ``sum x_k e_k`` keyed by orderable basis keys."""

    __slots__ = ("_d",)

    def __init__(self, entries=None):
        if entries is None:
            self._d = {}
        else:
            items = entries.items() if hasattr(entries, "items") else entries
            d = {}
            for k, v in items:
                v = Fraction(v)
                if v:
                    d[k] = d.get(k, 0) + v
            self._d = _clean(d)

    @classmethod
    def _wrap(cls, d):
        # d must already be clean (Fraction values, no zeros)
        v = cls.__new__(cls)
        v._d = d
        return v

    @classmethod
    def unit(cls, key):
        return cls._wrap({key: Fraction(1)})

    def __getitem__(self, key):
        return self._d.get(key, Fraction(0))

    def __contains__(self, key):
        return key in self._d

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def __iter__(self):
        return iter(sorted(self._d))

    def keys(self):
        return sorted(self._d)

    def items(self):
        return [(k, self._d[k]) for k in sorted(self._d)]

    def as_dict(self):
        return dict(self._d)

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self._d == other._d
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __add__(self, other):
        d = dict(self._d)
        for k, v in other._d.items():
            s = d.get(k, 0) + v
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return SparseVector._wrap(d)

    def __neg__(self):
        return SparseVector._wrap({k: -v for k, v in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        if not c:
            return SparseVector()
        return SparseVector._wrap({k: c * v for k, v in self._d.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def map_keys(self, f):
        out = {}
        for k, v in self._d.items():
            nk = f(k)
            s = out.get(nk, 0) + v
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
        return SparseVector._wrap(out)

    def restrict(self, keep):
        return SparseVector._wrap({k: v for k, v in self._d.items() if keep(k)})

    def __repr__(self):
        if not self._d:
            return "0"
        return " + ".join("%s*%s" % (fmt(v), k) for k, v in self.items())


class Matrix:
    """Sparse ``rows x cols`` matrix stored as a dict of row dicts."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        r = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, rows, cols))
                v = Fraction(v)
                if v:
                    r.setdefault(i, {})[j] = v
        self._r = r

    @classmethod
    def _from_rows(cls, rows, cols, r):
        m = cls.__new__(cls)
        m.rows, m.cols, m._r = rows, cols, r
        return m

    @classmethod
    def from_dense(cls, data):
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): x for i, row in enumerate(data) for j, x in enumerate(row)})

    @classmethod
    def identity(cls, n):
        return cls._from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls._from_rows(rows, rows if cols is None else cols, {})

    @classmethod
    def from_columns(cls, n, columns):
        """Build an ``n x len(columns)`` matrix from column dicts keyed by row index."""
        r = {}
        for j, col in enumerate(columns):
            col = col._d if isinstance(col, SparseVector) else col
            for i, v in col.items():
                if v:
                    r.setdefault(i, {})[j] = Fraction(v)
        return cls._from_rows(n, len(columns), r)

    @classmethod
    def diagonal(cls, values):
        values = [Fraction(v) for v in values]
        return cls._from_rows(len(values), len(values), {i: {i: v} for i, v in enumerate(values) if v})

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._r.get(i, {}).get(j, Fraction(0))

    def entries(self):
        return {(i, j): v for i in sorted(self._r) for j, v in sorted(self._r[i].items())}

    def row(self, i):
        return dict(self._r.get(i, {}))

    def column(self, j):
        return SparseVector._wrap({i: row[j] for i, row in self._r.items() if j in row})

    def columns(self):
        cols = {}
        for i, row in self._r.items():
            for j, v in row.items():
                cols.setdefault(j, {})[i] = v
        return [SparseVector._wrap(cols.get(j, {})) for j in range(self.cols)]

    def nnz(self):
        return sum(len(r) for r in self._r.values())

    def is_zero(self):
        return not self._r

    def is_diagonal(self):
        return all(set(row) <= {i} for i, row in self._r.items())

    def diagonal_values(self):
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def to_dense(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self):
        r = {}
        for i, row in self._r.items():
            for j, v in row.items():
                r.setdefault(j, {})[i] = v
        return Matrix._from_rows(self.cols, self.rows, r)

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset((k, v) for k, v in self.entries().items())))

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))
        r = {i: dict(row) for i, row in self._r.items()}
        for i, row in other._r.items():
            tgt = r.setdefault(i, {})
            for j, v in row.items():
                s = tgt.get(j, 0) + sign * v
                if s:
                    tgt[j] = s
                else:
                    tgt.pop(j, None)
            if not tgt:
                del r[i]
        return Matrix._from_rows(self.rows, self.cols, r)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, c):
        c = Fraction(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._from_rows(
            self.rows, self.cols, {i: {j: c * v for j, v in row.items()} for i, row in self._r.items()}
        )

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, SparseVector):
            return self.apply(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        r = {}
        orows = other._r
        for i, row in self._r.items():
            acc = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = _clean(acc)
            if acc:
                r[i] = acc
        return Matrix._from_rows(self.rows, other.cols, r)

    def apply(self, vec):
        """Multiply by a column vector given as SparseVector/dict keyed by column index."""
        d = vec._d if isinstance(vec, SparseVector) else vec
        out = {}
        for i, row in self._r.items():
            s = 0
            for j, v in row.items():
                x = d.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = Fraction(s)
        return SparseVector._wrap(out)

    def commutator(self, other):
        return self @ other - other @ self

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        cpos = {c: k for k, c in enumerate(cols)}
        r = {}
        for a, i in enumerate(rows):
            src = self._r.get(i)
            if not src:
                continue
            out = {cpos[j]: v for j, v in src.items() if j in cpos}
            if out:
                r[a] = out
        return Matrix._from_rows(len(rows), len(cols), r)

    def power(self, n):
        out = Matrix.identity(self.rows)
        for _ in range(n):
            out = out @ self
        return out

    def trace(self):
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def flat(self):
        """The matrix as a SparseVector keyed by ``(row, col)``."""
        return SparseVector._wrap({(i, j): v for i, row in self._r.items() for j, v in row.items()})

    @classmethod
    def unflat(cls, n, vec):
        return cls(n, n, vec.as_dict())

    def __repr__(self):
        return "Matrix(%d, %d, %s)" % (self.rows, self.cols, {k: fmt(v) for k, v in self.entries().items()})


def _axpy(r, prow, f):
    """``r -= f * prow`` in place, dropping zeros."""
    for k, v in prow.items():
        x = r.get(k, 0) - f * v
        if x:
            r[k] = x
        else:
            del r[k]


def _rref_rows(rows):
    """Gauss-Jordan on a list of clean row dicts: forward pass, then back substitution.

    Returns ``(pivots, reduced)`` where ``reduced[k]`` has a 1 at ``pivots[k]``
    and no other row has an entry in that column. Pivots ascend.
    """
    if _fast is not None:
        rows = [{k: _fast(v.numerator, v.denominator) if isinstance(v, Fraction) else _fast(v) for k, v in r.items()}
                for r in rows if r]
    else:
        rows = [dict(r) for r in rows if r]
    cols = sorted(set(chain.from_iterable(rows)))
    pivots, done = [], []
    for c in cols:
        best = None
        for idx, r in enumerate(rows):
            if c in r and (best is None or len(r) < len(rows[best])):
                best = idx
        if best is None:
            continue
        prow = rows.pop(best)
        inv = 1 / prow[c]
        if inv != 1:
            prow = {k: v * inv for k, v in prow.items()}
        for r in rows:
            f = r.get(c)
            if f:
                _axpy(r, prow, f)
        rows = [r for r in rows if r]
        pivots.append(c)
        done.append(prow)
    # back substitution clears each pivot column above its row
    for k in range(len(done) - 1, -1, -1):
        c, prow = pivots[k], done[k]
        for r in done[:k]:
            f = r.get(c)
            if f:
                _axpy(r, prow, f)
    if _fast is not None:
        done = [{k: Fraction(int(v.numerator), int(v.denominator)) for k, v in r.items()} for r in done]
    return pivots, done


def kernel_with_free(m):
    """``(free_columns, basis)`` of the null space; see :func:`kernel_basis`."""
    pivots, red = _rref_rows(m._r.values())
    pivset = set(pivots)
    free, out = [], []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for p, row in zip(pivots, red):
            x = row.get(f)
            if x:
                v[p] = -x
        free.append(f)
        out.append(SparseVector._wrap(v))
    return free, out


def kernel_basis(m):
    """Basis of the exact null space of ``m`` as SparseVectors keyed by column.

    Free columns are taken in ascending order; each basis vector has a 1 in
    its own free column and 0 in every other free column.
    """
    return kernel_with_free(m)[1]


def rank(m):
    return len(_rref_rows(m._r.values())[0])


def solve(m, b):
    """One solution ``x`` of ``m x = b`` (free variables set to 0), or None."""
    b = b._d if isinstance(b, SparseVector) else b
    aug = m.cols
    rows = []
    for i in set(m._r) | set(b):
        row = dict(m._r.get(i, {}))
        if b.get(i):
            row[aug] = Fraction(b[i])
        rows.append(row)
    pivots, red = _rref_rows(rows)
    if aug in pivots:
        return None
    return SparseVector._wrap({p: row[aug] for p, row in zip(pivots, red) if row.get(aug)})


def inverse(m):
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    rows = []
    for i in range(n):
        row = dict(m._r.get(i, {}))
        row[n + i] = Fraction(1)
        rows.append(row)
    pivots, red = _rref_rows(rows)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    r = {}
    for k in range(n):
        out = {c - n: v for c, v in red[k].items() if c >= n}
        if out:
            r[k] = out
    return Matrix._from_rows(n, n, r)


class Subspace:
    """A subspace given by a reduced echelon spanning set.

    Keys are arbitrary orderable basis keys; each stored row has a 1 at its
    pivot and no other row has an entry there.
    """

    __slots__ = ("_rows",)

    def __init__(self, vectors=()):
        self._rows = {}
        for v in vectors:
            self.add(v)

    def copy(self):
        s = Subspace()
        s._rows = {p: dict(r) for p, r in self._rows.items()}
        return s

    def __len__(self):
        return len(self._rows)

    dim = property(__len__)

    def _reduce(self, d):
        d = dict(d)
        for p in [k for k in d if k in self._rows]:
            f = d.get(p)
            if not f:
                continue
            for k, v in self._rows[p].items():
                s = d.get(k, 0) - f * v
                if s:
                    d[k] = s
                else:
                    d.pop(k, None)
        return d

    def reduce(self, v):
        d = v._d if isinstance(v, SparseVector) else v
        return SparseVector._wrap(self._reduce(d))

    def contains(self, v):
        d = v._d if isinstance(v, SparseVector) else v
        return not self._reduce(d)

    __contains__ = contains

    def add(self, v):
        """Add ``v``; return True if the dimension grew."""
        d = v._d if isinstance(v, SparseVector) else v
        r = self._reduce(d)
        if not r:
            return False
        p = min(r)
        inv = 1 / Fraction(r[p])
        r = {k: Fraction(x) * inv for k, x in r.items()}
        for q, row in self._rows.items():
            f = row.get(p)
            if f:
                for k, x in r.items():
                    s = row.get(k, 0) - f * x
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self._rows[p] = r
        return True

    def basis(self):
        """Canonical reduced echelon basis, pivots ascending."""
        _, red = _rref_rows(self._rows.values())
        return [SparseVector._wrap(r) for r in red]

    def pivots(self):
        return _rref_rows(self._rows.values())[0]

    def issubset(self, other):
        return all(other.contains(r) for r in self._rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return len(self) == len(other) and self.issubset(other)

    __hash__ = None

    def __add__(self, other):
        s = self.copy()
        for r in other._rows.values():
            s.add(r)
        return s

    def __repr__(self):
        return "Subspace(dim=%d)" % len(self)


def intersect(u, v):
    """Intersection of two Subspaces over the same keys."""
    ub, vb = u.basis(), v.basis()
    if not ub or not vb:
        return Subspace()
    keys = sorted(set(chain.from_iterable(x._d for x in ub + vb)))
    kpos = {k: i for i, k in enumerate(keys)}
    cols = [x.map_keys(kpos.get) for x in ub] + [(-x).map_keys(kpos.get) for x in vb]
    m = Matrix.from_columns(len(keys), cols)
    out = Subspace()
    for z in kernel_basis(m):
        w = SparseVector()
        for idx, c in z.items():
            if idx < len(ub):
                w = w + ub[idx] * c
        out.add(w)
    return out


def is_nilpotent(m):
    """True iff ``m**n == 0`` for the side length ``n``."""
    if not m.is_square():
        raise ValueError("is_nilpotent needs a square matrix, got %dx%d" % m.shape)
    p = m
    for _ in range(m.rows):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero()


def _span_of_matrices(ms):
    s = Subspace()
    for a in ms:
        s.add(a.flat())
    return s


def lie_closure(ms):
    """Basis (as matrices) of the matrix Lie algebra generated by ``ms``."""
    ms = list(ms)
    if not ms:
        return []
    n = ms[0].rows
    cap = n * n
    span = Subspace()
    basis = []
    for a in ms:
        if span.add(a.flat()):
            basis.append(a)
    frontier = list(basis)
    while frontier:
        new = []
        for a in frontier:
            for b in list(basis):
                c = a.commutator(b)
                if not c.is_zero() and span.add(c.flat()):
                    new.append(c)
                    basis.append(c)
        if len(span) > cap:
            raise RuntimeError("Lie closure exceeded %d dimensions" % cap)
        frontier = new
    return basis


def is_solvable_family(ms):
    """Whether the Lie algebra generated by the square matrices ``ms`` is solvable."""
    ms = list(ms)
    if not ms:
        return True
    n = ms[0].rows
    if any(a.shape != (n, n) for a in ms):
        raise ValueError("is_solvable_family needs square matrices of one size")
    term = lie_closure(ms)
    while term:
        span = Subspace()
        nxt = []
        for i, a in enumerate(term):
            for b in term[i + 1:]:
                c = a.commutator(b)
                if not c.is_zero() and span.add(c.flat()):
                    nxt.append(c)
        if len(nxt) == len(term):
            return False
        term = nxt
    return True
