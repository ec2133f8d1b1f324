"""Derivations of finite quotients, tori, rank and root spaces.

Matrices act on columns: column ``c`` of a derivation holds the image of
basis element ``c``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MixedQuotients
from .exactlin import Matrix, SparseVector, Subspace, is_nilpotent, kernel_basis, kernel_with_free, solve
from .filtration import FiniteQuotient, series, truncate
from .seeding import rng_for
from .verdict import Verdict

__all__ = [
    "DerivationMatrix",
    "TorusDescription",
    "RootDecomposition",
    "derivation_space",
    "is_derivation",
    "layer_map",
    "d11_block",
    "is_strictly_triangularizable",
    "torus_system",
    "rank",
    "root_decomposition",
    "st_independent",
    "center_and_inner",
    "characteristically_pronilpotent",
    "inner_derivation",
]

H = 101
N_SAMPLES = 64
EXACT_SIDE = 4
EXACT_PARAMS = 4


def fingerprint(q):
    parts = [",".join(q.names())]
    for (i, j), v in sorted(q.table().items()):
        parts.append("%d,%d:%s" % (i, j, ";".join("%d=%s" % (k, c) for k, c in v.items())))
    return "|".join(parts)


def layer_map(q):
    """Position -> largest ``i`` with the basis vector inside ``q^i``."""
    terms = series(q, "lcs").terms
    out = []
    for k in range(q.dim):
        u = SparseVector.unit(k)
        layer = 1
        for i, t in enumerate(terms[1:], start=2):
            if t.contains(u):
                layer = i
            else:
                break
        out.append(layer)
    return out


@dataclass(eq=False)
class DerivationMatrix:
    quotient: FiniteQuotient
    matrix: Matrix
    layers: list = None

    def __post_init__(self):
        if self.layers is None:
            self.layers = _layers_cached(self.quotient)

    def apply(self, v):
        return self.matrix.apply(v)

    def __add__(self, other):
        return DerivationMatrix(self.quotient, self.matrix + other.matrix, self.layers)

    def __mul__(self, c):
        return DerivationMatrix(self.quotient, self.matrix * c, self.layers)

    __rmul__ = __mul__

    def is_diagonal(self):
        return self.matrix.is_diagonal()


def _layers_cached(q):
    hit = getattr(q, "_layer_map", None)
    if hit is None:
        hit = layer_map(q)
        q._layer_map = hit
    return hit


def _q2(q):
    hit = getattr(q, "_q2", None)
    if hit is None:
        terms = series(q, "lcs").terms
        hit = terms[1] if len(terms) > 1 else Subspace()
        q._q2 = hit
    return hit


def layer_one_positions(q):
    """Positions spanning a complement of ``q^2`` (non-pivots of its echelon form)."""
    piv = set(_q2(q).pivots())
    return [k for k in range(q.dim) if k not in piv]


def d11_block(q, m):
    """Matrix induced by ``m`` on ``q / q^2`` in the layer-one positions."""
    if isinstance(m, DerivationMatrix):
        m = m.matrix
    q2 = _q2(q)
    p1 = layer_one_positions(q)
    idx = {k: a for a, k in enumerate(p1)}
    ent = {}
    for b, k in enumerate(p1):
        r = q2.reduce(m.column(k))
        for row, c in r.items():
            ent[(idx[row], b)] = c
    return Matrix(len(p1), len(p1), ent)


def is_strictly_triangularizable(d):
    return is_nilpotent(d11_block(d.quotient, d.matrix))


def _leibniz_rows(q):
    n = q.dim
    rows = []
    for a in range(n):
        for b in range(a + 1, n):
            acc = {}

            def add(r, key, c):
                row = acc.setdefault(r, {})
                s = row.get(key, 0) + c
                if s:
                    row[key] = s
                else:
                    row.pop(key, None)

            for k, g in q.bracket_pos(a, b).items():
                for r in range(n):
                    add(r, r * n + k, g)
            for s in range(n):
                for r, g in q.bracket_pos(s, b).items():
                    add(r, s * n + a, -g)
                for r, g in q.bracket_pos(a, s).items():
                    add(r, s * n + b, -g)
            rows.extend(row for row in acc.values() if row)
    return rows


def derivation_space(q):
    """Basis of ``Der(q)`` from the exact Leibniz system (echelon order of unknowns)."""
    n = q.dim
    rows = _leibniz_rows(q)
    m = Matrix(len(rows), n * n, {(i, u): c for i, row in enumerate(rows) for u, c in row.items()})
    out = []
    for v in kernel_basis(m):
        out.append(DerivationMatrix(q, Matrix(n, n, {divmod(u, n): c for u, c in v.items()})))
    return out


def is_derivation(q, m):
    if isinstance(m, DerivationMatrix):
        m = m.matrix
    n = q.dim
    for a in range(n):
        da = m.column(a)
        for b in range(a + 1, n):
            lhs = m.apply(q.bracket_pos(a, b))
            rhs = q.bracket(da, SparseVector.unit(b)) + q.bracket(SparseVector.unit(a), m.column(b))
            if lhs != rhs:
                return False
    return True


def inner_derivation(q, x):
    """``ad_x`` as a DerivationMatrix; ``x`` is a position or a position vector."""
    return DerivationMatrix(q, q.ad(x))


# torus

@dataclass(eq=False)
class TorusDescription:
    quotient: FiniteQuotient
    window: int
    basis: list  # one list of Fractions per torus element, indexed by position
    free: list  # free-parameter positions
    system: Matrix = None
    equations: list = field(default_factory=list)

    @property
    def dim(self):
        return len(self.basis)

    def derivations(self):
        return [DerivationMatrix(self.quotient, Matrix.diagonal(t)) for t in self.basis]

    def value(self, k, e):
        return self.basis[k][self.quotient.pos[e]]


def torus_system(p, window):
    """System ``a_i + a_j = a_p`` on the window and its normalized fundamental solutions."""
    q = p if isinstance(p, FiniteQuotient) else truncate(p, window)
    n = q.dim
    eqs, rows = [], []
    for (i, j), v in sorted(q.table().items()):
        for k in v.keys():
            # columns reversed so the free parameters are the earliest positions
            row = {}
            for pos, c in ((i, 1), (j, 1), (k, -1)):
                col = n - 1 - pos
                row[col] = row.get(col, 0) + c
            rows.append({c: x for c, x in row.items() if x})
            eqs.append((i, j, k))
    m = Matrix(len(rows), n, {(r, c): x for r, row in enumerate(rows) for c, x in row.items()})
    fcols, ker = kernel_with_free(m)
    sols = [[v[n - 1 - k] for k in range(n)] for v in ker]
    free = [n - 1 - f for f in fcols]
    order = sorted(range(len(sols)), key=lambda a: free[a])
    sols = [sols[a] for a in order]
    free = [free[a] for a in order]
    sysm = Matrix(len(rows), n, {(r, n - 1 - c): x for r, row in enumerate(rows) for c, x in row.items()})
    return sysm, TorusDescription(q, q.window if q.window is not None else window, sols, free, sysm, eqs)


@dataclass
class RankResult:
    rank: object
    verdict: Verdict
    maximal_rank: bool
    layer_one_dim: int
    trace: dict

    def __iter__(self):
        return iter((self.rank, self.verdict))


def rank(p, windows):
    """Torus dimension per window; stable when the two largest windows agree."""
    windows = sorted(set(int(w) for w in windows))
    if len(windows) < 2:
        raise ValueError("need at least two windows")
    dims = {}
    for M in windows:
        _, t = torus_system(p, M)
        dims[M] = t.dim
    qb = truncate(p, windows[-1])
    layer1 = len(layer_one_positions(qb))
    ev = {"torus_dims": {str(M): dims[M] for M in windows}, "layer_one_dim": layer1}
    a, b = dims[windows[-2]], dims[windows[-1]]
    if a == b:
        r = b
        maximal = r == layer1
        ev["maximal_rank"] = maximal
        ev["bound_ok"] = r <= layer1
        return RankResult(r, Verdict.holds("rank", windows[-2], ev), maximal, layer1, ev)
    ev["maximal_rank"] = False
    return RankResult(None, Verdict.inconclusive("rank", windows[-2], ev), False, layer1, ev)


@dataclass
class RootDecomposition:
    roots: list
    spaces: dict
    primitive: list
    failures: list

    def root_of(self, e):
        for r, els in self.spaces.items():
            if e in els:
                return r
        raise KeyError(e)


def root_decomposition(p, t):
    q = t.quotient
    s = t.dim
    spaces = {}
    for k, e in enumerate(q.basis):
        r = tuple(t.basis[j][k] for j in range(s))
        spaces.setdefault(r, []).append(e)
    primitive = [tuple(t.basis[j][f] for j in range(s)) for f in t.free]
    failures = []
    if s:
        pm = Matrix.from_columns(s, [SparseVector(enumerate(r)) for r in primitive])
        for r, els in spaces.items():
            x = solve(pm, SparseVector(enumerate(r)))
            if x is None or any(c.denominator != 1 for c in x.as_dict().values()):
                failures.append({"root": r, "elements": els, "coefficients": None if x is None else x})
    roots = sorted(spaces)
    return RootDecomposition(roots, spaces, primitive, failures)


# independence and characteristic pro-nilpotency

def _samples(rng, count, k):
    for _ in range(count):
        yield [Fraction(rng.choice((-1, 1)) * rng.randint(1, H)) for _ in range(k)]


def st_independent(ds, samples=N_SAMPLES, seed_text=None):
    if not ds:
        return Verdict.holds("st_independent", 0, {"method": "vacuous"})
    q = ds[0].quotient
    if any(d.quotient is not q for d in ds):
        raise MixedQuotients("derivations live on different quotients")
    depth = q.window or 0
    blocks = [d11_block(q, d.matrix) for d in ds]
    if all(b.is_diagonal() for b in blocks):
        cols = [SparseVector(enumerate(b.diagonal_values())) for b in blocks]
        m = Matrix.from_columns(blocks[0].rows, cols)
        ker = kernel_basis(m)
        if ker:
            w = {"coefficients": [ker[0][k] for k in range(len(ds))]}
            return Verdict.fails("st_independent", depth, w, {"method": "exact-diagonal"})
        return Verdict.holds("st_independent", depth, {"method": "exact-diagonal"})
    if len(ds) == 1:
        if is_nilpotent(blocks[0]):
            return Verdict.fails("st_independent", depth, {"coefficients": [Fraction(1)]}, {"method": "exact"})
        return Verdict.holds("st_independent", depth, {"method": "exact"})
    rng = rng_for(seed_text or fingerprint(q))
    for cs in _samples(rng, samples, len(ds)):
        b = Matrix.zeros(blocks[0].rows)
        for c, x in zip(cs, blocks):
            b = b + x * c
        if is_nilpotent(b):
            return Verdict.fails("st_independent", depth, {"coefficients": cs}, {"method": "sampled"})
    side = blocks[0].rows
    return Verdict.holds("st_independent", depth, {
        "method": "sampled", "samples": samples, "H": H,
        "false_accept_bound": _bound(side, samples)})


def _bound(side, samples):
    per = Fraction(side, 2 * H)
    if per >= 1:
        return "1"
    return str(per ** samples)


def center_and_inner(q):
    n = q.dim
    cols = [q.ad(k).flat().map_keys(lambda rc: rc[0] * n + rc[1]) for k in range(n)]
    m = Matrix.from_columns(n * n, cols)
    center = kernel_basis(m)
    inner = n - len(center)
    der = len(derivation_space(q))
    return center, inner, inner == der


def _block_space(q, ders):
    """Independent D11 blocks with the derivations that produced them."""
    span = Subspace()
    blocks, owners = [], []
    for d in ders:
        b = d11_block(q, d.matrix)
        if span.add(b.flat()):
            blocks.append(b)
            owners.append(d)
    return blocks, owners


def _symbolic_nil(blocks):
    """True iff every combination of ``blocks`` is nilpotent (characteristic polynomial test)."""
    import sympy

    side = blocks[0].rows
    lam = sympy.symbols("l0:%d" % len(blocks))
    mat = sympy.zeros(side, side)
    for sym, b in zip(lam, blocks):
        for (i, j), v in b.entries().items():
            mat[i, j] += sym * sympy.Rational(v.numerator, v.denominator)
    x = sympy.Symbol("x")
    poly = sympy.Poly(mat.charpoly(x).as_expr(), x)
    coeffs = poly.all_coeffs()[1:]
    return all(sympy.expand(c) == 0 for c in coeffs)


def _window_check(q, samples, seed_text):
    ders = derivation_space(q)
    ev = {"window": q.window, "derivations": len(ders)}
    p1 = layer_one_positions(q)
    if not p1:
        return True, None, dict(ev, method="empty")
    # the identity-like diagonal from the torus is the most readable witness
    _, t = torus_system(q, q.window)
    if t.dim:
        diag = [sum((row[k] for row in t.basis), Fraction(0)) for k in range(q.dim)]
        d = DerivationMatrix(q, Matrix.diagonal(diag))
        if not is_nilpotent(d11_block(q, d.matrix)):
            return False, d, dict(ev, method="torus")
    blocks, owners = _block_space(q, ders)
    ev["block_side"] = len(p1)
    ev["block_params"] = len(blocks)
    if not blocks:
        return True, None, dict(ev, method="exact")
    for b, d in zip(blocks, owners):
        if not is_nilpotent(b):
            return False, d, dict(ev, method="basis")
    if len(p1) <= EXACT_SIDE and len(blocks) <= EXACT_PARAMS:
        if _symbolic_nil(blocks):
            return True, None, dict(ev, method="symbolic")
    rng = rng_for(seed_text or fingerprint(q))
    for cs in _samples(rng, samples, len(blocks)):
        m = Matrix.zeros(len(p1))
        for c, b in zip(cs, blocks):
            m = m + b * c
        if not is_nilpotent(m):
            d = owners[0] * cs[0]
            for c, o in zip(cs[1:], owners[1:]):
                d = d + o * c
            return False, d, dict(ev, method="sampled")
    return True, None, dict(ev, method="sampled", samples=samples, H=H,
                            false_accept_bound=_bound(len(p1), samples))


def characteristically_pronilpotent(p, windows, samples=N_SAMPLES, seed_text=None):
    """Whether every derivation acts nilpotently on layer one, on the two largest windows."""
    windows = sorted(set(int(w) for w in windows))
    checked = windows[-2:] if len(windows) >= 2 else windows
    evidence = {}
    for M in checked:
        q = truncate(p, M)
        ok, witness, ev = _window_check(q, samples, seed_text)
        evidence[str(M)] = ev
        if not ok:
            w = {"window": M, "derivation": witness, "diagonal": witness.is_diagonal(),
                 "d11": d11_block(q, witness.matrix)}
            return Verdict.fails("characteristically_pronilpotent", M, w, evidence)
    if len(windows) < 2:
        return Verdict.inconclusive("characteristically_pronilpotent", windows[-1], evidence)
    return Verdict.holds("characteristically_pronilpotent", windows[-2], evidence)
