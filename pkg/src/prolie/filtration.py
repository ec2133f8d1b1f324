"""Weight-window quotients, central and derived series, and finite-depth verdicts.

A presentation in ``quotient`` mode is cut to ``L / span{weight > M}``; in
``subalgebra`` mode the window is the subalgebra ``span{weight <= M}`` and
the algebra is read as the union of its windows.
"""

from dataclasses import dataclass, field

from .errors import InvalidWeighting, LayerDeficient
from .exactlin import Matrix, SparseVector, Subspace
from .polyexpr import Cmp, Const, Guard, Var
from .presentation import BracketRule, Generator, Presentation, Term, WeightRule, classify_weighting, elem_str
from .verdict import Verdict

__all__ = [
    "FiniteQuotient",
    "SeriesChain",
    "Profile",
    "truncate",
    "as_presentation",
    "series",
    "span_closure",
    "nilpotency_profile",
    "solvability_profile",
    "natural_basis",
]


class FiniteQuotient:
    """Finite basis plus an antisymmetric structure-constant table over positions.

    ``table[(i, j)]`` for ``i < j`` is a SparseVector keyed by basis position.
    ``dropped`` records the pairs whose true bracket lost terms to the cut.
    """

    def __init__(self, basis, table, weights=None, source=None, window=None, dropped=(), kind="table"):
        self.basis = list(basis)
        self.pos = {e: k for k, e in enumerate(self.basis)}
        if len(self.pos) != len(self.basis):
            raise ValueError("repeated basis element")
        self.weights = list(weights) if weights is not None else [1] * len(self.basis)
        self.source = source
        self.window = window
        self.kind = kind
        self.dropped = frozenset(dropped)
        self._t = {}
        for (i, j), v in table.items():
            if i == j:
                if v:
                    raise ValueError("nonzero self bracket at %d" % i)
                continue
            if not isinstance(v, SparseVector):
                v = SparseVector(v)
            if not v:
                continue
            if i < j:
                self._t[(i, j)] = v
            else:
                self._t[(j, i)] = -v
        self._ad = {}

    @classmethod
    def from_dense(cls, n, constants, names=None):
        """``constants[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``."""
        table = {}
        for i in range(n):
            for j in range(i + 1, n):
                v = SparseVector((k, c) for k, c in enumerate(constants[i][j]))
                if v:
                    table[(i, j)] = v
        names = names or [("e", (k + 1,)) for k in range(n)]
        return cls(names, table)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def names(self):
        return [elem_str(e) for e in self.basis]

    def unit(self, k):
        return SparseVector.unit(k)

    def vector(self, v):
        """Convert a SparseVector over basis elements into position coordinates."""
        out = {}
        for e, c in v.items():
            if e in self.pos:
                out[self.pos[e]] = c
        return SparseVector(out)

    def element_vector(self, v):
        return SparseVector((self.basis[k], c) for k, c in v.items())

    def bracket_pos(self, i, j):
        if i == j:
            return SparseVector()
        if i < j:
            return self._t.get((i, j), SparseVector())
        return -self._t.get((j, i), SparseVector())

    def bracket(self, x, y):
        out = SparseVector()
        for i, a in x.items():
            for j, b in y.items():
                r = self.bracket_pos(i, j)
                if r:
                    out = out + r * (a * b)
        return out

    def table(self):
        return dict(self._t)

    def ad(self, x):
        """Matrix of ``ad_x`` acting on columns: column ``j`` is ``[x, e_j]``."""
        if isinstance(x, int):
            hit = self._ad.get(x)
            if hit is None:
                hit = Matrix.from_columns(self.dim, [self.bracket_pos(x, j) for j in range(self.dim)])
                self._ad[x] = hit
            return hit
        m = Matrix.zeros(self.dim)
        for k, c in x.items():
            m = m + self.ad(k) * c
        return m

    def is_exact_pair(self, i, j):
        return (min(i, j), max(i, j)) not in self.dropped

    def subquotient_restrict(self, other):
        """Positions of ``other``'s basis inside this quotient (for window comparisons)."""
        return [self.pos[e] for e in other.basis]

    def __repr__(self):
        return "FiniteQuotient(dim=%d, window=%s)" % (self.dim, self.window)


def as_presentation(q, name="table"):
    """Presentation ``e(1..n)`` of weight 0 with one explicit rule per nonzero pair."""
    n = q.dim
    i = Var("i")
    dom = Guard([Cmp(i, ">=", Const(1)), Cmp(i, "<=", Const(n))])

    def term(k):
        return Term("e", (Const(k + 1),))

    rules = [BracketRule(term(a), term(b), tuple((Const(c), term(k)) for k, c in v.items()))
             for (a, b), v in sorted(q.table().items())]
    return Presentation(name, [Generator("e", ("i",), dom)], [WeightRule(Term("e", (i,)), Const(0))], rules)


def truncate(p, window):
    """Finite quotient of ``p`` on the weight window ``window``."""
    cls = classify_weighting(p, window)
    if cls == "invalid":
        raise InvalidWeighting("presentation %s has no valid weighting on window %d" % (p.name, window))
    basis = p.elements_upto(window)
    pos = {e: k for k, e in enumerate(basis)}
    table, dropped = {}, set()
    for i, a in enumerate(basis):
        for j in range(i + 1, len(basis)):
            r = p.bracket_basis(a, basis[j])
            if not r:
                continue
            kept = {}
            for e, c in r.items():
                k = pos.get(e)
                if k is None:
                    if p.truncation == "subalgebra":
                        raise InvalidWeighting("window %d of %s is not closed under brackets" % (window, p.name))
                    dropped.add((i, j))
                else:
                    kept[k] = c
            if kept:
                table[(i, j)] = SparseVector(kept)
    q = FiniteQuotient(basis, table, [p.weight(e) for e in basis], p, window, dropped, cls)
    return q


@dataclass
class SeriesChain:
    kind: str
    terms: list
    stabilized: bool
    exact: list = field(default_factory=list)

    @property
    def dims(self):
        return [t.dim for t in self.terms]

    @property
    def layer_dims(self):
        d = self.dims
        return [d[k] - d[k + 1] for k in range(len(d) - 1)]

    @property
    def reaches_zero(self):
        return self.terms[-1].dim == 0

    def nonzero_terms(self):
        return sum(1 for t in self.terms if t.dim)


def _product_span(q, left, right, track=None):
    s = Subspace()
    exact = True
    lb = left.basis() if isinstance(left, Subspace) else left
    rb = right.basis() if isinstance(right, Subspace) else right
    for u in lb:
        for v in rb:
            r = q.bracket(u, v)
            if r:
                s.add(r)
            if exact and q.dropped:
                for i in u.keys():
                    for j in v.keys():
                        if not q.is_exact_pair(i, j):
                            exact = False
                            break
                    if not exact:
                        break
    return s, exact


def series(q, kind, of=None):
    """Lower central (``lcs``) or derived (``derived``) series of a finite quotient.

    ``of`` restricts to a subalgebra given as a Subspace, so that the lower
    central terms are ``S^(k+1) = [S^k, S]`` inside ``q``.
    """
    if kind in ("lcs", "lower_central"):
        kind = "lower_central"
    elif kind != "derived":
        raise ValueError("kind must be 'lcs' or 'derived'")
    if of is None:
        whole = Subspace(SparseVector.unit(k) for k in range(q.dim))
        units = [SparseVector.unit(k) for k in range(q.dim)]
    else:
        whole = of.copy()
        units = of.basis()
    terms, exact = [whole], []
    while True:
        cur = terms[-1]
        if cur.dim == 0:
            return SeriesChain(kind, terms, False, exact)
        if kind == "lower_central":
            nxt, ex = _product_span(q, cur, units)
        else:
            b = cur.basis()
            nxt, ex = _product_span(q, b, b)
        exact.append(ex)
        if nxt == cur:
            return SeriesChain(kind, terms, True, exact)
        terms.append(nxt)


def span_closure(q, generators, mode="subalgebra"):
    """Smallest subalgebra or ideal of ``q`` containing ``generators``."""
    if mode not in ("subalgebra", "ideal"):
        raise ValueError("mode must be 'subalgebra' or 'ideal'")
    s = Subspace()
    frontier = []
    for g in generators:
        if s.add(g):
            frontier.append(g)
    units = [SparseVector.unit(k) for k in range(q.dim)]
    members = list(frontier)
    while frontier:
        new = []
        for u in frontier:
            partners = units if mode == "ideal" else members
            for v in partners:
                r = q.bracket(u, v)
                if r and s.add(r):
                    new.append(r)
        members.extend(new)
        frontier = new
    return s


# profiles

_NAMES = {
    "lower_central": ("pro_nilpotent", "residually_nilpotent"),
    "derived": ("pro_solvable", "residually_solvable"),
}


@dataclass
class Profile:
    kind: str
    windows: list
    dims: dict
    layers: dict
    stable_layers: list
    verdicts: list
    mode: str = "quotient"
    warnings: list = field(default_factory=list)

    def verdict(self, prop):
        for v in self.verdicts:
            if v.property == prop:
                return v
        raise KeyError(prop)

    def __iter__(self):
        return iter((self.stable_layers, self.verdicts))


def _lowest(q, subspace):
    """Lowest-position basis element whose unit vector lies in ``subspace``."""
    for k in range(q.dim):
        if subspace.contains(SparseVector.unit(k)):
            return q.basis[k]
    return None


def _profile(p, windows, kind):
    windows = sorted(set(int(w) for w in windows))
    if len(windows) < 2:
        raise ValueError("need at least two windows")
    pro, res = _NAMES[kind]
    quots = {M: truncate(p, M) for M in windows}
    chains = {M: series(quots[M], kind) for M in windows}
    dims = {M: chains[M].dims for M in windows}
    layers = {M: chains[M].layer_dims for M in windows}
    Ma, Mb = windows[-2], windows[-1]
    ca, cb = chains[Ma], chains[Mb]
    la, lb = layers[Ma], layers[Mb]
    stable = []
    for x, y in zip(la, lb):
        if x != y or x <= 0:
            break
        stable.append(x)
    warnings = []
    if quots[Mb].kind == "filtered":
        warnings.append("filtered presentation: layer dimensions are trusted only where windows agree")
    evidence = {"dims": {str(M): dims[M] for M in windows}, "stable_layers": stable}
    mode = p.truncation

    full = p.is_finite() and set(quots[Mb].basis) == set(p.elements_upto(10 ** 6))
    if full:
        # the window is the whole algebra; everything is exact
        if cb.stabilized:
            w = {"stable_term": len(cb.terms), "dim": cb.terms[-1].dim, "element": _lowest(quots[Mb], cb.terms[-1])}
            vs = [Verdict.fails(pro, Mb, w, evidence), Verdict.fails(res, Mb, w, evidence)]
        else:
            vs = [Verdict.holds(pro, Mb, evidence), Verdict.holds(res, Mb, evidence)]
        return Profile(kind, windows, dims, layers, stable, vs, "finite", warnings)

    if ca.stabilized and cb.stabilized:
        step = len(cb.terms)
        w = {"stable_term": step, "dim_by_window": {str(Ma): ca.terms[-1].dim, str(Mb): cb.terms[-1].dim},
             "element": _lowest(quots[Mb], cb.terms[-1])}
        vs = [Verdict.fails(pro, Ma, w, evidence), Verdict.fails(res, Ma, w, evidence)]
        return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)

    if ca.stabilized != cb.stabilized:
        vs = [Verdict.inconclusive(pro, Ma, evidence), Verdict.inconclusive(res, Ma, evidence)]
        warnings.append("series behaviour differs between the two largest windows")
        return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)

    # both chains reach zero
    na, nb = ca.nonzero_terms(), cb.nonzero_terms()
    if mode == "subalgebra" and nb > na:
        qa, qb = quots[Ma], quots[Mb]
        term = cb.terms[na]
        for e in qa.basis:
            if term.contains(SparseVector.unit(qb.pos[e])):
                w = {"element": e, "term": na + 1, "window": Mb,
                     "lengths": {str(Ma): na, str(Mb): nb}}
                vs = [Verdict.fails(pro, Ma, w, evidence), Verdict.fails(res, Ma, w, evidence)]
                return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)
        vs = [Verdict.inconclusive(pro, Ma, evidence), Verdict.inconclusive(res, Ma, evidence)]
        return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)

    res_v = Verdict.holds(res, Ma, evidence)
    if na == nb and ca.exact[-1] and cb.exact[-1] and cb.terms[na - 1].dim > ca.terms[na - 1].dim:
        w = {"zero_term": na + 1, "last_nonzero_dims": {str(Ma): ca.terms[na - 1].dim,
                                                      str(Mb): cb.terms[na - 1].dim},
             "reason": "term %d vanishes exactly while term %d keeps growing" % (na + 1, na)}
        vs = [Verdict.fails(pro, Ma, w, evidence), res_v]
        return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)

    if not stable:
        first = [layers[M][0] if layers[M] else 0 for M in windows]
        if len(windows) >= 3 and all(x < y for x, y in zip(first, first[1:])):
            w = {"layer": 1, "dims_by_window": {str(M): d for M, d in zip(windows, first)}}
            vs = [Verdict.fails(pro, 1, w, evidence), res_v]
        else:
            vs = [Verdict.inconclusive(pro, Ma, evidence), res_v]
            warnings.append("first layer not stable across windows")
        return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)

    vs = [Verdict.holds(pro, Ma, evidence), res_v]
    return Profile(kind, windows, dims, layers, stable, vs, mode, warnings)


def nilpotency_profile(p, windows):
    """Layer dimensions of the lower central series and the two nilpotency verdicts."""
    return _profile(p, windows, "lower_central")


def solvability_profile(p, windows):
    """Same as :func:`nilpotency_profile` along the derived series."""
    return _profile(p, windows, "derived")


def natural_basis(p, window):
    """Layers ``B_1, B_2, ...`` of right-normed brackets adapted to the central series."""
    q = p if isinstance(p, FiniteQuotient) else truncate(p, window)
    chain = series(q, "lcs")
    terms = chain.terms
    if chain.stabilized:
        raise LayerDeficient("central series stabilises at a nonzero term", witness=chain.dims)
    if len(terms) < 2:
        return []
    q2 = terms[1]
    # the non-pivot positions of the echelon form of q^2 are a complement
    piv = set(q2.pivots())
    b1 = [SparseVector.unit(k) for k in range(q.dim) if k not in piv]
    layers = [b1]
    for i in range(1, len(terms) - 1):
        need = terms[i].dim - terms[i + 1].dim
        below = terms[i + 1].copy()
        prev = layers[-1]
        cands = sorted(
            ((l + k, k, l) for l in range(len(prev)) for k in range(len(b1))),
        )
        chosen = []
        for _, k, l in cands:
            if len(chosen) == need:
                break
            r = q.bracket(prev[l], b1[k])
            if r and below.add(r):
                chosen.append(r)
        if len(chosen) < need:
            raise LayerDeficient(
                "layer %d needs %d elements, products give %d" % (i + 1, need, len(chosen)),
                witness={"layer": i + 1, "need": need, "found": len(chosen)},
            )
        layers.append(chosen)
    return layers
