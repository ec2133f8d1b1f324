"""Random Lie algebra structure-constant tables of small dimension.

Two sources: Lie closures of random integer matrices (structure constants
read off in a fixed basis of the closure) and random changes of basis of
catalog quotients.
"""

import random
from fractions import Fraction

from prolie import catalog
from prolie.exactlin import Matrix, SparseVector, inverse, lie_closure, solve
from prolie.filtration import FiniteQuotient, truncate

MAX_DIM = 8


def _random_matrix(rng, side, shape):
    d = {}
    for i in range(side):
        for j in range(side):
            if shape == "strict" and j <= i:
                continue
            if shape == "upper" and j < i:
                continue
            if rng.random() < 0.5:
                d[(i, j)] = rng.randint(-2, 2)
    if shape == "traceless":
        d[(side - 1, side - 1)] = -sum(v for (i, j), v in d.items() if i == j and i != side - 1)
    return Matrix(side, side, d)


def closure_table(rng):
    """Structure constants of the Lie algebra generated by a few random matrices, or None if too big."""
    shape = rng.choice(["strict", "strict", "upper", "traceless", "any"])
    side = rng.choice([2, 3]) if shape in ("any", "traceless") else rng.choice([3, 4])
    gens = [_random_matrix(rng, side, shape) for _ in range(rng.choice([1, 2, 2, 3]))]
    basis = lie_closure(gens)
    n = len(basis)
    if n == 0 or n > MAX_DIM:
        return None
    flat = Matrix.from_columns(side * side, [b.flat().map_keys(lambda rc: rc[0] * side + rc[1]) for b in basis])
    C = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            br = basis[i].commutator(basis[j]).flat().map_keys(lambda rc: rc[0] * side + rc[1])
            x = solve(flat, br)
            for k, v in x.items():
                C[i][j][k] = v
    return C


def catalog_tables(max_dim=MAX_DIM):
    """Every catalog quotient of dimension <= max_dim, as dense tables."""
    out = []
    for name in list(catalog.names()) + ["W(0)", "W(1)", "W(2)"]:
        if name == "W(s)":
            continue
        p = catalog.load(name)
        for M in range(0, 13):
            try:
                q = truncate(p, M)
            except Exception:
                continue
            if 0 < q.dim <= max_dim:
                out.append((name, M, to_dense(q)))
    return out


def to_dense(q):
    n = q.dim
    C = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in q.table().items():
        for k, c in v.items():
            C[i][j][k] = c
            C[j][i][k] = -c
    return C


def random_base_change(rng, C):
    """``C`` rewritten in the basis ``f_i = sum_a g[a][i] e_a`` for a random invertible ``g``."""
    n = len(C)
    while True:
        g = Matrix(n, n, {(a, b): rng.randint(-2, 2) for a in range(n) for b in range(n) if rng.random() < 0.6})
        try:
            gi = inverse(g)
        except Exception:
            continue
        if gi is not None:
            break
    cols = g.columns()
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            br = SparseVector()
            for a, x in cols[i].items():
                for b, y in cols[j].items():
                    br = br + SparseVector((k, c) for k, c in enumerate(C[a][b])) * (x * y)
            for k, c in gi.apply(br).items():
                out[i][j][k] = c
    return out


def quotient_of(C):
    return FiniteQuotient.from_dense(len(C), C)


def random_tables(count, seed=20261019):
    """``count`` tables mixing matrix closures and base changes of catalog quotients."""
    rng = random.Random(seed)
    cats = [c for _, _, c in catalog_tables()]
    out = []
    while len(out) < count:
        if rng.random() < 0.5:
            C = closure_table(rng)
            if C is None:
                continue
        else:
            C = random_base_change(rng, rng.choice(cats))
        out.append(C)
    return out
