"""Independent dense reference implementations used as test oracles.

Nothing here imports the package's linear algebra: plain lists of Fractions,
with ranks and row spaces delegated to sympy's DomainMatrix over QQ.
"""

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _dm(rows):
    return DomainMatrix([[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows],
                        (len(rows), len(rows[0])), QQ)


def dense_rank(rows):
    if not rows:
        return 0
    return _dm(rows).rank()


def dense_bracket(C, x, y):
    n = len(C)
    out = [Fraction(0)] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            c = x[i] * y[j]
            for k in range(n):
                if C[i][j][k]:
                    out[k] += c * C[i][j][k]
    return out


def dense_jacobi_ok(C):
    """Cyclic sum of [[e_i, e_j], e_k] on all triples, straight from the constants."""
    n = len(C)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    s = 0
                    for m in range(n):
                        s += C[i][j][m] * C[m][k][l] + C[j][k][m] * C[m][i][l] + C[k][i][m] * C[m][j][l]
                    if s:
                        return False
    return True


def dense_derivation_dim(C):
    """dim of {D : D[x,y] = [Dx,y] + [x,Dy]}; unknown D[a][b] = coefficient of e_a in D e_b."""
    n = len(C)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for a in range(n):
                    row[k * n + a] += C[i][j][a]  # D([e_i, e_j])_k
                    row[a * n + i] -= C[a][j][k]  # [D e_i, e_j]_k
                    row[a * n + j] -= C[i][a][k]  # [e_i, D e_j]_k
                if any(row):
                    rows.append(row)
    return n * n - dense_rank(rows)


def dense_is_derivation(C, D):
    n = len(C)
    e = [[Fraction(int(i == k)) for k in range(n)] for i in range(n)]

    def app(v):
        return [sum(D[a][b] * v[b] for b in range(n)) for a in range(n)]

    for i in range(n):
        for j in range(n):
            lhs = app(dense_bracket(C, e[i], e[j]))
            rhs = [x + y for x, y in zip(dense_bracket(C, app(e[i]), e[j]), dense_bracket(C, e[i], app(e[j])))]
            if lhs != rhs:
                return False
    return True


def dense_span(vectors):
    """Basis of the span: the nonzero rows of the reduced row echelon form."""
    if not vectors:
        return []
    red, piv = _dm(vectors).rref()
    rows = red.to_Matrix().tolist()
    return [[Fraction(int(x.p), int(x.q)) for x in rows[i]] for i in range(len(piv))]


def dense_series(C, kind, max_terms=30):
    """Dims of the lower central or derived series until it stops shrinking."""
    n = len(C)
    full = [[Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    term = full
    dims = [n]
    for _ in range(max_terms):
        other = full if kind == "lcs" else term
        prods = [dense_bracket(C, x, y) for x in term for y in other]
        nxt = dense_span([p for p in prods if any(p)])
        if len(nxt) == len(term):
            break
        term = nxt
        dims.append(len(term))
        if not term:
            break
    return dims


def dense_kernel_dim(rows, cols):
    return cols - dense_rank(rows) if rows else cols


def same_span(a, b):
    if not a and not b:
        return True
    r = dense_rank(a + b)
    return r == dense_rank(a) == dense_rank(b)
