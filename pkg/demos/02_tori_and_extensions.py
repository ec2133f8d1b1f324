"""Maximal tori, rank, roots, and the residually solvable extensions they produce."""

# %% Diagonal derivations of m1
from prolie import catalog
from prolie.constructions import ExtensionSpec, InnerAction, TorusAction, build_extension
from prolie.derivations import center_and_inner, rank, root_decomposition, torus_system
from prolie.errors import RadicalViolation
from prolie.exactlin import SparseVector
from prolie.filtration import truncate
from prolie.presentation import elem, elem_str

m1 = catalog.load("m1")
_, t = torus_system(m1, 10)
print("torus of m1 on window 10 has dimension", t.dim)

r = rank(m1, [8, 12, 16])
print("rank", r.rank, "maximal" if r.maximal_rank else "not maximal", "torus dims", r.trace["torus_dims"])

# %% Roots: every basis vector is an eigenvector of the whole torus
rd = root_decomposition(m1, t)
for x in [elem("e", i) for i in range(1, 7)]:
    print("  root of %-5s (%s)" % (elem_str(x), ", ".join(str(a) for a in rd.root_of(x))))

# %% Other algebras
for name in ("W(0)", "W(1)", "W(2)", "n1", "example_3_8"):
    print("rank of %-12s" % name, rank(catalog.load(name), [8, 12, 16]).rank)

# %% Adjoining the torus gives a complete algebra on every window
R, report = build_extension(ExtensionSpec(m1, [TorusAction(t, 0), TorusAction(t, 1)], window=10), [6, 8, 10])
print("\nextension checks passed:", report["passed"], sorted(report["checks"]))
for M in (6, 8, 10):
    center, inner, equal = center_and_inner(truncate(R, M))
    print("  window %2d: center dim %d, every derivation inner: %s" % (M, len(center), equal))

# %% A nilpotent action cannot enlarge the radical
try:
    build_extension(ExtensionSpec(m1, [InnerAction(SparseVector({elem("e", 1): 1}))]), [6])
except RadicalViolation as err:
    print("\nad e(1) rejected:", err)
