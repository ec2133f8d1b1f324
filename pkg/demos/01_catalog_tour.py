"""A walk through the builtin algebras.

Run with ``python demos/01_catalog_tour.py``.  Each algebra is infinite, so
everything below is computed on weight windows and reported with the depth
it was certified to.
"""

# %% Load and inspect
from prolie import catalog
from prolie.filtration import nilpotency_profile, series, solvability_profile, truncate

for name in catalog.names():
    info = catalog.describe(name)
    print("%-12s %s" % (name, info["description"]))

# %% A window is a finite-dimensional quotient
m1 = catalog.load("m1")
q = truncate(m1, 8)
print("\nm1 on window 8 has dimension", q.dim)
print("lower central series dims:", series(q, "lcs").dims)
print("derived series dims:      ", series(q, "derived").dims)

# %% Comparing two windows separates finite truncation effects from real behaviour
print("\nverdicts on windows 8 and 12")
for name in ("witt_pos", "witt_nonneg", "m1", "m2", "a_inf"):
    p = catalog.load(name)
    vs = nilpotency_profile(p, [8, 12]).verdicts + solvability_profile(p, [8, 12]).verdicts
    print("  %-12s" % name, ", ".join("%s=%s" % (v.property, v.value.split("_")[0]) for v in vs))

# %% Witnesses say why something fails
v = solvability_profile(m1, [8, 12]).verdict("pro_solvable")
print("\nm1 is not pro-solvable:", v.witness["reason"])
