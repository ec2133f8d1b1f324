"""Central extensions, coboundaries, and exponentials of nilpotent derivations."""

# %% A cocycle that is not a coboundary
from fractions import Fraction

from prolie import catalog
from prolie.constructions import central_extension, coboundary_cocycle, current_algebra, direct_sum, exp_derivation
from prolie.derivations import inner_derivation
from prolie.dsl import parse_cocycle
from prolie.exactlin import SparseVector
from prolie.filtration import nilpotency_profile, truncate
from prolie.presentation import elem, vec_str

m1 = catalog.load("m1")
theta = parse_cocycle(catalog.cocycle_source("m1_e2e3"), m1)
N, rep = central_extension(m1, theta, [10])
print("theta(e2, e3) = v: coboundary?", rep["coboundary"], " center formula holds?", rep["center_matches"])
print("still pro-nilpotent:", nilpotency_profile(N, [8, 12]).verdict("pro_nilpotent").value)

# %% Every nu gives a coboundary
delta = coboundary_cocycle(m1, {elem("e", 3): {"v": 1}, elem("e", 5): {"v": -2}}, 10)
_, rep = central_extension(m1, delta, [10])
print("delta nu: coboundary?", rep["coboundary"], "nu(e3) =", vec_str(rep["nu"][elem("e", 3)]))

# %% Exponential of ad e(1): a finite sum on each window
q = truncate(m1, 6)
E, verdict = exp_derivation(q, inner_derivation(q, SparseVector.unit(q.pos[elem("e", 1)])))
print("\nE(e2) =", vec_str(q.element_vector(E.column(q.pos[elem("e", 2)]))))
print(verdict)

# %% Building new algebras
S = direct_sum(m1, catalog.load("W(0)"))
print("\nm1 + W(0) layers:", nilpotency_profile(S, [8, 12]).layers[12][:6])
C = current_algebra(m1)
c = truncate(C, 6)
x, y = elem("e", 1, 1), elem("e", 2, 1)
print("current algebra [e(1,1), e(2,1)] =", vec_str(c.element_vector(c.bracket_pos(c.pos[x], c.pos[y]))))
print("weights are integers:", all(Fraction(C.weight(b)).denominator == 1 for b in c.basis))
