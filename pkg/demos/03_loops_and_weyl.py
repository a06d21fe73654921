"""
Loops into the torus: the central cocycle, commutation phases and locality.
"""
import numpy as np

from lattice_bqft import loop_algebra as la
from lattice_bqft import weyl_fock as wf
from lattice_bqft.lattice_core import build_cartan

A2 = build_cartan("A2")
G = A2.as_array()
rng = np.random.default_rng(1)

## Two random loops with winding numbers in A2
f = la.random_loop(rng, G, 64, [1, -1], A2)
g = la.random_loop(rng, G, 64, [0, 2], A2)
print("S(f, g) =", la.action_S(f, g))
c = la.commutation_phase(f, g)
print("commutation phase", c.value, " defect vs chained form", c.defect)

## Straight loops reproduce the lattice signs
a, b = la.straight_loop(A2, [1, 0], 4), la.straight_loop(A2, [0, 1], 4)
print("W(a1) W(a2) = ", la.commutation_phase(a, b).value, "W(a2) W(a1)")

## Locality: loops supported on disjoint arcs commute
A1 = build_cartan("A1")
for K in (64, 256, 1024):
    s1 = la.step_loop([1], 1.3, 0.9, K, 8 * K, lattice=A1)
    s2 = la.step_loop([1], 4.2, 1.2, K, 8 * K, lattice=A1)
    print(f"K={K:5d}  locality defect {la.locality_defect(s1, s2):.2e}")

## Weyl relation on coherent states
u = wf.random_vector(rng, 16, G, 1.0)
v = wf.random_vector(rng, 16, G, 1.0)
ts = wf.random_test_set(rng, 6, 16, G)
print("Weyl relation defect", wf.verify_weyl_relation(u, v, ts))
print("without the phase   ", wf.verify_weyl_relation(u, v, ts, drop_phase=True))
