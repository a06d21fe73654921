"""
Symmetric inner functions, the Hoelder condition at p = 0, and the
one-particle semigroup on the half line.
"""
import numpy as np

from lattice_bqft import half_line as hl
from lattice_bqft import inner_functions as inf

phis = {
    "e^{ip}": inf.singular(1.0),
    "blaschke(i)": inf.blaschke(1j),
    "blaschke(0.5+2i) e^{0.3ip}": inf.blaschke(0.5 + 2j) * inf.singular(0.3),
    "(p-i)/(p+i)": inf.cayley(),
    "-1": inf.SymmetricInnerFunction(sign=-1),
}

## Symmetric, inner, Hoelder?
for name, phi in phis.items():
    r = inf.check_symmetric_inner(phi)
    h = inf.holder_check(phi)
    print(f"{name:28s} symmetric={r.symmetric} inner={r.inner} holder={h.verdict}")

## V = phi(P) keeps functions on the right half line there; the defect shrinks with N
rows = hl.semigroup_sweep({"blaschke(i)": inf.blaschke(1j),
                           "(1+cos 1.2p)/2": lambda p: (1 + np.cos(1.2 * p)) / 2},
                          [2 ** k for k in range(11, 15)])
print(hl.sweep_csv(rows))
