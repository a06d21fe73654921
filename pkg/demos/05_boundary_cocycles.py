"""
Charged cocycles that extend phi(P) from the current net to the lattice net.
"""
import math

from lattice_bqft import boundary_cocycle as bc
from lattice_bqft import half_line as hl
from lattice_bqft import inner_functions as inf
from lattice_bqft.lattice_core import build_cartan

grid = hl.LineGrid()              # X = 64, N = 2**14
step = bc.StepData(grid)          # unit bump on (1, 3) and its primitive
A2 = build_cartan("A2")

for label, scalar in [("identity", inf.identity()), ("blaschke(i)", inf.blaschke(1j))]:
    data = bc.TwistedChargeData(inf.build_matrix(A2, [scalar]), step)
    f = hl.line_bump(grid, 2.5, 1.2, [6 * math.pi, 2 * math.pi], A2.as_array())
    print(f"== {label}")
    print("  norm of phi(P) m - m  :", bc.norm_membership_check(data, 0).verdict)
    print("  a1 defect             :", max(bc.verify_a1(data, i, f) for i in range(2)))
    print("  a2 defect             :", bc.verify_a2(data, 0, 1))
    print("  a3 defect             :", bc.verify_a3(data, 0, (0.1, 0.5, 1.0)))
    rep = bc.verify_ext_cocycle(data, 2)
    print("  ext cocycle           :", rep)
    print("  orbifold (adjusted)   :", bc.verify_orbifold_commutation(data, 0))
    print("  orbifold (un-adjusted):", bc.verify_orbifold_commutation(data, 0, adjusted=False))
