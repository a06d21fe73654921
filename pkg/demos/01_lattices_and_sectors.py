"""
Even lattices, their discriminant groups and the sectors of the lattice net.

Run with ``python demos/01_lattices_and_sectors.py``.
"""
from lattice_bqft.lattice_core import (build_cartan, conformal_spin, discriminant_group,
                                       enumerate_roots, fuse, inverse)

## The mu-index of the ADE root lattices
for name in ["A1", "A2", "A4", "D4", "D5", "E6", "E7", "E8"]:
    lat = build_cartan(name)
    grp = discriminant_group(lat)
    print(f"{name:3s} det={lat.det():2d}  L*/L = {grp.invariant_factors or 'trivial'}"
          f"  roots={len(enumerate_roots(lat))}")

## Sectors of A2: three of them, with spins 1, e^{2 pi i/3}, e^{2 pi i/3}
grp = discriminant_group(build_cartan("A2"))
for s in grp.elements():
    e, phase = conformal_spin(s)
    print(s, "order", s.order, "spin exponent", e, "phase", complex(round(phase.real, 12),
                                                                   round(phase.imag, 12)))

## Fusion is addition in L*/L
a = grp.generators()[0]
print("a + a =", fuse(a, a), " -a =", inverse(a), " a + a + a =", fuse(fuse(a, a), a))
