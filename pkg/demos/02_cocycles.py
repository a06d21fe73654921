"""
The sign cocycle on the lattice and the Klein identity on a charge window.
"""
from lattice_bqft import discrete_cocycle as dc
from lattice_bqft.lattice_core import build_cartan

lat = build_cartan("D4")
B = dc.build_b(lat)
print("B over Z2 for D4:")
for row in B.matrix:
    print("  ", row)

## The defining identities hold on random triples
rep = dc.verify_epsilon_identities(lat, trials=500, rng_seed=0)
print("epsilon identities:", "ok" if rep.ok else rep.failures[:2])

## Flip one entry and the commutator identity breaks
m = [list(r) for r in B.matrix]
m[0][1] ^= 1
bad = dc.verify_epsilon_identities(lat, dc.EpsilonCocycle(dc.BilinearFormB(m)), trials=500)
print("corrupted B: failing identities", sorted({f["identity"] for f in bad.failures}))

## eps and the loop-group choice differ by a coboundary
print("same commutator:", dc.commutator_map(dc.EpsilonCocycle.of(lat),
                                           dc.loop_bicharacter(lat)).cohomologous)

## Klein identity for the charge shifts, radius-3 window
for eta in (dc.EpsilonCocycle.of(lat).as_bicharacter(), dc.loop_bicharacter(lat)):
    k = dc.klein_shift_check(dc.ChargeWindow(lat, 3, eta))
    print(f"klein: ok={k.ok} checked={k.checked} out-of-window={k.undefined}")
