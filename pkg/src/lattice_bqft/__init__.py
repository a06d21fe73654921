"""Even-lattice chiral data, loop-group Weyl systems and boundary twists.

Submodules
----------
lattice_core      discriminant groups, sectors, roots
discrete_cocycle  the sign cocycle, bicharacters, Klein shifts
loop_algebra      truncated torus loops, S action, commutation phases
weyl_fock         one-particle space, coherent states, Weyl operators
inner_functions   symmetric inner functions and the Hölder test
half_line         FFT multipliers on the line, semigroup defects
boundary_cocycle  twisted charges, the product law and orbifold check
"""
from .lattice_core import Lattice, build_cartan, discriminant_group, enumerate_roots, mu_index

__all__ = ["Lattice", "build_cartan", "discriminant_group", "enumerate_roots", "mu_index"]
__version__ = "0.1.0"
