"""
Densities, currents and the chi point
=====================================

The Hamiltonian is not hermitian, so the continuity equation carries a
source term.  The ground-state density peaks where Re w vanishes.
"""
# %%
import math

import numpy as np

from graphene_cfield import MagneticProfile, Superpotential, spinor_state
from graphene_cfield import observables as obs
from graphene_cfield.oracle import auto_domain

cases = {
    "constant": (MagneticProfile("constant", 0.5, math.pi / 10), 1.0),
    "trig": (MagneticProfile("trig", 4.0, math.pi / 10, 1.0), -2.0),
    "exp": (MagneticProfile("exp", 1.0, math.pi / 10, 1.0), 6.0),
}

for name, (profile, k) in cases.items():
    grid = auto_domain(profile, k, 3)
    chi = obs.chi_points(Superpotential(profile, k), grid)[0]
    print(f"{name}: chi = {chi:.5f}")
    for n in range(4):
        f = obs.observable_field(spinor_state(profile, k, n), grid)
        print(f"  n={n}  peak rho at {grid.x[np.argmax(f.rho)]:+.4f}  "
              f"max|j_x|={np.max(np.abs(f.j_x)):.3e}  continuity={np.max(f.continuity_residual):.1e}")

# %%
# With a real field the transverse current vanishes.
s = spinor_state(MagneticProfile("trig", 4.0, 0.0, 1.0), -2.0, 2)
jx, jy = obs.current_density(s, np.linspace(*s.support, 1001))
print(f"theta=0: max|j_x| = {np.max(np.abs(jx)):.1e}, max|j_y| = {np.max(np.abs(jy)):.3f}")
