"""
Trigonometric singular well
===========================

B(x) = B / sin^2(mu x) confines the electron to 0 < x < pi/mu.  The energies
lie on ellipses and Im E_1 changes sign at k = +-k0.
"""
# %%
import math

import numpy as np

from graphene_cfield import MagneticProfile, energy, find_k0, spectrum

p = MagneticProfile("trig", 4.0, math.pi / 10, 1.0)
for n, eps, E in spectrum(p, -2.0, 4):
    print(f"n={n}  eps={eps:.6f}  E={E:.6f}")

# %%
res = find_k0(p)
print(f"k0 = {res.k0:.12f}   |Im E_1(k0)| = {res.residual:.1e}")
for k in np.linspace(-8, 8, 9):
    print(f"k={k:+.1f}  Im E_1={energy(p, k, 1).imag:+.5f}")
