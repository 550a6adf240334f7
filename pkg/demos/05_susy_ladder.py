"""
Intertwining and ladder operators
=================================

L- maps eigenfunctions of H- to those of H+ one level down, and annihilates
the zero mode.
"""
# %%
import math

import numpy as np

from graphene_cfield import Branch, MagneticProfile, Superpotential, eigenfunction
from graphene_cfield.susy import ladder_apply, proportionality
from graphene_cfield.verification import bilinear_normalised

p, k = MagneticProfile("exp", 1.0, math.pi / 10, 1.0), 6.0
sp = Superpotential(p, k)

g0 = eigenfunction(p, k, 0)
x = g0.grid()
print(f"max |L- psi_0| = {np.max(np.abs(ladder_apply(sp, Branch.MINUS, g0).psi(x))):.1e}")

for n in range(1, 6):
    lower = bilinear_normalised(eigenfunction(p, k, n, Branch.MINUS))
    upper = bilinear_normalised(eigenfunction(p, k, n - 1, Branch.PLUS))
    xs = eigenfunction(p, k, n).grid()
    lam, fit = proportionality(ladder_apply(sp, Branch.MINUS, lower).psi(xs), upper.psi(xs))
    eps = eigenfunction(p, k, n).eps
    print(f"n={n}  |lambda|={abs(lam):.10f}  sqrt|eps|={math.sqrt(abs(eps)):.10f}  misfit={fit:.1e}")
