"""
Exponentially decaying field
============================

The partner potentials are complex Morse potentials, yet the spectrum is real
and finite: only levels with n mu < k are bound.
"""
# %%
import math

import numpy as np

from graphene_cfield import MagneticProfile, spectrum

p = MagneticProfile("exp", 1.0, math.pi / 10, 1.0)
for n, eps, E in spectrum(p, 6.0, 10):
    print(f"n={n}  eps={eps.real:g}  E={E.real:.6f}  Im E={E.imag:.1e}")

# %%
# Every curve E_n(k) stays below the line E = k and meets it where it ends.
for k in np.arange(0.5, 6.5, 1.0):
    levels = [E.real for _, _, E in spectrum(p, k, 10)]
    print(f"k={k:.1f}  bound={len(levels)}  top={max(levels):.4f}")
