"""
Constant complex field
======================

A uniform field B = |B| e^{i theta} turns the partner potentials into complex
harmonic oscillators.  The energies sit on circles of radius sqrt(n |omega|)
and are rotated by theta/2.
"""
# %%
import cmath
import math

from graphene_cfield import MagneticProfile, spectrum
from graphene_cfield.oracle import auto_domain, dense_spectrum, discretize, match_spectra
from graphene_cfield.susy import Branch

# %%
# Energies for three field angles, |omega| = 2|B| = 1 and k = 1.
for theta in (0.0, math.pi / 10, math.pi / 5):
    p = MagneticProfile("constant", 0.5, theta)
    print(f"theta = {theta:.4f}")
    for n, eps, E in spectrum(p, 1.0, 4):
        print(f"  n={n}  |E|={abs(E):.6f}  arg E={cmath.phase(E):+.6f}")

# %%
# The same levels from a finite-difference discretisation of H-.
p = MagneticProfile("constant", 0.5, math.pi / 10)
grid = auto_domain(p, 1.0, 3, n_points=1201)
numeric = dense_spectrum(discretize(p, 1.0, Branch.MINUS, grid), 4)
exact = [eps for _, eps, _ in spectrum(p, 1.0, 3)]
m = match_spectra(exact, numeric, 1e-2)
for a, b, err in m.pairs:
    print(f"exact {a:.6f}   numeric {b:.6f}   rel err {err:.1e}")

# %%
# Past theta = pi/2 the bound states come from the reflected oscillator; the
# zero mode moves to the other partner.
p = MagneticProfile("constant", 0.5, 0.9 * math.pi)
print([f"{E:.4f}" for _, _, E in spectrum(p, 1.0, 3)])
