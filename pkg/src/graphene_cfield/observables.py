"""Densities and currents of the spinor eigenstates.

A state is Psi = e^{iky} (u, i v).  With sigma_y = [[0, -i], [i, 0]] this gives

    rho             = |u|^2 + |v|^2
    Psi^+ sigma_x Psi = -2 Im(conj(u) v)
    Psi^+ sigma_y Psi =  2 Re(conj(u) v)

Because the Hamiltonian is not hermitian the continuity equation picks up a
source.  For a stationary state it reads

    d j_x/dx + (2 Im E / hbar) rho - (2 e v0 / c hbar) Im A  Psi^+ sigma_y Psi = 0,

which follows from the first-order system L- v = E u, L+ u = E v.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .oracle import Grid
from .profiles import NATURAL, Superpotential, partner_potentials, vector_potential

# sign in front of the source term; fixed by the derivation above
SOURCE_SIGN = 1.0


def sigma_expectations(state, x):
    """(Psi^+ sigma_x Psi, Psi^+ sigma_y Psi) at ``x``."""
    u, v = state.components(x)
    cross = np.conj(u) * v
    return -2.0 * cross.imag, 2.0 * cross.real


def probability_density(state, x):
    u, v = state.components(x)
    return np.abs(u) ** 2 + np.abs(v) ** 2


def current_density(state, x):
    """(j_x, j_y) = v0 Psi^+ sigma Psi."""
    sx, sy = sigma_expectations(state, x)
    v0 = state.constants.v0
    return v0 * sx, v0 * sy


def current_divergence(state, x):
    """d j_x / dx from the analytic component derivatives."""
    u, v = state.components(x)
    du, dv = state.components_prime(x)
    d_cross = np.conj(du) * v + np.conj(u) * dv
    return -2.0 * state.constants.v0 * d_cross.imag


def continuity_residual(state, x):
    c = state.constants
    rho = probability_density(state, x)
    _, sy = sigma_expectations(state, x)
    im_a = np.imag(vector_potential(state.profile, x))
    source = 2.0 * c.e_over_c * c.v0 / c.hbar * im_a * sy
    return np.abs(current_divergence(state, x) + 2.0 * state.E.imag / c.hbar * rho - SOURCE_SIGN * source)


def pseudo_spin_split(profile, x):
    """(|A| cos arg A, |A| sin arg A): the vector-potential pieces entering the
    hermitian part and the anti-hermitian sigma_y term of the Hamiltonian."""
    # Re/Im rather than |A| cos/sin(arg A): arg is pi where A < 0 and sin(pi) != 0 in floating point
    A = vector_potential(profile, x)
    return A.real.copy(), A.imag.copy()


def total_probability_factor(E, t, hbar=1.0):
    """exp(2 Im(E) t / hbar)."""
    return math.exp(2.0 * complex(E).imag * t / hbar)


def chi_points(sp, grid, scan_points=10_000):
    """Roots of Re w(x) inside ``grid``, in increasing order."""
    xs = np.linspace(grid.x_min, grid.x_max, scan_points)
    re_w = np.real(sp(xs))
    roots = []
    for i in np.nonzero(np.sign(re_w[1:]) != np.sign(re_w[:-1]))[0]:
        if re_w[i] == 0.0:
            roots.append(float(xs[i]))
            continue
        r = scipy.optimize.bisect(lambda t: float(np.real(sp(t))), xs[i], xs[i + 1], xtol=1e-12)
        roots.append(float(r))
    return sorted(set(roots))


def chi_identity_gap(sp, chi):
    """|Im V+(chi) - Im (e/c hbar) B(chi)|."""
    _, vp = partner_potentials(sp, chi)
    return float(np.abs(np.imag(vp) - np.imag(sp.prime(chi))))


@dataclass
class ObservableField:
    grid: Grid
    rho: np.ndarray = field(repr=False)
    j_x: np.ndarray = field(repr=False)
    j_y: np.ndarray = field(repr=False)
    continuity_residual: np.ndarray = field(repr=False)


def observable_field(state, grid):
    x = grid.x
    jx, jy = current_density(state, x)
    return ObservableField(grid, probability_density(state, x), jx, jy, continuity_residual(state, x))


def dirac_matrices(profile, k, grid, constants=NATURAL):
    """Central-difference Dirac-Weyl Hamiltonian split as (H_R, H_I).

    H = v0 [sigma_x p_x + sigma_y (hbar k + (e/c) A)], and H_R uses the
    hermitian piece |A| cos(arg A) only; H_I = H - H_R carries i |A| sin(arg A).
    Ordering is (upper block, lower block).
    """
    x, h, n = grid.x, grid.h, grid.n_points
    a_re, a_im = pseudo_spin_split(profile, x)
    # p_x = -i hbar d/dx with the antisymmetric central difference
    dx = (np.diag(np.ones(n - 1), 1) - np.diag(np.ones(n - 1), -1)) / (2.0 * h)
    px = -1j * constants.hbar * dx
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    v0, ec = constants.v0, constants.e_over_c
    h_r = v0 * (np.kron(sx, px) + np.kron(sy, np.diag(constants.hbar * k + ec * a_re)))
    h_i = v0 * np.kron(sy, np.diag(1j * ec * a_im))
    return h_r, h_i


def hermiticity_defects(profile, k, grid, constants=NATURAL):
    """(max|H_R - H_R^+|, max|H_I + H_I^+|, max|H_I|)."""
    h_r, h_i = dirac_matrices(profile, k, grid, constants)
    return (float(np.max(np.abs(h_r - h_r.conj().T))),
            float(np.max(np.abs(h_i + h_i.conj().T))),
            float(np.max(np.abs(h_i))))
