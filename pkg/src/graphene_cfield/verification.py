"""Invariant suite run by ``graphene-cfield verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import observables as obs
from . import oracle
from .profiles import NATURAL, ProfileKind, Superpotential
from .quadrature import adaptive_simpson
from .susy import (Branch, admissibility, constant_window, eigen_residual, eigenfunction,
                   eigenvalue_minus, energy, intertwining_residual, ladder_apply, proportionality, spinor_state)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.value < self.tolerance)


class GaussianPacket:
    """exp(-(x-x0)^2/(2 s^2) + i q x) with closed-form derivatives up to third order."""

    def __init__(self, x0, width, q):
        self.x0, self.width, self.q = x0, width, q

    def d(self, x, order=0):
        g1 = -(x - self.x0) / self.width ** 2 + 1j * self.q
        g2 = -1.0 / self.width ** 2
        f = np.exp(-0.5 * ((x - self.x0) / self.width) ** 2 + 1j * self.q * x)
        return f * (1.0, g1, g2 + g1 * g1, 3.0 * g1 * g2 + g1 ** 3)[order]


def random_packets(profile, grid, count, seed=0):
    rng = np.random.default_rng(seed)
    span = grid.x_max - grid.x_min
    lo, hi = grid.x_min + 0.3 * span, grid.x_max - 0.3 * span
    return [GaussianPacket(rng.uniform(lo, hi), rng.uniform(0.03, 0.08) * span, rng.uniform(-3, 3))
            for _ in range(count)]


def bilinear_normalised(pair):
    """psi / sqrt(int psi^2) as a callable pair (value, derivative, second)."""
    s = 1.0 / np.sqrt(pair.pseudo_norm)

    class _Scaled:
        def psi(self, x):
            return s * pair.psi(x)

        def psi_prime(self, x):
            return s * pair.psi_prime(x)

        def psi_second(self, x):
            return s * pair.psi_second(x)

    return _Scaled()


def five_point_second(f, x, h):
    """Fourth-order central difference for f''."""
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def levels(profile, k, n_max):
    return [n for n in range(n_max + 1) if admissibility(profile, k, n)]


def susy_checks(profile, k, n_max=3, constants=NATURAL, seed=0):
    sp = Superpotential(profile, k, constants)
    grid = oracle.auto_domain(profile, k, min(n_max, max(levels(profile, k, n_max))), constants)
    x = grid.x[1:-1]
    window2 = profile.kind is ProfileKind.CONSTANT and constant_window(profile) == -1
    res_a, res_fd, closure, factor_gap, ladder_fit = 0.0, 0.0, 0.0, 0.0, 0.0
    step = 1e-3
    for n in levels(profile, k, n_max):
        pairs = []
        if not (window2 and n == 0):
            pairs.append(eigenfunction(profile, k, n, Branch.MINUS, constants))
        if admissibility(profile, k, n + 1):
            pairs.append(eigenfunction(profile, k, n, Branch.PLUS, constants))
        for p in pairs:
            xi = x[(x > p.support[0] + 2 * step) & (x < p.support[1] - 2 * step)]
            res_a = max(res_a, eigen_residual(p, sp, xi))
            fd = five_point_second(p.psi, xi, step)
            res_fd = max(res_fd, eigen_residual(p, sp, xi, second=fd))
        if n == 0:
            continue
        lower = eigenfunction(profile, k, n, Branch.MINUS, constants)
        upper = eigenfunction(profile, k, n - 1, Branch.PLUS, constants)
        down = ladder_apply(sp, Branch.MINUS, lower)
        back = ladder_apply(sp, Branch.PLUS, down).psi(x)
        ref = lower.eps * lower.psi(x)
        closure = max(closure, float(np.max(np.abs(back - ref)) / np.max(np.abs(ref))))
        lam, fit = proportionality(ladder_apply(sp, Branch.MINUS, bilinear_normalised(lower)).psi(x),
                                   bilinear_normalised(upper).psi(x))
        ladder_fit = max(ladder_fit, fit)
        factor_gap = max(factor_gap, abs(abs(lam) - math.sqrt(abs(lower.eps))) / math.sqrt(abs(lower.eps)))
    checks = [
        Check("eigen_residual_analytic", res_a, 1e-6),
        Check("eigen_residual_fd_h1e-3", res_fd, 1e-4),
        Check("ladder_closure", closure, 1e-8),
        Check("ladder_proportionality", ladder_fit, 1e-8),
        Check("ladder_factor_vs_sqrt_eps", factor_gap, 1e-8),
    ]
    if not window2:
        g0 = eigenfunction(profile, k, 0, Branch.MINUS, constants)
        killed = ladder_apply(sp, Branch.MINUS, g0).psi(x)
        checks.append(Check("zero_mode_annihilated", float(np.max(np.abs(killed))), 1e-10))
    inter = max(intertwining_residual(sp, f, x) for f in random_packets(profile, grid, 20, seed))
    checks.append(Check("intertwining", inter, 1e-6))
    return checks


def spectrum_checks(profile, k, n_max=3, constants=NATURAL):
    out = []
    ns = levels(profile, k, n_max)
    Es = [energy(profile, k, n, constants=constants) for n in ns]
    scale = constants.hbar * constants.v0
    if profile.kind is ProfileKind.CONSTANT:
        om = abs(Superpotential(profile, k, constants).omega)
        gap = max(abs(abs(E) - scale * math.sqrt(n * om)) for n, E in zip(ns, Es))
        out.append(Check("constant_circle_radius", gap, 1e-12))
    if profile.kind is ProfileKind.EXP:
        out.append(Check("exp_spectrum_real", max(abs(E.imag) for E in Es), 1e-10))
        excess = max((E.real - scale * k) for E in Es)
        out.append(Check("exp_envelope_excess", max(excess, 0.0), 1e-12))
    return out


def oracle_checks(profile, k, n_max=3, constants=NATURAL, n_points=1201):
    ns = levels(profile, k, n_max)
    grid = oracle.auto_domain(profile, k, max(ns), constants, n_points)
    window2 = profile.kind is ProfileKind.CONSTANT and constant_window(profile) == -1
    eps = [eigenvalue_minus(profile, k, n, constants) for n in ns]
    # H- carries the zero mode in the first window, H+ in the second
    with_zero, without_zero = (Branch.PLUS, Branch.MINUS) if window2 else (Branch.MINUS, Branch.PLUS)
    num_with = oracle.dense_spectrum(oracle.discretize(profile, k, with_zero, grid, constants), len(ns))
    num_without = oracle.dense_spectrum(oracle.discretize(profile, k, without_zero, grid, constants), len(ns))
    m1 = oracle.match_spectra(eps, num_with, 1e-2)
    out = [Check("oracle_spectrum_zero_mode_partner", max(m1.errors), 1e-2)]
    if len(eps) > 1:
        m2 = oracle.match_spectra(eps[1:], num_without, 1e-2)
        out.append(Check("oracle_spectrum_partner", max(m2.errors), 1e-2))
        floor = min(abs(v) for v in num_without) / (0.1 * abs(eps[1]))
        out.append(Check("no_zero_mode_in_partner", 1.0 / floor, 1.0))
    # absolute, consistent with how match_spectra treats eps = 0
    out.append(Check("zero_mode_present", min(abs(v) for v in num_with), 1e-2))
    return out


def observable_checks(profile, k, n_max=3, constants=NATURAL):
    sp = Superpotential(profile, k, constants)
    ns = levels(profile, k, n_max)
    grid = oracle.auto_domain(profile, k, max(ns), constants)
    x = grid.x
    cont, norm_gap, recon, jx_ratio = 0.0, 0.0, 0.0, 0.0
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    for n in ns:
        st = spinor_state(profile, k, n, constants=constants)
        cont = max(cont, float(np.max(obs.continuity_residual(st, x))))
        a, b = st.support
        norm = adaptive_simpson(lambda t: obs.probability_density(st, t), a, b)
        norm_gap = max(norm_gap, abs(norm - 1.0))
        jx, jy = obs.current_density(st, x)
        u, v = st.components(x)
        psi = np.stack([u, 1j * v])
        direct_x = constants.v0 * np.einsum("in,ij,jn->n", psi.conj(), sx, psi).real
        direct_y = constants.v0 * np.einsum("in,ij,jn->n", psi.conj(), sy, psi).real
        recon = max(recon, float(np.max(np.abs(jx - direct_x))), float(np.max(np.abs(jy - direct_y))))
        if profile.theta == 0.0 and np.max(np.abs(jy)) > 0:
            jx_ratio = max(jx_ratio, float(np.max(np.abs(jx)) / np.max(np.abs(jy))))
    checks = [
        Check("continuity_residual", cont, 1e-6),
        Check("density_normalisation", norm_gap, 1e-8),
        Check("current_reconstruction", recon, 1e-14),
    ]
    if profile.theta == 0.0:
        checks.append(Check("real_case_null_jx", jx_ratio, 1e-10))
    chis = obs.chi_points(sp, grid)
    if chis:
        checks.append(Check("chi_identity", max(obs.chi_identity_gap(sp, c) for c in chis), 1e-10))
        rho0 = obs.probability_density(spinor_state(profile, k, 0, constants=constants), x)
        peak = x[int(np.argmax(rho0))]
        gap = min(abs(peak - c) for c in chis) / grid.h
        checks.append(Check("ground_peak_at_chi_in_spacings", gap, 2.0))
    herm, anti, _ = obs.hermiticity_defects(profile, k, grid.with_points(401), constants)
    checks.append(Check("hermitian_part", herm, 1e-12))
    checks.append(Check("antihermitian_part", anti, 1e-12))
    return checks


def run_suite(profile, k, n_max=3, constants=NATURAL, n_points=1201):
    """All checks for one (profile, k)."""
    return (spectrum_checks(profile, k, n_max, constants)
            + susy_checks(profile, k, n_max, constants)
            + oracle_checks(profile, k, n_max, constants, n_points)
            + observable_checks(profile, k, n_max, constants))
