"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""
import cmath
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from graphene_cfield import cli
from graphene_cfield import observables as obs
from graphene_cfield.oracle import auto_domain, dense_spectrum, discretize, match_spectra
from graphene_cfield.profiles import MagneticProfile, ProfileKind, Superpotential
from graphene_cfield.quadrature import adaptive_simpson
from graphene_cfield.susy import (Branch, admissibility, eigenfunction, eigenvalue_minus, energy, find_k0,
                                  intertwining_residual, ladder_apply, proportionality, spectrum, spinor_state)
from graphene_cfield.verification import bilinear_normalised, random_packets

from .conftest import FIGURES

PI_10 = math.pi / 10
N_ORACLE = 1201


def oracle_levels(profile, k, n_max, branch=Branch.MINUS):
    grid = auto_domain(profile, k, n_max, n_points=N_ORACLE)
    return dense_spectrum(discretize(profile, k, branch, grid), n_max + 1)


def test_criterion_1_constant_spectrum():
    t0 = time.perf_counter()
    for theta in (0.0, PI_10, math.pi / 5):
        p = MagneticProfile("constant", 0.5, theta)
        for n in range(1, 6):
            E = energy(p, 1.0, n)
            assert abs(abs(E) - math.sqrt(n)) < 1e-12
            assert abs(cmath.phase(E) - theta / 2) < 1e-12
        eps = [eigenvalue_minus(p, 1.0, n) for n in range(4)]
        assert match_spectra(eps, oracle_levels(p, 1.0, 3), 1e-2).passed
    assert time.perf_counter() - t0 < 60


def rosen_morse_levels(A, B, alpha, n):
    return (A + n * alpha) ** 2 - A * A + B * B / (A * A) - B * B / (A + n * alpha) ** 2


def test_criterion_2_trig_well():
    t0 = time.perf_counter()
    p = MagneticProfile("trig", 4.0, PI_10, 1.0)
    eps = [eigenvalue_minus(p, -2.0, n) for n in range(4)]
    m = match_spectra(eps, oracle_levels(p, -2.0, 3), 1e-2)
    assert m.passed, m.errors
    real = MagneticProfile("trig", 4.0, 0.0, 1.0)
    for n in range(6):
        assert abs(eigenvalue_minus(real, -2.0, n) - rosen_morse_levels(4.0, 8.0, 1.0, n)) < 1e-12
    assert time.perf_counter() - t0 < 120


def test_criterion_3_exp_field():
    for theta in (0.0, PI_10, -0.7, 1.4):
        p = MagneticProfile("exp", 1.0, theta, 1.0)
        rows = spectrum(p, 6.0, 20)
        assert len(rows) == 6
        assert all(abs(E.imag) < 1e-10 for _, _, E in rows)
        assert rows[2][1] == 20
    p = MagneticProfile("exp", 1.0, PI_10, 1.0)
    m = match_spectra([20.0], oracle_levels(p, 6.0, 3), 1e-2)
    assert m.passed, m.errors
    # envelope: E_n(k) <= v0 k, reached only in the limit k -> n mu
    for k in np.linspace(0.05, 10.0, 50):
        for n, _, E in spectrum(p, k, 20):
            assert E.real <= k + 1e-12
            if n > 0:
                assert k - E.real > 0
    for n in range(1, 6):
        assert n + 1e-9 - energy(p, n + 1e-9, n).real < 1e-4


def test_criterion_4_susy_structure():
    for name, (profile, k) in FIGURES.items():
        sp = Superpotential(profile, k)
        grid = auto_domain(profile, k, 3)
        x = grid.x[1:-1]
        if profile.kind is ProfileKind.TRIG:
            x = x[(x > 0.05) & (x < math.pi - 0.05)]
        worst = max(intertwining_residual(sp, f, x) for f in random_packets(profile, grid, 20, seed=1))
        assert worst < 1e-6, name
        g0 = eigenfunction(profile, k, 0)
        assert np.max(np.abs(ladder_apply(sp, Branch.MINUS, g0).psi(x))) < 1e-10, name
        for n in range(1, 6):
            if not admissibility(profile, k, n):
                break
            lower = eigenfunction(profile, k, n, Branch.MINUS)
            upper = eigenfunction(profile, k, n - 1, Branch.PLUS)
            xs = lower.grid(1201)
            lam, fit = proportionality(ladder_apply(sp, Branch.MINUS, bilinear_normalised(lower)).psi(xs),
                                       bilinear_normalised(upper).psi(xs))
            assert fit < 1e-8, (name, n)
            assert abs(abs(lam) - math.sqrt(abs(lower.eps))) < 1e-8 * math.sqrt(abs(lower.eps)), (name, n)


def test_criterion_5_observables():
    for profile, k in FIGURES.values():
        for n in range(4):
            s = spinor_state(profile, k, n)
            x = np.linspace(*s.support, 2001)
            assert np.max(obs.continuity_residual(s, x)) < 1e-6
            a, b = s.support
            assert abs(adaptive_simpson(lambda t: obs.probability_density(s, t), a, b) - 1) < 1e-8
            jx, jy = obs.current_density(s, x)
            if n == 0:
                assert not np.any(jx) and not np.any(jy)
        real = MagneticProfile(profile.kind, profile.B_modulus, 0.0, profile.mu)
        for n in range(4):
            s = spinor_state(real, k, n)
            jx, _ = obs.current_density(s, np.linspace(*s.support, 2001))
            assert np.max(np.abs(jx)) < 1e-10


def test_criterion_6_chi_point():
    for profile, k in FIGURES.values():
        sp = Superpotential(profile, k)
        grid = auto_domain(profile, k, 3)
        chis = obs.chi_points(sp, grid)
        assert chis
        rho = obs.probability_density(spinor_state(profile, k, 0), grid.x)
        peak = grid.x[int(np.argmax(rho))]
        assert min(abs(peak - c) for c in chis) < 2 * grid.h
        assert max(obs.chi_identity_gap(sp, c) for c in chis) < 1e-10


def test_criterion_7_hermitian_split():
    for profile, k in FIGURES.values():
        for theta in (profile.theta, 0.0):
            p = MagneticProfile(profile.kind, profile.B_modulus, theta, profile.mu)
            herm, anti, size = obs.hermiticity_defects(p, k, auto_domain(p, k, 3, n_points=401))
            assert herm < 1e-12 and anti < 1e-12
            if theta == 0.0:
                assert size == 0.0


def sweep(preset):
    rows = cli.sweep_rows(cli.config_from_args(cli.build_parser().parse_args(["sweep", "--preset", preset]))
                          .profile(), cli.RunConfig(**cli.PRESETS[preset]).k_values(), cli.PRESETS[preset]["n_max"])
    return np.array(rows, dtype=float)


def test_criterion_8_figure_sweeps():
    const = sweep("fig2b")
    for n in range(1, 5):
        level = const[const[:, 1] == n]
        assert len(level) == 101
        assert np.var(level[:, 4]) < 1e-12 and np.var(level[:, 5]) < 1e-12

    trig = sweep("fig5b")
    res = find_k0(MagneticProfile("trig", 4.0, PI_10, 1.0))
    assert res.residual < 1e-10
    first = trig[trig[:, 1] == 1]
    ks, im = first[:, 0], first[:, 5]
    flips = ks[:-1][np.sign(im[1:]) != np.sign(im[:-1])]
    step = ks[1] - ks[0]
    assert len(flips) == 2
    for f, target in zip(sorted(flips), (-res.k0, res.k0)):
        assert f <= target <= f + step

    exp = sweep("fig8b")
    step = 10.0 / 200
    for n in range(1, 10):
        ks = exp[exp[:, 1] == n][:, 0]
        assert 0 < ks.min() - n <= step + 1e-12


COMMANDS = [
    ["spectrum", "--preset", "fig6"],
    ["states", "--preset", "fig3", "--n-points", "301"],
    ["observables", "--preset", "fig9", "--n-points", "301"],
    ["sweep", "--preset", "fig5b"],
    ["k0", "--preset", "fig6"],
]


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_criterion_9_determinism(tmp_path, fmt):
    # the output path is part of the echoed config, so every run writes to the same file
    path = tmp_path / f"out.{fmt}"
    for args in COMMANDS:
        args = args + ["--format", fmt, "-o", str(path)]
        outs = []
        for _ in range(2):
            assert cli.main(args) == 0
            outs.append(path.read_bytes())
        subprocess.run([sys.executable, "-m", "graphene_cfield", *args], check=True)
        outs.append(path.read_bytes())
        assert outs[0] == outs[1] == outs[2]
