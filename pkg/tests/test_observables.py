import math

import numpy as np
import pytest

from graphene_cfield import observables as obs
from graphene_cfield.oracle import Grid, auto_domain
from graphene_cfield.profiles import MagneticProfile, Superpotential, vector_potential
from graphene_cfield.quadrature import adaptive_simpson
from graphene_cfield.susy import spinor_state


def test_current_is_spinor_bilinear(figure):
    profile, k = figure
    s = spinor_state(profile, k, 2)
    x = np.linspace(*s.support, 301)
    u, v = s.components(x)
    psi = np.stack([u, 1j * v])
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    jx, jy = obs.current_density(s, x)
    np.testing.assert_allclose(jx, np.einsum("in,ij,jn->n", psi.conj(), sx, psi).real, atol=1e-15)
    np.testing.assert_allclose(jy, np.einsum("in,ij,jn->n", psi.conj(), sy, psi).real, atol=1e-15)


def test_continuity_holds(figure):
    profile, k = figure
    for n in range(4):
        s = spinor_state(profile, k, n)
        x = np.linspace(*s.support, 801)
        assert np.max(obs.continuity_residual(s, x)) < 1e-10


def test_source_sign_matters():
    profile, k = MagneticProfile("constant", 0.5, 0.6), 1.0
    s = spinor_state(profile, k, 2)
    x = np.linspace(*s.support, 401)
    c = s.constants
    rho = obs.probability_density(s, x)
    _, sy = obs.sigma_expectations(s, x)
    src = 2 * c.e_over_c * c.v0 / c.hbar * np.imag(vector_potential(profile, x)) * sy
    flipped = obs.current_divergence(s, x) + 2 * s.E.imag / c.hbar * rho + src
    assert np.max(np.abs(flipped)) > 1e-3


def test_density_normalised(figure):
    profile, k = figure
    for n in range(4):
        s = spinor_state(profile, k, n)
        a, b = s.support
        assert adaptive_simpson(lambda t: obs.probability_density(s, t), a, b) == pytest.approx(1, abs=1e-8)


def test_ground_state_carries_no_current(figure):
    profile, k = figure
    s = spinor_state(profile, k, 0)
    x = np.linspace(*s.support, 301)
    jx, jy = obs.current_density(s, x)
    assert np.max(np.abs(jx)) == 0 and np.max(np.abs(jy)) == 0


@pytest.mark.parametrize("profile,k", [(MagneticProfile("constant", 0.5, 0.0), 1.0),
                                       (MagneticProfile("trig", 4.0, 0.0, 1.0), -2.0),
                                       (MagneticProfile("exp", 1.0, 0.0, 1.0), 6.0)])
def test_real_fields_have_no_transverse_current(profile, k):
    for n in range(1, 4):
        s = spinor_state(profile, k, n)
        x = np.linspace(*s.support, 401)
        jx, jy = obs.current_density(s, x)
        assert np.max(np.abs(jx)) < 1e-10 * np.max(np.abs(jy))


def test_chi_points(figure):
    profile, k = figure
    sp = Superpotential(profile, k)
    grid = auto_domain(profile, k, 3)
    chis = obs.chi_points(sp, grid)
    assert len(chis) == 1
    assert abs(np.real(sp(chis[0]))) < 1e-10
    assert obs.chi_identity_gap(sp, chis[0]) < 1e-10


def test_chi_points_without_root():
    sp = Superpotential(MagneticProfile("exp", 1.0, 0.2, 1.0), 6.0)
    assert obs.chi_points(sp, Grid(5.0, 10.0)) == []


def test_ground_peak_sits_at_chi(figure):
    profile, k = figure
    grid = auto_domain(profile, k, 3)
    chi = obs.chi_points(Superpotential(profile, k), grid)[0]
    field = obs.observable_field(spinor_state(profile, k, 0), grid)
    assert abs(grid.x[np.argmax(field.rho)] - chi) < 2 * grid.h


@pytest.mark.parametrize("theta", [0.0, 0.4, -1.1])
def test_hermitian_split(theta):
    p = MagneticProfile("trig", 4.0, theta, 1.0)
    herm, anti, size = obs.hermiticity_defects(p, -2.0, auto_domain(p, -2.0, 1, n_points=150))
    assert herm < 1e-12 and anti < 1e-12
    assert (size == 0.0) == (theta == 0.0)


def test_pseudo_spin_split_and_decay():
    p = MagneticProfile("exp", 1.0, 0.5)
    x = np.linspace(0, 2, 5)
    re, im = obs.pseudo_spin_split(p, x)
    np.testing.assert_allclose(re + 1j * im, vector_potential(p, x))
    assert obs.total_probability_factor(1 - 0.5j, 2.0) == pytest.approx(math.exp(-2.0))
