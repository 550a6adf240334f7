import math

import numpy as np
import pytest

from graphene_cfield.oracle import (DENSE_LIMIT, Grid, auto_domain, dense_spectrum, discretize,
                                    match_spectra, residual_norm)
from graphene_cfield.profiles import MagneticProfile
from graphene_cfield.susy import Branch, InadmissibleError, eigenfunction


def test_grid_validation():
    g = Grid(-1.0, 1.0, 5)
    assert g.h == 0.5 and list(g.x) == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert g.with_points(3).h == 1.0
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 2)
    with pytest.raises(ValueError):
        Grid(1.0, 1.0)


def test_auto_domain_covers_tails():
    p = MagneticProfile("constant", 0.5, 0.0)
    g = auto_domain(p, 0.0, 1)
    assert g.x_min == pytest.approx(-g.x_max)
    for br in Branch:
        f = eigenfunction(p, 0.0, 1, br)
        ends = np.abs(f.psi(np.array([g.x_min, g.x_max])))
        assert np.all(ends < 1e-9 * np.max(np.abs(f.psi(g.x))))


def test_auto_domain_trig_and_inadmissible():
    g = auto_domain(MagneticProfile("trig", 4.0, 0.3, 2.0), -2.0, 3)
    assert g.x_min > 0 and g.x_max < math.pi / 2
    with pytest.raises(InadmissibleError):
        auto_domain(MagneticProfile("exp", 1.0, 0.3), 2.0, 3)


def test_operator_is_complex_symmetric():
    p = MagneticProfile("trig", 4.0, 0.3, 1.0)
    op = discretize(p, -2.0, Branch.PLUS, auto_domain(p, -2.0, 1, n_points=60))
    m = op.matrix()
    assert np.array_equal(m, m.T)
    assert not np.allclose(m, m.conj().T)
    s = np.random.default_rng(0).normal(size=60) + 0j
    np.testing.assert_allclose(op.apply(s), m @ s, rtol=1e-13)


def test_residual_is_second_order():
    p = MagneticProfile("constant", 0.5, 0.3)
    f = eigenfunction(p, 1.0, 2)
    res = []
    for n in (401, 801):
        g = auto_domain(p, 1.0, 2, n_points=n)
        res.append(residual_norm(discretize(p, 1.0, Branch.MINUS, g), f.psi(g.x), f.eps))
    assert res[0] / res[1] == pytest.approx(4.0, rel=0.05)
    with pytest.raises(ValueError):
        residual_norm(discretize(p, 1.0, Branch.MINUS, g), np.zeros(801), 0.0)


def test_dense_spectrum_real_oscillator():
    # omega = 1: V+ = x^2/4 + 1/2 with levels 1, 2, 3
    p = MagneticProfile("constant", 0.5, 0.0)
    op = discretize(p, 0.0, Branch.PLUS, Grid(-8.0, 8.0, 801))
    vals = dense_spectrum(op, 3)
    m = match_spectra([1, 2, 3], vals, 1e-3)
    assert m.passed, m.errors


def test_dense_limit():
    with pytest.raises(ValueError):
        dense_spectrum(np.eye(DENSE_LIMIT + 1), 1)


def test_match_spectra_bookkeeping():
    m = match_spectra([0.0, 2.0, 1.0], [2.01, 0.001], 0.02)
    assert [round(e, 6) for e in m.errors] == [0.001, 0.005]
    assert m.unmatched == [1.0]
    m = match_spectra([1.0], [1.5, 1.01], 0.001)
    assert m.failures == [0] and m.unmatched == [1.5]
    with pytest.raises(ValueError):
        match_spectra([], [1.0], 0.1)


def test_complex_oracle_agrees_with_closed_form():
    p = MagneticProfile("exp", 1.0, math.pi / 10, 1.0)
    grid = auto_domain(p, 6.0, 2, n_points=801)
    vals = dense_spectrum(discretize(p, 6.0, Branch.MINUS, grid), 3)
    assert match_spectra([0, 11, 20], vals, 1e-2).passed
