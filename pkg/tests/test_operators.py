import numpy as np
import pytest

from hyperburg.operators import d1_central, d2_central, flux_divergence, pde_rhs


def test_d1_exact_on_quadratic():
    x = np.linspace(0.0, 1.0, 11)
    out = d1_central(x * x, 0.1)
    assert out[0] == 0.0 and out[-1] == 0.0
    assert out[1:-1] == pytest.approx(2.0 * x[1:-1], rel=1e-12)


def test_d2_exact_on_quadratic():
    x = np.linspace(0.0, 1.0, 11)
    out = d2_central(3.0 * x * x, 0.1)
    assert out[0] == 0.0 and out[-1] == 0.0
    assert out[1:-1] == pytest.approx(6.0, rel=1e-10)


def test_flux_divergence_matches_v_vx_for_smooth_field():
    x = np.linspace(-1.0, 1.0, 2001)
    dx = x[1] - x[0]
    v = np.sin(x)
    expected = v * np.cos(x)  # v * v_x
    got = flux_divergence(v, dx)
    assert got[1:-1] == pytest.approx(expected[1:-1], abs=5e-7)


def test_pde_rhs_zero_state():
    v = np.zeros(64)
    w = np.zeros(64)
    dv, dw = pde_rhs(v, w, 0.1, 1.0, 1.0)
    assert np.all(dv == 0.0) and np.all(dw == 0.0)


def test_pde_rhs_three_point_impulse():
    # v nonzero at one interior node: dw there is (nu * (-2 v) / dx^2) / mu,
    # and the flux difference vanishes because both neighbours are zero.
    n = 9
    v = np.zeros(n)
    v[4] = 1.0
    w = np.zeros(n)
    dv, dw = pde_rhs(v, w, 1.0, 1.0, 1.0)
    assert dw[4] == -2.0
    # neighbours see the diffusion flank and the flux of v^2/2
    assert dw[3] == pytest.approx(1.0 - 0.25)
    assert dw[5] == pytest.approx(1.0 + 0.25)


def test_pde_rhs_linear_telegraph_limit():
    # At sup ~ 1e-8 the advection term is ~1e-16-relative: dw agrees with
    # the linear operator (nu v_xx - w)/mu to 1e-6 relative.
    rng = np.random.default_rng(7)
    n = 257
    dx = 0.01
    v = 1e-8 * rng.standard_normal(n)
    w = 1e-8 * rng.standard_normal(n)
    v[0] = v[-1] = w[0] = w[-1] = 0.0
    mu, nu = 2.0, 3.0
    _, dw = pde_rhs(v, w, dx, mu, nu)
    linear = (nu * d2_central(v, dx) - w) / mu
    linear[0] = linear[-1] = 0.0
    scale = np.max(np.abs(linear))
    assert np.max(np.abs(dw - linear)) <= 1e-6 * scale


def test_boundary_always_pinned():
    rng = np.random.default_rng(3)
    v = rng.standard_normal(32)
    w = rng.standard_normal(32)
    dv, dw = pde_rhs(v, w, 0.5, 1.0, 1.0)
    assert dv[0] == dv[-1] == 0.0
    assert dw[0] == dw[-1] == 0.0
