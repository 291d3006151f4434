"""Deformed product on grids: oracle agreement, algebraic identities, limits."""

import numpy as np
import pytest

from moyalorbit.geometry import SkewForm, q_form
from moyalorbit.grids import GridFunction, GridSpec
from moyalorbit.oracle import (
    GaussianFactor,
    SeparableGaussian,
    oracle_defect,
    random_gaussian,
    star_oracle_point,
)
from moyalorbit.star import (
    commutator_constant,
    inner_product_B,
    interior_mask,
    involution,
    poisson_bracket,
    relative_l2,
    semiclassical_defects,
    semiclassical_sweep,
    star_commutator,
    star_product,
    weyl_action,
)

PLANE = SkewForm(np.array([[0.0, 1.0], [-1.0, 0.0]]))

F_GAUSS = SeparableGaussian((GaussianFactor(0.2, 1.3, 0.0), GaussianFactor(-0.1, 1.2, 0.1)))
G_GAUSS = SeparableGaussian((GaussianFactor(-0.3, 1.4, 0.05), GaussianFactor(0.1, 1.5, 0.0)))

# Frozen reference for (F_GAUSS x G_GAUSS)(0.5, -0.25) at theta = 1 on the
# plane form, computed by adaptive quadrature of the reduced single integral
# (two independent 1-D quad calls, tolerance 1e-11).
ORACLE_POINT = 0.22048589984378358 + 0.009262104399166908j


def spec64(theta=1.0):
    return GridSpec(dim=2, n=64, length=8.0, theta=theta)


def test_frozen_oracle_point_quadrature():
    val = star_oracle_point(F_GAUSS, G_GAUSS, PLANE, 1.0, (0.5, -0.25))
    assert abs(val - ORACLE_POINT) < 1e-10


def test_fft_product_matches_frozen_point():
    spec = spec64()
    result = star_product(F_GAUSS.sample(spec), G_GAUSS.sample(spec), PLANE)
    axis = spec.axis()
    i = int(np.argmin(np.abs(axis - 0.5)))
    j = int(np.argmin(np.abs(axis + 0.25)))
    assert abs(result.values[i, j] - ORACLE_POINT) < 1e-9


def test_fft_product_matches_oracle_subgrid():
    rng = np.random.default_rng(12)
    spec = spec64()
    for _ in range(3):
        f = random_gaussian(rng, 2)
        g = random_gaussian(rng, 2)
        result = star_product(f.sample(spec), g.sample(spec), PLANE)
        assert oracle_defect(result, f, g, PLANE) < 1e-6


def test_zero_form_reduces_to_pointwise_product():
    spec = spec64()
    f = F_GAUSS.sample(spec)
    g = G_GAUSS.sample(spec)
    result = star_product(f, g, SkewForm.zero(2))
    assert relative_l2(result, f * g) < 1e-10


def test_involution_is_antihomomorphism():
    spec = spec64()
    f = F_GAUSS.sample(spec)
    g = G_GAUSS.sample(spec)
    lhs = involution(star_product(f, g, PLANE))
    rhs = star_product(involution(g), involution(f), PLANE)
    assert relative_l2(lhs, rhs) < 1e-11


def test_associativity():
    spec = spec64()
    rng = np.random.default_rng(5)
    f = random_gaussian(rng, 2).sample(spec)
    g = random_gaussian(rng, 2).sample(spec)
    h = random_gaussian(rng, 2).sample(spec)
    lhs = star_product(star_product(f, g, PLANE), h, PLANE)
    rhs = star_product(f, star_product(g, h, PLANE), PLANE)
    assert relative_l2(lhs, rhs) < 1e-6


def test_weyl_action_composition_phase():
    # W_a W_b = e(theta Q_ab) W_{a+b} on grid functions
    spec = spec64()
    g = G_GAUSS.sample(spec)
    alpha = np.array([0.5, 0.25])
    beta = np.array([-0.25, 0.75])
    lhs = weyl_action(alpha, weyl_action(beta, g, PLANE), PLANE)
    phase = np.exp(2j * np.pi * spec.theta * q_form(PLANE, alpha, beta))
    rhs = phase * weyl_action(alpha + beta, g, PLANE)
    assert relative_l2(lhs, rhs) < 1e-11


def test_inner_product_gaussian_closed_form():
    # <f, f>_B = int |f|^2; each factor integrates to w / sqrt(2)
    spec = spec64()
    f = SeparableGaussian((GaussianFactor(0.0, 1.2), GaussianFactor(0.3, 1.4))).sample(spec)
    expected = (1.2 / np.sqrt(2.0)) * (1.4 / np.sqrt(2.0))
    val = inner_product_B(f, f)
    assert abs(val - expected) < 1e-9
    assert abs(val.imag) < 1e-12


def test_poisson_bracket_of_gaussians():
    # {f, g} = sigma_jk d_j f d_k g; for the plane form fx gy - fy gx
    spec = spec64()
    x = spec.mesh()
    f = GridFunction(spec, np.exp(-np.pi * (x[0] ** 2 + x[1] ** 2)))
    g = GridFunction(spec, np.exp(-np.pi * ((x[0] - 0.3) ** 2 + x[1] ** 2)))
    pb = poisson_bracket(f, g, PLANE)
    fx = -2 * np.pi * x[0] * f.values
    fy = -2 * np.pi * x[1] * f.values
    gx = -2 * np.pi * (x[0] - 0.3) * g.values
    gy = -2 * np.pi * x[1] * g.values
    expected = fx * gy - fy * gx
    assert np.max(np.abs(pb.values - expected)) < 1e-8


def test_commutator_constant_on_plateau_window():
    from scipy.special import erf

    theta, a, tau = 0.5, 2.8, 0.5
    spec = GridSpec(dim=2, n=64, length=8.0, theta=theta)
    x = spec.mesh()

    def plateau(t):
        return 0.5 * (erf(np.sqrt(np.pi) * (t + a) / tau) - erf(np.sqrt(np.pi) * (t - a) / tau))

    w = plateau(x[0]) * plateau(x[1])
    al = np.array([0.7, 0.2])
    be = np.array([-0.3, 0.6])
    f = GridFunction(spec, (al[0] * x[0] + al[1] * x[1]) * w)
    g = GridFunction(spec, (be[0] * x[0] + be[1] * x[1]) * w)
    comm = star_commutator(f, g, PLANE)
    ref = commutator_constant(theta, PLANE, al, be) * w**2
    mask = interior_mask(spec, 1.0)
    defect = np.linalg.norm(comm.values[mask] - ref[mask]) / np.linalg.norm(ref[mask])
    assert defect < 1e-3


def test_star_compatibility_with_inner_product():
    # <f x g, h> = <g, f* x h> for the B-pairing
    spec = spec64()
    rng = np.random.default_rng(8)
    f = random_gaussian(rng, 2).sample(spec)
    g = random_gaussian(rng, 2).sample(spec)
    h = random_gaussian(rng, 2).sample(spec)
    lhs = inner_product_B(star_product(f, g, PLANE), h)
    rhs = inner_product_B(g, star_product(involution(f), h, PLANE))
    assert abs(lhs - rhs) < 1e-8


def test_semiclassical_defects_shrink():
    spec = spec64()
    f = F_GAUSS.sample(spec)
    g = G_GAUSS.sample(spec)
    d1a, d2a = semiclassical_defects(f, g, PLANE, 0.5)
    d1b, d2b = semiclassical_defects(f, g, PLANE, 0.25)
    assert d1b < d1a
    assert d2b < d2a


def test_sweep_rejects_bad_theta_lists():
    spec = spec64()
    f = F_GAUSS.sample(spec)
    g = G_GAUSS.sample(spec)
    with pytest.raises(ValueError):
        semiclassical_sweep(f, g, PLANE, [0.5, 1.0])
    with pytest.raises(ValueError):
        semiclassical_sweep(f, g, PLANE, [1.0, -0.5])


def test_interior_mask_and_relative_l2():
    spec = GridSpec(dim=2, n=16, length=8.0)
    mask = interior_mask(spec, 1.0)
    x = spec.mesh()
    assert np.all(np.max(np.abs(x), axis=0)[mask] <= 1.0)
    f = GridFunction(spec, np.ones((16, 16), dtype=complex))
    assert relative_l2(f, f) == 0.0
