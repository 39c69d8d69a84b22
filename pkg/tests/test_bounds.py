import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rootloc.bounds import (
    ContourBounds,
    annulus_split_bound,
    circle_lipschitz,
    global_bounds,
    grid_detection,
    index_sample_count,
    logderiv_circle_bounds,
    logderiv_radial_bounds,
    modulus_threshold,
    poly_circle_bounds,
    poly_ray_bounds,
    tube_radius,
)
from rootloc.geometry import Circle, Ray
from rootloc.oracle import reference_roots
from rootloc.poly import Polynomial, derivative, evaluate

from conftest import poly, random_poly


def test_global_bounds_quadratic():
    b = global_bounds(poly(1, 0, -1))
    assert b.R0 == 2 and b.rho0 == 0.5
    assert b.eps0 == pytest.approx(math.sqrt(3) / (2 * math.sqrt(2)))
    assert b.eps0 <= 2
    assert b.disc_mag == 4 and b.res_mag == 4
    # P' = 2z has its only root at 0, so the inner radius is governed by rho0
    assert b.rho1 is None and b.inner_radius == pytest.approx(0.25)


def test_global_bounds_linear_has_infinite_separation_bound():
    b = global_bounds(poly(1, -0.5))
    assert b.R0 == 1.5 and math.isinf(b.eps0)


def test_global_bounds_requires_stripped_zero_roots():
    with pytest.raises(ValueError, match="strip zero roots first"):
        global_bounds(poly(1, 0))


def test_rho1_rho2_for_derivative():
    # P = z^3 - 3z + 1, P' = 3z^2 - 3: a_{n-1} = -3 != 0
    b = global_bounds(poly(1, 0, -3, 1))
    assert b.rho1 == b.rho2 == pytest.approx(3 / (3 + 3))
    assert b.rho_tilde == pytest.approx(b.rho2 / 2)
    r = np.roots([3, 0, -3])
    assert np.all(np.abs(r) > b.rho2)


def test_logderiv_circle_examples():
    P = poly(1, 0, -1)
    cb = logderiv_circle_bounds(P, 1.0, 1.3, 1, 2.0)
    assert cb.m_low == pytest.approx(0.0125)
    assert cb.M_up == pytest.approx(260)
    assert logderiv_circle_bounds(poly(1, -3), 1.0, 1.3, 2, 4.0).m_low == pytest.approx(1 / 8)
    with pytest.raises(ValueError):
        logderiv_circle_bounds(P, 1.3, 1.3, 1, 2.0)
    with pytest.raises(ValueError):
        logderiv_circle_bounds(P, 1.0, 1.3, 3, 2.0)


def test_logderiv_radial_examples():
    P = poly(1, 0, -1)
    cb = logderiv_radial_bounds(P, 1.0, 2.0, 0.1, 0.0, 0.4, 2.0)
    assert cb.m_low == pytest.approx(0.0125)
    assert cb.M_up == pytest.approx(200)
    wide = logderiv_radial_bounds(P, 1.0, 2.0, 0.1, 0.0, math.pi - 1e-3, 2.0)
    assert wide.M_up == pytest.approx(200)
    with pytest.raises(ValueError):
        logderiv_radial_bounds(P, 1.0, 2.0, 0.1, 0.0, math.pi, 2.0)
    with pytest.raises(ValueError):
        logderiv_radial_bounds(P, 1.0, 2.0, 1.0, 0.0, 0.4, 2.0)


def test_poly_circle_bounds_examples():
    P = poly(1, 0, -1)
    cb = poly_circle_bounds(P, 2.0, 1.0)
    assert cb.m_low == 1 and cb.M_up == 8
    theta = np.linspace(0, 2 * np.pi, 4001)
    assert np.min(np.abs(evaluate(P, 2 * np.exp(1j * theta)))) >= cb.m_low
    with pytest.raises(ValueError):
        poly_circle_bounds(P, 2.0, 0.0)


def test_poly_circle_bounds_for_derivative():
    P = poly(2, -1, 0.5, 3)
    cb = poly_circle_bounds(P, 1.5, 0.2, which="Pprime")
    n = 3
    assert cb.m_low == pytest.approx(n * 2 * 0.2 ** (n - 1))
    a = np.abs(P.array)
    expected = sum((n - k) * (n - k - 1) * a[k] * 1.5 ** (n - k - 1) for k in range(n - 1))
    assert cb.M_up == pytest.approx(expected)


def test_poly_ray_bounds_threshold():
    cb = poly_ray_bounds(poly(1, 0, -1), Ray(0.3, 0.5, 1.5), 0.25)
    assert cb.m_low == pytest.approx(0.0625)


def test_grid_detection_examples():
    P = poly(1, 0, -1)
    N, T = grid_detection(P, Circle(1.5), 0.25)
    assert T == pytest.approx(0.0625)
    x = np.linspace(0, 2 * np.pi, N + 1)
    assert np.min(np.abs(evaluate(P, 1.5 * np.exp(1j * x)))) >= T
    N, T = grid_detection(P, Circle(1.0), 0.25)
    x = np.linspace(0, 2 * np.pi, N + 1)
    assert np.min(np.abs(evaluate(P, np.exp(1j * x)))) < T
    ray = Ray(0.0, 0.5, 1.5)
    N, T = grid_detection(P, ray, 0.25)
    assert np.min(np.abs(evaluate(P, ray.points(np.linspace(0, ray.length, N + 1))))) < T


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_planted_root_on_geometry_is_detected(seed, on_circle):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    rest = rng.uniform(-1, 1, n - 1) + 1j * rng.uniform(-2, 2, n - 1)
    if on_circle:
        geom = Circle(float(rng.uniform(0.2, 2)))
        z0 = geom.points(rng.uniform(0, geom.length))
    else:
        geom = Ray(float(rng.uniform(0, 2 * np.pi)), float(rng.uniform(0, 1)), float(rng.uniform(1.1, 2.5)))
        z0 = geom.points(rng.uniform(0, geom.length))
    G = Polynomial(tuple(np.poly(np.concatenate([[z0], rest]))))
    N, T = grid_detection(G, geom, float(rng.uniform(0.2, 1.0)))
    assume(N <= 2_000_000)
    v = evaluate(G, geom.points(np.linspace(0, geom.length, N + 1)))
    assert np.min(np.abs(v)) < T


def test_index_sample_count_examples():
    assert index_sample_count(2 * math.pi, ContourBounds(0.0125, 260)) == 1045524
    assert index_sample_count(1.0, ContourBounds(1.0, 1.0), clamp=False) == 9
    assert index_sample_count(1.0, ContourBounds(1.0, 1.0)) == 16
    assert index_sample_count(1.0, ContourBounds(1e6, 1.0)) == 16


def test_contour_bounds_validation():
    with pytest.raises(ValueError):
        ContourBounds(0.0, 1.0)
    with pytest.raises(ValueError):
        ContourBounds(1.0, -1.0)


def test_modulus_threshold_is_lower_bound_away_from_roots(rng):
    for _ in range(50):
        P = random_poly(rng, int(rng.integers(1, 7)))
        roots = reference_roots(P).roots
        z = rng.uniform(-3, 3, 200) + 1j * rng.uniform(-3, 3, 200)
        d = np.min(np.abs(z[:, None] - roots[None, :]), axis=1)
        T = np.array([modulus_threshold(P, di) for di in d])
        assert np.all(np.abs(evaluate(P, z)) >= T * (1 - 1e-12))


def test_tube_radius_is_root_free(rng):
    for _ in range(40):
        P = random_poly(rng, int(rng.integers(2, 7)))
        if P.coeffs[-1] == 0:
            continue
        R0 = global_bounds(P).R0
        roots = reference_roots(P).roots
        r = float(rng.uniform(0.1, R0))
        d = np.min(np.abs(np.abs(roots) - r))
        if d < 1e-3:
            continue
        T = modulus_threshold(P, d)
        delta = tube_radius(P, T, R0)
        assert delta <= d
        assert np.all(np.abs(np.abs(roots) - r) >= delta)


def test_circle_lipschitz_dominates_dense_derivative(rng):
    for _ in range(30):
        P = random_poly(rng, int(rng.integers(1, 7)))
        r = float(rng.uniform(0.1, 3))
        theta = np.linspace(0, 2 * np.pi, 20001)
        z = r * np.exp(1j * theta)
        deriv = np.abs(1j * z * evaluate(derivative(P), z))
        assert np.max(deriv) <= circle_lipschitz(P, r) * (1 + 1e-12)


def test_annulus_split_bound_value():
    n, R0, eps = 2, 2.0, 0.1
    expected = math.floor((math.log(math.sqrt(2) * eps) - math.log(R0 * (R0 + 2))) / math.log(3 / 4)) + 1
    assert annulus_split_bound(eps, R0, n) == expected == 15
