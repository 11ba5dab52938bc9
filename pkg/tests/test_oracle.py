"""Tests for the brute-force verification tools."""

import numpy as np
import pytest

from epca.errors import FocalPointError, InputError
from epca.oracle import (
    GridSpec,
    build_grid,
    circle_grid,
    cp1_shape_grid,
    fibonacci_sphere_grid,
    finite_diff_dP,
    frechet_grid_argmin,
    frechet_value,
)
from epca.shapes import (
    ProjectiveBackend,
    realify_hermitian,
    shape_chord_distance,
    vw_mean,
)
from epca.sphere import SphereBackend, sphere_extrinsic_mean, sphere_projection_differential
from helpers import concentrated_sphere_sample, triangle_sample


# --- grids ---------------------------------------------------------------------


def test_fibonacci_grid_points_are_unit():
    grid = fibonacci_sphere_grid(5000)
    assert grid.shape == (5000, 3)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, rtol=0, atol=1e-9)


def test_circle_grid_points_are_unit():
    grid = circle_grid(64)
    assert grid.shape == (64, 2)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, rtol=0, atol=1e-12)


def test_cp1_grid_points_are_preshapes():
    grid = cp1_shape_grid(20, 40)
    assert grid.shape == (800, 3)
    np.testing.assert_allclose(np.abs(grid.sum(axis=1)), 0.0, atol=1e-10)
    np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, rtol=0, atol=1e-10)


def test_build_grid_dispatch_and_validation():
    assert build_grid(GridSpec("sphere2", (100,))).shape == (100, 3)
    assert build_grid(GridSpec("circle", (10,))).shape == (10, 2)
    assert build_grid(GridSpec("cp1", (5, 6))).shape == (30, 3)
    with pytest.raises(InputError):
        build_grid(GridSpec("sphere2", (5, 6)))
    with pytest.raises(InputError):
        build_grid(GridSpec("klein", (10,)))
    with pytest.raises(InputError):
        fibonacci_sphere_grid(0)


# --- frechet_value ----------------------------------------------------------------


def test_frechet_zero_at_the_only_sample_point():
    p = np.array([0.0, 0.0, 1.0])
    assert frechet_value(p, p[None, :], SphereBackend(2)) == 0.0


def test_frechet_at_antipode_is_squared_diameter():
    p = np.array([0.0, 0.0, 1.0])
    assert frechet_value(-p, p[None, :], SphereBackend(2)) == 4.0


def test_extrinsic_mean_beats_random_points():
    backend = SphereBackend(2)
    sample = concentrated_sphere_sample(1, n=30)
    mean = sphere_extrinsic_mean(sample)
    at_mean = frechet_value(mean, sample, backend)
    rng = np.random.default_rng(99)
    candidates = rng.normal(size=(1000, 3))
    candidates /= np.linalg.norm(candidates, axis=1, keepdims=True)
    values = [frechet_value(c, sample, backend) for c in candidates]
    assert at_mean <= min(values)


# --- frechet_grid_argmin -------------------------------------------------------------


def test_grid_argmin_two_axes():
    backend = SphereBackend(2)
    sample = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    grid = fibonacci_sphere_grid(200_000)
    argmin = frechet_grid_argmin(sample, backend, grid)
    s = 1.0 / np.sqrt(2.0)
    closed = np.array([s, s, 0.0])
    assert np.linalg.norm(argmin - closed) <= 1e-2
    # the closed form is the true minimizer, so the grid can only do worse
    assert frechet_value(argmin, sample, backend) + 1e-12 >= frechet_value(
        closed, sample, backend
    )


def test_grid_argmin_single_point_sample():
    backend = SphereBackend(2)
    grid = fibonacci_sphere_grid(20_000)
    p = grid[1234]
    argmin = frechet_grid_argmin(p[None, :], backend, grid)
    assert np.array_equal(argmin, p)


def test_grid_argmin_matches_vw_mean_on_shapes():
    sample = triangle_sample()
    backend = ProjectiveBackend(3)
    grid = cp1_shape_grid(1000, 1000)
    argmin = frechet_grid_argmin(sample, backend, grid)
    mean = vw_mean(sample)
    assert shape_chord_distance(argmin, mean) <= 1e-2
    assert frechet_value(mean, sample, backend) <= (
        frechet_value(argmin, sample, backend) + 1e-12
    )


def test_grid_argmin_rejects_empty_grid():
    with pytest.raises(InputError):
        frechet_grid_argmin(
            np.array([[1.0, 0.0, 0.0]]), SphereBackend(2), np.zeros((0, 3))
        )


# --- finite_diff_dP ------------------------------------------------------------------


def test_fd_differential_at_unit_axis():
    e3 = np.array([0.0, 0.0, 1.0])
    fd = finite_diff_dP(SphereBackend(2), e3)
    np.testing.assert_allclose(fd, np.eye(3) - np.outer(e3, e3), rtol=0, atol=1e-6)


def test_fd_differential_scales_with_radius():
    mu = np.array([0.0, 0.0, 2.0])
    fd = finite_diff_dP(SphereBackend(2), mu)
    expected = (np.eye(3) - np.outer([0, 0, 1.0], [0, 0, 1.0])) / 2.0
    np.testing.assert_allclose(fd, expected, rtol=0, atol=1e-6)


def test_fd_differential_spectral_scaling_on_projective_backend():
    # at a diagonal ambient point the differential acts on the mixed basis
    # matrices by the inverse gap to the top eigenvalue
    eta = np.array([0.1, 0.45, 1.0])
    backend = ProjectiveBackend(3)
    mu = realify_hermitian(np.diag(eta).astype(complex))
    fd = finite_diff_dP(backend, mu)
    for a in range(2):
        f = np.zeros((3, 3), dtype=complex)
        f[a, 2] = 1.0 / np.sqrt(2.0)
        f[2, a] = 1.0 / np.sqrt(2.0)
        fv = realify_hermitian(f)
        expected = fv / (eta[2] - eta[a])
        assert np.max(np.abs(fd @ fv - expected)) <= 1e-5


def test_fd_step_size_bounds():
    backend = SphereBackend(2)
    mu = np.array([0.0, 0.0, 1.0])
    with pytest.raises(InputError):
        finite_diff_dP(backend, mu, h=1e-8)
    with pytest.raises(InputError):
        finite_diff_dP(backend, mu, h=1e-2)
    with pytest.raises(InputError):
        finite_diff_dP(backend, np.zeros(4))


def test_fd_focal_stencil_point():
    # the minus stencil at (h, 0, 0) lands on the focal center
    with pytest.raises(FocalPointError):
        finite_diff_dP(SphereBackend(2), np.array([1e-5, 0.0, 0.0]), h=1e-5)


def test_fd_converges_at_second_order():
    mu = np.array([0.3, -0.5, 0.8])
    closed = sphere_projection_differential(mu)
    backend = SphereBackend(2)
    errors = [
        np.max(np.abs(finite_diff_dP(backend, mu, h=h) - closed))
        for h in (1e-3, 1e-4, 1e-5)
    ]
    slopes = [np.log10(errors[i] / errors[i + 1]) for i in range(2)]
    assert all(s >= 1.8 for s in slopes)
