"""Independent verification tools.

Everything here validates the closed forms by brute force: the empirical
chord-distance objective is evaluated literally over deterministic grids,
and projection differentials are rebuilt by central finite differences.
Tests and the `verify` CLI subcommand compare these against the library's
analytic paths; the oracle itself is not meant for production use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import InputError
from .geometry import EmbeddingBackend, as_symmetric
from .shapes import centered_basis

if TYPE_CHECKING:
    from numpy.typing import NDArray

_CHUNK = 20_000


def fibonacci_sphere_grid(count: int) -> "NDArray":
    """Deterministic near-uniform lattice of `count` points on S^2.

    Point i has height z = 1 - (2i+1)/count and azimuth 2 pi i / golden
    ratio; nearest-neighbor chord spacing is about sqrt(8/count).
    """
    if count < 1:
        raise InputError(f"grid count must be >= 1, got {count}")
    i = np.arange(count, dtype=np.float64)
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    z = 1.0 - (2.0 * i + 1.0) / count
    theta = 2.0 * np.pi * i / golden
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def circle_grid(count: int) -> "NDArray":
    """Uniform angle grid on S^1."""
    if count < 1:
        raise InputError(f"grid count must be >= 1, got {count}")
    angles = 2.0 * np.pi * np.arange(count, dtype=np.float64) / count
    return np.column_stack([np.cos(angles), np.sin(angles)])


def cp1_shape_grid(n_polar: int, n_azimuth: int) -> "NDArray":
    """Uniform angle grid over the shape space of 3-point preshapes.

    That space is the projective line of the 2-D centered subspace;
    parameterize representatives as (cos(t/2), exp(i p) sin(t/2)) in an
    orthonormal centered basis, with t on a half-open polar grid (offset
    half a step to avoid the degenerate poles) and p uniform.  Returns
    (n_polar * n_azimuth, 3) complex preshape rows.
    """
    if n_polar < 1 or n_azimuth < 1:
        raise InputError("grid counts must be >= 1")
    basis = centered_basis(3)
    t = (np.arange(n_polar, dtype=np.float64) + 0.5) * (np.pi / n_polar)
    p = 2.0 * np.pi * np.arange(n_azimuth, dtype=np.float64) / n_azimuth
    tt, pp = np.meshgrid(t, p, indexing="ij")
    w = np.empty((n_polar * n_azimuth, 2), dtype=np.complex128)
    w[:, 0] = np.cos(tt / 2.0).ravel()
    w[:, 1] = (np.exp(1j * pp) * np.sin(tt / 2.0)).ravel()
    return w @ basis.T.astype(np.complex128)


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Deterministic verification grid.

    Attributes:
        manifold: one of "sphere2", "circle", "cp1".
        counts: resolution parameters; (count,) for sphere2 and circle,
            (n_polar, n_azimuth) for cp1.
    """

    manifold: str
    counts: tuple[int, ...]


def build_grid(spec: GridSpec) -> "NDArray":
    """Materialize the grid points for a GridSpec."""
    if spec.manifold == "sphere2":
        if len(spec.counts) != 1:
            raise InputError("sphere2 grid takes a single count")
        return fibonacci_sphere_grid(spec.counts[0])
    if spec.manifold == "circle":
        if len(spec.counts) != 1:
            raise InputError("circle grid takes a single count")
        return circle_grid(spec.counts[0])
    if spec.manifold == "cp1":
        if len(spec.counts) != 2:
            raise InputError("cp1 grid takes (n_polar, n_azimuth) counts")
        return cp1_shape_grid(*spec.counts)
    raise InputError(f"unknown grid manifold {spec.manifold!r}")


def _embed_rows(backend: EmbeddingBackend, points: "NDArray") -> "NDArray":
    # Vectorized embedding of point rows for the two concrete backends;
    # anything else falls back to a per-point loop.
    if backend.name == "sphere":
        return np.asarray(points, dtype=np.float64)
    if np.iscomplexobj(points):
        z = np.asarray(points, dtype=np.complex128)
        k = z.shape[1]
        prod = z[:, :, None] * z.conj()[:, None, :]
        iu, ju = np.triu_indices(k, 1)
        out = np.empty((z.shape[0], k * k), dtype=np.float64)
        out[:, :k] = prod[:, np.arange(k), np.arange(k)].real
        out[:, k : k + iu.size] = np.sqrt(2.0) * prod[:, iu, ju].real
        out[:, k + iu.size :] = np.sqrt(2.0) * prod[:, iu, ju].imag
        return out
    return np.array([backend.embed(p) for p in points])


def frechet_value(point, sample: "NDArray", backend: EmbeddingBackend) -> float:
    """Literal empirical objective: mean squared ambient distance from the
    embedded point to the embedded sample."""
    y0 = backend.embed(point)
    total = 0.0
    for row in sample:
        diff = y0 - backend.embed(row)
        total += float(diff @ diff)
    return total / len(sample)


def frechet_grid_argmin(
    sample: "NDArray", backend: EmbeddingBackend, grid: "NDArray"
):
    """Grid point minimizing the literal empirical objective.

    Evaluates every grid point in chunks; ties keep the lowest grid
    index.  Returns the winning grid point (backend point representation).
    """
    grid = np.asarray(grid)
    if grid.shape[0] < 1:
        raise InputError("grid is empty")
    embedded_sample = _embed_rows(backend, np.asarray(sample))
    n = embedded_sample.shape[0]
    best_val = np.inf
    best_idx = -1
    for start in range(0, grid.shape[0], _CHUNK):
        chunk = grid[start : start + _CHUNK]
        emb = _embed_rows(backend, chunk)
        acc = np.zeros(emb.shape[0])
        for i in range(n):
            diff = emb - embedded_sample[i]
            acc += np.einsum("ij,ij->i", diff, diff)
        acc /= n
        j = int(np.argmin(acc))
        if acc[j] < best_val:
            best_val = float(acc[j])
            best_idx = start + j
    return grid[best_idx]


def finite_diff_dP(
    backend: EmbeddingBackend, mu: "NDArray", h: float = 1e-5
) -> "NDArray":
    """Projection differential at an ambient point by central differences.

    Column b is (P(mu + h e_b) - P(mu - h e_b)) / (2h) in the backend's
    flat ambient coordinates.  Truncation error is O(h^2).

    Raises:
        InputError: h outside [1e-7, 1e-3].
        FocalPointError: a stencil point is focal.
    """
    if not 1e-7 <= h <= 1e-3:
        raise InputError(f"step h={h} outside [1e-7, 1e-3]")
    mu = np.asarray(mu, dtype=np.float64)
    n = backend.ambient_dim
    if mu.shape != (n,):
        raise InputError(f"ambient point must have shape ({n},), got {mu.shape}")
    cols = np.empty((n, n))
    for b in range(n):
        step = np.zeros(n)
        step[b] = h
        plus = backend.embed(backend.project(mu + step))
        minus = backend.embed(backend.project(mu - step))
        cols[:, b] = (plus - minus) / (2.0 * h)
    return cols


def general_extrinsic_covariance(
    sample: "NDArray", backend: EmbeddingBackend, h: float = 1e-5
) -> "NDArray":
    """General adapted-frame covariance estimator built from the
    finite-difference differential.

    Pulls the explicit tangent frame at the extrinsic mean back through
    the numerical differential at the ambient sample mean and sandwiches
    the ambient sample covariance.  This is the independent route the
    closed forms are checked against.
    """
    embedded = _embed_rows(backend, np.asarray(sample))
    ambient_mean = embedded.mean(axis=0)
    diff = finite_diff_dP(backend, ambient_mean, h)
    model = backend.fit_tangent(sample)
    frame = backend.tangent_frame(model)
    pulled = frame.vectors @ diff
    centered = embedded - ambient_mean
    ambient_cov = centered.T @ centered / embedded.shape[0]
    return as_symmetric(pulled @ ambient_cov @ pulled.T)
