"""Shared sample builders and frozen reference values for the test suite."""

from __future__ import annotations

import numpy as np

from epca.geometry import complete_orthonormal_frame
from epca.shapes import to_preshape

# Published 4-digit reference statistics for a concentrated sample on S^2
# (mean direction, adapted frame, tangent covariance, principal axes).
# Rounded to 4 decimals at the source, so cross-checks carry loose
# tolerances; tests that need exact arithmetic freeze their own values.
REF_MEAN = np.array([0.2153, 0.8692, 0.4461])
REF_FRAME_1 = np.array([-0.8692, 0.3775, -0.3195])
REF_FRAME_2 = np.array([-0.4461, -0.3195, 0.8360])
REF_COV = np.array([[0.0045, -0.0010], [-0.0010, 0.0305]])
REF_EIGENVALUES = (0.0305, 0.0044)

TRIANGLES = (
    np.array([[0.0, 0.0], [1.0, 0.0], [0.4, 0.8]]),
    np.array([[0.0, 0.0], [1.1, 0.1], [0.2, 0.9]]),
    np.array([[-0.1, 0.0], [1.0, -0.1], [0.5, 0.7]]),
)

QUAD = np.array([[0.0, 0.0], [1.0, 0.2], [1.2, 1.1], [-0.2, 0.9]])


def concentrated_sphere_sample(
    seed: int,
    n: int = 40,
    sigmas=(0.3, 0.12),
    dim: int = 2,
) -> np.ndarray:
    """Unit vectors clustered around a random direction."""
    rng = np.random.default_rng(seed)
    direction = rng.normal(size=dim + 1)
    direction /= np.linalg.norm(direction)
    axes = complete_orthonormal_frame(direction)
    offsets = rng.normal(size=(n, dim)) * np.asarray(sigmas, dtype=np.float64)
    pts = direction + offsets @ axes
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def perturbed_preshapes(
    seed: int,
    base: np.ndarray,
    n: int,
    spread: float,
) -> np.ndarray:
    """Preshapes of vertex-jittered copies of a base polygon."""
    rng = np.random.default_rng(seed)
    return np.stack(
        [to_preshape(base + spread * rng.normal(size=base.shape)) for _ in range(n)]
    )


def random_orthogonal(seed: int, dim: int) -> np.ndarray:
    """Haar-ish orthogonal matrix (determinant either sign)."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def triangle_sample() -> np.ndarray:
    return np.stack([to_preshape(t) for t in TRIANGLES])


def embedded_chord(p: np.ndarray, q: np.ndarray) -> float:
    """Chord distance via the literal embedded-projector difference.

    The closed form sqrt(2(1-|<p,q>|^2)) cancels catastrophically below
    ~1.5e-8 (square root of machine epsilon); forming the projector
    difference keeps full precision near zero, which the tight invariance
    tolerances need.
    """
    diff = np.outer(p, p.conj()) - np.outer(q, q.conj())
    return float(np.linalg.norm(diff))
