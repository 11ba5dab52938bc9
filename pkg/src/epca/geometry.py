"""Shared linear-algebra types and the embedding contract for all backends.

Everything here works on plain float arrays.  A manifold point is whatever
the backend says it is (a unit vector, a complex preshape); the *ambient*
representation is always a flat real vector of length ``ambient_dim`` so
that generic code (the numeric oracle in particular) can form finite
differences without knowing the backend.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from .errors import InputError

if TYPE_CHECKING:
    from numpy.typing import NDArray


def as_symmetric(a: "NDArray") -> "NDArray":
    """Validate and symmetrize a square matrix.

    Floating-point drift routinely leaves ``A - A.T`` at the 1e-16 level;
    symmetrizing on construction absorbs it so downstream eigensolvers see
    an exactly symmetric operand.

    Args:
        a: square array of real entries.

    Returns:
        ``(a + a.T) / 2`` as a new float array.

    Raises:
        InputError: non-square or non-finite input.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return (a + a.T) / 2.0


@dataclass(frozen=True, slots=True)
class SpectralDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues descending.

    Attributes:
        eigenvalues: shape (n,), sorted descending.
        eigenvectors: shape (n, n), column i pairs with eigenvalues[i];
            columns are orthonormal and sign-fixed (see spectral_decompose).
    """

    eigenvalues: "NDArray"
    eigenvectors: "NDArray"


def _fix_signs(vectors: "NDArray") -> "NDArray":
    # Each column's largest-magnitude entry is made non-negative; argmax
    # takes the lowest index on ties.  Keeps eigenvectors reproducible
    # across LAPACK builds.
    v = vectors.copy()
    for i in range(v.shape[1]):
        j = int(np.argmax(np.abs(v[:, i])))
        if v[j, i] < 0.0:
            v[:, i] = -v[:, i]
    return v


def spectral_decompose(a: "NDArray") -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix with a fixed sign convention.

    Args:
        a: square symmetric array (symmetrized defensively on entry).

    Returns:
        SpectralDecomposition with descending eigenvalues and orthonormal,
        sign-fixed eigenvectors.

    Raises:
        InputError: non-square or non-finite input.
    """
    sym = as_symmetric(a)
    w, v = np.linalg.eigh(sym)
    order = np.argsort(w)[::-1]
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    return SpectralDecomposition(eigenvalues=w, eigenvectors=_fix_signs(v))


def complete_orthonormal_frame(u: "NDArray", atol: float = 1e-10) -> "NDArray":
    """Deterministic orthonormal basis of the orthocomplement of a unit vector.

    Uses the Householder reflection H that swaps ``u`` with the last
    canonical axis (reflecting about their bisector); the first N-1 columns
    of H are then an orthonormal set orthogonal to u.  When u equals the
    last axis the reflection degenerates to the identity and the frame is
    the first N-1 canonical vectors exactly.

    Args:
        u: unit vector of length N.
        atol: tolerance for the unit-norm precondition.

    Returns:
        Array of shape (N-1, N); rows are the frame vectors.

    Raises:
        InputError: input not unit length within atol.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1:
        raise InputError(f"expected a vector, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise InputError("vector has non-finite entries")
    if abs(np.linalg.norm(u) - 1.0) > atol:
        raise InputError(f"expected a unit vector, norm is {np.linalg.norm(u)}")
    n = u.shape[0]
    e_last = np.zeros(n)
    e_last[-1] = 1.0
    v = u - e_last
    nv = np.linalg.norm(v)
    if nv < 1e-14:
        h = np.eye(n)
    else:
        v = v / nv
        h = np.eye(n) - 2.0 * np.outer(v, v)
    # column n-1 of h is u itself; the rest span its orthocomplement
    return np.ascontiguousarray(h[:, : n - 1].T)


@dataclass(frozen=True, slots=True)
class TangentFrame:
    """Orthonormal ambient vectors spanning the tangent space at a point.

    Attributes:
        base_point: ambient coordinates of the embedded base point, (N,).
        vectors: shape (m, N); rows are orthonormal and tangent at
            base_point (the owning backend checks tangency).
    """

    base_point: "NDArray"
    vectors: "NDArray"

    @property
    def ambient_dim(self) -> int:
        return self.base_point.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def tangential_component(v: "NDArray", frame: TangentFrame) -> "NDArray":
    """Coordinates of an ambient vector in a tangent frame.

    Args:
        v: ambient vector, length frame.ambient_dim.
        frame: the frame to project onto.

    Returns:
        Length-m array of inner products, in frame order.

    Raises:
        InputError: dimension mismatch.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (frame.ambient_dim,):
        raise InputError(
            f"ambient dimension mismatch: vector {v.shape}, "
            f"frame expects ({frame.ambient_dim},)"
        )
    return frame.vectors @ v


def canonical_order(points: "NDArray") -> "NDArray":
    """Permutation sorting sample rows lexicographically.

    Reductions over samples (means, Gram matrices, covariances) are done in
    this canonical order so results are bitwise identical under any input
    permutation.  Complex rows sort by interleaved (real, imag) parts.
    Equal rows are interchangeable, so ties need no breaking.
    """
    pts = np.asarray(points)
    if pts.ndim != 2:
        raise InputError(f"expected a 2-D sample array, got shape {pts.shape}")
    if np.iscomplexobj(pts):
        keys = np.empty((2 * pts.shape[1], pts.shape[0]), dtype=np.float64)
        keys[0::2] = pts.real.T
        keys[1::2] = pts.imag.T
    else:
        keys = np.asarray(pts, dtype=np.float64).T
    return np.lexsort(keys[::-1])


class EmbeddingBackend(ABC):
    """Contract every manifold backend fulfills.

    Primitive operations (embed / project / projection_differential) define
    the embedding itself and are what the numeric oracle differentiates.
    The pipeline hooks (extrinsic_mean through project_to_component) are
    what the engine orchestrates; backends implement them with their
    closed forms.
    """

    name: str = "abstract"

    @property
    @abstractmethod
    def ambient_dim(self) -> int:
        """Dimension N of the flat real ambient representation."""

    @property
    @abstractmethod
    def manifold_dim(self) -> int:
        """Dimension m of the manifold (= tangent frame size)."""

    # ---- primitives ----------------------------------------------------

    @abstractmethod
    def embed(self, point: Any) -> "NDArray":
        """Ambient coordinates of a manifold point, shape (N,)."""

    @abstractmethod
    def project(self, ambient: "NDArray") -> Any:
        """Nearest manifold point of an ambient vector.

        Raises:
            FocalPointError: no unique nearest point.
        """

    @abstractmethod
    def projection_differential(self, ambient: "NDArray") -> "NDArray":
        """Matrix of the projection differential at a nonfocal ambient
        point, shape (N, N), in the same flat coordinates as embed."""

    @abstractmethod
    def is_focal(self, ambient: "NDArray") -> bool:
        """Whether the ambient point is (numerically) focal."""

    def chord_distance(self, p: Any, q: Any) -> float:
        """Ambient distance between embedded points."""
        return float(np.linalg.norm(self.embed(p) - self.embed(q)))

    # ---- pipeline hooks -------------------------------------------------

    @abstractmethod
    def extrinsic_mean(self, sample: "NDArray") -> Any:
        """Projection of the ambient sample mean."""

    @abstractmethod
    def fit_tangent(self, sample: "NDArray") -> Any:
        """Backend-specific tangent structure at the extrinsic mean (mean
        point plus whatever the frame and covariance need)."""

    @abstractmethod
    def tangent_frame(self, model: Any) -> TangentFrame:
        """Explicit frame at the embedded mean.  May materialize large
        arrays; pipeline code uses the closed-form paths instead."""

    @abstractmethod
    def covariance(self, sample: "NDArray", model: Any) -> "NDArray":
        """Sample extrinsic covariance (m, m) in the model's frame."""

    @abstractmethod
    def scores(self, sample: "NDArray", model: Any) -> "NDArray":
        """Tangent coordinates (n, m) of embedded samples about the
        embedded mean, rows in input order."""

    @abstractmethod
    def ambient_directions(self, model: Any, tangent_vectors: "NDArray") -> "NDArray":
        """Push tangent-coordinate vectors (rows) to the backend's natural
        ambient representation, one row per direction."""

    @abstractmethod
    def curve_point(self, model: Any, direction: "NDArray", t: float) -> Any:
        """Point of the principal curve through the mean along an ambient
        direction at parameter t."""

    @abstractmethod
    def project_to_component(
        self, model: Any, direction: "NDArray", scores_1d: "NDArray"
    ) -> list:
        """Project samples (given their scores along one component) onto
        that component's principal curve."""
