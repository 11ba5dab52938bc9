"""Unit-sphere backend under the inclusion embedding.

Points are unit vectors in R^{d+1}; the ambient representation is the
vector itself.  Projection of a nonzero ambient point is radial, its
differential has the closed form (I - uu^T)/|x| with u = x/|x|, and
principal curves are great circles through the extrinsic mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import FocalPointError, InputError
from .geometry import (
    TangentFrame,
    as_symmetric,
    canonical_order,
    complete_orthonormal_frame,
    tangential_component,
)
from .geometry import EmbeddingBackend

if TYPE_CHECKING:
    from numpy.typing import NDArray

# Below this ambient norm a point counts as the focal center of the sphere.
# Data live at norm 1, so the threshold is relative to that scale.
EPS_FOCAL = 1e-12

_UNIT_ATOL = 1e-10


def _as_vector(x: "NDArray", name: str = "point") -> "NDArray":
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InputError(f"{name} must be a 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError(f"{name} has non-finite entries")
    return x


def as_unit_vector(x: "NDArray", name: str = "point") -> "NDArray":
    """Validate |x| = 1 within 1e-10 and return the float array."""
    x = _as_vector(x, name)
    if abs(np.linalg.norm(x) - 1.0) > _UNIT_ATOL:
        raise InputError(f"{name} is not unit length: |x| = {np.linalg.norm(x)}")
    return x


def as_sphere_sample(points: "NDArray") -> "NDArray":
    """Validate an (n, d+1) array of unit rows."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 2:
        raise InputError(f"expected an (n, d+1) sample array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InputError("sample has non-finite entries")
    norms = np.linalg.norm(pts, axis=1)
    bad = np.nonzero(np.abs(norms - 1.0) > _UNIT_ATOL)[0]
    if bad.size:
        raise InputError(f"sample row {bad[0]} is not unit length: |x| = {norms[bad[0]]}")
    return pts


def sphere_project(x: "NDArray", eps_focal: float = EPS_FOCAL) -> "NDArray":
    """Radial projection x / |x|.

    Raises:
        FocalPointError: |x| <= eps_focal (the center has no nearest point).
    """
    x = _as_vector(x, "ambient point")
    nx = np.linalg.norm(x)
    if nx <= eps_focal:
        raise FocalPointError(
            f"ambient point with norm {nx:.3e} is at the focal center of the sphere"
        )
    return x / nx


def sphere_extrinsic_mean(sample: "NDArray") -> "NDArray":
    """Extrinsic sample mean: radial projection of the arithmetic mean.

    The mean is accumulated in canonical row order, so permuting the
    sample gives a bitwise-identical result.

    Raises:
        FocalPointError: ambient mean numerically at the origin.
    """
    pts = as_sphere_sample(sample)
    ordered = pts[canonical_order(pts)]
    ambient_mean = ordered.mean(axis=0)
    try:
        return sphere_project(ambient_mean)
    except FocalPointError as exc:
        raise FocalPointError(
            "ambient mean of the sample is numerically zero; the extrinsic "
            "mean does not exist (antipodally balanced data)"
        ) from exc


def sphere_projection_differential(mu: "NDArray", eps_focal: float = EPS_FOCAL) -> "NDArray":
    """Differential of the radial projection at a nonfocal ambient point.

    Closed form (I - uu^T)/|mu| with u = mu/|mu|: the radial direction is
    annihilated and tangent directions are scaled by 1/|mu|.
    """
    mu = _as_vector(mu, "ambient point")
    nmu = np.linalg.norm(mu)
    if nmu <= eps_focal:
        raise FocalPointError("projection differential undefined at the focal center")
    u = mu / nmu
    return (np.eye(mu.shape[0]) - np.outer(u, u)) / nmu


def check_adapted_frame(frame: TangentFrame, atol: float = 1e-10) -> None:
    """Check frame orthonormality and tangency at its sphere base point.

    The normal space at a sphere point is its own span, so tangency is
    orthogonality to the base point.
    """
    gram = frame.vectors @ frame.vectors.T
    if np.max(np.abs(gram - np.eye(frame.dim))) > atol:
        raise InputError("frame vectors are not orthonormal")
    if np.max(np.abs(frame.vectors @ frame.base_point)) > atol:
        raise InputError("frame vectors are not tangent at the base point")


def sphere_extrinsic_covariance(
    sample: "NDArray", mean: "NDArray", frame: TangentFrame
) -> "NDArray":
    """Sample extrinsic covariance in the given adapted frame.

    Pulls the frame back through the projection differential at the ambient
    sample mean and sandwiches the ambient sample covariance:
    S = (E D) S_n (E D)^T with D the differential at the ambient mean and
    E the frame rows.

    Raises:
        FocalPointError: ambient mean at the focal center.
    """
    pts = as_sphere_sample(sample)
    mean = as_unit_vector(mean, "mean")
    check_adapted_frame(frame)
    ordered = pts[canonical_order(pts)]
    ambient_mean = ordered.mean(axis=0)
    diff = sphere_projection_differential(ambient_mean)
    pulled = frame.vectors @ diff
    centered = ordered - ambient_mean
    ambient_cov = centered.T @ centered / ordered.shape[0]
    return as_symmetric(pulled @ ambient_cov @ pulled.T)


def sphere_scores(sample: "NDArray", mean: "NDArray", frame: TangentFrame) -> "NDArray":
    """Tangent coordinates of samples about the embedded mean, (n, m)."""
    pts = as_sphere_sample(sample)
    mean = as_unit_vector(mean, "mean")
    return (pts - mean) @ frame.vectors.T


def sphere_pc_curve(mean: "NDArray", direction: "NDArray", t: float) -> "NDArray":
    """Great-circle principal curve cos(t) mean + sin(t) direction.

    Raises:
        InputError: direction not unit or not orthogonal to mean.
    """
    mean = as_unit_vector(mean, "mean")
    direction = as_unit_vector(direction, "direction")
    if abs(float(mean @ direction)) > 1e-8:
        raise InputError("curve direction must be orthogonal to the mean")
    return np.cos(t) * mean + np.sin(t) * direction


def sphere_project_to_pc(
    x: "NDArray", mean: "NDArray", frame: TangentFrame, pc_direction: "NDArray"
) -> "NDArray":
    """Project one point onto a principal great circle.

    Keeps only the tangent coordinate along the component direction,
    re-embeds mean + s * direction, and projects radially.  The result is
    the curve point at parameter arctan(s).

    Raises:
        FocalPointError: re-embedded point at the focal center (cannot
            happen for |s| finite since |mean + s d|^2 = 1 + s^2, but kept
            for contract symmetry).
    """
    x = as_unit_vector(x, "point")
    mean = as_unit_vector(mean, "mean")
    pc_direction = as_unit_vector(pc_direction, "pc_direction")
    u = tangential_component(x - mean, frame)
    w = tangential_component(pc_direction, frame)
    s = float(u @ w)
    return sphere_project(mean + s * pc_direction)


@dataclass(frozen=True, slots=True)
class SphereModel:
    """Fitted tangent structure: mean point, frame, and the ambient mean."""

    mean: "NDArray"
    frame: TangentFrame
    ambient_mean: "NDArray"


class SphereBackend(EmbeddingBackend):
    """EmbeddingBackend for S^d included in R^{d+1}."""

    name = "sphere"

    def __init__(self, dim: int):
        if dim < 1:
            raise InputError(f"sphere dimension must be >= 1, got {dim}")
        self._dim = int(dim)

    @property
    def ambient_dim(self) -> int:
        return self._dim + 1

    @property
    def manifold_dim(self) -> int:
        return self._dim

    # ---- primitives ----------------------------------------------------

    def embed(self, point: "NDArray") -> "NDArray":
        return as_unit_vector(point)

    def project(self, ambient: "NDArray") -> "NDArray":
        return sphere_project(ambient)

    def projection_differential(self, ambient: "NDArray") -> "NDArray":
        return sphere_projection_differential(ambient)

    def is_focal(self, ambient: "NDArray") -> bool:
        return bool(np.linalg.norm(np.asarray(ambient, dtype=np.float64)) <= EPS_FOCAL)

    # ---- pipeline hooks -------------------------------------------------

    def extrinsic_mean(self, sample: "NDArray") -> "NDArray":
        return sphere_extrinsic_mean(sample)

    def fit_tangent(self, sample: "NDArray") -> SphereModel:
        pts = as_sphere_sample(sample)
        mean = sphere_extrinsic_mean(pts)
        frame = TangentFrame(base_point=mean, vectors=complete_orthonormal_frame(mean))
        ordered = pts[canonical_order(pts)]
        return SphereModel(mean=mean, frame=frame, ambient_mean=ordered.mean(axis=0))

    def tangent_frame(self, model: SphereModel) -> TangentFrame:
        return model.frame

    def covariance(self, sample: "NDArray", model: SphereModel) -> "NDArray":
        return sphere_extrinsic_covariance(sample, model.mean, model.frame)

    def scores(self, sample: "NDArray", model: SphereModel) -> "NDArray":
        return sphere_scores(sample, model.mean, model.frame)

    def ambient_directions(self, model: SphereModel, tangent_vectors: "NDArray") -> "NDArray":
        # rows: tangent-coordinate vectors -> ambient unit tangents at mean
        return np.asarray(tangent_vectors, dtype=np.float64) @ model.frame.vectors

    def curve_point(self, model: SphereModel, direction: "NDArray", t: float) -> "NDArray":
        return sphere_pc_curve(model.mean, direction, t)

    def project_to_component(
        self, model: SphereModel, direction: "NDArray", scores_1d: "NDArray"
    ) -> list:
        direction = as_unit_vector(direction, "direction")
        out = []
        for s in np.asarray(scores_1d, dtype=np.float64):
            out.append(sphere_project(model.mean + float(s) * direction))
        return out
