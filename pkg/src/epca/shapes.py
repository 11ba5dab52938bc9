"""Planar contour shapes under the rank-1 projector embedding.

A contour is an ordered closed polygon; its shape class forgets
translation, scale, and rotation.  Centering and unit-norm scaling give a
complex preshape; the remaining rotation is a unit complex scalar, removed
by embedding the class as the Hermitian projector z z*.  The extrinsic
mean is then the top eigenvector of the averaged projector, and the
extrinsic covariance has a closed form in terms of the eigenvalue gaps.

All shape machinery is written for data confined to an orthonormal column
basis of a subspace of C^k.  Preshapes live in the centered subspace
(basis of the orthocomplement of the constant vector, dimension k-1) and
the plain projective backend uses the identity basis; both share the same
spectrum, score, and covariance code paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import FocalPointError, InputError
from .geometry import (
    EmbeddingBackend,
    TangentFrame,
    as_symmetric,
    canonical_order,
    complete_orthonormal_frame,
)

if TYPE_CHECKING:
    from numpy.typing import NDArray

# Spectral gap below which the averaged projector has no unique top
# eigenvector and the extrinsic mean is not defined.  Absolute scale is
# natural here: averaged projectors have unit trace.
EPS_GAP = 1e-9

_ATOL = 1e-10

# Materializing realified Hermitian frames or differentials is quadratic /
# quartic in k; refuse beyond this rather than exhausting memory.  The
# closed-form pipeline paths never materialize these.
_MAX_FRAME_ENTRIES = 20_000_000


# ---------------------------------------------------------------------------
# contours and preshapes
# ---------------------------------------------------------------------------


def signed_area(points: "NDArray") -> float:
    """Shoelace signed area of a closed polygon (positive when
    counterclockwise)."""
    pts = np.asarray(points, dtype=np.float64)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def validate_contour(points: "NDArray") -> "NDArray":
    """Check the contour invariants and return the (k, 2) float array.

    Requires k >= 3 points, cyclically consecutive points distinct, and
    counterclockwise orientation (signed area > 0).  A duplicated closing
    point (last row equal to the first) is dropped before validation.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise InputError(f"expected a (k, 2) contour array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InputError("contour has non-finite entries")
    if pts.shape[0] >= 2 and np.array_equal(pts[0], pts[-1]):
        pts = pts[:-1]
    if pts.shape[0] < 3:
        raise InputError(f"contour needs at least 3 points, got {pts.shape[0]}")
    edges = np.roll(pts, -1, axis=0) - pts
    lengths = np.linalg.norm(edges, axis=1)
    zero = np.nonzero(lengths == 0.0)[0]
    if zero.size:
        raise InputError(f"contour has a zero-length edge at point {zero[0]}")
    if signed_area(pts) <= 0.0:
        raise InputError("contour must be counterclockwise (signed area > 0)")
    return pts


def resample_arclength(points: "NDArray", m: int) -> "NDArray":
    """Resample a closed contour at m equal arclength steps.

    Point i sits at arclength i*L/m along the closed polygon, starting at
    the first input point, with linear interpolation along edges.  The
    starting landmark is preserved as row 0.
    """
    pts = validate_contour(points)
    if m < 3:
        raise InputError(f"resample count must be >= 3, got {m}")
    edges = np.roll(pts, -1, axis=0) - pts
    lengths = np.linalg.norm(edges, axis=1)
    perimeter = float(lengths.sum())
    if perimeter <= 0.0:
        raise InputError("contour has zero perimeter")
    # cumulative arclength at each vertex, starting at 0
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    targets = np.arange(m, dtype=np.float64) * (perimeter / m)
    idx = np.searchsorted(cum, targets, side="right") - 1
    idx = np.clip(idx, 0, pts.shape[0] - 1)
    frac = (targets - cum[idx]) / lengths[idx]
    return pts[idx] + frac[:, None] * edges[idx]


def to_preshape(points: "NDArray") -> "NDArray":
    """Centered, unit-norm complex representative of a contour's shape.

    Raises:
        InputError: degenerate contour with all points equal.
    """
    pts = validate_contour(points)
    z = pts[:, 0] + 1j * pts[:, 1]
    z = z - z.mean()
    nz = np.linalg.norm(z)
    if nz <= 1e-15:
        raise InputError("degenerate contour: all points coincide")
    return z / nz


def as_preshape(z: "NDArray", name: str = "preshape") -> "NDArray":
    """Validate centering and unit norm of a complex preshape vector."""
    z = np.asarray(z, dtype=np.complex128)
    if z.ndim != 1 or z.shape[0] < 3:
        raise InputError(f"{name} must be a complex vector of length >= 3")
    if not np.all(np.isfinite(z.real)) or not np.all(np.isfinite(z.imag)):
        raise InputError(f"{name} has non-finite entries")
    if abs(z.sum()) > _ATOL:
        raise InputError(f"{name} is not centered: |sum| = {abs(z.sum()):.3e}")
    if abs(np.linalg.norm(z) - 1.0) > _ATOL:
        raise InputError(f"{name} is not unit norm")
    return z


def as_shape_sample(sample: "NDArray") -> "NDArray":
    """Validate an (n, k) array of preshape rows."""
    z = np.asarray(sample, dtype=np.complex128)
    if z.ndim != 2 or z.shape[0] < 1:
        raise InputError(f"expected an (n, k) preshape array, got shape {z.shape}")
    for i in range(z.shape[0]):
        try:
            as_preshape(z[i])
        except InputError as exc:
            raise InputError(f"sample row {i}: {exc}") from exc
    return z


def phase_normalize(z: "NDArray") -> "NDArray":
    """Rotate a complex vector so its largest-modulus entry is real
    positive (lowest index on ties).  Fixes the representative of a shape
    class deterministically."""
    z = np.asarray(z, dtype=np.complex128)
    j = int(np.argmax(np.abs(z)))
    if np.abs(z[j]) == 0.0:
        return z.copy()
    return z * (z[j].conjugate() / np.abs(z[j]))


# ---------------------------------------------------------------------------
# embedding and its realified coordinates
# ---------------------------------------------------------------------------


def vw_embed(z: "NDArray") -> "NDArray":
    """Rank-1 Hermitian projector z z* of a preshape (k, k) complex."""
    z = as_preshape(z)
    return np.outer(z, z.conj())


def realify_hermitian(h: "NDArray") -> "NDArray":
    """Isometric real coordinates of a Hermitian matrix.

    Layout: diagonal entries, then sqrt(2) * real parts of the strict
    upper triangle (row-major), then sqrt(2) * imaginary parts.  The
    Euclidean inner product of two realified vectors equals the
    Hilbert-Schmidt inner product trace(A B) of the matrices.
    """
    h = np.asarray(h, dtype=np.complex128)
    k = h.shape[0]
    iu, ju = np.triu_indices(k, 1)
    out = np.empty(k * k, dtype=np.float64)
    out[:k] = h.diagonal().real
    out[k : k + iu.size] = np.sqrt(2.0) * h[iu, ju].real
    out[k + iu.size :] = np.sqrt(2.0) * h[iu, ju].imag
    return out


def unrealify_hermitian(v: "NDArray", k: int) -> "NDArray":
    """Inverse of realify_hermitian."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (k * k,):
        raise InputError(f"expected a vector of length {k * k}, got {v.shape}")
    iu, ju = np.triu_indices(k, 1)
    h = np.zeros((k, k), dtype=np.complex128)
    h[np.arange(k), np.arange(k)] = v[:k]
    upper = (v[k : k + iu.size] + 1j * v[k + iu.size :]) / np.sqrt(2.0)
    h[iu, ju] = upper
    h[ju, iu] = upper.conj()
    return h


def centered_basis(k: int) -> "NDArray":
    """Deterministic real orthonormal basis (k, k-1) of the centered
    subspace {z : sum z = 0}."""
    ones = np.full(k, 1.0 / np.sqrt(k))
    return complete_orthonormal_frame(ones).T.copy()


# ---------------------------------------------------------------------------
# spectrum of the averaged projector
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class VwSpectrum:
    """Eigenstructure of the averaged embedded sample, restricted to the
    data subspace.

    Attributes:
        mean: top eigenvector, phase-normalized, length k.
        directions: (k, r-1) remaining eigenvectors, eigenvalues
            descending, each phase-normalized; r is the subspace dimension.
        eta_top: top eigenvalue.
        eta_rest: (r-1,) remaining eigenvalues, descending, aligned with
            directions columns.
        basis: (k, r) real orthonormal columns of the data subspace.
    """

    mean: "NDArray"
    directions: "NDArray"
    eta_top: float
    eta_rest: "NDArray"
    basis: "NDArray"

    @property
    def k(self) -> int:
        return self.mean.shape[0]

    @property
    def gaps(self) -> "NDArray":
        """eta_top - eta_a per direction (all > 0 for a valid spectrum)."""
        return self.eta_top - self.eta_rest

    @property
    def tangent_dim(self) -> int:
        return 2 * self.directions.shape[1]


def _spectrum_from_reduced(
    reduced: "NDArray", basis: "NDArray", eps_gap: float
) -> VwSpectrum:
    """Eigendecompose K = mean of w w* over reduced rows w (already in
    canonical order); lift eigenvectors back through the basis."""
    n, r = reduced.shape
    if r < 2:
        raise InputError("data subspace must have dimension >= 2")
    k_red = reduced.T @ reduced.conj() / n
    k_red = (k_red + k_red.conj().T) / 2.0
    eta, vec = np.linalg.eigh(k_red)
    gap = float(eta[-1] - eta[-2])
    if gap <= eps_gap:
        raise FocalPointError(
            f"top eigenvalue of the averaged projector is not simple "
            f"(gap {gap:.3e} <= {eps_gap:.1e}); extrinsic mean not unique"
        )
    full = basis @ vec
    mean = phase_normalize(full[:, -1])
    directions = full[:, -2::-1]
    directions = np.column_stack([phase_normalize(directions[:, a]) for a in range(r - 1)])
    return VwSpectrum(
        mean=mean,
        directions=directions,
        eta_top=float(eta[-1]),
        eta_rest=np.ascontiguousarray(eta[-2::-1]),
        basis=basis,
    )


def vw_spectrum(sample: "NDArray", eps_gap: float = EPS_GAP) -> VwSpectrum:
    """Spectrum of the averaged projector of a preshape sample, computed
    in the centered subspace (the constant direction carries no data and
    is excluded; this is what drops the tangent dimension to 2k-4)."""
    z = as_shape_sample(sample)
    z = z[canonical_order(z)]
    basis = centered_basis(z.shape[1])
    reduced = z @ basis
    return _spectrum_from_reduced(reduced, basis, eps_gap)


def vw_mean(sample: "NDArray", eps_gap: float = EPS_GAP) -> "NDArray":
    """Extrinsic mean shape: top eigenvector of the averaged projector,
    re-centered numerically and phase-normalized.

    Raises:
        FocalPointError: top eigenvalue tie within eps_gap.
    """
    mean = vw_spectrum(sample, eps_gap).mean
    mean = mean - mean.mean()
    return phase_normalize(mean / np.linalg.norm(mean))


# ---------------------------------------------------------------------------
# tangent frame, scores, covariance
# ---------------------------------------------------------------------------


def _tangent_pair(m: "NDArray", ma: "NDArray") -> tuple["NDArray", "NDArray"]:
    # The two realified tangent directions contributed by one eigenvector:
    # symmetric and antisymmetric combinations of ma with the mean.
    t_re = (np.outer(ma, m.conj()) + np.outer(m, ma.conj())) / np.sqrt(2.0)
    t_im = (1j * np.outer(ma, m.conj()) - 1j * np.outer(m, ma.conj())) / np.sqrt(2.0)
    return realify_hermitian(t_re), realify_hermitian(t_im)


def vw_tangent_frame(spectrum: VwSpectrum) -> TangentFrame:
    """Explicit realified tangent frame at the embedded mean.

    Frame rows pair each direction eigenvector with its quarter-rotated
    partner, in (re, im) order, eigenvalues descending.  Materializes
    (2k-4) x k^2 floats, so only small k is allowed; the pipeline's
    closed-form paths never call this.
    """
    k = spectrum.k
    n_dir = spectrum.directions.shape[1]
    if 2 * n_dir * k * k > _MAX_FRAME_ENTRIES:
        raise InputError(
            f"explicit frame for k={k} would need {2 * n_dir * k * k} floats; "
            "use the closed-form pipeline paths instead"
        )
    rows = np.empty((2 * n_dir, k * k), dtype=np.float64)
    for a in range(n_dir):
        t_re, t_im = _tangent_pair(spectrum.mean, spectrum.directions[:, a])
        rows[2 * a] = t_re
        rows[2 * a + 1] = t_im
    base = realify_hermitian(np.outer(spectrum.mean, spectrum.mean.conj()))
    return TangentFrame(base_point=base, vectors=rows)


def _tangent_scores(z: "NDArray", spectrum: VwSpectrum) -> "NDArray":
    # Closed-form frame coordinates; z rows are assumed valid for the
    # owning backend.
    c = z @ spectrum.mean.conj()
    cc = z @ spectrum.directions.conj()
    prod = c[:, None] * cc.conj()
    u = np.empty((z.shape[0], 2 * cc.shape[1]), dtype=np.float64)
    u[:, 0::2] = np.sqrt(2.0) * prod.real
    u[:, 1::2] = -np.sqrt(2.0) * prod.imag
    return u


def vw_scores(sample: "NDArray", spectrum: VwSpectrum) -> "NDArray":
    """Tangent coordinates (n, 2k-4) of embedded preshapes at the mean.

    Row i holds the Hilbert-Schmidt inner products of z_i z_i* with the
    frame of vw_tangent_frame, computed without materializing it: with
    c = <mean, z> and c_a = <direction_a, z>, the (re, im) pair for
    direction a is (sqrt(2) Re(c conj(c_a)), -sqrt(2) Im(c conj(c_a))).
    Rows follow the input order.
    """
    return _tangent_scores(as_shape_sample(sample), spectrum)


@dataclass(frozen=True, slots=True)
class ShapeCovariance:
    """Sample extrinsic covariance with the frame it is expressed in.

    Attributes:
        matrix: (2k-4, 2k-4) real symmetric PSD.
        spectrum: the VwSpectrum whose implied frame indexes the matrix.
    """

    matrix: "NDArray"
    spectrum: VwSpectrum


def vw_extrinsic_covariance(sample: "NDArray", eps_gap: float = EPS_GAP) -> ShapeCovariance:
    """Closed-form sample extrinsic covariance of a preshape sample.

    Scales the centered tangent scores by the inverse eigenvalue gaps
    (the diagonal action of the projection differential on the frame) and
    averages their outer products.  Equals the general adapted-frame
    estimator built from a finite-difference projection differential; the
    oracle module cross-checks that equivalence.

    Raises:
        FocalPointError: spectral gap failure.
    """
    z = as_shape_sample(sample)
    ordered = z[canonical_order(z)]
    basis = centered_basis(z.shape[1])
    spectrum = _spectrum_from_reduced(ordered @ basis, basis, eps_gap)
    u = _tangent_scores(ordered, spectrum)
    u = u - u.mean(axis=0)
    scaled = u * np.repeat(1.0 / spectrum.gaps, 2)
    return ShapeCovariance(
        matrix=as_symmetric(scaled.T @ scaled / ordered.shape[0]),
        spectrum=spectrum,
    )


# ---------------------------------------------------------------------------
# distances and principal curves
# ---------------------------------------------------------------------------


def shape_chord_distance(p: "NDArray", q: "NDArray") -> float:
    """Ambient distance between embedded shapes: sqrt(2 (1 - |<p, q>|^2)).

    Equals the Hilbert-Schmidt norm of the projector difference, and is
    invariant to the representatives' phases.
    """
    p = as_preshape(p, "p")
    q = as_preshape(q, "q")
    if p.shape != q.shape:
        raise InputError(f"dimension mismatch: {p.shape} vs {q.shape}")
    overlap = min(float(np.abs(np.vdot(p, q)) ** 2), 1.0)
    return float(np.sqrt(2.0 * (1.0 - overlap)))


def shape_pc_curve(mean: "NDArray", direction: "NDArray", t: float) -> "NDArray":
    """Principal curve point cos(t) mean + sin(t) direction as a shape
    class representative (centered, unit, phase-normalized).

    Raises:
        InputError: direction not unit, not centered, or not orthogonal
            to the mean.
    """
    mean = as_preshape(mean, "mean")
    direction = np.asarray(direction, dtype=np.complex128)
    if direction.shape != mean.shape:
        raise InputError("direction and mean dimensions differ")
    if abs(direction.sum()) > 1e-8:
        raise InputError("curve direction must be centered")
    if abs(np.linalg.norm(direction) - 1.0) > 1e-8:
        raise InputError("curve direction must be unit norm")
    if abs(np.vdot(mean, direction)) > 1e-8:
        raise InputError("curve direction must be orthogonal to the mean")
    z = np.cos(t) * mean + np.sin(t) * direction
    z = z - z.mean()
    return phase_normalize(z / np.linalg.norm(z))


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------


class _ProjectiveBase(EmbeddingBackend):
    """Shared backend machinery for rank-1 projector embeddings of a
    subspace of C^k.  Subclasses fix the subspace basis and the point
    validator."""

    def __init__(self, k: int, basis: "NDArray", eps_gap: float = EPS_GAP):
        self._k = int(k)
        self._basis = basis
        self._eps_gap = float(eps_gap)

    def _validate_point(self, z: "NDArray") -> "NDArray":
        raise NotImplementedError

    @property
    def ambient_dim(self) -> int:
        return self._k * self._k

    @property
    def manifold_dim(self) -> int:
        return 2 * (self._basis.shape[1] - 1)

    # ---- primitives ----------------------------------------------------

    def embed(self, point: "NDArray") -> "NDArray":
        z = self._validate_point(point)
        return realify_hermitian(np.outer(z, z.conj()))

    def _compressed_eig(self, ambient: "NDArray"):
        h = unrealify_hermitian(ambient, self._k)
        b = self._basis
        hr = b.T @ h @ b
        hr = (hr + hr.conj().T) / 2.0
        return np.linalg.eigh(hr)

    def project(self, ambient: "NDArray") -> "NDArray":
        eta, vec = self._compressed_eig(ambient)
        if float(eta[-1] - eta[-2]) <= self._eps_gap:
            raise FocalPointError(
                f"ambient point is focal: top-eigenvalue gap "
                f"{float(eta[-1] - eta[-2]):.3e} <= {self._eps_gap:.1e}"
            )
        z = self._basis @ vec[:, -1]
        return phase_normalize(z / np.linalg.norm(z))

    def is_focal(self, ambient: "NDArray") -> bool:
        eta, _ = self._compressed_eig(ambient)
        return bool(float(eta[-1] - eta[-2]) <= self._eps_gap)

    def projection_differential(self, ambient: "NDArray") -> "NDArray":
        """Differential of the projector-valued projection at a nonfocal
        ambient point, as a k^2 x k^2 matrix on realified coordinates.

        Spectral form: rank-one contributions of each tangent frame pair,
        weighted by the inverse gap to the top eigenvalue.  Directions
        orthogonal to the data subspace are annihilated.
        """
        if self.ambient_dim * self.ambient_dim > _MAX_FRAME_ENTRIES:
            raise InputError(
                f"materializing the differential needs k^4 = "
                f"{self.ambient_dim ** 2} floats; too large for k={self._k}"
            )
        eta, vec = self._compressed_eig(ambient)
        gap = float(eta[-1] - eta[-2])
        if gap <= self._eps_gap:
            raise FocalPointError("projection differential undefined at a focal point")
        full = self._basis @ vec
        m = full[:, -1]
        out = np.zeros((self.ambient_dim, self.ambient_dim))
        for a in range(full.shape[1] - 1):
            weight = 1.0 / float(eta[-1] - eta[a])
            t_re, t_im = _tangent_pair(m, full[:, a])
            out += weight * (np.outer(t_re, t_re) + np.outer(t_im, t_im))
        return out

    # ---- pipeline hooks -------------------------------------------------

    def _sample_matrix(self, sample: "NDArray") -> "NDArray":
        raise NotImplementedError

    def extrinsic_mean(self, sample: "NDArray") -> "NDArray":
        return self.fit_tangent(sample).mean

    def fit_tangent(self, sample: "NDArray") -> VwSpectrum:
        z = self._sample_matrix(sample)
        z = z[canonical_order(z)]
        return _spectrum_from_reduced(z @ self._basis, self._basis, self._eps_gap)

    def tangent_frame(self, model: VwSpectrum) -> TangentFrame:
        return vw_tangent_frame(model)

    def chord_distance(self, p: "NDArray", q: "NDArray") -> float:
        zp = self._validate_point(p)
        zq = self._validate_point(q)
        overlap = min(float(np.abs(np.vdot(zp, zq)) ** 2), 1.0)
        return float(np.sqrt(2.0 * (1.0 - overlap)))

    def covariance(self, sample: "NDArray", model: VwSpectrum) -> "NDArray":
        z = self._sample_matrix(sample)
        u = _tangent_scores(z[canonical_order(z)], model)
        u = u - u.mean(axis=0)
        scaled = u * np.repeat(1.0 / model.gaps, 2)
        return as_symmetric(scaled.T @ scaled / z.shape[0])

    def scores(self, sample: "NDArray", model: VwSpectrum) -> "NDArray":
        return _tangent_scores(self._sample_matrix(sample), model)

    def ambient_directions(self, model: VwSpectrum, tangent_vectors: "NDArray") -> "NDArray":
        """Complex chart of ambient eigendirections: row w maps to the
        unit tangent vector v = sum_a (w[2a] + i w[2a+1]) direction_a of
        the representative sphere; its realified Hermitian form is
        (v mean* + mean v*)/sqrt(2)."""
        w = np.asarray(tangent_vectors, dtype=np.float64)
        coef = w[:, 0::2] + 1j * w[:, 1::2]
        return coef @ model.directions.T

    def curve_point(self, model: VwSpectrum, direction: "NDArray", t: float) -> "NDArray":
        return shape_pc_curve(model.mean, direction, t)

    def project_to_component(
        self, model: VwSpectrum, direction: "NDArray", scores_1d: "NDArray"
    ) -> list:
        """Restrict each sample to its score along the component, re-embed
        mean + score * tangent, and project back.

        The re-embedded matrix acts on span{mean, direction} as the 2x2
        block [[1, a], [a, 0]] with a = score/sqrt(2); its top eigenvector
        gives the curve point at angle arctan(2a)/2 exactly.
        """
        direction = np.asarray(direction, dtype=np.complex128)
        out = []
        for s in np.asarray(scores_1d, dtype=np.float64):
            alpha = float(s) / np.sqrt(2.0)
            theta = 0.5 * np.arctan2(2.0 * alpha, 1.0)
            out.append(shape_pc_curve(model.mean, direction, theta))
        return out


class PlanarShapeBackend(_ProjectiveBase):
    """Kendall planar shapes of k-point contours (preshape data confined
    to the centered subspace; manifold dimension 2k-4)."""

    name = "shape"

    def __init__(self, k: int, eps_gap: float = EPS_GAP):
        if k < 3:
            raise InputError(f"shape backend needs k >= 3 points, got {k}")
        super().__init__(k, centered_basis(k), eps_gap)

    def _validate_point(self, z: "NDArray") -> "NDArray":
        return as_preshape(z)

    def _sample_matrix(self, sample: "NDArray") -> "NDArray":
        z = as_shape_sample(sample)
        if z.shape[1] != self._k:
            raise InputError(f"expected k={self._k} landmarks, got {z.shape[1]}")
        return z


class ProjectiveBackend(_ProjectiveBase):
    """Plain complex projective space of C^N under the same embedding (no
    centering constraint; manifold dimension 2N-2).  Used by the numeric
    oracle for small randomized instances, including real data, where the
    imaginary tangent blocks simply vanish."""

    name = "projective"

    def __init__(self, n: int, eps_gap: float = EPS_GAP):
        if n < 2:
            raise InputError(f"projective backend needs dimension >= 2, got {n}")
        super().__init__(n, np.eye(n), eps_gap)

    def _validate_point(self, z: "NDArray") -> "NDArray":
        z = np.asarray(z, dtype=np.complex128)
        if z.ndim != 1 or z.shape[0] != self._k:
            raise InputError(f"expected a complex vector of length {self._k}")
        if abs(np.linalg.norm(z) - 1.0) > _ATOL:
            raise InputError("projective representative must be unit norm")
        return z

    def _sample_matrix(self, sample: "NDArray") -> "NDArray":
        z = np.asarray(sample, dtype=np.complex128)
        if z.ndim != 2 or z.shape[1] != self._k:
            raise InputError(f"expected an (n, {self._k}) complex sample")
        norms = np.linalg.norm(z, axis=1)
        if np.any(np.abs(norms - 1.0) > _ATOL):
            raise InputError("sample rows must be unit norm")
        return z
