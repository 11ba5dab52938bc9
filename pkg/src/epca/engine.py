"""Backend-agnostic extrinsic PCA pipeline.

Orchestrates mean, tangent structure, covariance, spectrum, scores, and
principal-curve extraction over any EmbeddingBackend.  All reductions over
samples happen inside the backends in canonical row order, so results are
bitwise identical under sample permutation; per-sample outputs (scores,
projections) stay in input order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from .errors import InputError, MultiplicityError
from .geometry import EmbeddingBackend, TangentFrame, spectral_decompose

if TYPE_CHECKING:
    from numpy.typing import NDArray

# Eigenvalues closer than this count as one multiplicity group when
# gating principal-curve extraction.
DEFAULT_MULTIPLICITY_TOL = 1e-9

_T_GRID_DEFAULT = 128


@dataclass(frozen=True)
class EpcaResult:
    """Everything the extrinsic PCA pipeline produces.

    Attributes:
        backend: the manifold backend the result belongs to.
        model: backend tangent structure (mean point plus frame data).
        extrinsic_mean: the mean in the backend's point representation.
        covariance: (m, m) sample extrinsic covariance in tangent
            coordinates.
        eigenvalues: descending, length m.
        tangent_eigenvectors: (m, m), column i pairs with eigenvalues[i].
        ambient_eigenvectors: one row per component in the backend's
            natural ambient representation (sphere: ambient unit tangent
            vectors; shapes: complex tangent vectors of the representative
            sphere, whose realified form is (v mean* + mean v*)/sqrt(2)).
        explained_ratio: eigenvalues / total variance (all zero when the
            zero_spread flag is set).
        scores: (n, m) tangent coordinates per sample, input order.
        zero_spread: set when n < 2 or the total variance vanishes.
    """

    backend: EmbeddingBackend = field(repr=False)
    model: Any = field(repr=False)
    extrinsic_mean: Any
    covariance: "NDArray"
    eigenvalues: "NDArray"
    tangent_eigenvectors: "NDArray"
    ambient_eigenvectors: "NDArray"
    explained_ratio: "NDArray"
    scores: "NDArray"
    zero_spread: bool

    @property
    def frame(self) -> TangentFrame:
        """Explicit tangent frame at the embedded mean (materialized on
        demand; large shape problems should use the model instead)."""
        return self.backend.tangent_frame(self.model)

    @property
    def n_samples(self) -> int:
        return self.scores.shape[0]

    @property
    def n_components(self) -> int:
        return self.eigenvalues.shape[0]


def run_epca(sample: "NDArray", backend: EmbeddingBackend) -> EpcaResult:
    """Run the full extrinsic PCA pipeline on a sample.

    Raises:
        FocalPointError: the sample has no unique extrinsic mean.
        InputError: malformed sample for the backend.
    """
    model = backend.fit_tangent(sample)
    covariance = backend.covariance(sample, model)
    scores = backend.scores(sample, model)
    decomposition = spectral_decompose(covariance)
    eigenvalues = decomposition.eigenvalues
    total = float(eigenvalues.sum())
    zero_spread = scores.shape[0] < 2 or total <= 0.0
    if zero_spread and total <= 0.0:
        explained = np.zeros_like(eigenvalues)
    else:
        explained = eigenvalues / total
    ambient = backend.ambient_directions(model, decomposition.eigenvectors.T)
    return EpcaResult(
        backend=backend,
        model=model,
        extrinsic_mean=model.mean,
        covariance=covariance,
        eigenvalues=eigenvalues,
        tangent_eigenvectors=decomposition.eigenvectors,
        ambient_eigenvectors=ambient,
        explained_ratio=explained,
        scores=scores,
        zero_spread=zero_spread,
    )


def multiplicity_grouping(eigenvalues: "NDArray", tol: float) -> list[list[int]]:
    """Partition descending eigenvalues into maximal runs of ties.

    Indices i and i+1 share a group when eigenvalues[i] - eigenvalues[i+1]
    <= tol; groups are maximal such runs.
    """
    w = np.asarray(eigenvalues, dtype=np.float64)
    if w.ndim != 1 or w.shape[0] < 1:
        raise InputError("eigenvalues must be a non-empty 1-D array")
    if np.any(np.diff(w) > 0.0):
        raise InputError("eigenvalues must be sorted descending")
    groups: list[list[int]] = [[0]]
    for i in range(1, w.shape[0]):
        if w[i - 1] - w[i] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _gate_component(result: EpcaResult, component: int, tol: float) -> None:
    if not 0 <= component < result.n_components:
        raise InputError(
            f"component {component} out of range [0, {result.n_components})"
        )
    for group in multiplicity_grouping(result.eigenvalues, tol):
        if component in group and len(group) > 1:
            raise MultiplicityError(
                f"component {component} lies in a multiplicity group "
                f"{group}; its principal curve is not defined (the group "
                "spans a principal subset of that dimension)"
            )


def default_t_grid(count: int = _T_GRID_DEFAULT) -> "NDArray":
    """Default curve parameter grid: `count` points on [-pi/2, pi/2]."""
    return np.linspace(-np.pi / 2.0, np.pi / 2.0, count)


def principal_curve_points(
    result: EpcaResult,
    component: int,
    t_grid: "NDArray | None" = None,
    multiplicity_tol: float = DEFAULT_MULTIPLICITY_TOL,
) -> list:
    """Sample the principal curve of a simple component on a t-grid.

    Raises:
        MultiplicityError: the component's eigenvalue is tied with a
            neighbor within multiplicity_tol.
    """
    _gate_component(result, component, multiplicity_tol)
    if t_grid is None:
        t_grid = default_t_grid()
    direction = result.ambient_eigenvectors[component]
    return [
        result.backend.curve_point(result.model, direction, float(t)) for t in t_grid
    ]


def project_sample_to_pc(
    result: EpcaResult,
    component: int,
    multiplicity_tol: float = DEFAULT_MULTIPLICITY_TOL,
) -> list:
    """Project every sample onto one component's principal curve.

    Each sample keeps only its tangent score along the component; the
    backend re-embeds and re-projects.  Output order matches the score
    rows (input order).
    """
    _gate_component(result, component, multiplicity_tol)
    direction = result.ambient_eigenvectors[component]
    return result.backend.project_to_component(
        result.model, direction, result.scores[:, component]
    )
