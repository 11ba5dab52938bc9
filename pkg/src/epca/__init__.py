"""Extrinsic principal component analysis on embedded manifolds.

Backends: the unit sphere under the inclusion embedding, and Kendall
planar contour shapes under the rank-1 projector embedding.  The engine
runs mean, tangent frame, covariance, spectrum, scores, and principal
curves; the oracle module re-derives the closed forms by brute force.
"""

from ._threads import apply_thread_cap as _apply_thread_cap

# must run before numpy first loads anywhere in this process
_apply_thread_cap()

from .data import (
    ContourDataset,
    SyntheticSphereConfig,
    butterfly_template,
    dataset_sha256,
    gen_contour_sample,
    gen_sphere_sample,
    load_bundled_contours,
    read_contours,
    read_sphere_points,
    write_contour_dataset,
    write_projections,
    write_results,
)
from .engine import (
    EpcaResult,
    multiplicity_grouping,
    principal_curve_points,
    project_sample_to_pc,
    run_epca,
)
from .errors import (
    EpcaError,
    FocalPointError,
    InputError,
    MultiplicityError,
    ParseError,
)
from .geometry import (
    SpectralDecomposition,
    TangentFrame,
    complete_orthonormal_frame,
    spectral_decompose,
    tangential_component,
)
from .shapes import (
    PlanarShapeBackend,
    ProjectiveBackend,
    ShapeCovariance,
    resample_arclength,
    shape_chord_distance,
    shape_pc_curve,
    to_preshape,
    vw_embed,
    vw_extrinsic_covariance,
    vw_mean,
    vw_scores,
    vw_spectrum,
    vw_tangent_frame,
)
from .sphere import (
    SphereBackend,
    sphere_extrinsic_covariance,
    sphere_extrinsic_mean,
    sphere_pc_curve,
    sphere_project,
    sphere_project_to_pc,
    sphere_projection_differential,
)

__version__ = "0.1.0"

__all__ = [
    "ContourDataset",
    "EpcaError",
    "EpcaResult",
    "FocalPointError",
    "InputError",
    "MultiplicityError",
    "ParseError",
    "PlanarShapeBackend",
    "ProjectiveBackend",
    "ShapeCovariance",
    "SpectralDecomposition",
    "SphereBackend",
    "SyntheticSphereConfig",
    "TangentFrame",
    "butterfly_template",
    "complete_orthonormal_frame",
    "dataset_sha256",
    "gen_contour_sample",
    "gen_sphere_sample",
    "load_bundled_contours",
    "multiplicity_grouping",
    "principal_curve_points",
    "project_sample_to_pc",
    "read_contours",
    "read_sphere_points",
    "resample_arclength",
    "run_epca",
    "shape_chord_distance",
    "shape_pc_curve",
    "spectral_decompose",
    "sphere_extrinsic_covariance",
    "sphere_extrinsic_mean",
    "sphere_pc_curve",
    "sphere_project",
    "sphere_project_to_pc",
    "sphere_projection_differential",
    "tangential_component",
    "to_preshape",
    "vw_embed",
    "vw_extrinsic_covariance",
    "vw_mean",
    "vw_scores",
    "vw_spectrum",
    "vw_tangent_frame",
    "write_contour_dataset",
    "write_projections",
    "write_results",
    "__version__",
]
