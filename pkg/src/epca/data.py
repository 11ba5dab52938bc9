"""Dataset ingestion, synthetic sample generators, and result serialization."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .errors import InputError, MultiplicityError, ParseError
from .geometry import complete_orthonormal_frame
from .shapes import resample_arclength, signed_area, validate_contour
from .sphere import as_unit_vector

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from .engine import EpcaResult

_FLOAT_FMT = "%.17g"  # round-trips float64 exactly
_SHAPE_CURVE_T_POINTS = 33  # curve CSVs for contours carry k rows per t value

# Radial perturbation field for gen_contour_sample, in units of noise_sigma.
# Two dominant modes and a tail of weaker ones, so the top two principal
# components carry most of the shape variation.
_DOMINANT_MODES = ((2, "cos", 1.0), (3, "sin", 0.6))
_MINOR_MODES = (4, 5, 6, 7)
_MINOR_AMPLITUDE = 0.15
_LOG_SCALE_SIGMA = 0.05
_TRANSLATION_SIGMA = 0.05
_MAX_SEED = 2**64


def _format_row(values) -> str:
    return ",".join(_FLOAT_FMT % float(v) for v in values)


def _write_text(path: Path, text: str) -> None:
    # newline="" keeps the explicit LF endings on every platform
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def contour_csv_text(contour: "NDArray") -> str:
    """Serialize one contour in the `x,y` CSV layout used on disk."""
    pts = np.asarray(contour, dtype=np.float64)
    lines = ["x,y"]
    lines.extend(_format_row(row) for row in pts)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class ContourDataset:
    """A set of planar contours with a common point count."""

    name: str
    contours: tuple
    names: tuple
    k_common: int
    provenance: str

    def __post_init__(self):
        if len(self.contours) == 0:
            raise InputError("dataset must contain at least one contour")
        if len(self.names) != len(self.contours):
            raise InputError("one name per contour required")
        for c in self.contours:
            if c.shape != (self.k_common, 2):
                raise InputError(
                    f"contour shape {c.shape} does not match k_common={self.k_common}"
                )

    @property
    def n(self) -> int:
        return len(self.contours)


def dataset_sha256(dataset: ContourDataset) -> str:
    """Content hash over the exact CSV bytes of every contour, in order."""
    digest = hashlib.sha256()
    for contour in dataset.contours:
        digest.update(contour_csv_text(contour).encode("utf-8"))
    return digest.hexdigest()


# --- ingestion ---------------------------------------------------------------


def _parse_float(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric entry {token.strip()!r}", line=line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite entry {token.strip()!r}", line=line)
    return value


def _read_rows(path: Path) -> list[tuple[int, list[str]]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip():
            rows.append((lineno, raw.split(",")))
    if not rows:
        raise ParseError("file contains no data", line=1)
    return rows


def _is_float(token: str) -> bool:
    try:
        return math.isfinite(float(token))
    except ValueError:
        return False


def _parse_points(rows: list[tuple[int, list[str]]]) -> tuple["NDArray", int]:
    first_line, first = rows[0]
    if [f.strip().lower() for f in first] == ["x", "y"]:
        rows = rows[1:]
        if not rows:
            raise ParseError("no points after header", line=first_line)
    points = []
    for lineno, fields in rows:
        if len(fields) != 2:
            raise ParseError(f"expected 2 values, got {len(fields)}", line=lineno)
        points.append([_parse_float(f, lineno) for f in fields])
    return np.asarray(points, dtype=np.float64), rows[-1][0]


def _parse_matrix(rows: list[tuple[int, list[str]]]) -> tuple["NDArray", int]:
    if len(rows) != 2:
        raise ParseError(
            f"matrix layout needs exactly 2 rows, got {len(rows)}", line=rows[-1][0]
        )
    (line_x, fields_x), (line_y, fields_y) = rows
    if len(fields_x) != len(fields_y):
        raise ParseError(
            f"row lengths differ ({len(fields_x)} vs {len(fields_y)})", line=line_y
        )
    xs = [_parse_float(f, line_x) for f in fields_x]
    ys = [_parse_float(f, line_y) for f in fields_y]
    return np.column_stack([xs, ys]), line_y


def _detect_format(rows: list[tuple[int, list[str]]]) -> str:
    _, first = rows[0]
    if [f.strip().lower() for f in first] == ["x", "y"]:
        return "points"
    if len(rows) == 2 and len(first) >= 3 and all(_is_float(f) for f in first):
        return "matrix"
    if len(first) == 2 and all(_is_float(f) for f in first):
        return "points"  # headerless point list
    raise ParseError(
        "cannot detect layout: expected an x,y header, a 2-row matrix, "
        "or numeric x,y rows",
        line=rows[0][0],
    )


def _read_single_contour(path: Path, fmt: str, resample_to: int | None) -> "NDArray":
    rows = _read_rows(path)
    if fmt == "auto":
        fmt = _detect_format(rows)
    if fmt == "points":
        pts, last_line = _parse_points(rows)
    elif fmt == "matrix":
        pts, last_line = _parse_matrix(rows)
    else:
        raise InputError(f"unknown contour format {fmt!r}")
    # drop an explicit closing point before counting
    if pts.shape[0] >= 2 and np.allclose(pts[0], pts[-1], atol=1e-12):
        pts = pts[:-1]
    if pts.shape[0] < 3:
        raise ParseError(
            f"contour has {pts.shape[0]} points, need at least 3", line=last_line
        )
    if signed_area(pts) < 0.0:
        pts = pts[::-1].copy()
    pts = validate_contour(pts)
    if resample_to is not None and pts.shape[0] != resample_to:
        pts = resample_arclength(pts, resample_to)
    return pts


def _read_manifest(
    path: Path, resample_to: int | None, resample: bool
) -> ContourDataset:
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid manifest JSON: {exc.msg}", line=exc.lineno) from exc
    for key in ("name", "files", "k_common", "provenance"):
        if key not in manifest:
            raise ParseError(f"manifest is missing the {key!r} field")
    files = manifest["files"]
    if not isinstance(files, list) or not files:
        raise ParseError("manifest 'files' must be a non-empty list")
    k_common = manifest["k_common"]
    if not isinstance(k_common, int) or k_common < 3:
        raise ParseError("manifest 'k_common' must be an integer >= 3")
    target = resample_to if resample_to is not None else k_common
    base = path.parent
    contours = []
    for name in files:
        member = base / name
        try:
            contour = _read_single_contour(
                member, "auto", target if resample else None
            )
        except ParseError as exc:
            raise ParseError(f"{name}: {exc.message}", line=exc.line) from exc
        if contour.shape[0] != target:
            raise InputError(
                f"{name} has {contour.shape[0]} points, expected {target} "
                "(resampling disabled)"
            )
        contours.append(contour)
    return ContourDataset(
        name=str(manifest["name"]),
        contours=tuple(contours),
        names=tuple(str(n) for n in files),
        k_common=target,
        provenance=str(manifest["provenance"]),
    )


def read_contours(
    path,
    format: str = "auto",
    resample_to: int | None = None,
    resample: bool = True,
) -> ContourDataset:
    """Load contours from a manifest JSON or a single contour CSV.

    Accepted layouts: an `x,y` header with one point per row, a headerless
    list of x,y rows, or a 2-row matrix whose columns are points. Contours
    are reoriented counterclockwise (row order reversed when the signed
    area is negative) and resampled to a common arclength-uniform point
    count when `resample_to` or the manifest's k_common asks for it.
    With resample=False no contour is touched; a point-count mismatch is
    an error instead.
    """
    if format not in ("auto", "points", "matrix", "manifest"):
        raise InputError(f"unknown format {format!r}")
    if resample_to is not None and resample_to < 3:
        raise InputError("resample_to must be at least 3")
    path = Path(path)
    if format == "manifest" or (format == "auto" and path.suffix.lower() == ".json"):
        return _read_manifest(path, resample_to, resample)
    contour = _read_single_contour(path, format, resample_to if resample else None)
    if resample_to is not None and contour.shape[0] != resample_to:
        raise InputError(
            f"{path.name} has {contour.shape[0]} points, expected {resample_to} "
            "(resampling disabled)"
        )
    return ContourDataset(
        name=path.stem,
        contours=(contour,),
        names=(path.name,),
        k_common=contour.shape[0],
        provenance=f"read_contours({path.name!r})",
    )


def load_bundled_contours(resample_to: int | None = None) -> ContourDataset:
    """Load the dataset bundled with the package."""
    root = resources.files("epca") / "data" / "butterfly"
    with resources.as_file(root) as base:
        return read_contours(Path(base) / "manifest.json", resample_to=resample_to)


def read_sphere_points(path, unit_atol: float = 1e-6) -> "NDArray":
    """Load unit vectors from a CSV, one point per row.

    A non-numeric first row is treated as a header. Rows must share one
    width and have norm within unit_atol of 1; they are renormalized to
    exact unit length.
    """
    path = Path(path)
    rows = _read_rows(path)
    if not all(_is_float(f) for f in rows[0][1]):
        rows = rows[1:]
        if not rows:
            raise ParseError("no points after header", line=1)
    width = len(rows[0][1])
    if width < 2:
        raise ParseError("need at least 2 coordinates per row", line=rows[0][0])
    points = []
    for lineno, fields in rows:
        if len(fields) != width:
            raise ParseError(
                f"expected {width} values, got {len(fields)}", line=lineno
            )
        row = np.array([_parse_float(f, lineno) for f in fields])
        norm = float(np.linalg.norm(row))
        if abs(norm - 1.0) > unit_atol:
            raise InputError(
                f"line {lineno}: point norm {norm:.6g} is not 1 within {unit_atol:g}"
            )
        points.append(row / norm)
    return np.asarray(points)


# --- synthetic generators ----------------------------------------------------


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < _MAX_SEED:
        raise InputError("seed must be an integer in [0, 2**64)")
    return int(seed)


@dataclass(frozen=True, slots=True)
class SyntheticSphereConfig:
    """Configuration for a concentrated Gaussian-on-tangent sphere sample."""

    n: int
    mean_direction: "NDArray"
    tangent_sigmas: "NDArray"
    seed: int


def gen_sphere_sample(cfg: SyntheticSphereConfig) -> "NDArray":
    """Draw a deterministic sphere sample around cfg.mean_direction.

    Tangent offsets are standard normal rows scaled per-axis by
    tangent_sigmas (axes ordered as in complete_orthonormal_frame), added
    to the mean direction and radially projected back to the sphere. The
    stream is Philox keyed by the seed, so a fixed config is bitwise
    reproducible.
    """
    if cfg.n < 1:
        raise InputError("n must be at least 1")
    mean = as_unit_vector(np.asarray(cfg.mean_direction, dtype=np.float64))
    sigmas = np.asarray(cfg.tangent_sigmas, dtype=np.float64)
    if sigmas.ndim != 1 or sigmas.shape[0] != mean.shape[0] - 1:
        raise InputError(
            f"need {mean.shape[0] - 1} tangent sigmas, got shape {sigmas.shape}"
        )
    if not np.all(np.isfinite(sigmas)) or np.any(sigmas <= 0.0):
        raise InputError("tangent sigmas must be positive and finite")
    seed = _check_seed(cfg.seed)
    axes = complete_orthonormal_frame(mean)
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    offsets = rng.standard_normal((cfg.n, sigmas.shape[0])) * sigmas
    raw = mean + offsets @ axes
    # offsets are orthogonal to mean, so every row norm is >= 1
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def _vertex_arclength_fractions(points: "NDArray") -> "NDArray":
    edges = np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=1)
    total = float(edges.sum())
    cumulative = np.concatenate([[0.0], np.cumsum(edges[:-1])])
    return cumulative / total


def _radial_field(s: "NDArray", sigma: float, rng) -> "NDArray":
    # draw order is part of the on-disk contract: dominant pair first,
    # then one (cos, sin) pair per minor mode
    dom = rng.standard_normal(2)
    minor = rng.standard_normal((len(_MINOR_MODES), 2))
    angle = 2.0 * np.pi * s
    field = np.zeros_like(s)
    for (mode, kind, scale), g in zip(_DOMINANT_MODES, dom):
        wave = np.cos(mode * angle) if kind == "cos" else np.sin(mode * angle)
        field += sigma * scale * g * wave
    amp = sigma * _MINOR_AMPLITUDE / np.sqrt(2.0)
    for mode, pair in zip(_MINOR_MODES, minor):
        field += amp * (pair[0] * np.cos(mode * angle) + pair[1] * np.sin(mode * angle))
    return field


def gen_contour_sample(
    template: "NDArray",
    n: int,
    noise_sigma: float,
    seed: int,
) -> ContourDataset:
    """Generate n perturbed copies of a template contour.

    Each copy applies a smooth low-order Fourier radial field about the
    vertex centroid, then a random similarity transform (log-normal scale,
    uniform rotation, Gaussian translation). Contour i uses its own Philox
    stream keyed by (seed, i), so any subset is reproducible independently.
    """
    template = validate_contour(np.asarray(template, dtype=np.float64))
    if n < 1:
        raise InputError("n must be at least 1")
    if not math.isfinite(noise_sigma) or noise_sigma < 0.0:
        raise InputError("noise_sigma must be non-negative and finite")
    seed = _check_seed(seed)
    s = _vertex_arclength_fractions(template)
    centroid = template.mean(axis=0)
    rays = template - centroid
    translation_scale = _TRANSLATION_SIGMA * 2.0 * float(
        np.linalg.norm(rays, axis=1).max()
    )
    contours = []
    for i in range(n):
        rng = np.random.Generator(
            np.random.Philox(key=np.array([seed, i], dtype=np.uint64))
        )
        field = _radial_field(s, noise_sigma, rng)
        pts = centroid + (1.0 + field)[:, None] * rays
        scale = math.exp(_LOG_SCALE_SIGMA * rng.standard_normal())
        phi = rng.uniform(0.0, 2.0 * np.pi)
        rot = np.array(
            [[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]]
        )
        shift = translation_scale * rng.standard_normal(2)
        contours.append((pts - centroid) @ (scale * rot).T + centroid + shift)
    return ContourDataset(
        name=f"simulated-{seed}",
        contours=tuple(contours),
        names=tuple(f"contour_{i:03d}.csv" for i in range(n)),
        k_common=template.shape[0],
        provenance=(
            f"gen_contour_sample(n={n}, noise_sigma={noise_sigma!r}, seed={seed})"
        ),
    )


def butterfly_template(k: int = 500) -> "NDArray":
    """Closed two-winged silhouette used for the bundled substitute data."""
    theta = np.linspace(0.0, 2.0 * np.pi, k, endpoint=False)
    radius = (
        1.0
        + 0.55 * np.cos(2.0 * theta)
        + 0.16 * np.cos(4.0 * theta)
        - 0.08 * np.sin(6.0 * theta)
    )
    pts = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    return resample_arclength(pts, k)


# --- serialization ------------------------------------------------------------


def write_contour_dataset(dataset: ContourDataset, out_dir) -> list[Path]:
    """Write every contour CSV plus a manifest JSON; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, contour in zip(dataset.names, dataset.contours):
        path = out / name
        _write_text(path, contour_csv_text(contour))
        written.append(path)
    manifest = {
        "name": dataset.name,
        "files": list(dataset.names),
        "k_common": dataset.k_common,
        "provenance": dataset.provenance,
        "sha256": dataset_sha256(dataset),
    }
    manifest_path = out / "manifest.json"
    _write_text(manifest_path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    written.append(manifest_path)
    return written


def _csv_table(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines.extend(rows)
    return "\n".join(lines) + "\n"


def _coordinate_header(width: int) -> list[str]:
    return [f"x{i}" for i in range(width)]


def _contour_rows(points: "NDArray"):
    return (_format_row(row) for row in points)


def _write_scree(result: "EpcaResult", path: Path) -> None:
    cumulative = np.cumsum(result.explained_ratio)
    rows = [
        f"{i + 1},{_format_row([w, r, c])}"
        for i, (w, r, c) in enumerate(
            zip(result.eigenvalues, result.explained_ratio, cumulative)
        )
    ]
    _write_text(path, _csv_table(["component", "eigenvalue", "ratio", "cumulative"], rows))


def _mean_as_xy(result: "EpcaResult") -> "NDArray":
    mean = result.extrinsic_mean
    return np.column_stack([mean.real, mean.imag])


def _write_mean(result: "EpcaResult", path: Path) -> None:
    if result.backend.name == "sphere":
        mean = result.extrinsic_mean
        text = _csv_table(_coordinate_header(mean.shape[0]), [_format_row(mean)])
    else:
        text = _csv_table(["x", "y"], _contour_rows(_mean_as_xy(result)))
    _write_text(path, text)


def _write_scores(result: "EpcaResult", path: Path) -> None:
    header = [f"score_{j + 1}" for j in range(result.n_components)]
    scores = result.scores
    if result.n_samples < 2:
        # a single point scores identically zero about its own mean;
        # suppress the rounding residue instead of serializing it
        scores = np.zeros_like(scores)
    rows = (_format_row(row) for row in scores)
    _write_text(path, _csv_table(header, rows))


def _write_curve(result: "EpcaResult", component: int, path: Path) -> None:
    from .engine import default_t_grid, principal_curve_points

    if result.backend.name == "sphere":
        t_grid = default_t_grid()
        points = principal_curve_points(result, component, t_grid)
        header = ["t"] + _coordinate_header(points[0].shape[0])
        rows = (
            f"{_FLOAT_FMT % t},{_format_row(p)}" for t, p in zip(t_grid, points)
        )
    else:
        t_grid = default_t_grid(_SHAPE_CURVE_T_POINTS)
        points = principal_curve_points(result, component, t_grid)
        header = ["t", "x", "y"]
        rows = (
            f"{_FLOAT_FMT % t},{_format_row((zk.real, zk.imag))}"
            for t, z in zip(t_grid, points)
            for zk in z
        )
    _write_text(path, _csv_table(header, rows))


def write_results(result: "EpcaResult", out_dir) -> list[Path]:
    """Write scree/mean/scores CSVs, per-component curve CSVs, and scree.svg.

    CSV cells carry 17 significant digits with LF line endings, so reading
    them back reproduces every float64 exactly. Principal-curve files are
    emitted for the first two components and skipped for any component
    whose eigenvalue is tied with a neighbor.
    """
    from .plots import render_scree

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    scree = out / "scree.csv"
    _write_scree(result, scree)
    written.append(scree)

    mean = out / "mean.csv"
    _write_mean(result, mean)
    written.append(mean)

    scores = out / "scores.csv"
    _write_scores(result, scores)
    written.append(scores)

    for component in range(min(2, result.n_components)):
        path = out / f"pc_curve_{component + 1}.csv"
        try:
            _write_curve(result, component, path)
        except MultiplicityError:
            continue  # tied eigenvalues have no single principal curve
        written.append(path)

    svg = out / "scree.svg"
    render_scree(result, svg)
    written.append(svg)
    return written


def write_projections(result: "EpcaResult", out_dir, component: int = 0) -> Path:
    """Write the projection of every sample point onto one principal curve."""
    from .engine import project_sample_to_pc

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    points = project_sample_to_pc(result, component)
    path = out / "projections.csv"
    if result.backend.name == "sphere":
        header = _coordinate_header(points[0].shape[0])
        rows = (_format_row(p) for p in points)
    else:
        header = ["sample", "x", "y"]
        rows = (
            f"{i + 1},{_format_row((zk.real, zk.imag))}"
            for i, z in enumerate(points)
            for zk in z
        )
    _write_text(path, _csv_table(header, rows))
    return path
