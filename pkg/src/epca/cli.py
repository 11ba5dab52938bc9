"""Command-line front end: simulate, ingest, run extrinsic PCA, verify.

Exit codes: 0 success, 1 input/parse error, 2 focal or degenerate
geometry, 3 oracle verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from ._threads import parse_thread_cap
from .errors import (
    EpcaError,
    FocalPointError,
    InputError,
    MultiplicityError,
    ParseError,
)

log = logging.getLogger("epca")

_DEFAULT_MEAN = "0.2153,0.8692,0.4461"
_DEFAULT_SIGMAS = "0.18,0.065"


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; 2 is reserved for focality
    # here, so usage errors exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_floats(raw: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(field) for field in raw.split(","))
    except ValueError:
        raise InputError(
            f"{flag} expects comma-separated numbers, got {raw!r}"
        ) from None


# --- sphere-demo --------------------------------------------------------------


def cmd_sphere_demo(
    n: int,
    sigmas: tuple[float, ...],
    seed: int | None,
    out_dir,
    mean_direction: tuple[float, ...] | None = None,
    input_path=None,
) -> int:
    """Generate (or load) a sphere sample, run the pipeline, write results."""
    import numpy as np

    from . import data as data_mod
    from . import plots as plots_mod
    from .engine import run_epca
    from .sphere import SphereBackend

    if input_path is not None:
        sample = data_mod.read_sphere_points(input_path)
        log.info("loaded %d points from %s", sample.shape[0], input_path)
    else:
        if seed is None:
            raise InputError("--seed is required when generating a sample")
        direction = np.asarray(
            mean_direction if mean_direction is not None else
            _parse_floats(_DEFAULT_MEAN, "--mean"),
            dtype=np.float64,
        )
        norm = float(np.linalg.norm(direction))
        if norm == 0.0:
            raise InputError("--mean must be a nonzero direction")
        cfg = data_mod.SyntheticSphereConfig(
            n=n,
            mean_direction=direction / norm,
            tangent_sigmas=np.asarray(sigmas, dtype=np.float64),
            seed=seed,
        )
        sample = data_mod.gen_sphere_sample(cfg)
        log.info("generated %d points around %s", n, direction / norm)

    backend = SphereBackend(sample.shape[1] - 1)
    result = run_epca(sample, backend)
    if result.zero_spread:
        print("warning: sample has no spread, all eigenvalues are zero",
              file=sys.stderr)
    files = data_mod.write_results(result, out_dir)
    try:
        files.append(data_mod.write_projections(result, out_dir, component=0))
    except MultiplicityError:
        pass  # tied top eigenvalues: no single first curve to project onto
    scores_svg = plots_mod.render_scores(result, Path(out_dir) / "scores.svg")
    if scores_svg is not None:
        files.append(scores_svg)
    for path in files:
        log.info("wrote %s", path)
    print(f"wrote {len(files)} files to {out_dir}")
    return 0


# --- shape-pca ----------------------------------------------------------------


def cmd_shape_pca(
    input_manifest,
    resample_k: int | None,
    out_dir,
    resample: bool = True,
) -> int:
    """Ingest contours, run the planar shape pipeline, write results."""
    import numpy as np

    from . import data as data_mod
    from . import plots as plots_mod
    from .engine import run_epca
    from .shapes import PlanarShapeBackend, to_preshape

    if str(input_manifest) == "bundled":
        dataset = data_mod.load_bundled_contours(resample_to=resample_k)
    else:
        dataset = data_mod.read_contours(
            input_manifest, resample_to=resample_k, resample=resample
        )
    log.info("loaded %d contours with %d points", dataset.n, dataset.k_common)
    sample = np.stack([to_preshape(c) for c in dataset.contours])
    backend = PlanarShapeBackend(dataset.k_common)
    result = run_epca(sample, backend)
    if result.zero_spread:
        print("warning: sample has no spread, all eigenvalues are zero",
              file=sys.stderr)
    files = data_mod.write_results(result, out_dir)
    scores_svg = plots_mod.render_scores(result, Path(out_dir) / "scores.svg")
    if scores_svg is not None:
        files.append(scores_svg)
    files.append(
        plots_mod.render_mean_contour(result, Path(out_dir) / "mean_contour.svg")
    )
    for path in files:
        log.info("wrote %s", path)
    cumulative = float(np.cumsum(result.explained_ratio)[: 2][-1])
    print(
        f"n={result.n_samples} k={dataset.k_common} "
        f"cumulative_ratio_2={cumulative:.4f}"
    )
    print(f"wrote {len(files)} files to {out_dir}")
    return 0


# --- simulate-contours --------------------------------------------------------


def cmd_simulate_contours(
    template_path,
    n: int,
    noise_sigma: float,
    seed: int,
    k: int,
    out_dir,
) -> int:
    """Generate a perturbed contour dataset and write it with a manifest."""
    from . import data as data_mod
    from .shapes import resample_arclength

    if template_path is None:
        template = data_mod.butterfly_template(k)
    else:
        loaded = data_mod.read_contours(template_path)
        template = loaded.contours[0]
        if template.shape[0] != k:
            template = resample_arclength(template, k)
    dataset = data_mod.gen_contour_sample(template, n, noise_sigma, seed)
    files = data_mod.write_contour_dataset(dataset, out_dir)
    digest = data_mod.dataset_sha256(dataset)
    print(f"wrote {len(files)} files to {out_dir} (sha256 {digest[:16]})")
    return 0


# --- verify -------------------------------------------------------------------


def _verify_sphere(seed: int) -> list[tuple[str, float, float]]:
    # calls go through the module namespaces so a corrupted (monkeypatched)
    # closed form is caught against the independent finite-difference route
    import numpy as np

    from . import oracle as oracle_mod
    from . import sphere as sphere_mod
    from .geometry import complete_orthonormal_frame

    rng = np.random.default_rng(seed)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    axes = complete_orthonormal_frame(direction)
    offsets = rng.normal(size=(40, 2)) * np.array([0.3, 0.12])
    sample = direction + offsets @ axes
    sample /= np.linalg.norm(sample, axis=1, keepdims=True)

    backend = sphere_mod.SphereBackend(2)
    model = backend.fit_tangent(sample)
    checks = []

    grid = oracle_mod.fibonacci_sphere_grid(100_000)
    argmin = oracle_mod.frechet_grid_argmin(sample, backend, grid)
    checks.append(
        ("mean matches grid argmin",
         float(np.linalg.norm(argmin - model.mean)), 1e-2)
    )

    closed = sphere_mod.sphere_extrinsic_covariance(
        sample, model.mean, backend.tangent_frame(model)
    )
    general = oracle_mod.general_extrinsic_covariance(sample, backend)
    rel = float(np.linalg.norm(closed - general) / np.linalg.norm(general))
    checks.append(("covariance matches finite differences", rel, 1e-6))

    dp_closed = sphere_mod.sphere_projection_differential(model.ambient_mean)
    dp_fd = oracle_mod.finite_diff_dP(backend, model.ambient_mean)
    checks.append(
        ("projection differential matches finite differences",
         float(np.max(np.abs(dp_closed - dp_fd))), 1e-6)
    )
    return checks


def _verify_shape(seed: int) -> list[tuple[str, float, float]]:
    import numpy as np

    from . import oracle as oracle_mod
    from . import shapes as shapes_mod

    rng = np.random.default_rng(seed)
    checks = []

    base3 = np.array([[0.0, 0.0], [1.0, 0.0], [0.4, 0.8]])
    triangles = np.stack(
        [
            shapes_mod.to_preshape(base3 + 0.15 * rng.normal(size=(3, 2)))
            for _ in range(4)
        ]
    )
    backend3 = shapes_mod.PlanarShapeBackend(3)
    mean = shapes_mod.vw_mean(triangles)
    grid = oracle_mod.cp1_shape_grid(500, 1000)
    argmin = oracle_mod.frechet_grid_argmin(triangles, backend3, grid)
    checks.append(
        ("mean matches grid argmin",
         shapes_mod.shape_chord_distance(argmin, mean), 1e-2)
    )

    base4 = np.array([[0.0, 0.0], [1.0, 0.2], [1.2, 1.1], [-0.2, 0.9]])
    quads = np.stack(
        [
            shapes_mod.to_preshape(base4 + 0.1 * rng.normal(size=(4, 2)))
            for _ in range(6)
        ]
    )
    backend4 = shapes_mod.PlanarShapeBackend(4)
    closed = shapes_mod.vw_extrinsic_covariance(quads).matrix
    general = oracle_mod.general_extrinsic_covariance(quads, backend4)
    rel = float(np.linalg.norm(closed - general) / np.linalg.norm(general))
    checks.append(("covariance matches finite differences", rel, 1e-6))

    eta = np.sort(rng.uniform(0.0, 1.0, size=4))
    while float(np.min(np.diff(eta))) < 0.15:
        eta = np.sort(rng.uniform(0.0, 1.0, size=4))
    projective = shapes_mod.ProjectiveBackend(4)
    mu = shapes_mod.realify_hermitian(np.diag(eta).astype(np.complex128))
    fd = oracle_mod.finite_diff_dP(projective, mu)
    worst = 0.0
    for a in range(3):
        f = np.zeros((4, 4), dtype=np.complex128)
        f[a, -1] = 1.0 / np.sqrt(2.0)
        f[-1, a] = 1.0 / np.sqrt(2.0)
        fv = shapes_mod.realify_hermitian(f)
        err = float(np.max(np.abs(fd @ fv - fv / (eta[-1] - eta[a]))))
        worst = max(worst, err)
    checks.append(("projection differential spectral gaps", worst, 1e-5))
    return checks


def cmd_verify(backend: str, seed: int) -> int:
    """Re-derive the closed forms by brute force and compare."""
    if backend == "sphere":
        checks = _verify_sphere(seed)
    elif backend == "shape":
        checks = _verify_shape(seed)
    else:
        raise InputError(f"unknown backend {backend!r}")
    failures = []
    for name, residual, tol in checks:
        ok = residual <= tol
        print(
            f"{'PASS' if ok else 'FAIL'}  {name:<48s} "
            f"residual={residual:.3e}  tol={tol:.0e}"
        )
        if not ok:
            failures.append(name)
    if failures:
        print("verification failed: " + "; ".join(failures), file=sys.stderr)
        return 3
    print(f"all {len(checks)} checks passed")
    return 0


# --- argument wiring ----------------------------------------------------------


def _run_sphere_demo(args) -> int:
    return cmd_sphere_demo(
        n=args.n,
        sigmas=_parse_floats(args.sigmas, "--sigmas"),
        seed=args.seed,
        out_dir=args.out,
        mean_direction=_parse_floats(args.mean, "--mean"),
        input_path=args.input,
    )


def _run_shape_pca(args) -> int:
    return cmd_shape_pca(
        input_manifest=args.input,
        resample_k=args.resample_k,
        out_dir=args.out,
        resample=not args.no_resample,
    )


def _run_simulate_contours(args) -> int:
    if args.noise_sigma < 0.0:
        raise InputError("--noise-sigma must be non-negative")
    return cmd_simulate_contours(
        template_path=args.template,
        n=args.n,
        noise_sigma=args.noise_sigma,
        seed=args.seed,
        k=args.k,
        out_dir=args.out,
    )


def _run_verify(args) -> int:
    return cmd_verify(backend=args.backend, seed=args.seed)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="epca",
        description="Extrinsic PCA on the sphere and on planar contour shapes.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    demo = sub.add_parser("sphere-demo", help="simulated sphere sample end to end")
    demo.add_argument("--n", type=int, default=300, help="sample size")
    demo.add_argument(
        "--sigmas", default=_DEFAULT_SIGMAS,
        help="comma-separated tangent standard deviations",
    )
    demo.add_argument(
        "--mean", default=_DEFAULT_MEAN,
        help="comma-separated mean direction (normalized)",
    )
    demo.add_argument("--seed", type=int, default=None, help="RNG seed")
    demo.add_argument(
        "--input", default=None,
        help="CSV of unit vectors to use instead of generating",
    )
    demo.add_argument("--out", required=True, help="output directory")
    demo.set_defaults(func=_run_sphere_demo)

    shape = sub.add_parser("shape-pca", help="contour dataset end to end")
    shape.add_argument(
        "--input", required=True,
        help="manifest JSON, contour CSV, or 'bundled'",
    )
    shape.add_argument(
        "--resample-k", type=int, default=None,
        help="resample every contour to this many points",
    )
    shape.add_argument(
        "--no-resample", action="store_true",
        help="require matching point counts instead of resampling",
    )
    shape.add_argument("--out", required=True, help="output directory")
    shape.set_defaults(func=_run_shape_pca)

    sim = sub.add_parser(
        "simulate-contours", help="generate a perturbed contour dataset"
    )
    sim.add_argument("--template", default=None, help="template contour CSV")
    sim.add_argument("--n", type=int, default=16, help="number of contours")
    sim.add_argument(
        "--noise-sigma", type=float, default=0.08,
        help="radial perturbation scale",
    )
    sim.add_argument("--seed", type=int, required=True, help="RNG seed")
    sim.add_argument(
        "--k", type=int, default=500, help="points per contour"
    )
    sim.add_argument("--out", required=True, help="output directory")
    sim.set_defaults(func=_run_simulate_contours)

    verify = sub.add_parser("verify", help="compare closed forms to brute force")
    verify.add_argument(
        "--backend", choices=("sphere", "shape"), required=True
    )
    verify.add_argument("--seed", type=int, default=1, help="RNG seed")
    verify.set_defaults(func=_run_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    raw_threads = os.environ.get("EPCA_THREADS")
    if raw_threads is not None:
        try:
            parse_thread_cap(raw_threads)
        except ValueError:
            print(
                f"epca: error: EPCA_THREADS must be a non-negative integer, "
                f"got {raw_threads!r}",
                file=sys.stderr,
            )
            return 1
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"epca: parse error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"epca: error: {exc}", file=sys.stderr)
        return 1
    except (FocalPointError, MultiplicityError) as exc:
        print(f"epca: degenerate geometry: {exc}", file=sys.stderr)
        return 2
    except EpcaError as exc:
        print(f"epca: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"epca: i/o error: {exc}", file=sys.stderr)
        return 1
