"""Tests for the planar-shape / projective backends."""

import dataclasses

import numpy as np
import pytest

from epca.data import butterfly_template
from epca.errors import FocalPointError, InputError
from epca.oracle import general_extrinsic_covariance
from epca.shapes import (
    PlanarShapeBackend,
    ProjectiveBackend,
    centered_basis,
    phase_normalize,
    realify_hermitian,
    resample_arclength,
    shape_chord_distance,
    shape_pc_curve,
    signed_area,
    to_preshape,
    unrealify_hermitian,
    validate_contour,
    vw_embed,
    vw_extrinsic_covariance,
    vw_mean,
    vw_scores,
    vw_spectrum,
    vw_tangent_frame,
)
from helpers import QUAD, embedded_chord, perturbed_preshapes, triangle_sample

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])

# frozen vw_mean of helpers.TRIANGLES, cross-checked against the grid
# minimizer of the chord objective in the oracle tests
TRIANGLE_MEAN = np.array(
    [
        -0.3269332106875822 - 0.45050966207064763j,
        0.6291672078698375 + 0.0j,
        -0.3022339971822553 + 0.45050966207064763j,
    ]
)


def total_curvature(points: np.ndarray) -> float:
    edges = np.roll(points, -1, axis=0) - points
    headings = np.arctan2(edges[:, 1], edges[:, 0])
    turns = np.diff(np.concatenate([headings, headings[:1]]))
    turns = (turns + np.pi) % (2.0 * np.pi) - np.pi
    return float(np.abs(turns).sum())


# --- contours and preshapes -----------------------------------------------------


def test_validate_contour_rules():
    with pytest.raises(InputError):
        validate_contour(SQUARE[:2])  # k < 3
    with pytest.raises(InputError):
        validate_contour(np.array([[0.0, 0], [0.0, 0], [1.0, 0], [0.0, 1]]))
    with pytest.raises(InputError):
        validate_contour(SQUARE[::-1])  # clockwise
    with pytest.raises(InputError):
        validate_contour(np.array([[0.0, 0], [1.0, np.nan], [0.0, 1]]))
    closed = np.vstack([SQUARE, SQUARE[:1]])  # explicit closing point dropped
    assert validate_contour(closed).shape == (4, 2)


def test_signed_area_orientation():
    assert signed_area(SQUARE) == 1.0
    assert signed_area(SQUARE[::-1]) == -1.0


def test_to_preshape_is_centered_unit():
    z = to_preshape(SQUARE)
    assert abs(z.sum()) <= 1e-10
    assert abs(np.linalg.norm(z) - 1.0) <= 1e-10


def test_to_preshape_translation_invariant():
    np.testing.assert_allclose(
        to_preshape(SQUARE + np.array([5.0, 7.0])), to_preshape(SQUARE), atol=1e-12
    )


def test_to_preshape_scale_invariant():
    np.testing.assert_allclose(to_preshape(3.0 * SQUARE), to_preshape(SQUARE), atol=1e-12)


def test_to_preshape_rejects_degenerate():
    with pytest.raises(InputError):
        to_preshape(np.zeros((4, 2)))


def test_resample_square_to_eight():
    out = resample_arclength(SQUARE, 8)
    expected = np.array(
        [
            [0.0, 0.0],
            [0.5, 0.0],
            [1.0, 0.0],
            [1.0, 0.5],
            [1.0, 1.0],
            [0.5, 1.0],
            [0.0, 1.0],
            [0.0, 0.5],
        ]
    )
    np.testing.assert_allclose(out, expected, rtol=0, atol=1e-12)


def test_resample_identity_on_equally_spaced_input():
    np.testing.assert_allclose(resample_arclength(SQUARE, 4), SQUARE, rtol=0, atol=1e-12)


def perimeter(points: np.ndarray) -> float:
    return float(np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=1).sum())


def test_resample_never_lengthens():
    rng = np.random.default_rng(8)
    for _ in range(5):
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=12))
        radii = rng.uniform(0.5, 1.5, size=12)
        poly = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        for m in (5, 12, 40):
            assert perimeter(resample_arclength(poly, m)) <= perimeter(poly) + 1e-12
    # vertices all hit: length preserved
    assert abs(perimeter(resample_arclength(SQUARE, 8)) - perimeter(SQUARE)) <= 1e-9


def test_resample_rejects_tiny_count():
    with pytest.raises(InputError):
        resample_arclength(SQUARE, 2)


def test_phase_normalize_convention():
    z = np.array([0.3j, -0.9, 0.1 + 0.1j])
    out = phase_normalize(z)
    j = int(np.argmax(np.abs(out)))
    assert out[j].imag == 0.0
    assert out[j].real > 0.0
    np.testing.assert_allclose(np.abs(out), np.abs(z), atol=1e-15)
    assert np.array_equal(phase_normalize(np.zeros(3, dtype=complex)), np.zeros(3))


# --- realified coordinates ------------------------------------------------------


def random_hermitian(seed: int, k: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    return (a + a.conj().T) / 2.0


@pytest.mark.parametrize("seed,k", [(0, 2), (1, 3), (2, 5)])
def test_realify_round_trip_and_isometry(seed, k):
    a = random_hermitian(seed, k)
    b = random_hermitian(seed + 10, k)
    np.testing.assert_allclose(
        unrealify_hermitian(realify_hermitian(a), k), a, rtol=0, atol=1e-15
    )
    hs = float(np.trace(a @ b).real)
    euclid = float(realify_hermitian(a) @ realify_hermitian(b))
    assert abs(hs - euclid) <= 1e-12 * max(1.0, abs(hs))


def test_centered_basis_spans_centered_subspace():
    b = centered_basis(5)
    assert b.shape == (5, 4)
    np.testing.assert_allclose(b.T @ b, np.eye(4), rtol=0, atol=1e-12)
    np.testing.assert_allclose(b.sum(axis=0), np.zeros(4), rtol=0, atol=1e-12)


# --- embedding -------------------------------------------------------------------


def test_embed_basis_vector_is_single_entry_projector():
    backend = ProjectiveBackend(3)
    h = unrealify_hermitian(backend.embed(np.array([1.0 + 0j, 0.0, 0.0])), 3)
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 0] = 1.0
    np.testing.assert_allclose(h, expected, rtol=0, atol=1e-15)


def test_vw_embed_phase_invariant():
    z = to_preshape(SQUARE)
    np.testing.assert_allclose(
        vw_embed(np.exp(0.7j) * z), vw_embed(z), rtol=0, atol=1e-12
    )


def test_vw_embed_projector_identities():
    h = vw_embed(to_preshape(QUAD))
    assert abs(np.trace(h) - 1.0) <= 1e-10
    np.testing.assert_allclose(h @ h, h, rtol=0, atol=1e-10)
    np.testing.assert_allclose(h, h.conj().T, rtol=0, atol=1e-12)


def test_vw_embed_requires_preshape():
    with pytest.raises(InputError):
        vw_embed(np.array([1.0 + 0j, 0.0, 0.0]))  # not centered


# --- vw_mean ---------------------------------------------------------------------


def test_vw_mean_single_shape():
    z = to_preshape(QUAD)
    mean = vw_mean(z[None, :])
    assert shape_chord_distance(mean, z) <= 1e-12
    np.testing.assert_allclose(mean, phase_normalize(z), rtol=0, atol=1e-12)


def test_vw_mean_ignores_phases():
    z = to_preshape(SQUARE)
    sample = np.stack([z, np.exp(0.4j) * z, np.exp(-1.3j) * z])
    assert shape_chord_distance(vw_mean(sample), z) <= 1e-12


def test_vw_mean_frozen_triangles():
    np.testing.assert_allclose(
        vw_mean(triangle_sample()), TRIANGLE_MEAN, rtol=0, atol=1e-15
    )


def test_vw_mean_tie_is_focal():
    basis = centered_basis(3).astype(complex)
    sample = np.stack([basis[:, 0], basis[:, 1]])  # balanced orthogonal pair
    with pytest.raises(FocalPointError):
        vw_mean(sample)


def test_vw_mean_permutation_invariant_bitwise():
    sample = perturbed_preshapes(4, QUAD, n=6, spread=0.1)
    forward = vw_mean(sample)
    backward = vw_mean(sample[::-1])
    assert np.array_equal(forward, backward)


# --- tangent frame and scores -----------------------------------------------------


def test_tangent_frame_dimension_and_orthonormality():
    spectrum = vw_spectrum(triangle_sample())
    frame = vw_tangent_frame(spectrum)
    assert frame.vectors.shape == (2, 9)  # 2k-4 = 2 for k=3
    gram = frame.vectors @ frame.vectors.T
    np.testing.assert_allclose(gram, np.eye(2), rtol=0, atol=1e-10)
    # tangent at the base point: HS-orthogonal to the embedded mean
    assert np.max(np.abs(frame.vectors @ frame.base_point)) <= 1e-10


def test_tangent_frame_span_invariant_under_direction_phases():
    spectrum = vw_spectrum(perturbed_preshapes(9, QUAD, n=7, spread=0.08))
    frame = vw_tangent_frame(spectrum)
    rng = np.random.default_rng(0)
    phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=spectrum.directions.shape[1]))
    rephased = dataclasses.replace(spectrum, directions=spectrum.directions * phases)
    other = vw_tangent_frame(rephased)
    p1 = frame.vectors.T @ frame.vectors
    p2 = other.vectors.T @ other.vectors
    assert np.max(np.abs(p1 - p2)) <= 1e-9


def test_scores_match_explicit_frame():
    sample = triangle_sample()
    spectrum = vw_spectrum(sample)
    frame = vw_tangent_frame(spectrum)
    closed = vw_scores(sample, spectrum)
    explicit = np.stack(
        [frame.vectors @ realify_hermitian(np.outer(z, z.conj())) for z in sample]
    )
    np.testing.assert_allclose(closed, explicit, rtol=0, atol=1e-12)


# --- covariance --------------------------------------------------------------------


def test_covariance_zero_for_identical_shapes():
    z = to_preshape(QUAD)
    sample = np.stack([z, np.exp(0.9j) * z, np.exp(-0.2j) * z, z])
    cov = vw_extrinsic_covariance(sample)
    assert np.max(np.abs(cov.matrix)) <= 1e-12


def test_covariance_real_case_dual_route():
    # real rows make the problem a real projective one: the closed form
    # must (a) equal twice the per-entry product formula written for
    # non-unit tangent vectors m_a m* + m m_a* (whose squared norm is 2),
    # and (b) match the finite-difference general estimator
    rng = np.random.default_rng(42)
    raw = np.array([1.0, 0.0, 0.0]) + 0.25 * rng.normal(size=(5, 3))
    sample = (raw / np.linalg.norm(raw, axis=1, keepdims=True)).astype(complex)
    backend = ProjectiveBackend(3)
    model = backend.fit_tangent(sample)
    closed = backend.covariance(sample, model)

    dirs = model.directions
    gaps = model.gaps
    a_proj = (sample @ dirs.conj()).real  # (n, 2), imaginary parts vanish
    m_proj = (sample @ model.mean.conj()).real
    literal = np.zeros((2, 2))
    for a in range(2):
        for b in range(2):
            literal[a, b] = (
                np.sum(a_proj[:, a] * a_proj[:, b] * m_proj**2)
                / (gaps[a] * gaps[b])
                / sample.shape[0]
            )

    re_block = closed[0::2][:, 0::2]
    im_rows = np.delete(closed, [0, 2], axis=0)
    np.testing.assert_allclose(re_block, 2.0 * literal, rtol=0, atol=1e-15)
    assert np.max(np.abs(im_rows)) == 0.0

    general = general_extrinsic_covariance(sample, backend)
    rel = np.linalg.norm(closed - general) / np.linalg.norm(general)
    assert rel <= 1e-6


def test_covariance_complex_case_matches_general_estimator():
    sample = perturbed_preshapes(3, QUAD, n=6, spread=0.1)
    backend = PlanarShapeBackend(4)
    closed = vw_extrinsic_covariance(sample)
    assert closed.matrix.shape == (4, 4)  # 2k-4 for k=4
    general = general_extrinsic_covariance(sample, backend)
    rel = np.linalg.norm(closed.matrix - general) / np.linalg.norm(general)
    assert rel <= 1e-6
    # spectrum travels with the matrix it indexes
    assert closed.spectrum.k == 4


# --- distances and curves ------------------------------------------------------------


def test_chord_distance_basics():
    z = to_preshape(SQUARE)
    w = to_preshape(QUAD)
    # the closed form bottoms out at sqrt(eps) when the overlap rounds
    # just below 1, so "zero" means anything under that floor
    assert shape_chord_distance(z, z) <= 1e-7
    assert abs(shape_chord_distance(z, w) - shape_chord_distance(w, z)) <= 1e-15
    assert (
        abs(shape_chord_distance(np.exp(1.1j) * z, w) - shape_chord_distance(z, w))
        <= 1e-12
    )
    with pytest.raises(InputError):
        shape_chord_distance(z, to_preshape(SQUARE[:3]))


def test_chord_distance_orthogonal_is_sqrt_two():
    basis = centered_basis(3).astype(complex)
    d = shape_chord_distance(basis[:, 0], basis[:, 1])
    assert abs(d - np.sqrt(2.0)) <= 1e-12


def test_pc_curve_origin_and_invariants():
    spectrum = vw_spectrum(triangle_sample())
    mean = vw_mean(triangle_sample())
    direction = spectrum.directions[:, 0]
    np.testing.assert_allclose(shape_pc_curve(mean, direction, 0.0), mean, atol=1e-12)
    for t in np.linspace(-1.5, 1.5, 21):
        z = shape_pc_curve(mean, direction, t)
        assert abs(z.sum()) <= 1e-10
        assert abs(np.linalg.norm(z) - 1.0) <= 1e-10


def test_pc_curve_distance_monotone_in_abs_t():
    spectrum = vw_spectrum(triangle_sample())
    mean = vw_mean(triangle_sample())
    direction = spectrum.directions[:, 0]
    ts = np.linspace(0.05, 1.5, 20)
    dists = [shape_chord_distance(shape_pc_curve(mean, direction, t), mean) for t in ts]
    assert np.all(np.diff(dists) > 0.0)
    neg = [shape_chord_distance(shape_pc_curve(mean, direction, -t), mean) for t in ts]
    np.testing.assert_allclose(neg, dists, atol=1e-12)


def test_pc_curve_rejects_bad_directions():
    mean = vw_mean(triangle_sample())
    with pytest.raises(InputError):
        shape_pc_curve(mean, mean, 0.1)  # not orthogonal
    uncentered = np.array([1.0 + 0j, 0.0, 0.0])
    with pytest.raises(InputError):
        shape_pc_curve(mean, uncentered, 0.1)


# --- backend projection primitives ----------------------------------------------------


def test_project_recovers_shape_class():
    backend = PlanarShapeBackend(4)
    z = to_preshape(QUAD)
    recovered = backend.project(backend.embed(z))
    assert shape_chord_distance(recovered, z) <= 1e-12


def test_project_focal_ambient_point():
    backend = ProjectiveBackend(2)
    half_identity = realify_hermitian(np.eye(2, dtype=complex) / 2.0)
    assert backend.is_focal(half_identity)
    with pytest.raises(FocalPointError):
        backend.project(half_identity)


def test_backend_validation():
    with pytest.raises(InputError):
        PlanarShapeBackend(2)
    with pytest.raises(InputError):
        ProjectiveBackend(1)
    backend = PlanarShapeBackend(4)
    with pytest.raises(InputError):
        backend.scores(triangle_sample(), None)  # k=3 data on a k=4 backend
    with pytest.raises(InputError):
        ProjectiveBackend(3).embed(np.array([2.0 + 0j, 0.0, 0.0]))


# --- end-to-end invariances -------------------------------------------------------------


def similarity_transform(contour, angle, scale, shift):
    rot = np.array(
        [[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]]
    )
    return contour @ (scale * rot).T + shift


@pytest.mark.parametrize("seed", range(3))
def test_similarity_invariance_end_to_end(seed):
    rng = np.random.default_rng(seed)
    template = butterfly_template(40)
    contours = [
        template + 0.02 * rng.normal(size=template.shape) for _ in range(8)
    ]
    moved = [
        similarity_transform(
            c,
            rng.uniform(0.0, 2.0 * np.pi),
            float(np.exp(rng.normal() * 0.3)),
            rng.normal(size=2) * 5.0,
        )
        for c in contours
    ]
    base = np.stack([to_preshape(c) for c in contours])
    trans = np.stack([to_preshape(c) for c in moved])
    assert embedded_chord(vw_mean(base), vw_mean(trans)) <= 1e-9
    ev_base = np.linalg.eigvalsh(vw_extrinsic_covariance(base).matrix)
    ev_trans = np.linalg.eigvalsh(vw_extrinsic_covariance(trans).matrix)
    np.testing.assert_allclose(ev_base, ev_trans, rtol=0, atol=1e-9)


def test_mean_shape_is_smoother_than_samples():
    # vertex-level jitter roughens every sample contour; averaging in the
    # embedding must not keep that roughness
    template = butterfly_template(100)
    rng = np.random.default_rng(5)
    sample = np.stack(
        [to_preshape(template + 0.01 * rng.normal(size=template.shape)) for _ in range(16)]
    )
    mean = vw_mean(sample)
    mean_curv = total_curvature(np.column_stack([mean.real, mean.imag]))
    sample_curvs = [
        total_curvature(np.column_stack([z.real, z.imag])) for z in sample
    ]
    assert mean_curv <= float(np.median(sample_curvs))
