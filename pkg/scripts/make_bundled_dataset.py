"""Regenerate the bundled contour dataset.

Run from the repository root:

    python3 scripts/make_bundled_dataset.py

The parameters below are frozen; the dataset content hash is asserted in
the test suite, so changing anything here means refreshing those tests.
"""

from pathlib import Path

from epca import (
    PlanarShapeBackend,
    butterfly_template,
    dataset_sha256,
    gen_contour_sample,
    run_epca,
    to_preshape,
    write_contour_dataset,
)

N = 16
K = 500
NOISE_SIGMA = 0.08
SEED = 1
OUT = Path(__file__).resolve().parent.parent / "src" / "epca" / "data" / "butterfly"


def main() -> None:
    import dataclasses

    import numpy as np

    template = butterfly_template(K)
    dataset = gen_contour_sample(template, N, NOISE_SIGMA, SEED)
    dataset = dataclasses.replace(
        dataset,
        name="butterfly-substitute",
        provenance=(
            f"butterfly_template(k={K}) + gen_contour_sample(n={N}, "
            f"noise_sigma={NOISE_SIGMA}, seed={SEED}); "
            "regenerate with scripts/make_bundled_dataset.py"
        ),
    )
    write_contour_dataset(dataset, OUT)
    sample = np.stack([to_preshape(c) for c in dataset.contours])
    result = run_epca(sample, PlanarShapeBackend(K))
    cum2 = float(result.explained_ratio[:2].sum())
    print(f"wrote {dataset.n} contours to {OUT}")
    print(f"sha256  {dataset_sha256(dataset)}")
    print(f"cumulative ratio at component 2: {cum2:.4f}")


if __name__ == "__main__":
    main()
