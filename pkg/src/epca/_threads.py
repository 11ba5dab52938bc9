"""EPCA_THREADS handling.

BLAS libraries read their thread-count env vars when numpy first loads,
so the cap must be exported before any numpy import. The package __init__
calls apply_thread_cap() ahead of every numeric submodule.
"""

from __future__ import annotations

import os

BLAS_ENV_VARS = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def parse_thread_cap(raw: str) -> int:
    """Parse an EPCA_THREADS value; 0 means automatic."""
    cap = int(raw)
    if cap < 0:
        raise ValueError("EPCA_THREADS must be >= 0")
    return cap


def apply_thread_cap() -> None:
    """Export the EPCA_THREADS cap to the BLAS env vars.

    Invalid values are ignored here so importing the library never fails;
    the CLI validates the variable separately and reports it.
    """
    raw = os.environ.get("EPCA_THREADS")
    if raw is None:
        return
    try:
        cap = parse_thread_cap(raw)
    except ValueError:
        return
    if cap == 0:
        return
    for var in BLAS_ENV_VARS:
        os.environ[var] = str(cap)
