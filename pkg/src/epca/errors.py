"""Exception hierarchy shared by all backends and the CLI.

The CLI maps these onto its exit-code contract: InputError -> 1,
FocalPointError (and spectral degeneracy) -> 2, verification mismatch -> 3.
"""

from __future__ import annotations


class EpcaError(Exception):
    """Base class for all library errors."""


class InputError(EpcaError):
    """Invalid argument: wrong shape, non-finite entries, bad flags."""


class ParseError(InputError):
    """Malformed input file.  Carries the 1-based line number when known.

    `message` keeps the bare description so callers can re-wrap it (for
    example to prefix the offending file name); str() carries the line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FocalPointError(EpcaError):
    """The ambient point has no unique nearest point on the embedded
    manifold, so the projection (and anything downstream of it) is
    undefined.  Raised for near-zero ambient means on the sphere and for
    spectral-gap failures of the averaged shape projector."""


class MultiplicityError(EpcaError):
    """A principal curve was requested for a component that sits inside an
    eigenvalue multiplicity group; the 1-D curve is not defined there."""
