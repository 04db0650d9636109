"""Exception types shared across the package."""

from __future__ import annotations


class SpectrasetError(Exception):
    """Base class for all package-specific errors."""


class GridMismatchError(SpectrasetError, ValueError):
    """Spectral data does not line up with the shared wavelength grid."""


class UndefinedChromaticityError(SpectrasetError, ValueError):
    """Chromaticity requested for a color with non-positive X+Y+Z."""


class InvalidBasisError(SpectrasetError, ValueError):
    """Basis configuration cannot produce a valid partition of unity."""


class OutOfGamutError(SpectrasetError):
    """Target chromaticity lies outside the achievable region."""

    def __init__(self, message: str, point: tuple[float, float] | None = None):
        super().__init__(message)
        self.point = point


class GamutBoundaryError(OutOfGamutError):
    """Target chromaticity sits exactly on the gamut boundary.

    Boundary targets admit only a degenerate one-dimensional family of
    spectra; callers should nudge the target inward instead.
    """


class LuminanceUnreachableError(SpectrasetError):
    """Requested luminance could not be met by any accepted sample."""
