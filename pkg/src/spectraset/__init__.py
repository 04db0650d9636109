"""One-to-many spectral upsampling toolkit.

Turns a target color into the full family of bounded smooth reflectance or
transmittance spectra that reproduce it, built on a warped B-spline
partition of unity. On top of the sampler sit tools for designing the
basis, for depth- and illuminant-dependent color effects, and for images
that hide patterns in metameric palettes.
"""

from .colorimetry import (
    Chromaticity,
    ColorXYZ,
    Illuminant,
    SpectralCurve,
    WAVELENGTH_GRID,
    get_illuminant,
    integrate_to_xyz,
    rgb_gamut,
    spectral_locus,
    white_point,
)
from .design import (
    WarpSearchResult,
    excess_area,
    fwhm,
    gamut_band_quads,
    optimize_warp,
    smoothness,
)
from .effects import (
    DepthTrajectory,
    MediumCoefficients,
    MetamerPaletteEntry,
    RepresentativeSet,
    brightest_member,
    depth_trajectory,
    equalize_luminance,
    medium_coefficients,
    metameric_palette,
    most_distinct_pair,
    pick_by_hue,
    representative_set,
    schlick_order,
    transmittance_at_depth,
)
from .errors import (
    GamutBoundaryError,
    GridMismatchError,
    InvalidBasisError,
    LuminanceUnreachableError,
    OutOfGamutError,
    SpectrasetError,
    UndefinedChromaticityError,
)
from .imaging import (
    SpectralImage,
    hidden_image,
    hidden_pattern,
    lambertian_color,
    select_by_luminance,
)
from .pubasis import PUBasis, WarpParams
from .sampler import ClassSample, ColorTarget, feasibility_check, max_luminance_weights, sample_class

__all__ = [
    "Chromaticity",
    "ClassSample",
    "ColorTarget",
    "ColorXYZ",
    "DepthTrajectory",
    "GamutBoundaryError",
    "GridMismatchError",
    "Illuminant",
    "InvalidBasisError",
    "LuminanceUnreachableError",
    "MediumCoefficients",
    "MetamerPaletteEntry",
    "OutOfGamutError",
    "PUBasis",
    "RepresentativeSet",
    "SpectralCurve",
    "SpectralImage",
    "SpectrasetError",
    "UndefinedChromaticityError",
    "WAVELENGTH_GRID",
    "WarpParams",
    "WarpSearchResult",
    "brightest_member",
    "depth_trajectory",
    "equalize_luminance",
    "excess_area",
    "feasibility_check",
    "fwhm",
    "gamut_band_quads",
    "get_illuminant",
    "hidden_image",
    "hidden_pattern",
    "integrate_to_xyz",
    "lambertian_color",
    "max_luminance_weights",
    "medium_coefficients",
    "metameric_palette",
    "most_distinct_pair",
    "optimize_warp",
    "pick_by_hue",
    "representative_set",
    "rgb_gamut",
    "sample_class",
    "schlick_order",
    "select_by_luminance",
    "smoothness",
    "spectral_locus",
    "transmittance_at_depth",
    "white_point",
]

__version__ = "0.1.0"
