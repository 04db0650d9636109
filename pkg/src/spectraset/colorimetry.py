"""CIE 1931 colorimetry on a shared 1nm wavelength grid.

All color math in the package runs over the fixed range 385-700nm sampled
every 1nm (316 nodes). Tristimulus integration uses trapezoidal quadrature
and normalizes by the illuminant-weighted luminosity integral, so a perfect
reflector has luminance Y = 1 under any illuminant.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

from .cie_data import (
    CMF_5NM,
    D65_5NM,
    F2_5NM,
    LAMBDA_MAX,
    LAMBDA_MIN,
    WAVELENGTHS_5NM,
)
from .errors import GridMismatchError, UndefinedChromaticityError
from .geometry import GamutPolygon

GRID_STEP_NM = 1.0

WAVELENGTH_GRID = np.arange(LAMBDA_MIN, LAMBDA_MAX + 0.5 * GRID_STEP_NM, GRID_STEP_NM)
WAVELENGTH_GRID.setflags(write=False)

GRID_SIZE = len(WAVELENGTH_GRID)


def cmf_values(wavelengths: np.ndarray) -> np.ndarray:
    """CIE 1931 2-degree observer values, linearly interpolated from 5nm data.

    Returns an array of shape (n, 3) with columns x_bar, y_bar, z_bar.
    Wavelengths must lie within the working range.
    """
    lam = np.atleast_1d(np.asarray(wavelengths, dtype=float))
    if lam.min() < LAMBDA_MIN - 1e-9 or lam.max() > LAMBDA_MAX + 1e-9:
        raise GridMismatchError(
            f"wavelengths outside [{LAMBDA_MIN:g}, {LAMBDA_MAX:g}]nm"
        )
    return np.column_stack(
        [np.interp(lam, WAVELENGTHS_5NM, CMF_5NM[:, i]) for i in range(3)]
    )


CMF_GRID = cmf_values(WAVELENGTH_GRID)
CMF_GRID.setflags(write=False)


def _trapezoid_weights(n: int, step: float) -> np.ndarray:
    w = np.full(n, step)
    w[0] = w[-1] = 0.5 * step
    return w


QUADRATURE_WEIGHTS = _trapezoid_weights(GRID_SIZE, GRID_STEP_NM)
QUADRATURE_WEIGHTS.setflags(write=False)


def _on_grid(wavelengths: np.ndarray, tol: float = 1e-9) -> bool:
    lam = np.asarray(wavelengths, dtype=float)
    return lam.shape == WAVELENGTH_GRID.shape and bool(
        np.all(np.abs(lam - WAVELENGTH_GRID) <= tol)
    )


@dataclass(frozen=True)
class SpectralCurve:
    """Scalar function of wavelength sampled on the shared 1nm grid."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (GRID_SIZE,):
            raise GridMismatchError(
                f"expected {GRID_SIZE} samples on the shared grid, got shape {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("spectral values must be finite")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def wavelengths(self) -> np.ndarray:
        return WAVELENGTH_GRID

    @classmethod
    def constant(cls, value: float) -> "SpectralCurve":
        return cls(np.full(GRID_SIZE, float(value)))

    def is_bounded(self, low: float = 0.0, high: float = 1.0, tol: float = 1e-9) -> bool:
        return bool(self.values.min() >= low - tol and self.values.max() <= high + tol)

    def max_value(self) -> float:
        return float(self.values.max())

    def __pow__(self, exponent: float) -> "SpectralCurve":
        return SpectralCurve(np.power(self.values, float(exponent)))

    def to_csv(self, path: str | Path) -> None:
        """Write `wavelength_nm,value` rows, one per grid node."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["wavelength_nm", "value"])
            for lam, val in zip(WAVELENGTH_GRID, self.values):
                writer.writerow([f"{lam:g}", repr(float(val))])

    @classmethod
    def from_csv(cls, path: str | Path) -> "SpectralCurve":
        """Read a `wavelength_nm,value` file, resampling to the grid if needed.

        The wavelength column must cover the full working range; data already
        on the shared grid is taken verbatim.
        """
        lam: list[float] = []
        val: list[float] = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header[:2]] != ["wavelength_nm", "value"]:
                raise GridMismatchError(f"{path}: expected header 'wavelength_nm,value'")
            for row in reader:
                if not row:
                    continue
                lam.append(float(row[0]))
                val.append(float(row[1]))
        lam_arr = np.asarray(lam)
        val_arr = np.asarray(val)
        if len(lam_arr) < 2 or np.any(np.diff(lam_arr) <= 0):
            raise GridMismatchError(f"{path}: wavelengths must be strictly increasing")
        if _on_grid(lam_arr):
            return cls(val_arr)
        if lam_arr[0] > LAMBDA_MIN + 1e-9 or lam_arr[-1] < LAMBDA_MAX - 1e-9:
            raise GridMismatchError(
                f"{path}: data must cover [{LAMBDA_MIN:g}, {LAMBDA_MAX:g}]nm"
            )
        return cls(np.interp(WAVELENGTH_GRID, lam_arr, val_arr))


@dataclass(frozen=True)
class Chromaticity:
    """CIE 1931 xy chromaticity coordinates."""

    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("chromaticity must be finite")
        if self.y <= 0.0 or self.x < -1e-12 or self.x + self.y > 1.0 + 1e-12:
            raise ValueError(f"({self.x}, {self.y}) is not a valid xy chromaticity")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def distance(self, other: "Chromaticity") -> float:
        return float(np.hypot(self.x - other.x, self.y - other.y))


@dataclass(frozen=True)
class ColorXYZ:
    """CIE 1931 tristimulus triple."""

    X: float
    Y: float
    Z: float

    def __post_init__(self):
        if not all(np.isfinite(c) for c in (self.X, self.Y, self.Z)):
            raise ValueError("tristimulus values must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Z])

    def chromaticity(self) -> Chromaticity:
        total = self.X + self.Y + self.Z
        if total <= 0.0:
            raise UndefinedChromaticityError(
                "chromaticity undefined for non-positive X+Y+Z"
            )
        return Chromaticity(self.X / total, self.Y / total)

    def __add__(self, other: "ColorXYZ") -> "ColorXYZ":
        return ColorXYZ(self.X + other.X, self.Y + other.Y, self.Z + other.Z)

    def __mul__(self, scale: float) -> "ColorXYZ":
        return ColorXYZ(self.X * scale, self.Y * scale, self.Z * scale)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Illuminant:
    """Named illuminant with its power distribution on the shared grid.

    ``white_norm`` is the trapezoidal integral of power times the luminosity
    curve; dividing tristimulus integrals by it pins the perfect reflector
    at Y = 1.
    """

    name: str
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (GRID_SIZE,):
            raise GridMismatchError("illuminant power must live on the shared grid")
        if v.min() < 0:
            raise ValueError("illuminant power must be non-negative")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_table(cls, name: str, wavelengths: np.ndarray, values: np.ndarray) -> "Illuminant":
        dense = np.interp(WAVELENGTH_GRID, wavelengths, values)
        return cls(name, dense)

    @cached_property
    def white_norm(self) -> float:
        return float(QUADRATURE_WEIGHTS @ (self.values * CMF_GRID[:, 1]))

    @cached_property
    def weighted_cmf(self) -> np.ndarray:
        """Quadrature-ready matrix: spectrum @ weighted_cmf gives XYZ."""
        m = CMF_GRID * (self.values * QUADRATURE_WEIGHTS)[:, None] / self.white_norm
        m.setflags(write=False)
        return m


ILLUMINANT_E = Illuminant("E", np.ones(GRID_SIZE))
ILLUMINANT_D65 = Illuminant.from_table("D65", WAVELENGTHS_5NM, D65_5NM)
ILLUMINANT_F2 = Illuminant.from_table("F2", WAVELENGTHS_5NM, F2_5NM)

_ILLUMINANTS = {ill.name: ill for ill in (ILLUMINANT_E, ILLUMINANT_D65, ILLUMINANT_F2)}


def get_illuminant(name: str) -> Illuminant:
    """Look up a standard illuminant by case-insensitive name."""
    key = name.strip().upper()
    if key not in _ILLUMINANTS:
        known = ", ".join(sorted(_ILLUMINANTS))
        raise KeyError(f"unknown illuminant {name!r}; known: {known}")
    return _ILLUMINANTS[key]


def integrate_to_xyz(spectrum: SpectralCurve | np.ndarray, illuminant: Illuminant | None = None) -> ColorXYZ:
    """Tristimulus color of a reflectance or transmittance spectrum.

    The spectrum is weighted by the illuminant power (equal-energy when
    omitted) and the observer curves, then normalized so that a spectrum
    identically 1 has Y = 1.
    """
    values = spectrum.values if isinstance(spectrum, SpectralCurve) else np.asarray(spectrum, dtype=float)
    if values.shape != (GRID_SIZE,):
        raise GridMismatchError("spectrum must live on the shared 1nm grid")
    ill = illuminant or ILLUMINANT_E
    xyz = values @ ill.weighted_cmf
    return ColorXYZ(float(xyz[0]), float(xyz[1]), float(xyz[2]))


def white_point(illuminant: Illuminant) -> Chromaticity:
    """Chromaticity of the perfect reflector under the given illuminant."""
    return integrate_to_xyz(SpectralCurve.constant(1.0), illuminant).chromaticity()


@lru_cache(maxsize=None)
def spectral_locus(step_nm: float = 1.0) -> GamutPolygon:
    """Horseshoe of monochromatic chromaticities, closed by the purple line.

    The polygon vertices walk the locus from the short to the long
    wavelength end; the implicit closing edge is the purple line.
    """
    count = round((LAMBDA_MAX - LAMBDA_MIN) / step_nm)
    if abs(count * step_nm - (LAMBDA_MAX - LAMBDA_MIN)) > 1e-9:
        raise ValueError("step must divide the working range exactly")
    lam = LAMBDA_MIN + step_nm * np.arange(count + 1)
    cmf = cmf_values(lam)
    total = cmf.sum(axis=1)
    return GamutPolygon(cmf[:, :2] / total[:, None])


# Published xy primaries; red, green, blue order.
SRGB_PRIMARIES = np.array([[0.64, 0.33], [0.30, 0.60], [0.15, 0.06]])
WIDE_GAMUT_PRIMARIES = np.array([[0.7347, 0.2653], [0.1152, 0.8264], [0.1566, 0.0177]])

_RGB_SPACES = {
    "srgb": SRGB_PRIMARIES,
    "wide": WIDE_GAMUT_PRIMARIES,
}


def rgb_gamut(space: str = "srgb") -> GamutPolygon:
    """Chromaticity triangle of a display RGB space ('srgb' or 'wide')."""
    key = space.strip().lower()
    if key not in _RGB_SPACES:
        known = ", ".join(sorted(_RGB_SPACES))
        raise KeyError(f"unknown RGB space {space!r}; known: {known}")
    return GamutPolygon(_RGB_SPACES[key])


@lru_cache(maxsize=None)
def _xyz_to_srgb_matrix() -> np.ndarray:
    """Inverse of the primary matrix balanced to the table-derived D65 white.

    Balancing against the same D65 white the integrator produces makes the
    perfect reflector under D65 map to linear RGB (1, 1, 1) exactly.
    """
    x, y = SRGB_PRIMARIES[:, 0], SRGB_PRIMARIES[:, 1]
    primaries_xyz = np.vstack([x / y, np.ones(3), (1.0 - x - y) / y])
    white = integrate_to_xyz(SpectralCurve.constant(1.0), ILLUMINANT_D65).as_array()
    scale = np.linalg.solve(primaries_xyz, white)
    m = np.linalg.inv(primaries_xyz * scale)
    m.setflags(write=False)
    return m


def xyz_to_linear_srgb(xyz: ColorXYZ | np.ndarray) -> np.ndarray:
    """Linear sRGB triple (possibly out of [0, 1]) for a tristimulus color."""
    vec = xyz.as_array() if isinstance(xyz, ColorXYZ) else np.asarray(xyz, dtype=float)
    return _xyz_to_srgb_matrix() @ vec


def encode_srgb(linear: np.ndarray | float) -> np.ndarray | float:
    """Clamp to [0, 1] and apply the sRGB display transfer curve."""
    arr = np.clip(np.asarray(linear, dtype=float), 0.0, 1.0)
    encoded = np.where(
        arr <= 0.0031308,
        12.92 * arr,
        1.055 * np.power(arr, 1.0 / 2.4) - 0.055,
    )
    if np.isscalar(linear) or getattr(linear, "ndim", 1) == 0:
        return float(encoded)
    return encoded


def decode_srgb(encoded: np.ndarray | float) -> np.ndarray | float:
    """Invert the sRGB display transfer curve back to linear values."""
    arr = np.clip(np.asarray(encoded, dtype=float), 0.0, 1.0)
    linear = np.where(
        arr <= 0.0031308 * 12.92,
        arr / 12.92,
        np.power((arr + 0.055) / 1.055, 2.4),
    )
    if np.isscalar(encoded) or getattr(encoded, "ndim", 1) == 0:
        return float(linear)
    return linear


def linear_srgb_luminance(rgb: np.ndarray) -> np.ndarray:
    """Relative luminance Y of linear sRGB triples (last axis of size 3)."""
    y_row = np.linalg.inv(_xyz_to_srgb_matrix())[1]
    return np.asarray(rgb, dtype=float) @ y_row
