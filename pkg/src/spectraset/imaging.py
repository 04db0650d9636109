"""Flat-lit renders that hide patterns and gradients inside metamer sets.

A spectral image stores per-pixel convex blends over a small palette of
weight vectors. Rendering integrates each palette entry under an
illuminant and blends in linear RGB, which equals blending the spectra
first (everything up to the final clamp is linear), so a palette of
metamers gives a uniform image under the matching illuminant and reveals
its structure under a differing one.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .colorimetry import (
    Illuminant,
    decode_srgb,
    encode_srgb,
    linear_srgb_luminance,
    xyz_to_linear_srgb,
)
from .effects import MetamerPaletteEntry
from .pubasis import PUBasis, WarpParams, bspline_basis_matrix, build_knots

BLEND_SUM_TOL = 1e-6


def lambertian_color(
    weights: np.ndarray, basis: PUBasis, illuminant: Illuminant | str | None = None
) -> np.ndarray:
    """Display color of a flat-lit surface with the given spectral albedo.

    Integrates the reconstruction under the illuminant (normalized so the
    perfect reflector has unit luminance), converts to linear sRGB, clamps
    and encodes. Returns the encoded triple in [0, 1].
    """
    reference = basis.with_illuminant(illuminant)
    xyz = np.asarray(weights, dtype=float) @ reference.basis_colors
    return np.asarray(encode_srgb(xyz_to_linear_srgb(xyz)), dtype=float)


@dataclass(frozen=True)
class SpectralImage:
    """Per-pixel convex blends over a palette of weight vectors."""

    palette: np.ndarray
    blend: np.ndarray

    def __post_init__(self):
        palette = np.asarray(self.palette, dtype=float).copy()
        blend = np.asarray(self.blend, dtype=float).copy()
        if palette.ndim != 2:
            raise ValueError("palette must be a (entries, weights) array")
        if blend.ndim != 3 or blend.shape[2] != palette.shape[0]:
            raise ValueError("blend must be (height, width, palette entries)")
        if blend.min() < -BLEND_SUM_TOL:
            raise ValueError("blend coefficients must be non-negative")
        sums = blend.sum(axis=2)
        if np.abs(sums - 1.0).max() > BLEND_SUM_TOL:
            raise ValueError("blend coefficients must sum to 1 per pixel")
        palette.setflags(write=False)
        blend.setflags(write=False)
        object.__setattr__(self, "palette", palette)
        object.__setattr__(self, "blend", blend)

    @property
    def height(self) -> int:
        return self.blend.shape[0]

    @property
    def width(self) -> int:
        return self.blend.shape[1]

    def pixel_weights(self) -> np.ndarray:
        """Per-pixel weight vectors, (height, width, weights)."""
        return self.blend @ self.palette

    def render(self, basis: PUBasis, illuminant: Illuminant | str | None = None) -> np.ndarray:
        """8-bit sRGB render under a flat illuminant.

        Palette entries are integrated once; pixels blend their linear RGB
        colors, which matches blending the spectra because the clamp and
        transfer curve come last.
        """
        if self.palette.shape[1] != basis.count:
            raise ValueError(
                f"palette weight length {self.palette.shape[1]} does not match "
                f"basis count {basis.count}"
            )
        reference = basis.with_illuminant(illuminant)
        palette_xyz = self.palette @ reference.basis_colors
        palette_linear = np.stack([xyz_to_linear_srgb(v) for v in palette_xyz])
        linear = self.blend @ palette_linear
        return np.round(np.asarray(encode_srgb(linear)) * 255.0).astype(np.uint8)


def hidden_pattern(
    mask: np.ndarray,
    weights_a: np.ndarray,
    weights_b: np.ndarray,
    basis: PUBasis,
    first: Illuminant | str,
    second: Illuminant | str,
) -> tuple[np.ndarray, np.ndarray]:
    """Render a binary mask with two metamers, under both illuminants.

    Pixels take spectrum ``a`` where the mask is false and ``b`` where
    true. With a metameric pair the first render is uniform and the second
    shows the mask.
    """
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise ValueError("mask must be a 2-d array")
    selector = mask.astype(bool).astype(float)
    blend = np.stack([1.0 - selector, selector], axis=2)
    image = SpectralImage(np.vstack([weights_a, weights_b]), blend)
    return image.render(basis, first), image.render(basis, second)


def _palette_weights(palette) -> np.ndarray:
    rows = [
        entry.weights if isinstance(entry, MetamerPaletteEntry) else np.asarray(entry, dtype=float)
        for entry in palette
    ]
    return np.vstack(rows)


def hidden_image(
    gray: np.ndarray,
    palette,
    basis: PUBasis,
    first: Illuminant | str,
    second: Illuminant | str,
    chromaticity_tol: float = 1e-6,
) -> tuple[np.ndarray, np.ndarray]:
    """Encode a grayscale image into a luminance ladder of metamers.

    Each pixel blends the palette through a quadratic partition of unity
    over [0, 1] evaluated at its gray level, so gray 0 maps to the first
    entry, gray 1 to the last, and intermediate levels interpolate
    smoothly. The palette must share its chromaticity under the first
    illuminant (keeping that render uniform in hue) and be strictly
    increasing in luminance (making gray level monotone in brightness).
    """
    gray = np.clip(np.asarray(gray, dtype=float), 0.0, 1.0)
    if gray.ndim != 2:
        raise ValueError("gray must be a 2-d array")
    weights = _palette_weights(palette)
    if len(weights) < 3:
        raise ValueError("palette needs at least 3 entries for a quadratic blend")
    reference = basis.with_illuminant(first)
    xyz = weights @ reference.basis_colors
    luminances = xyz[:, 1]
    if np.any(np.diff(luminances) <= 0):
        raise ValueError("palette luminances must be strictly increasing under the first illuminant")
    chroma = xyz[:, :2] / xyz.sum(axis=1, keepdims=True)
    if np.abs(chroma - chroma.mean(axis=0)).max() > chromaticity_tol:
        raise ValueError("palette entries must share a chromaticity under the first illuminant")
    knots = build_knots(len(weights), WarpParams(), boundary_offset=0.0, domain=(0.0, 1.0))
    blend = bspline_basis_matrix(knots, gray.ravel()).reshape(*gray.shape, len(weights))
    image = SpectralImage(weights, blend)
    return image.render(basis, first), image.render(basis, second)


def select_by_luminance(
    entries: list[MetamerPaletteEntry], count: int = 8
) -> list[MetamerPaletteEntry]:
    """Pick ``count`` entries spread evenly in first-illuminant luminance.

    Greedy: walk evenly spaced luminance levels between the darkest and
    brightest entry, taking the closest entry strictly brighter than the
    previous pick, so the result is strictly increasing.
    """
    ordered = sorted(entries, key=lambda e: e.color_under_first.Y)
    ys = np.array([e.color_under_first.Y for e in ordered])
    unique_ys, first_at = np.unique(ys, return_index=True)
    if len(unique_ys) < count:
        raise ValueError(
            f"palette lacks enough distinct luminances: {len(unique_ys)} < {count}"
        )
    levels = np.linspace(unique_ys[0], unique_ys[-1], count)
    picked: list[MetamerPaletteEntry] = []
    last = -1
    for step, level in enumerate(levels):
        # Leave room above for the picks still to come.
        remaining = count - 1 - step
        lo, hi = last + 1, len(unique_ys) - remaining
        j = lo + int(np.argmin(np.abs(unique_ys[lo:hi] - level)))
        picked.append(ordered[int(first_at[j])])
        last = j
    return picked


def load_mask(path: str | Path) -> np.ndarray:
    """Binary mask from any image: single channel thresholded at one half."""
    with Image.open(path) as img:
        gray = np.asarray(img.convert("L"), dtype=float) / 255.0
    return gray >= 0.5


def load_grayscale(path: str | Path) -> np.ndarray:
    """Grayscale image as floats in [0, 1]."""
    with Image.open(path) as img:
        return np.asarray(img.convert("L"), dtype=float) / 255.0


def save_png(path: str | Path, image: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 array as a PNG file."""
    arr = np.asarray(image)
    if arr.dtype != np.uint8 or arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) uint8 image")
    Image.fromarray(arr, "RGB").save(Path(path), format="PNG")


def display_luminance(image: np.ndarray) -> np.ndarray:
    """Relative luminance per pixel of an 8-bit sRGB image."""
    linear = decode_srgb(np.asarray(image, dtype=float) / 255.0)
    return linear_srgb_luminance(linear)
