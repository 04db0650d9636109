"""Depth-dependent color of transmissive media and metameric palettes.

A sampled spectrum used as a transmittance makes color a function of path
length: T_d = T_1^d. All members of a class agree at unit depth and fan
out elsewhere, which these helpers expose as chromaticity trajectories,
scattering/absorption splits, a navigable set of per-triangle
representatives, and palettes of metamers that separate under a second
illuminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colorimetry import (
    Chromaticity,
    ColorXYZ,
    Illuminant,
    SpectralCurve,
    integrate_to_xyz,
)
from .errors import LuminanceUnreachableError
from .pubasis import PUBasis
from .sampler import (
    ColorTarget,
    achieve_luminance,
    bary_from_dof,
    decompose,
    enclosing_triangles,
    max_luminance_weights,
    sample_class,
    weights_from_bary,
)

# Chromaticity of any equal-energy-white color; hue angles pivot here.
EQUILUMINANT_POINT = np.array([1.0 / 3.0, 1.0 / 3.0])

# A color whose XYZ sums below this is treated as black (no chromaticity).
TERMINAL_XYZ_SUM = 1e-12


def default_depth_grid(lo: float = 0.25, hi: float = 32.0, num: int = 64) -> np.ndarray:
    """Geometric depth ladder that always contains unit depth exactly."""
    depths = np.geomspace(lo, hi, num)
    depths[np.abs(depths - 1.0) < 1e-9] = 1.0
    if not np.any(depths == 1.0):
        depths = np.sort(np.append(depths, 1.0))
    return depths


def transmittance_at_depth(t1: SpectralCurve, depth: float) -> SpectralCurve:
    """Transmittance after traversing ``depth`` unit slabs: T_1^depth."""
    if depth < 0:
        raise ValueError(f"optical depth must be non-negative, got {depth}")
    return t1**depth


@dataclass(frozen=True)
class DepthTrajectory:
    """Chromaticity and luminance of a transmittance at increasing depths.

    ``points`` holds NaN where the transmitted color is numerically black;
    those depths are flagged ``terminal``.
    """

    depths: np.ndarray
    points: np.ndarray
    luminances: np.ndarray
    terminal: np.ndarray

    def __post_init__(self):
        depths = np.asarray(self.depths, dtype=float)
        if np.any(depths <= 0):
            raise ValueError("trajectory depths must be strictly positive")
        for name, kind in (
            ("depths", float), ("points", float), ("luminances", float), ("terminal", bool)
        ):
            arr = np.asarray(getattr(self, name)).astype(kind)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def at_depth(self, depth: float) -> Chromaticity:
        """Chromaticity at a depth present in the grid."""
        idx = np.nonzero(np.isclose(self.depths, depth, rtol=0, atol=1e-12))[0]
        if len(idx) == 0:
            raise KeyError(f"depth {depth} is not on the trajectory grid")
        i = int(idx[0])
        if self.terminal[i]:
            raise ValueError(f"color at depth {depth} is black; no chromaticity")
        return Chromaticity(*self.points[i])


def depth_trajectory(
    t1: SpectralCurve,
    depths: np.ndarray | None = None,
    illuminant: Illuminant | str | None = None,
) -> DepthTrajectory:
    """Trace the transmitted color of ``t1`` across a ladder of depths."""
    depths = default_depth_grid() if depths is None else np.asarray(depths, dtype=float)
    points = np.full((len(depths), 2), np.nan)
    luminances = np.zeros(len(depths))
    terminal = np.zeros(len(depths), dtype=bool)
    for i, d in enumerate(depths):
        xyz = integrate_to_xyz(transmittance_at_depth(t1, float(d)), illuminant)
        luminances[i] = xyz.Y
        if xyz.X + xyz.Y + xyz.Z <= TERMINAL_XYZ_SUM:
            terminal[i] = True
            continue
        c = xyz.chromaticity()
        points[i] = (c.x, c.y)
    return DepthTrajectory(depths, points, luminances, terminal)


@dataclass(frozen=True)
class MediumCoefficients:
    """Scattering/absorption split reproducing a unit-depth transmittance.

    The split uses the transmittance itself as the scattering coefficient;
    absorption is whatever extinction remains. Where the remainder would be
    negative it is clamped to zero and flagged, so sigma_s + sigma_a equals
    the extinction -log T_1 only off the clamped wavelengths.
    """

    sigma_s: SpectralCurve
    sigma_a: SpectralCurve
    clamped: bool
    clamped_mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.clamped_mask, dtype=bool)
        mask.setflags(write=False)
        object.__setattr__(self, "clamped_mask", mask)


def medium_coefficients(t1: SpectralCurve) -> MediumCoefficients:
    """Split a unit-depth transmittance into scattering and absorption."""
    values = t1.values
    if np.any(values <= 0):
        raise ValueError("transmittance reaches zero; extinction is unbounded")
    if np.any(values > 1 + 1e-9):
        raise ValueError("transmittance exceeds 1")
    raw = -np.log(values) - values
    mask = raw < 0
    sigma_a = np.where(mask, 0.0, raw)
    return MediumCoefficients(
        sigma_s=SpectralCurve(values.copy()),
        sigma_a=SpectralCurve(sigma_a),
        clamped=bool(mask.any()),
        clamped_mask=mask,
    )


def hue_angle_around_equiluminant(point: Chromaticity) -> float:
    """Angle of a chromaticity around the equal-energy point, in (-pi, pi]."""
    return math.atan2(point.y - EQUILUMINANT_POINT[1], point.x - EQUILUMINANT_POINT[0])


@dataclass(frozen=True)
class RepresentativeEntry:
    """One per-triangle class member, tagged by its deep-color hue."""

    triangle: tuple[int, int, int]
    weights: np.ndarray
    chromaticity_at_ref: Chromaticity
    hue_angle: float
    achieved_luminance: float
    luminance_met: bool

    def __post_init__(self):
        arr = np.asarray(self.weights, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)


@dataclass(frozen=True)
class RepresentativeSet:
    """Per-triangle representatives of a class, ordered clockwise by the
    hue their transmitted color takes at the reference depth."""

    target: ColorTarget
    d_ref: float
    entries: tuple[RepresentativeEntry, ...]


def representative_set(
    basis: PUBasis, target: ColorTarget, d_ref: float = 10.0
) -> RepresentativeSet:
    """One triangle-restricted class member per enclosing triangle.

    Each entry keeps only its triangle's three weights (the free
    coordinates stay zero), scaled toward the target luminance. Entries
    whose transmitted color vanishes at the reference depth are dropped;
    the rest are ordered clockwise around the equal-energy point.
    """
    triangles = enclosing_triangles(basis, target.chromaticity)
    entries = []
    for triangle in triangles:
        dec = decompose(basis, triangle, target.chromaticity)
        bary = bary_from_dof(dec, np.zeros(len(dec.free_indices)), basis.count)
        profile, w0_max = weights_from_bary(basis, bary)
        weights, achieved, met, _ = achieve_luminance(basis, profile, w0_max, target.luminance)
        deep = transmittance_at_depth(basis.reconstruct_curve(weights), d_ref)
        xyz = integrate_to_xyz(deep, basis.illuminant)
        if xyz.X + xyz.Y + xyz.Z <= TERMINAL_XYZ_SUM:
            continue
        chroma = xyz.chromaticity()
        entries.append(
            RepresentativeEntry(
                triangle=triangle,
                weights=weights,
                chromaticity_at_ref=chroma,
                hue_angle=hue_angle_around_equiluminant(chroma),
                achieved_luminance=achieved,
                luminance_met=met,
            )
        )
    entries.sort(key=lambda e: -e.hue_angle)
    return RepresentativeSet(target=target, d_ref=d_ref, entries=tuple(entries))


def pick_by_hue(reps: RepresentativeSet, hue_angle: float) -> np.ndarray:
    """Weights for a requested deep-color hue, by blending the two
    representatives whose hues bracket it.

    The blend is convex in weight space, so the unit-depth color of the
    result still matches the set's target exactly.
    """
    if not reps.entries:
        raise ValueError("representative set is empty")
    if len(reps.entries) == 1:
        return reps.entries[0].weights.copy()
    order = sorted(range(len(reps.entries)), key=lambda i: reps.entries[i].hue_angle)
    angles = np.array([reps.entries[i].hue_angle for i in order])
    theta = math.atan2(math.sin(hue_angle), math.cos(hue_angle))
    j = int(np.searchsorted(angles, theta))
    lo_angle = angles[j - 1] if j > 0 else angles[-1] - 2 * math.pi
    hi_angle = angles[j] if j < len(angles) else angles[0] + 2 * math.pi
    lo = reps.entries[order[j - 1] if j > 0 else order[-1]]
    hi = reps.entries[order[j] if j < len(angles) else order[0]]
    span = hi_angle - lo_angle
    if span <= 1e-15:
        return lo.weights.copy()
    alpha = (theta - lo_angle) / span
    return (1.0 - alpha) * lo.weights + alpha * hi.weights


def schlick_order(
    r0: SpectralCurve, order: int, illuminant: Illuminant | str | None = None
) -> Chromaticity:
    """Chromaticity of the ``order``-fold product R_0^order.

    Models the color drift of repeated surface interactions with base
    reflectance R_0; order 1 is the color of R_0 itself.
    """
    if int(order) != order or order < 1:
        raise ValueError(f"inter-reflection order must be a positive integer, got {order}")
    return integrate_to_xyz(r0 ** int(order), illuminant).chromaticity()


@dataclass(frozen=True)
class MetamerPaletteEntry:
    """One palette member: weights plus its color under both illuminants."""

    weights: np.ndarray
    color_under_first: ColorXYZ
    color_under_second: ColorXYZ
    seed_key: tuple[int, int]

    def __post_init__(self):
        arr = np.asarray(self.weights, dtype=float).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)


def brightest_member(basis: PUBasis, point: Chromaticity) -> tuple[np.ndarray, float]:
    """Brightest bounded spectrum at a chromaticity, as (weights, luminance).

    The solver already bounds the reconstruction by 1; dividing by the
    realized spectrum peak only cleans up solver-tolerance slack.
    """
    weights = max_luminance_weights(basis, point)
    peak = float(basis.reconstruct(weights).max())
    weights = weights / max(peak, 1e-30)
    return weights, float(weights @ basis.basis_colors[:, 1])


def metameric_palette(
    basis: PUBasis,
    first: Illuminant | str,
    second: Illuminant | str,
    target: ColorTarget,
    count: int,
    seed: int = 0,
    require_luminance: bool = True,
) -> list[MetamerPaletteEntry]:
    """Spectra that agree on a color under one illuminant and scatter
    under another.

    Sampling runs against the basis colors taken under the first
    illuminant, so every draw matches the target chromaticity there; the
    recorded colors come from direct integration of the reconstructed
    spectrum under each illuminant.

    With ``require_luminance`` every entry lands on the target luminance
    exactly: draws falling short are blended convexly with the brightest
    class member, which shares the target chromaticity, so the blend fixes
    luminance without moving the color. Without it, draws keep their own
    achieved luminance (at most the target), which is the raw material for
    luminance-graded palettes.
    """
    sampling_basis = basis.with_illuminant(first)
    first_ill = sampling_basis.illuminant
    second_ill = basis.with_illuminant(second).illuminant

    draws = sample_class(sampling_basis, target, count, seed=seed)
    if require_luminance:
        bright_w, bright_y = brightest_member(sampling_basis, target.chromaticity)
        if bright_y < target.luminance - 1e-9:
            raise LuminanceUnreachableError(
                f"luminance {target.luminance} exceeds the brightest member's "
                f"{bright_y:.6f} at this chromaticity"
            )

    entries = []
    for sample in draws:
        weights = sample.weights
        if require_luminance and not sample.luminance_met:
            t = (target.luminance - sample.achieved_luminance) / (
                bright_y - sample.achieved_luminance
            )
            t = min(t, 1.0)
            weights = t * bright_w + (1.0 - t) * weights
        spectrum = basis.reconstruct(weights)
        entries.append(
            MetamerPaletteEntry(
                weights=weights,
                color_under_first=integrate_to_xyz(spectrum, first_ill),
                color_under_second=integrate_to_xyz(spectrum, second_ill),
                seed_key=sample.seed_key,
            )
        )
    return entries


def most_distinct_pair(
    entries: list[MetamerPaletteEntry],
    min_first_luminance: float = 0.0,
) -> tuple[MetamerPaletteEntry, MetamerPaletteEntry]:
    """The two palette entries farthest apart in chromaticity under the
    second illuminant.

    ``min_first_luminance`` drops dim entries first, since the most
    separated pair is often also the darkest and a pattern built from it
    would be hard to see.
    """
    pool = [e for e in entries if e.color_under_first.Y >= min_first_luminance]
    if len(pool) < 2:
        raise ValueError("need at least two palette entries above the luminance floor")
    points = [e.color_under_second.chromaticity() for e in pool]
    best, pair = -1.0, (pool[0], pool[1])
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            d = points[i].distance(points[j])
            if d > best:
                best, pair = d, (pool[i], pool[j])
    return pair


def equalize_luminance(
    basis: PUBasis,
    weights_a: np.ndarray,
    weights_b: np.ndarray,
    illuminant: Illuminant | str | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Scale the brighter of two weight vectors down so both have the same
    luminance under the given illuminant.

    Scaling moves luminance only, so chromaticities are untouched; with
    matching chromaticities the pair becomes an exact metamer there.
    """
    reference = basis.with_illuminant(illuminant)
    ya = float(integrate_to_xyz(reference.reconstruct(weights_a), reference.illuminant).Y)
    yb = float(integrate_to_xyz(reference.reconstruct(weights_b), reference.illuminant).Y)
    if ya <= 0 or yb <= 0:
        raise ValueError("cannot equalize luminance of a black spectrum")
    floor = min(ya, yb)
    return (
        np.asarray(weights_a, dtype=float) * (floor / ya),
        np.asarray(weights_b, dtype=float) * (floor / yb),
    )
