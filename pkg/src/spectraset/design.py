"""Basis-shape metrics and the brute-force warp search.

Two numbers summarize a basis: the normalized signed area by which its
chromaticity gamut exceeds an RGB working gamut (coverage), and the
smallest full width at half maximum among its functions (smoothness).
Warping trades one against the other; the search scans a uniform grid of
warp parameters and keeps the best coverage among the smooth-enough cells.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .colorimetry import Illuminant, rgb_gamut, spectral_locus
from .geometry import GamutPolygon, clip_by_convex, signed_area
from .pubasis import PUBasis, WarpParams

# Constraint directions for the warp search: keep bases at least this wide
# (default), or strictly narrower (the alternative reading).
CONSTRAINT_DIRECTIONS = ("at-least", "below")


def _evaluation_grid(basis: PUBasis, grid_step: float) -> np.ndarray:
    lo = float(basis.knots[basis.degree])
    hi = float(basis.knots[-(basis.degree + 1)])
    num = int(round((hi - lo) / grid_step)) + 1
    return np.linspace(lo, hi, num)


def _outermost_crossings(grid: np.ndarray, values: np.ndarray) -> float:
    """Width between the outermost half-maximum crossings of one function."""
    half = float(values.max()) / 2.0
    above = values >= half
    idx = np.nonzero(above)[0]
    first, last = int(idx[0]), int(idx[-1])
    if first == 0:
        left = grid[0]
    else:
        v0, v1 = values[first - 1], values[first]
        left = grid[first - 1] + (half - v0) / (v1 - v0) * (grid[first] - grid[first - 1])
    if last == len(grid) - 1:
        right = grid[-1]
    else:
        v0, v1 = values[last], values[last + 1]
        right = grid[last] + (v0 - half) / (v0 - v1) * (grid[last + 1] - grid[last])
    return float(right - left)


def fwhm(basis: PUBasis, k: int, grid_step: float = 0.1) -> float:
    """Full width at half maximum of basis function ``k``, in domain units.

    Measured between the outermost half-maximum crossings on a dense grid,
    with linear interpolation at the crossing; a function still above half
    maximum at a domain end is counted as crossing there.
    """
    if not 0 <= k < basis.count:
        raise IndexError(f"basis index {k} out of range for count {basis.count}")
    grid = _evaluation_grid(basis, grid_step)
    values = basis.evaluate(grid)[:, k]
    return _outermost_crossings(grid, values)


def smoothness(basis: PUBasis, grid_step: float = 0.1) -> float:
    """Smallest FWHM over all basis functions (one shared evaluation)."""
    grid = _evaluation_grid(basis, grid_step)
    values = basis.evaluate(grid)
    return min(_outermost_crossings(grid, values[:, k]) for k in range(basis.count))


def polygon_excess_area(
    subject: GamutPolygon, rgb: GamutPolygon, locus: GamutPolygon
) -> float:
    """Signed area of ``subject`` beyond ``rgb`` minus the part of ``rgb``
    it misses, normalized by the room the ``locus`` leaves around ``rgb``.

    1 means the subject covers the whole locus polygon, 0 means it covers
    exactly the RGB gamut (in area), negative means it covers less.
    """
    intersection = clip_by_convex(subject.vertices, rgb.vertices)
    shared = abs(signed_area(intersection)) if len(intersection) >= 3 else 0.0
    beyond = subject.area - shared
    missed = rgb.area - shared
    room = locus.area - rgb.area
    if room <= 0:
        raise ValueError("locus polygon does not enclose extra area around the RGB gamut")
    return (beyond - missed) / room


def excess_area(
    basis: PUBasis,
    rgb: GamutPolygon | None = None,
    locus: GamutPolygon | None = None,
) -> float:
    """Normalized gamut coverage of a basis relative to an RGB gamut."""
    rgb = rgb_gamut() if rgb is None else rgb
    locus = spectral_locus() if locus is None else locus
    return polygon_excess_area(basis.gamut, rgb, locus)


def _boundary_points(vertices: np.ndarray, fractions: np.ndarray) -> np.ndarray:
    """Points on a closed polygon boundary at given perimeter fractions."""
    closed = np.vstack([vertices, vertices[:1]])
    seg = np.diff(closed, axis=0)
    lengths = np.hypot(seg[:, 0], seg[:, 1])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    s = np.asarray(fractions, dtype=float) * cum[-1]
    idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(lengths) - 1)
    t = (s - cum[idx]) / lengths[idx]
    return closed[idx] + t[:, None] * seg[idx]


def _oriented(vertices: np.ndarray) -> np.ndarray:
    return vertices if signed_area(vertices) >= 0 else vertices[::-1]


def gamut_band_quads(basis: PUBasis, rgb: GamutPolygon | None = None) -> np.ndarray:
    """Quad strip between the basis gamut and the RGB triangle boundary.

    Visualization helper: each gamut edge is paired with the RGB boundary
    arc at the same perimeter fraction, giving quads whose signed areas sum
    exactly to area(gamut) minus area(inscribed RGB polygon).
    """
    rgb = rgb_gamut() if rgb is None else rgb
    outer = _oriented(basis.gamut.vertices)
    fractions = np.arange(len(outer)) / len(outer)
    inner = _boundary_points(_oriented(rgb.vertices), fractions)
    return np.stack(
        [outer, np.roll(outer, -1, axis=0), np.roll(inner, -1, axis=0), inner],
        axis=1,
    )


@dataclass(frozen=True)
class WarpSearchResult:
    """Metric maps over the warp-parameter grid, plus the chosen optimum.

    ``best`` is None when no grid cell satisfies the smoothness
    constraint; the maps are always complete.
    """

    count: int
    strength_grid: np.ndarray
    position_grid: np.ndarray
    excess_map: np.ndarray
    smoothness_map: np.ndarray
    feasible: np.ndarray
    best: WarpParams | None
    best_excess: float | None
    constraint_direction: str
    threshold_nm: float

    def __post_init__(self):
        for name in ("strength_grid", "position_grid", "excess_map", "smoothness_map", "feasible"):
            arr = np.asarray(getattr(self, name))
            arr = arr.astype(bool) if name == "feasible" else arr.astype(float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def optimize_warp(
    count: int,
    rgb_space: str = "srgb",
    threshold_nm: float = 20.0,
    grid: tuple[int, int] = (64, 64),
    constraint_direction: str = "at-least",
    boundary_offset: float = 100.0,
    illuminant: Illuminant | str | None = None,
) -> WarpSearchResult:
    """Scan a uniform warp-parameter grid for the best-covering smooth basis.

    Strengths run from 0 (unwarped) up to but excluding 1 (the degenerate
    step), positions over the open unit interval at cell centers, so every
    grid cell yields a valid basis. Coverage is maximized among cells whose
    minimum FWHM satisfies the constraint (at least ``threshold_nm`` by
    default, strictly below it with direction 'below').
    """
    if count < 4:
        raise ValueError("warp search needs at least 4 basis functions")
    if constraint_direction not in CONSTRAINT_DIRECTIONS:
        raise ValueError(
            f"unknown constraint direction {constraint_direction!r}; "
            f"use one of {CONSTRAINT_DIRECTIONS}"
        )
    n_s, n_p = grid
    strengths = np.arange(n_s) / n_s
    positions = (np.arange(n_p) + 0.5) / n_p
    rgb = rgb_gamut(rgb_space)
    locus = spectral_locus()
    excess_map = np.empty((n_s, n_p))
    smoothness_map = np.empty((n_s, n_p))
    for i, s in enumerate(strengths):
        for j, p in enumerate(positions):
            basis = PUBasis.build(
                count, WarpParams(s, p), boundary_offset_nm=boundary_offset, illuminant=illuminant
            )
            excess_map[i, j] = polygon_excess_area(basis.gamut, rgb, locus)
            smoothness_map[i, j] = smoothness(basis)
    if constraint_direction == "at-least":
        feasible = smoothness_map >= threshold_nm
    else:
        feasible = smoothness_map < threshold_nm
    best = best_excess = None
    if feasible.any():
        masked = np.where(feasible, excess_map, -np.inf)
        i, j = np.unravel_index(int(np.argmax(masked)), masked.shape)
        best = WarpParams(float(strengths[i]), float(positions[j]))
        best_excess = float(excess_map[i, j])
    return WarpSearchResult(
        count=count,
        strength_grid=strengths,
        position_grid=positions,
        excess_map=excess_map,
        smoothness_map=smoothness_map,
        feasible=feasible,
        best=best,
        best_excess=best_excess,
        constraint_direction=constraint_direction,
        threshold_nm=threshold_nm,
    )


def save_metrics_csv(result: WarpSearchResult, path: str | Path) -> None:
    """Write the metric maps as rows (strength, position, excess, fwhm)."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["strength", "position", "excess_area", "smoothness_nm"])
        for i, s in enumerate(result.strength_grid):
            for j, p in enumerate(result.position_grid):
                writer.writerow(
                    [repr(float(s)), repr(float(p)),
                     repr(float(result.excess_map[i, j])),
                     repr(float(result.smoothness_map[i, j]))]
                )
