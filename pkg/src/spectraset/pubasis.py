"""Warped quadratic B-spline partition of unity over the wavelength range.

A basis of ``count`` quadratic B-splines is built from ``count - 1``
breakpoints spread over the working range. The breakpoints come from
warping a uniform grid with a two-parameter monotone map, which
concentrates basis functions around a chosen position. Boundary knots may
be pushed outside the range so the outermost functions stay wide.

Every basis here sums to exactly 1 across the working range, so any
weight vector in [0, 1]^count reconstructs a bounded smooth spectrum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import ClassVar

import numpy as np

from .cie_data import LAMBDA_MAX, LAMBDA_MIN
from .colorimetry import (
    ILLUMINANT_E,
    Illuminant,
    SpectralCurve,
    WAVELENGTH_GRID,
    get_illuminant,
)
from .errors import InvalidBasisError
from .geometry import GamutPolygon

DEFAULT_DOMAIN = (LAMBDA_MIN, LAMBDA_MAX)


@dataclass(frozen=True)
class WarpParams:
    """Breakpoint warp: ``strength`` in [0, 1], fixed ``position`` in (0, 1).

    Strength 0 keeps the uniform spacing; larger values squeeze breakpoints
    toward ``position``. The map is monotone on [0, 1] and fixes 0,
    ``position``, and 1.
    """

    strength: float = 0.0
    position: float = 0.5

    def __post_init__(self):
        if not (0.0 <= self.strength <= 1.0):
            raise InvalidBasisError(f"warp strength {self.strength} outside [0, 1]")
        if not (0.0 < self.position < 1.0):
            raise InvalidBasisError(f"warp position {self.position} outside (0, 1)")

    @property
    def exponent(self) -> float:
        return 2.0 / (1.0 + self.strength) - 1.0

    def apply(self, u: np.ndarray | float) -> np.ndarray:
        """Warp values in [0, 1]; at strength 1 this degenerates to a step."""
        x = np.atleast_1d(np.asarray(u, dtype=float))
        if x.min() < -1e-12 or x.max() > 1.0 + 1e-12:
            raise ValueError("warp input must lie in [0, 1]")
        x = np.clip(x, 0.0, 1.0)
        p = self.position
        if self.strength == 1.0:
            # Pointwise limit of the power map: everything collapses onto p.
            out = np.full_like(x, p)
            out[x == 0.0] = 0.0
            out[x == 1.0] = 1.0
            return out
        c = self.exponent
        lower = p * np.power(x / p, c, where=x > 0, out=np.zeros_like(x))
        upper = 1.0 - (1.0 - p) * np.power((1.0 - x) / (1.0 - p), c, where=x < 1, out=np.zeros_like(x))
        return np.where(x <= p, lower, upper)


def build_knots(
    count: int,
    warp: WarpParams = WarpParams(),
    boundary_offset: float = 100.0,
    domain: tuple[float, float] = DEFAULT_DOMAIN,
) -> np.ndarray:
    """Knot vector for ``count`` quadratic B-splines forming a partition of unity.

    ``count - 1`` warped breakpoints span the domain; each end is padded
    with two extra knots displaced outward by ``boundary_offset`` (domain
    units). The result has ``count + 3`` knots and the spline domain is
    exactly ``domain``.
    """
    if count < 3:
        raise InvalidBasisError(f"basis needs at least 3 functions, got {count}")
    if boundary_offset < 0:
        raise InvalidBasisError("boundary offset must be non-negative")
    lo, hi = float(domain[0]), float(domain[1])
    if not hi > lo:
        raise InvalidBasisError("domain must be a non-empty interval")
    u = np.linspace(0.0, 1.0, count - 1)
    breakpoints = lo + warp.apply(u) * (hi - lo)
    if np.any(np.diff(breakpoints) <= 0):
        raise InvalidBasisError(
            f"warp {warp} collapses breakpoints for a basis of {count} functions"
        )
    knots = np.concatenate(
        (
            [breakpoints[0] - boundary_offset] * 2,
            breakpoints,
            [breakpoints[-1] + boundary_offset] * 2,
        )
    )
    return knots


def bspline_basis_matrix(knots: np.ndarray, x: np.ndarray, degree: int = 2) -> np.ndarray:
    """Evaluate all B-splines on a knot vector at points inside the domain.

    Returns a matrix of shape (len(x), len(knots) - degree - 1).
    The domain is [knots[degree], knots[-degree - 1]]; the right endpoint
    is evaluated by closure from the last non-empty span.
    """
    knots = np.asarray(knots, dtype=float)
    pts = np.atleast_1d(np.asarray(x, dtype=float))
    n_funcs = len(knots) - degree - 1
    lo, hi = knots[degree], knots[n_funcs]
    if pts.min() < lo - 1e-9 or pts.max() > hi + 1e-9:
        raise ValueError(f"evaluation points outside spline domain [{lo:g}, {hi:g}]")
    pts = np.clip(pts, lo, hi)
    spans = np.searchsorted(knots, pts, side="right") - 1
    spans = np.clip(spans, degree, n_funcs - 1)

    npts = len(pts)
    values = np.zeros((npts, degree + 1))
    values[:, 0] = 1.0
    left = np.zeros((npts, degree + 1))
    right = np.zeros((npts, degree + 1))
    for r in range(1, degree + 1):
        left[:, r] = pts - knots[spans + 1 - r]
        right[:, r] = knots[spans + r] - pts
        saved = np.zeros(npts)
        for k in range(r):
            denom = right[:, k + 1] + left[:, r - k]
            ratio = np.divide(
                values[:, k], denom, out=np.zeros(npts), where=denom != 0
            )
            values[:, k] = saved + right[:, k + 1] * ratio
            saved = left[:, r - k] * ratio
        values[:, r] = saved

    matrix = np.zeros((npts, n_funcs))
    cols = spans[:, None] + np.arange(-degree, 1)[None, :]
    matrix[np.arange(npts)[:, None], cols] = values
    return matrix


@dataclass(frozen=True)
class PUBasis:
    """Partition-of-unity spectral basis with precomputed colorimetry.

    ``illuminant_name`` records which illuminant was folded into
    ``basis_colors``; the basis functions themselves are never modified.
    """

    count: int
    warp: WarpParams
    boundary_offset_nm: float
    illuminant_name: str
    knots: np.ndarray

    degree: ClassVar[int] = 2

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=float).copy()
        if k.shape != (self.count + 3,):
            raise InvalidBasisError("knot vector length must be count + 3")
        k.setflags(write=False)
        object.__setattr__(self, "knots", k)

    @classmethod
    def build(
        cls,
        count: int,
        warp: WarpParams = WarpParams(),
        boundary_offset_nm: float = 100.0,
        illuminant: Illuminant | str | None = None,
    ) -> "PUBasis":
        ill = cls._resolve_illuminant(illuminant)
        knots = build_knots(count, warp, boundary_offset_nm)
        return cls(count, warp, float(boundary_offset_nm), ill.name, knots)

    @staticmethod
    def _resolve_illuminant(illuminant: Illuminant | str | None) -> Illuminant:
        if illuminant is None:
            return ILLUMINANT_E
        if isinstance(illuminant, Illuminant):
            return illuminant
        return get_illuminant(illuminant)

    @property
    def illuminant(self) -> Illuminant:
        return get_illuminant(self.illuminant_name)

    def with_illuminant(self, illuminant: Illuminant | str | None) -> "PUBasis":
        """Same basis functions with colors integrated under another illuminant."""
        ill = self._resolve_illuminant(illuminant)
        if ill.name == self.illuminant_name:
            return self
        return PUBasis(self.count, self.warp, self.boundary_offset_nm, ill.name, self.knots)

    def evaluate(self, x: np.ndarray | float) -> np.ndarray:
        """Basis values at arbitrary points in the domain, shape (n, count)."""
        return bspline_basis_matrix(self.knots, x, self.degree)

    @cached_property
    def dense_matrix(self) -> np.ndarray:
        """Basis values on the shared 1nm grid, shape (grid, count)."""
        m = self.evaluate(WAVELENGTH_GRID)
        m.setflags(write=False)
        return m

    @cached_property
    def basis_colors(self) -> np.ndarray:
        """Tristimulus color of each basis function under the tagged illuminant."""
        colors = self.dense_matrix.T @ self.illuminant.weighted_cmf
        colors.setflags(write=False)
        return colors

    @cached_property
    def magnitudes(self) -> np.ndarray:
        """X+Y+Z of each basis color; all strictly positive."""
        m = self.basis_colors.sum(axis=1)
        m.setflags(write=False)
        return m

    @cached_property
    def chromaticities(self) -> np.ndarray:
        """xy chromaticity of each basis color, shape (count, 2)."""
        c = self.basis_colors[:, :2] / self.magnitudes[:, None]
        c.setflags(write=False)
        return c

    @cached_property
    def gamut(self) -> GamutPolygon:
        """Polygon traced by the basis chromaticities in index order.

        Every convex combination of basis colors lands inside this polygon
        whenever it is simple.
        """
        return GamutPolygon(self.chromaticities)

    def reconstruct(self, weights: np.ndarray, x: np.ndarray | None = None) -> np.ndarray:
        """Spectrum values sum_k w_k B_k at the given points (grid by default)."""
        w = np.asarray(weights, dtype=float)
        if w.shape != (self.count,):
            raise ValueError(f"expected {self.count} weights, got shape {w.shape}")
        if x is None:
            return self.dense_matrix @ w
        return self.evaluate(x) @ w

    def reconstruct_curve(self, weights: np.ndarray) -> SpectralCurve:
        return SpectralCurve(self.reconstruct(weights))

    def to_dict(self) -> dict:
        return {
            "format": "spectraset-basis",
            "version": 1,
            "count": self.count,
            "degree": self.degree,
            "warp": {"strength": self.warp.strength, "position": self.warp.position},
            "boundary_offset_nm": self.boundary_offset_nm,
            "illuminant": self.illuminant_name,
            "knots": [repr(float(k)) for k in self.knots],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def from_dict(cls, data: dict) -> "PUBasis":
        if data.get("format") != "spectraset-basis":
            raise InvalidBasisError("not a basis description")
        if data.get("degree", cls.degree) != cls.degree:
            raise InvalidBasisError("only quadratic bases are supported")
        warp = WarpParams(float(data["warp"]["strength"]), float(data["warp"]["position"]))
        basis = cls.build(
            int(data["count"]),
            warp,
            float(data["boundary_offset_nm"]),
            data.get("illuminant", "E"),
        )
        stored = np.array([float(k) for k in data["knots"]])
        if stored.shape != basis.knots.shape or np.any(stored != basis.knots):
            raise InvalidBasisError("stored knots disagree with basis parameters")
        return basis

    @classmethod
    def load(cls, path: str | Path) -> "PUBasis":
        return cls.from_dict(json.loads(Path(path).read_text()))
