"""Local HTTP service exposing the toolkit to interactive clients.

Every endpoint is stateless: the request carries a full basis
description, the response carries plain JSON numbers, and identical
requests produce identical bodies. Spectra are downsampled to a 5 nm
grid for plotting; all color math stays on the server.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .colorimetry import (
    WAVELENGTH_GRID,
    Chromaticity,
    get_illuminant,
    integrate_to_xyz,
    rgb_gamut,
    spectral_locus,
    white_point,
    xyz_to_linear_srgb,
)
from .design import excess_area, smoothness
from .effects import (
    brightest_member,
    depth_trajectory,
    metameric_palette,
    pick_by_hue,
    representative_set,
    transmittance_at_depth,
)
from .errors import (
    GamutBoundaryError,
    InvalidBasisError,
    LuminanceUnreachableError,
    OutOfGamutError,
    SpectrasetError,
)
from .pubasis import PUBasis, WarpParams
from .sampler import ColorTarget, sample_class

PLOT_STEP_NM = 5
_PLOT_INDICES = slice(None, None, PLOT_STEP_NM)


class BasisSpec(BaseModel):
    count: int = 7
    strength: float = 0.0
    position: float = 0.5
    offset: float = 100.0
    illuminant: str | None = None

    def build(self) -> PUBasis:
        return PUBasis.build(
            self.count,
            WarpParams(self.strength, self.position),
            boundary_offset_nm=self.offset,
            illuminant=self.illuminant,
        )


class TargetSpec(BaseModel):
    x: float
    y: float
    luminance: float = Field(ge=0.0)

    def to_target(self) -> ColorTarget:
        return ColorTarget(Chromaticity(self.x, self.y), self.luminance)


class SampleRequest(BaseModel):
    basis: BasisSpec = BasisSpec()
    target: TargetSpec
    count: int = Field(default=16, ge=1, le=4096)
    seed: int = 0
    policy: str = "largest"


class TrajectoryRequest(BaseModel):
    basis: BasisSpec = BasisSpec()
    weights: list[float]
    depths: list[float] | None = None


class RepresentativesRequest(BaseModel):
    basis: BasisSpec = BasisSpec()
    target: TargetSpec
    reference_depth: float = Field(default=10.0, gt=0.0)


class PickHueRequest(BaseModel):
    basis: BasisSpec = BasisSpec()
    target: TargetSpec
    reference_depth: float = Field(default=10.0, gt=0.0)
    hue_angle: float


class PaletteRequest(BaseModel):
    basis: BasisSpec = BasisSpec()
    first: str = "D65"
    second: str = "F2"
    target: TargetSpec
    count: int = Field(default=16, ge=1, le=1024)
    seed: int = 0
    require_luminance: bool = True


def _plot_wavelengths() -> list[float]:
    return [float(v) for v in WAVELENGTH_GRID[_PLOT_INDICES]]


def _plot_spectrum(values: np.ndarray) -> list[float]:
    return [float(v) for v in np.asarray(values)[_PLOT_INDICES]]


def _points(array) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in np.asarray(array)]


def _linear_rgb(xyz) -> list[float]:
    return [float(v) for v in xyz_to_linear_srgb(xyz)]


def _weights_color(basis: PUBasis, weights: np.ndarray) -> dict:
    xyz = integrate_to_xyz(basis.reconstruct_curve(weights), basis.illuminant)
    return {
        "xyz": [xyz.X, xyz.Y, xyz.Z],
        "chromaticity": [xyz.chromaticity().x, xyz.chromaticity().y],
        "linear_rgb": _linear_rgb(xyz),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="spectraset", version="0.1.0", docs_url=None, redoc_url=None)

    _CODES = {
        InvalidBasisError: "invalid_basis",
        OutOfGamutError: "out_of_gamut",
        GamutBoundaryError: "gamut_boundary",
        LuminanceUnreachableError: "luminance_unreachable",
    }

    def _error(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"code": code, "message": message})

    @app.exception_handler(SpectrasetError)
    async def _domain_error(request, exc: SpectrasetError):
        code = _CODES.get(type(exc), "domain_error")
        return _error(400, code, str(exc))

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(KeyError)
    async def _key_error(request, exc: KeyError):
        message = exc.args[0] if exc.args else str(exc)
        return _error(400, "bad_request", str(message))

    @app.get("/basis")
    async def basis_endpoint(
        K: int = 7,
        s: float = 0.0,
        p: float = 0.5,
        offset: float = 100.0,
        illuminant: str | None = None,
    ):
        spec = BasisSpec(count=K, strength=s, position=p, offset=offset, illuminant=illuminant)
        basis = spec.build()
        white = white_point(basis.illuminant)
        return {
            "summary": {
                "count": basis.count,
                "strength": basis.warp.strength,
                "position": basis.warp.position,
                "offset_nm": basis.boundary_offset_nm,
                "illuminant": basis.illuminant_name,
                "excess_area": excess_area(basis),
                "smoothness_nm": smoothness(basis),
            },
            "wavelengths_nm": _plot_wavelengths(),
            "basis_curves": [
                _plot_spectrum(col) for col in basis.dense_matrix.T
            ],
            "basis_points": _points(basis.chromaticities),
            "gamut": _points(basis.gamut.vertices),
            "srgb_triangle": _points(rgb_gamut("srgb").vertices),
            "wide_triangle": _points(rgb_gamut("wide").vertices),
            "locus": _points(spectral_locus().vertices),
            "white": [white.x, white.y],
        }

    @app.post("/sample")
    async def sample_endpoint(request: SampleRequest):
        basis = request.basis.build()
        target = request.target.to_target()
        samples = sample_class(
            basis, target, request.count, seed=request.seed,
            triangle_policy=request.policy,
        )
        # One LP solve covers both: the feasibility verdict is just the
        # brightest member's luminance against the request.
        bright_weights, bright_luminance = brightest_member(basis, target.chromaticity)
        cap = min(bright_luminance, target.luminance)
        feasible = target.luminance == 0.0 or bright_luminance >= target.luminance - 1e-9
        entries = []
        for s in samples:
            entry = {
                "weights": [float(v) for v in s.weights],
                "bary": [float(v) for v in s.bary],
                "triangle": list(s.triangle),
                "achieved_luminance": s.achieved_luminance,
                "luminance_met": s.luminance_met,
                "scaled": s.scaled,
                "spectrum": _plot_spectrum(basis.reconstruct(s.weights)),
                "color": _weights_color(basis, s.weights),
            }
            entries.append(entry)
        return {
            "wavelengths_nm": _plot_wavelengths(),
            "samples": entries,
            "feasible": feasible,
            "luminance_cap": cap,
            "max_luminance": {
                "weights": [float(v) for v in bright_weights],
                "luminance": bright_luminance,
                "spectrum": _plot_spectrum(basis.reconstruct(bright_weights)),
                "color": _weights_color(basis, bright_weights),
            },
        }

    @app.post("/trajectory")
    async def trajectory_endpoint(request: TrajectoryRequest):
        basis = request.basis.build()
        weights = np.asarray(request.weights, dtype=float)
        curve = basis.reconstruct_curve(weights)
        depths = None if request.depths is None else np.asarray(request.depths, dtype=float)
        trajectory = depth_trajectory(curve, depths=depths, illuminant=basis.illuminant)
        points = [
            None if trajectory.terminal[i] else [float(x), float(y)]
            for i, (x, y) in enumerate(trajectory.points)
        ]
        return {
            "depths": [float(d) for d in trajectory.depths],
            "points": points,
            "luminances": [float(v) for v in trajectory.luminances],
            "terminal": [bool(t) for t in trajectory.terminal],
        }

    @app.post("/representatives")
    async def representatives_endpoint(request: RepresentativesRequest):
        basis = request.basis.build()
        reps = representative_set(
            basis, request.target.to_target(), d_ref=request.reference_depth
        )
        entries = []
        for entry in reps.entries:
            deep = transmittance_at_depth(
                basis.reconstruct_curve(entry.weights), request.reference_depth
            )
            deep_xyz = integrate_to_xyz(deep, basis.illuminant)
            entries.append({
                "triangle": list(entry.triangle),
                "weights": [float(v) for v in entry.weights],
                "hue_angle": entry.hue_angle,
                "chromaticity_at_ref": [entry.chromaticity_at_ref.x,
                                        entry.chromaticity_at_ref.y],
                "achieved_luminance": entry.achieved_luminance,
                "luminance_met": entry.luminance_met,
                "color": _weights_color(basis, entry.weights),
                "deep_color": {
                    "xyz": [deep_xyz.X, deep_xyz.Y, deep_xyz.Z],
                    "linear_rgb": _linear_rgb(deep_xyz),
                },
            })
        return {"reference_depth": reps.d_ref, "entries": entries}

    @app.post("/pick_hue")
    async def pick_hue_endpoint(request: PickHueRequest):
        basis = request.basis.build()
        reps = representative_set(
            basis, request.target.to_target(), d_ref=request.reference_depth
        )
        weights = pick_by_hue(reps, request.hue_angle)
        deep = transmittance_at_depth(
            basis.reconstruct_curve(weights), request.reference_depth
        )
        deep_xyz = integrate_to_xyz(deep, basis.illuminant)
        return {
            "weights": [float(v) for v in weights],
            "wavelengths_nm": _plot_wavelengths(),
            "spectrum": _plot_spectrum(basis.reconstruct(weights)),
            "color": _weights_color(basis, weights),
            "deep_color": {
                "xyz": [deep_xyz.X, deep_xyz.Y, deep_xyz.Z],
                "chromaticity": [deep_xyz.chromaticity().x, deep_xyz.chromaticity().y]
                if deep_xyz.X + deep_xyz.Y + deep_xyz.Z > 0 else None,
                "linear_rgb": _linear_rgb(deep_xyz),
            },
        }

    @app.post("/palette")
    async def palette_endpoint(request: PaletteRequest):
        basis = request.basis.build()
        entries = metameric_palette(
            basis,
            request.first,
            request.second,
            request.target.to_target(),
            request.count,
            seed=request.seed,
            require_luminance=request.require_luminance,
        )
        records = []
        for entry in entries:
            records.append({
                "weights": [float(v) for v in entry.weights],
                "seed_key": list(entry.seed_key),
                "first": {
                    "xyz": [entry.color_under_first.X, entry.color_under_first.Y,
                            entry.color_under_first.Z],
                    "linear_rgb": _linear_rgb(entry.color_under_first),
                },
                "second": {
                    "xyz": [entry.color_under_second.X, entry.color_under_second.Y,
                            entry.color_under_second.Z],
                    "linear_rgb": _linear_rgb(entry.color_under_second),
                },
            })
        return {
            "first": get_illuminant(request.first).name,
            "second": get_illuminant(request.second).name,
            "entries": records,
        }

    return app
