"""Command-line front end: build bases, sample classes, export effects.

Every command writes its data files plus a manifest recording the exact
parameters, tool version, and timings; `rerun` replays a manifest and
reproduces the data outputs byte for byte. Errors leave one
machine-readable line on stderr and a conventional exit code: 2 for bad
arguments, 3 for out-of-gamut or unreachable targets, 4 for file trouble.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .colorimetry import WAVELENGTH_GRID, Chromaticity
from .design import excess_area, optimize_warp, save_metrics_csv, smoothness
from .effects import (
    depth_trajectory,
    equalize_luminance,
    metameric_palette,
    most_distinct_pair,
)
from .errors import (
    GridMismatchError,
    InvalidBasisError,
    LuminanceUnreachableError,
    OutOfGamutError,
)
from .imaging import hidden_image, hidden_pattern, load_grayscale, load_mask, save_png, select_by_luminance
from .pubasis import PUBasis, WarpParams
from .sampler import ColorTarget, sample_class

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GAMUT = 3
EXIT_IO = 4


class _OneLineParser(argparse.ArgumentParser):
    """Argument parser whose usage failures are single machine-readable lines."""

    def error(self, message):
        print(f'error code={EXIT_USAGE} kind=usage message="{message}"', file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_basis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--basis", type=str, default=None, help="basis JSON file to load")
    parser.add_argument("-K", "--count", type=int, default=7, help="number of basis functions")
    parser.add_argument("-s", "--strength", type=float, default=0.0, help="warp strength in [0, 1]")
    parser.add_argument("-p", "--position", type=float, default=0.5, help="warp position in (0, 1)")
    parser.add_argument("--offset", type=float, default=100.0, help="boundary knot offset in nm")
    parser.add_argument("--illuminant", type=str, default=None, help="sampling illuminant name")


def _resolve_basis(args) -> PUBasis:
    if args.basis is not None:
        return PUBasis.load(args.basis)
    return PUBasis.build(
        args.count,
        WarpParams(args.strength, args.position),
        boundary_offset_nm=args.offset,
        illuminant=args.illuminant,
    )


def _basis_parameters(basis: PUBasis) -> dict:
    return {
        "count": basis.count,
        "strength": basis.warp.strength,
        "position": basis.warp.position,
        "offset": basis.boundary_offset_nm,
        "illuminant": basis.illuminant_name,
    }


def _write_manifest(prefix: Path, command: str, params: dict, outputs: list[Path],
                    timings: dict, extra: dict | None = None) -> Path:
    manifest = {
        "tool": "spectraset",
        "version": __version__,
        "command": command,
        "parameters": params,
        "outputs": [str(p) for p in outputs],
        "timings_s": {k: round(v, 6) for k, v in timings.items()},
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    path = prefix.with_name(prefix.name + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def _prefix(args) -> Path:
    prefix = Path(args.output)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True, exist_ok=True)
    return prefix


def _params(args, keys: list[str]) -> dict:
    return {k: getattr(args, k) for k in keys}


def _write_gamut_csv(path: Path, basis: PUBasis) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "y"])
        for x, y in basis.gamut.vertices:
            writer.writerow([repr(float(x)), repr(float(y))])


def cmd_basis(args) -> int:
    t0 = time.perf_counter()
    basis = _resolve_basis(args)
    coverage = excess_area(basis)
    width = smoothness(basis)
    build_s = time.perf_counter() - t0
    prefix = _prefix(args)
    t0 = time.perf_counter()
    basis_path = prefix.with_name(prefix.name + ".basis.json")
    gamut_path = prefix.with_name(prefix.name + ".gamut.csv")
    basis.save(basis_path)
    _write_gamut_csv(gamut_path, basis)
    write_s = time.perf_counter() - t0
    _write_manifest(
        prefix, "basis",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant", "output"]),
        [basis_path, gamut_path],
        {"build": build_s, "write": write_s},
        {"metrics": {"excess_area": coverage, "smoothness_nm": width}},
    )
    print(f"basis count={basis.count} excess_area={coverage:.6f} smoothness_nm={width:.3f}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    t0 = time.perf_counter()
    grid = tuple(int(v) for v in args.grid.split("x"))
    if len(grid) != 2 or grid[0] < 1 or grid[1] < 1:
        raise ValueError(f"grid must look like 64x64, got {args.grid!r}")
    result = optimize_warp(
        args.count,
        rgb_space=args.rgb_space,
        threshold_nm=args.threshold,
        grid=grid,
        constraint_direction=args.direction,
    )
    search_s = time.perf_counter() - t0
    prefix = _prefix(args)
    metrics_path = prefix.with_name(prefix.name + ".metrics.csv")
    save_metrics_csv(result, metrics_path)
    chosen = None
    if result.best is not None:
        chosen = {
            "strength": result.best.strength,
            "position": result.best.position,
            "excess_area": result.best_excess,
        }
    _write_manifest(
        prefix, "optimize",
        _params(args, ["count", "rgb_space", "threshold", "grid", "direction", "output"]),
        [metrics_path],
        {"search": search_s},
        {"chosen": chosen},
    )
    if result.best is None:
        print("no grid cell satisfies the smoothness constraint")
    else:
        print(
            f"best strength={result.best.strength:.6f} position={result.best.position:.6f} "
            f"excess_area={result.best_excess:.6f}"
        )
    return EXIT_OK


def _write_samples_csv(path: Path, samples, count: int) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        header = ["index", "seed", "achieved_luminance", "luminance_met", "scaled", "triangle"]
        header += [f"w{k}" for k in range(count)]
        header += [f"a{k}" for k in range(count)]
        writer.writerow(header)
        for i, s in enumerate(samples):
            row = [i, s.seed_key[0], repr(float(s.achieved_luminance)),
                   int(s.luminance_met), int(s.scaled), " ".join(str(t) for t in s.triangle)]
            row += [repr(float(v)) for v in s.weights]
            row += [repr(float(v)) for v in s.bary]
            writer.writerow(row)


def _write_spectra_csv(path: Path, basis: PUBasis, weight_rows: list[np.ndarray]) -> None:
    spectra = [basis.reconstruct(w) for w in weight_rows]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["wavelength_nm"] + [f"s{i}" for i in range(len(spectra))])
        for row, lam in enumerate(WAVELENGTH_GRID):
            writer.writerow([repr(float(lam))] + [repr(float(s[row])) for s in spectra])


def cmd_sample(args) -> int:
    t0 = time.perf_counter()
    basis = _resolve_basis(args)
    build_s = time.perf_counter() - t0
    target = ColorTarget(Chromaticity(args.x, args.y), args.luminance)
    t0 = time.perf_counter()
    samples = sample_class(
        basis, target, args.number, seed=args.seed, triangle_policy=args.policy
    )
    sample_s = time.perf_counter() - t0
    per_sample_ms = 1000.0 * sample_s / max(len(samples), 1)
    achieving = sum(s.luminance_met for s in samples) / max(len(samples), 1)
    prefix = _prefix(args)
    t0 = time.perf_counter()
    samples_path = prefix.with_name(prefix.name + ".samples.csv")
    spectra_path = prefix.with_name(prefix.name + ".spectra.csv")
    _write_samples_csv(samples_path, samples, basis.count)
    _write_spectra_csv(spectra_path, basis, [s.weights for s in samples])
    write_s = time.perf_counter() - t0
    _write_manifest(
        prefix, "sample",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant",
                       "x", "y", "luminance", "number", "seed", "policy", "output"]),
        [samples_path, spectra_path],
        {"build": build_s, "sample": sample_s, "write": write_s},
        {"achieving_fraction": achieving},
    )
    print(f"sampled {len(samples)} spectra in {sample_s:.3f} s ({per_sample_ms:.3f} ms/sample)")
    print(f"achieving_fraction={achieving:.4f}")
    return EXIT_OK


def cmd_trajectory(args) -> int:
    basis = _resolve_basis(args)
    target = ColorTarget(Chromaticity(args.x, args.y), args.luminance)
    samples = sample_class(
        basis, target, args.index + 1, seed=args.seed, triangle_policy=args.policy
    )
    sample = samples[args.index]
    trajectory = depth_trajectory(
        basis.reconstruct_curve(sample.weights), illuminant=basis.illuminant
    )
    prefix = _prefix(args)
    path = prefix.with_name(prefix.name + ".trajectory.csv")
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["depth", "x", "y", "Y", "terminal"])
        for i, d in enumerate(trajectory.depths):
            x, y = trajectory.points[i]
            writer.writerow([
                repr(float(d)),
                "" if trajectory.terminal[i] else repr(float(x)),
                "" if trajectory.terminal[i] else repr(float(y)),
                repr(float(trajectory.luminances[i])),
                int(trajectory.terminal[i]),
            ])
    _write_manifest(
        prefix, "trajectory",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant",
                       "x", "y", "luminance", "seed", "index", "policy", "output"]),
        [path], {},
    )
    print(f"trajectory over {len(trajectory.depths)} depths written to {path}")
    return EXIT_OK


def _palette_record(entry) -> dict:
    return {
        "weights": [float(v) for v in entry.weights],
        "first": {"XYZ": [entry.color_under_first.X, entry.color_under_first.Y,
                          entry.color_under_first.Z]},
        "second": {"XYZ": [entry.color_under_second.X, entry.color_under_second.Y,
                           entry.color_under_second.Z]},
        "seed_key": list(entry.seed_key),
    }


def cmd_palette(args) -> int:
    basis = _resolve_basis(args)
    target = ColorTarget(Chromaticity(args.x, args.y), args.luminance)
    entries = metameric_palette(
        basis, args.first, args.second, target, args.number,
        seed=args.seed, require_luminance=not args.free_luminance,
    )
    prefix = _prefix(args)
    path = prefix.with_name(prefix.name + ".palette.json")
    payload = {
        "basis": _basis_parameters(basis),
        "first": args.first,
        "second": args.second,
        "target": {"x": args.x, "y": args.y, "luminance": args.luminance},
        "entries": [_palette_record(e) for e in entries],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n")
    points = [e.color_under_second.chromaticity() for e in entries]
    spread = max(
        (points[i].distance(points[j]) for i in range(len(points)) for j in range(i + 1, len(points))),
        default=0.0,
    )
    _write_manifest(
        prefix, "palette",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant",
                       "first", "second", "x", "y", "luminance", "number", "seed",
                       "free_luminance", "output"]),
        [path], {},
        {"second_illuminant_spread": spread},
    )
    print(f"palette entries={len(entries)} second_illuminant_spread={spread:.4f}")
    return EXIT_OK


def _pattern_pair(basis, args):
    target = ColorTarget(Chromaticity(args.x, args.y), args.luminance)
    pool = metameric_palette(
        basis, args.first, args.second, target, args.pool,
        seed=args.seed, require_luminance=False,
    )
    brightest = max(e.color_under_first.Y for e in pool)
    a, b = most_distinct_pair(pool, min_first_luminance=0.5 * brightest)
    return equalize_luminance(basis, a.weights, b.weights, args.first)


def cmd_hide(args) -> int:
    basis = _resolve_basis(args)
    mask = load_mask(args.mask)
    weights_a, weights_b = _pattern_pair(basis, args)
    under_first, under_second = hidden_pattern(
        mask, weights_a, weights_b, basis, args.first, args.second
    )
    prefix = _prefix(args)
    first_path = prefix.with_name(prefix.name + ".first.png")
    second_path = prefix.with_name(prefix.name + ".second.png")
    save_png(first_path, under_first)
    save_png(second_path, under_second)
    _write_manifest(
        prefix, "hide",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant",
                       "mask", "first", "second", "x", "y", "luminance", "pool", "seed",
                       "output"]),
        [first_path, second_path], {},
    )
    print(f"pattern renders written to {first_path} and {second_path}")
    return EXIT_OK


def cmd_hide_image(args) -> int:
    basis = _resolve_basis(args)
    gray = load_grayscale(args.gray)
    target = ColorTarget(Chromaticity(args.x, args.y), args.luminance)
    pool = metameric_palette(
        basis, args.first, args.second, target, args.pool,
        seed=args.seed, require_luminance=False,
    )
    ladder = select_by_luminance(pool, args.entries)
    under_first, under_second = hidden_image(gray, ladder, basis, args.first, args.second)
    prefix = _prefix(args)
    first_path = prefix.with_name(prefix.name + ".first.png")
    second_path = prefix.with_name(prefix.name + ".second.png")
    save_png(first_path, under_first)
    save_png(second_path, under_second)
    _write_manifest(
        prefix, "hide-image",
        _params(args, ["basis", "count", "strength", "position", "offset", "illuminant",
                       "gray", "first", "second", "x", "y", "luminance", "pool", "entries",
                       "seed", "output"]),
        [first_path, second_path], {},
    )
    print(f"gradient renders written to {first_path} and {second_path}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def cmd_rerun(args) -> int:
    try:
        manifest = json.loads(Path(args.manifest).read_text())
    except json.JSONDecodeError as exc:
        raise GridMismatchError(f"manifest is not valid JSON: {exc}") from exc
    command = manifest.get("command")
    handlers = {
        "basis": cmd_basis,
        "optimize": cmd_optimize,
        "sample": cmd_sample,
        "trajectory": cmd_trajectory,
        "palette": cmd_palette,
        "hide": cmd_hide,
        "hide-image": cmd_hide_image,
    }
    if command not in handlers:
        raise ValueError(f"manifest command {command!r} is not replayable")
    if manifest.get("version") != __version__:
        print(
            f"warning: manifest from version {manifest.get('version')}, "
            f"running {__version__}; outputs may differ",
            file=sys.stderr,
        )
    return handlers[command](argparse.Namespace(**manifest["parameters"]))


def build_parser() -> argparse.ArgumentParser:
    parser = _OneLineParser(prog="spectraset", description=__doc__)
    parser.add_argument("--version", action="version", version=f"spectraset {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="build a basis, report its metrics, save it")
    _add_basis_flags(p)
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    p.set_defaults(handler=cmd_basis)

    p = sub.add_parser("optimize", help="grid-search warp parameters")
    p.add_argument("-K", "--count", type=int, default=7)
    p.add_argument("--rgb-space", dest="rgb_space", default="srgb", choices=["srgb", "wide"])
    p.add_argument("--threshold", type=float, default=20.0, help="smoothness threshold in nm")
    p.add_argument("--grid", default="64x64", help="grid resolution, e.g. 64x64")
    p.add_argument("--direction", default="at-least", choices=["at-least", "below"])
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("sample", help="sample the class of spectra for a color")
    _add_basis_flags(p)
    p.add_argument("-x", type=float, required=True, help="target chromaticity x")
    p.add_argument("-y", type=float, required=True, help="target chromaticity y")
    p.add_argument("-Y", "--luminance", type=float, required=True, help="target luminance")
    p.add_argument("-n", "--number", type=int, default=100, help="sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", default="largest", help="triangle policy")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("trajectory", help="depth trajectory of one sampled spectrum")
    _add_basis_flags(p)
    p.add_argument("-x", type=float, required=True)
    p.add_argument("-y", type=float, required=True)
    p.add_argument("-Y", "--luminance", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, default=0, help="sample index to trace")
    p.add_argument("--policy", default="largest")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_trajectory)

    p = sub.add_parser("palette", help="metameric palette under two illuminants")
    _add_basis_flags(p)
    p.add_argument("--first", default="D65")
    p.add_argument("--second", default="F2")
    p.add_argument("-x", type=float, required=True)
    p.add_argument("-y", type=float, required=True)
    p.add_argument("-Y", "--luminance", type=float, required=True)
    p.add_argument("-n", "--number", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--free-luminance", dest="free_luminance", action="store_true",
                   help="keep each draw's own achieved luminance")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_palette)

    p = sub.add_parser("hide", help="hide a binary pattern with two metamers")
    _add_basis_flags(p)
    p.add_argument("--mask", required=True, help="mask image path")
    p.add_argument("--first", default="D65")
    p.add_argument("--second", default="F2")
    p.add_argument("-x", type=float, default=0.32)
    p.add_argument("-y", type=float, default=0.25)
    p.add_argument("-Y", "--luminance", type=float, default=0.8)
    p.add_argument("--pool", type=int, default=64, help="palette pool size to pick the pair from")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_hide)

    p = sub.add_parser("hide-image", help="hide a grayscale image in a luminance ladder")
    _add_basis_flags(p)
    p.add_argument("--gray", required=True, help="grayscale image path")
    p.add_argument("--first", default="D65")
    p.add_argument("--second", default="F2")
    p.add_argument("-x", type=float, default=None, help="target x (default: first illuminant white)")
    p.add_argument("-y", type=float, default=None)
    p.add_argument("-Y", "--luminance", type=float, default=0.8)
    p.add_argument("--pool", type=int, default=64)
    p.add_argument("--entries", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=cmd_hide_image)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8300)
    p.set_defaults(handler=cmd_serve)

    p = sub.add_parser("rerun", help="replay a run manifest")
    p.add_argument("manifest", help="path to a .manifest.json file")
    p.set_defaults(handler=cmd_rerun)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "hide-image" and (args.x is None or args.y is None):
        from .colorimetry import get_illuminant, white_point

        white = white_point(get_illuminant(args.first))
        args.x = white.x if args.x is None else args.x
        args.y = white.y if args.y is None else args.y
    try:
        return args.handler(args)
    except (OutOfGamutError, LuminanceUnreachableError) as exc:
        print(
            f'error code={EXIT_GAMUT} kind={type(exc).__name__} message="{exc}"',
            file=sys.stderr,
        )
        return EXIT_GAMUT
    except (OSError, GridMismatchError) as exc:
        # before ValueError: GridMismatchError is a ValueError subclass
        print(
            f'error code={EXIT_IO} kind={type(exc).__name__} message="{exc}"',
            file=sys.stderr,
        )
        return EXIT_IO
    except (InvalidBasisError, ValueError, KeyError, IndexError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(
            f'error code={EXIT_USAGE} kind={type(exc).__name__} message="{message}"',
            file=sys.stderr,
        )
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
