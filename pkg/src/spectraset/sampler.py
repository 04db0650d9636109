"""One-to-many sampling of bounded spectra that reproduce a target color.

A target chromaticity inside the basis gamut is written as a generalized
barycentric combination of the basis chromaticities: three coordinates live
on an enclosing triangle of basis points, the remaining ones are free
degrees of freedom. Sampling walks the free coordinates in random order,
drawing each uniformly below the exact upper bound that keeps the whole
coordinate vector admissible, so every draw yields a valid spectrum and the
family is explored without rejection.

Luminance is controlled afterwards through the overall weight scale, which
moves luminance without touching chromaticity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .colorimetry import Chromaticity
from .errors import GamutBoundaryError, OutOfGamutError
from .geometry import point_in_triangle, point_segment_distance, signed_area
from .pubasis import PUBasis
from .simplex import maximize_box_lp

# Inclusive tolerance for triangle membership tests.
TRIANGLE_TOL = 1e-9

# A sample "meets" the requested luminance within this tolerance.
LUMINANCE_MET_TOL = 1e-6

TRIANGLE_POLICIES = ("largest", "first", "random", "fixed")


@dataclass(frozen=True)
class ColorTarget:
    """Target chromaticity plus relative luminance in [0, 1]."""

    chromaticity: Chromaticity
    luminance: float

    def __post_init__(self):
        if not (0.0 <= self.luminance <= 1.0):
            raise ValueError(f"luminance {self.luminance} outside [0, 1]")


@dataclass(frozen=True)
class TriangleDecomposition:
    """Target expressed on one enclosing triangle of basis chromaticities.

    ``triangle_matrix`` holds the homogeneous columns (1, x, y) of the
    triangle's chromaticities and ``free_matrix`` those of all remaining
    basis points. ``free_barycentric`` is their product
    ``triangle_matrix^-1 free_matrix``: column by column, the barycentric
    coordinates of every free basis chromaticity in the triangle frame;
    each column sums to 1. ``triangle_coords`` are the target's own
    barycentric coordinates.
    """

    indices: tuple[int, int, int]
    free_indices: tuple[int, ...]
    triangle_matrix: np.ndarray
    free_matrix: np.ndarray
    free_barycentric: np.ndarray
    triangle_coords: np.ndarray

    def __post_init__(self):
        for name in ("triangle_matrix", "free_matrix", "free_barycentric", "triangle_coords"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class ClassSample:
    """One member of the family of spectra matching a target color.

    ``triangle`` lists the basis indices carrying the solution: three for a
    regular interior sample, two (or one) for the degenerate solution of a
    target on the gamut boundary.
    """

    weights: np.ndarray
    bary: np.ndarray
    dof: np.ndarray
    triangle: tuple[int, ...]
    achieved_luminance: float
    luminance_met: bool
    scaled: bool
    seed_key: tuple[int, int]

    def __post_init__(self):
        for name in ("weights", "bary", "dof"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the conservative luminance feasibility test.

    ``luminance_cap`` is the luminance of the brightest admissible spectrum
    found by the box-constrained search after rescaling; a target below the
    cap is definitely reachable, one above it is reported infeasible even
    though a cleverer spectrum might still reach it (hence conservative).
    """

    feasible: bool
    luminance_cap: float
    weights: np.ndarray
    conservative: bool = True


def locate_target(basis: PUBasis, point: Chromaticity, tol: float = TRIANGLE_TOL) -> str:
    """Classify a target against the basis gamut: 'inside' or 'boundary'.

    Raises for targets outside the gamut.
    """
    where = basis.gamut.classify(point.as_array(), tol)
    if where == "outside":
        raise OutOfGamutError(
            f"chromaticity ({point.x:.4f}, {point.y:.4f}) is outside the basis gamut",
            point=(point.x, point.y),
        )
    return where


def enclosing_triangles(
    basis: PUBasis, point: Chromaticity, tol: float = TRIANGLE_TOL
) -> list[tuple[int, int, int]]:
    """All index triples whose chromaticity triangle contains the point.

    Triples are enumerated in lexicographic order; degenerate (collinear)
    triples are skipped. Targets on the gamut boundary are rejected with a
    distinct error because their solution family collapses to a single
    blend of the two edge bases.
    """
    if locate_target(basis, point, tol) == "boundary":
        raise GamutBoundaryError(
            f"chromaticity ({point.x:.4f}, {point.y:.4f}) lies on the gamut boundary; "
            "the class degenerates to a two-basis blend",
            point=(point.x, point.y),
        )
    chroma = basis.chromaticities
    p = point.as_array()
    found = []
    for triple in combinations(range(basis.count), 3):
        tri = chroma[list(triple)]
        if abs(signed_area(tri)) < 1e-14:
            continue
        if point_in_triangle(p, tri, tol):
            found.append(triple)
    return found


def decompose(
    basis: PUBasis, triangle: tuple[int, int, int], point: Chromaticity
) -> TriangleDecomposition:
    """Express the target and all free basis points in the triangle frame."""
    chroma = basis.chromaticities
    tri_idx = tuple(int(i) for i in triangle)
    free_idx = tuple(i for i in range(basis.count) if i not in tri_idx)
    tri = chroma[list(tri_idx)]
    frame = np.vstack([np.ones(3), tri.T])
    if abs(np.linalg.det(frame)) < 1e-12:
        raise ValueError(f"triangle {tri_idx} is degenerate")
    target_coords = np.linalg.solve(frame, np.array([1.0, point.x, point.y]))
    free = chroma[list(free_idx)]
    free_aug = np.vstack([np.ones(len(free_idx)), free.T])
    free_bary = np.linalg.solve(frame, free_aug)
    return TriangleDecomposition(tri_idx, free_idx, frame, free_aug, free_bary, target_coords)


def dof_upper_bound(dec: TriangleDecomposition, dof: np.ndarray, n: int) -> float:
    """Largest admissible value of free coordinate ``n`` given the others.

    Entry ``n`` of ``dof`` is ignored. The bound keeps all triangle
    coordinates inside [0, 1] (and with them the full coordinate vector,
    which sums to 1 by construction); it is never negative. An infeasible
    partial assignment simply yields a zero-width interval.
    """
    m = dec.free_barycentric
    coords = np.asarray(dof, dtype=float)
    others = m @ coords - m[:, n] * coords[n]
    margin = dec.triangle_coords - others
    col = m[:, n]
    best = np.inf
    for i in range(3):
        if col[i] > 1e-14:
            best = min(best, margin[i] / col[i])
        elif col[i] < -1e-14:
            best = min(best, (margin[i] - 1.0) / col[i])
    return max(0.0, float(best))


def sample_dof(
    dec: TriangleDecomposition,
    rng: np.random.Generator,
    order: np.ndarray | None = None,
) -> np.ndarray:
    """Draw the free coordinates sequentially, each uniform below its bound.

    The visiting order is a fresh random permutation unless given
    explicitly; randomizing it removes the bias a fixed order would imprint
    on the late coordinates. Pass ``order=np.arange(n)`` for the plain
    sequential scheme.
    """
    n_free = len(dec.free_indices)
    dof = np.zeros(n_free)
    if order is None:
        order = rng.permutation(n_free)
    for n in order:
        bound = dof_upper_bound(dec, dof, int(n))
        dof[int(n)] = rng.uniform(0.0, bound) if bound > 0 else 0.0
    return dof


def bary_from_dof(dec: TriangleDecomposition, dof: np.ndarray, count: int) -> np.ndarray:
    """Assemble the full coordinate vector from triangle and free parts."""
    coords = np.asarray(dof, dtype=float)
    bary = np.zeros(count)
    bary[list(dec.free_indices)] = coords
    bary[list(dec.indices)] = dec.triangle_coords - dec.free_barycentric @ coords
    return bary


def weights_from_bary(basis: PUBasis, bary: np.ndarray) -> tuple[np.ndarray, float]:
    """Weight profile and scale ceiling realizing a coordinate vector.

    Returns ``(profile, w0_max)``: any overall scale ``w0`` in
    (0, ``w0_max``] makes ``w0 * profile`` a weight vector in [0, 1] whose
    color has the chromaticity encoded by ``bary``. The profile is
    normalized so its largest entry is exactly 1 at ``w0_max``; coordinates
    with a zero barycentric entry keep a zero weight. The pivot is the
    largest coordinate, so the normalization never divides by a tiny value.
    """
    a = np.asarray(bary, dtype=float)
    pivot = int(np.argmax(a))
    profile = (a * basis.magnitudes[pivot]) / (a[pivot] * basis.magnitudes)
    w0_max = 1.0 / float(profile.max())
    return profile, w0_max


def achieve_luminance(
    basis: PUBasis,
    profile: np.ndarray,
    w0_max: float,
    target_luminance: float,
) -> tuple[np.ndarray, float, bool, bool]:
    """Scale a weight profile to the requested luminance, or as close as allowed.

    Picks the overall scale hitting the target exactly when it fits below
    the ceiling. Otherwise takes the ceiling spectrum and renormalizes it by
    the larger of its maximum value and its luminance overshoot ratio, which
    keeps the spectrum inside [0, 1] while preserving chromaticity.

    Returns ``(weights, achieved, met, rescaled)``.
    """
    luminance_gain = float(profile @ basis.basis_colors[:, 1])
    exact_scale = target_luminance / luminance_gain
    if exact_scale <= w0_max * (1.0 + 1e-12):
        weights = exact_scale * profile
        achieved = exact_scale * luminance_gain
        return weights, achieved, abs(achieved - target_luminance) <= LUMINANCE_MET_TOL, False
    weights = w0_max * profile
    ceiling_luminance = w0_max * luminance_gain
    peak = float(basis.reconstruct(weights).max())
    divisor = max(peak, ceiling_luminance / target_luminance)
    weights = weights / divisor
    achieved = ceiling_luminance / divisor
    return weights, achieved, abs(achieved - target_luminance) <= LUMINANCE_MET_TOL, True


def boundary_solution(basis: PUBasis, target: ColorTarget, seed: int = 0) -> ClassSample:
    """The unique degenerate member for a target on the gamut boundary.

    A boundary chromaticity is reachable only as a blend of the bases
    spanning the edge it sits on, so the class collapses to a single
    profile (up to overall scale, which luminance fixes).
    """
    chroma = basis.chromaticities
    point = target.chromaticity.as_array()
    count = basis.count
    edge = None
    for k in range(count):
        a, b = chroma[k], chroma[(k + 1) % count]
        if point_segment_distance(point, a, b) <= TRIANGLE_TOL * 10:
            edge = (k, (k + 1) % count)
            break
    if edge is None:
        raise GamutBoundaryError(
            "target classified on the boundary but no edge matched",
            point=(target.chromaticity.x, target.chromaticity.y),
        )
    i, j = edge
    a, b = chroma[i], chroma[j]
    span = b - a
    alpha = float((point - a) @ span) / float(span @ span)
    alpha = min(1.0, max(0.0, alpha))
    bary = np.zeros(count)
    bary[i] = 1.0 - alpha
    bary[j] = alpha
    profile, w0_max = weights_from_bary(basis, bary)
    weights, achieved, met, rescaled = achieve_luminance(
        basis, profile, w0_max, target.luminance
    )
    support = (i, j) if bary[j] > 0 and bary[i] > 0 else ((i,) if bary[i] > 0 else (j,))
    return ClassSample(
        weights=weights,
        bary=bary,
        dof=np.zeros(0),
        triangle=support,
        achieved_luminance=achieved,
        luminance_met=met,
        scaled=rescaled,
        seed_key=(seed, 0),
    )


def _pick_triangle(
    triangles: list[tuple[int, int, int]],
    basis: PUBasis,
    policy: str,
    fixed: tuple[int, int, int] | None,
    rng: np.random.Generator,
) -> tuple[int, int, int]:
    if policy == "largest":
        chroma = basis.chromaticities
        areas = [abs(signed_area(chroma[list(t)])) for t in triangles]
        return triangles[int(np.argmax(areas))]
    if policy == "first":
        return triangles[0]
    if policy == "random":
        return triangles[int(rng.integers(len(triangles)))]
    if policy == "fixed":
        if fixed is None:
            raise ValueError("triangle_policy 'fixed' needs an explicit triangle")
        key = tuple(sorted(int(i) for i in fixed))
        if key not in {tuple(sorted(t)) for t in triangles}:
            raise ValueError(f"triangle {fixed} does not enclose the target")
        return key
    raise ValueError(f"unknown triangle policy {policy!r}; use one of {TRIANGLE_POLICIES}")


def sample_class(
    basis: PUBasis,
    target: ColorTarget,
    count: int,
    seed: int = 0,
    triangle_policy: str = "largest",
    triangle: tuple[int, int, int] | None = None,
) -> list[ClassSample]:
    """Draw ``count`` independent spectra whose color matches the target.

    Every sample reproduces the target chromaticity exactly (up to
    round-off). The requested luminance is met exactly whenever the drawn
    shape allows it; otherwise the sample is rescaled to the brightest
    admissible version of its shape and flagged ``luminance_met=False``.

    A target on the gamut boundary collapses the family to its unique
    two-basis blend, returned as a single sample.

    Each sample derives its own random stream from ``(seed, index)``, so
    results are reproducible and any sample can be regenerated alone.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if target.luminance <= 0.0:
        raise ValueError("sampling needs a strictly positive target luminance")
    point = target.chromaticity
    if locate_target(basis, point) == "boundary":
        return [boundary_solution(basis, target, seed)]
    triangles = enclosing_triangles(basis, point)
    if not triangles:
        raise OutOfGamutError(
            f"no basis triangle encloses ({point.x:.4f}, {point.y:.4f})",
            point=(point.x, point.y),
        )

    decompositions: dict[tuple[int, int, int], TriangleDecomposition] = {}
    samples: list[ClassSample] = []
    for index in range(count):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
        chosen = _pick_triangle(triangles, basis, triangle_policy, triangle, rng)
        dec = decompositions.get(chosen)
        if dec is None:
            dec = decompose(basis, chosen, point)
            decompositions[chosen] = dec
        dof = sample_dof(dec, rng)
        bary = bary_from_dof(dec, dof, basis.count)
        profile, w0_max = weights_from_bary(basis, bary)
        weights, achieved, met, rescaled = achieve_luminance(
            basis, profile, w0_max, target.luminance
        )
        samples.append(
            ClassSample(
                weights=weights,
                bary=bary,
                dof=dof,
                triangle=chosen,
                achieved_luminance=achieved,
                luminance_met=met,
                scaled=rescaled,
                seed_key=(seed, index),
            )
        )
    return samples


def max_luminance_weights(basis: PUBasis, point: Chromaticity) -> np.ndarray:
    """Brightest class member: the weights of the spectrum with maximal
    luminance among all reconstructions bounded by 1 that match the
    chromaticity.

    The bound applies to the reconstruction, not the weights: a weight on a
    boundary-truncated basis function may exceed 1 while the spectrum stays
    below it. The solve relaxes the per-wavelength cap to per-weight caps
    (1 over each basis function's maximum) and then adds the cap row of the
    worst violated wavelength as a slack-variable equality until the
    spectrum fits. Each slack is the spectrum value at its wavelength, kept
    in [0, 1] by its box bound, so the origin stays a feasible start. The
    two chromaticity-matching rows are the only other constraints; the
    third, sum-to-one row is a linear combination of them and is dropped.
    """
    chroma = basis.chromaticities
    target = np.array([point.x, point.y])
    a_eq = (chroma - target).T * basis.magnitudes
    objective = basis.basis_colors[:, 1]
    dense = basis.dense_matrix
    count = basis.count
    caps = 1.0 / dense.max(axis=0)
    cuts: list[int] = []
    weights = np.zeros(count)
    for _ in range(dense.shape[0]):
        n = count + len(cuts)
        c = np.concatenate([objective, np.zeros(len(cuts))])
        rows = np.zeros((2 + len(cuts), n))
        rows[:2, :count] = a_eq
        for i, grid_index in enumerate(cuts):
            rows[2 + i, :count] = dense[grid_index]
            rows[2 + i, count + i] = -1.0
        upper = np.concatenate([caps, np.ones(len(cuts))])
        solution = maximize_box_lp(c, rows, np.zeros(2 + len(cuts)), upper=upper)
        weights = solution[:count]
        spectrum = dense @ weights
        worst = int(np.argmax(spectrum))
        if spectrum[worst] <= 1.0 + 1e-9 or worst in cuts:
            break
        cuts.append(worst)
    if weights @ basis.magnitudes <= 0.0:
        raise OutOfGamutError(
            f"chromaticity ({point.x:.4f}, {point.y:.4f}) admits no positive spectrum",
            point=(point.x, point.y),
        )
    return weights


def feasibility_check(basis: PUBasis, target: ColorTarget) -> FeasibilityReport:
    """Test whether the target luminance is reachable at the chromaticity.

    Finds the brightest bounded spectrum at the target chromaticity,
    rescales it the same way sampling would, and compares. Zero requested
    luminance is trivially feasible.
    """
    if target.luminance == 0.0:
        return FeasibilityReport(True, 0.0, np.zeros(basis.count))
    weights = max_luminance_weights(basis, target.chromaticity)
    luminance = float(weights @ basis.basis_colors[:, 1])
    peak = float(basis.reconstruct(weights).max())
    divisor = max(peak, luminance / target.luminance)
    cap = luminance / divisor if divisor > 0 else 0.0
    return FeasibilityReport(
        feasible=cap >= target.luminance - 1e-9,
        luminance_cap=cap,
        weights=weights / divisor if divisor > 0 else weights,
    )
