"""Design-metric tests: analytic FWHM of uniform quadratic B-splines,
Monte Carlo cross-check of the coverage metric, and the warp search."""

import csv

import numpy as np
import pytest

from spectraset import PUBasis, WarpParams
from spectraset.colorimetry import rgb_gamut, spectral_locus
from spectraset.design import (
    excess_area,
    fwhm,
    gamut_band_quads,
    optimize_warp,
    polygon_excess_area,
    save_metrics_csv,
    smoothness,
)
from spectraset.geometry import GamutPolygon, point_in_polygon, signed_area

# A uniform quadratic B-spline over knots spaced h peaks at 3/4 and hits
# half maximum 3/8 at distance (3 - sqrt(3)) h / 2 from its center.
ANALYTIC_FWHM_FACTOR = 3.0 - np.sqrt(3.0)


def interior_spacing(count: int) -> float:
    return (700.0 - 385.0) / (count - 2)


def mc_excess_area(basis, n=500_000, seed=16):
    """Monte Carlo version of the coverage metric, areas by point counting."""
    rgb = rgb_gamut()
    locus = spectral_locus()
    subject = basis.gamut.vertices
    lo = np.array([0.0, 0.0])
    hi = np.array([0.8, 0.9])
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(n, 2))
    box = np.prod(hi - lo)
    in_subject = np.fromiter(
        (point_in_polygon(p, subject) for p in pts), dtype=bool, count=n
    )
    in_rgb = np.fromiter(
        (point_in_polygon(p, rgb.vertices) for p in pts), dtype=bool, count=n
    )
    beyond = np.mean(in_subject & ~in_rgb) * box
    missed = np.mean(in_rgb & ~in_subject) * box
    room = locus.area - rgb.area
    return (beyond - missed) / room


class TestFWHM:
    @pytest.mark.parametrize("count,k", [(5, 2), (7, 2), (7, 3), (9, 4), (11, 5)])
    def test_interior_widths_match_analytic_value(self, count, k):
        basis = PUBasis.build(count)
        expected = ANALYTIC_FWHM_FACTOR * interior_spacing(count)
        assert fwhm(basis, k) == pytest.approx(expected, abs=0.01)

    def test_widths_symmetric_for_uniform_basis(self, basis7):
        widths = [fwhm(basis7, k) for k in range(7)]
        assert widths == pytest.approx(widths[::-1], abs=1e-9)

    def test_boundary_functions_are_narrowest(self, basis5):
        widths = [fwhm(basis5, k) for k in range(5)]
        assert np.argmin(widths) in (0, 4)

    def test_offset_does_not_move_interior_widths(self):
        with_offset = PUBasis.build(7, boundary_offset_nm=100.0)
        without = PUBasis.build(7, boundary_offset_nm=0.0)
        for k in (2, 3, 4):
            assert fwhm(with_offset, k) == pytest.approx(fwhm(without, k), abs=1e-9)

    def test_narrower_spacing_means_narrower_functions(self):
        # more functions on the same span squeeze every interior width
        wide = fwhm(PUBasis.build(5), 2)
        narrow = fwhm(PUBasis.build(9), 4)
        assert narrow < wide

    def test_index_validation(self, basis5):
        with pytest.raises(IndexError):
            fwhm(basis5, 5)
        with pytest.raises(IndexError):
            fwhm(basis5, -1)


class TestSmoothness:
    def test_equals_min_over_functions(self, basis7_warped):
        widths = [fwhm(basis7_warped, k) for k in range(7)]
        assert smoothness(basis7_warped) == pytest.approx(min(widths), abs=1e-9)

    def test_strong_warp_narrows_below_uniform(self):
        uniform = smoothness(PUBasis.build(7))
        squeezed = smoothness(PUBasis.build(7, WarpParams(0.9, 0.39)))
        assert squeezed < uniform

    def test_reference_configuration_pins(self):
        assert smoothness(PUBasis.build(7, WarpParams(0.66, 0.39))) == pytest.approx(
            21.950, abs=0.01
        )
        assert smoothness(PUBasis.build(7, WarpParams(0.8, 0.5))) == pytest.approx(
            11.86, abs=0.01
        )


class TestExcessArea:
    def test_rgb_subject_scores_zero_exactly(self):
        rgb = rgb_gamut()
        assert polygon_excess_area(rgb, rgb, spectral_locus()) == 0.0

    def test_locus_subject_scores_one_exactly(self):
        rgb = rgb_gamut()
        locus = spectral_locus()
        assert polygon_excess_area(locus, rgb, locus) == pytest.approx(1.0, abs=1e-12)

    def test_subject_inside_rgb_is_negative(self):
        rgb = rgb_gamut()
        center = rgb.vertices.mean(axis=0)
        shrunk = GamutPolygon(center + 0.5 * (rgb.vertices - center))
        assert polygon_excess_area(shrunk, rgb, spectral_locus()) < 0

    def test_matches_monte_carlo(self, basis7_warped):
        got = excess_area(basis7_warped)
        estimate = mc_excess_area(basis7_warped)
        # seeded MC with 5e5 points: standard error ~2.5e-3 on this scale
        assert got == pytest.approx(estimate, abs=1e-2)

    def test_grows_with_basis_count(self):
        values = [excess_area(PUBasis.build(count)) for count in (5, 7, 9, 11)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_reference_configuration_pin(self, basis7_warped):
        assert excess_area(basis7_warped) == pytest.approx(0.578737, abs=1e-5)

    def test_warped_beats_uniform_at_same_count(self, basis7, basis7_warped):
        assert excess_area(basis7_warped) > excess_area(basis7)


class TestGamutBand:
    def test_quads_shape(self, basis7_warped):
        quads = gamut_band_quads(basis7_warped)
        assert quads.shape == (7, 4, 2)

    def test_signed_areas_telescope(self, basis11_warped):
        # sum of quad areas equals gamut area minus the inscribed polygon area
        quads = gamut_band_quads(basis11_warped)
        total = sum(signed_area(q) for q in quads)
        outer = quads[:, 0, :]
        inner = quads[:, 3, :]
        expected = signed_area(outer) - signed_area(inner)
        assert total == pytest.approx(expected, abs=1e-12)

    def test_inner_ring_lies_on_rgb_boundary(self, basis7_warped):
        from spectraset.geometry import boundary_distance

        quads = gamut_band_quads(basis7_warped)
        triangle = rgb_gamut().vertices
        for point in quads[:, 3, :]:
            assert boundary_distance(point, triangle) < 1e-12


class TestWarpSearch:
    def test_single_cell_grid(self):
        baseline = PUBasis.build(5)
        width = smoothness(baseline)
        result = optimize_warp(5, threshold_nm=width - 1.0, grid=(1, 1))
        assert result.strength_grid.tolist() == [0.0]
        assert result.position_grid.tolist() == [0.5]
        assert result.best == WarpParams(0.0, 0.5)
        assert result.best_excess == pytest.approx(excess_area(baseline), abs=1e-12)

    def test_degenerate_strength_never_scanned(self):
        result = optimize_warp(5, grid=(8, 4), threshold_nm=1.0)
        assert result.strength_grid.max() < 1.0
        assert 0.0 < result.position_grid.min()
        assert result.position_grid.max() < 1.0

    def test_best_is_feasible_argmax(self):
        result = optimize_warp(6, grid=(6, 6), threshold_nm=25.0)
        assert result.best is not None
        assert result.best_excess == pytest.approx(
            result.excess_map[result.feasible].max(), abs=1e-12
        )
        i = result.strength_grid.tolist().index(result.best.strength)
        j = result.position_grid.tolist().index(result.best.position)
        assert result.feasible[i, j]
        assert result.smoothness_map[i, j] >= 25.0

    def test_unreachable_constraint_reports_none(self):
        result = optimize_warp(5, grid=(3, 3), threshold_nm=1000.0)
        assert result.best is None and result.best_excess is None
        assert not result.feasible.any()
        assert np.isfinite(result.excess_map).all()

    def test_below_direction_flips_feasibility(self):
        at_least = optimize_warp(6, grid=(4, 4), threshold_nm=25.0)
        below = optimize_warp(6, grid=(4, 4), threshold_nm=25.0, constraint_direction="below")
        assert np.array_equal(below.feasible, ~at_least.feasible)
        assert below.smoothness_map[below.feasible].max() < 25.0

    def test_validation(self):
        with pytest.raises(ValueError):
            optimize_warp(3)
        with pytest.raises(ValueError):
            optimize_warp(5, constraint_direction="exactly")

    def test_metrics_csv_roundtrip(self, tmp_path):
        result = optimize_warp(5, grid=(3, 2), threshold_nm=10.0)
        path = tmp_path / "metrics.csv"
        save_metrics_csv(result, path)
        with open(path, newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["strength", "position", "excess_area", "smoothness_nm"]
        assert len(rows) == 1 + 3 * 2
        strength, position, excess, width = map(float, rows[1])
        assert strength == result.strength_grid[0]
        assert position == result.position_grid[0]
        assert excess == result.excess_map[0, 0]
        assert width == result.smoothness_map[0, 0]
