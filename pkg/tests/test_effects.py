"""Tests for depth trajectories, medium splits, hue-indexed representatives,
inter-reflection drift, and metameric palettes."""

import math

import numpy as np
import pytest

from spectraset.colorimetry import (
    GRID_SIZE,
    Chromaticity,
    SpectralCurve,
    get_illuminant,
    integrate_to_xyz,
    white_point,
)
from spectraset.effects import (
    RepresentativeEntry,
    RepresentativeSet,
    brightest_member,
    default_depth_grid,
    depth_trajectory,
    equalize_luminance,
    hue_angle_around_equiluminant,
    medium_coefficients,
    metameric_palette,
    most_distinct_pair,
    pick_by_hue,
    representative_set,
    schlick_order,
    transmittance_at_depth,
)
from spectraset.errors import LuminanceUnreachableError
from spectraset.sampler import (
    LUMINANCE_MET_TOL,
    ColorTarget,
    enclosing_triangles,
    sample_class,
)

FIG_TARGET = ColorTarget(Chromaticity(0.41, 0.42), 0.57)


def oracle_deep_chromaticity(curve, depth, illuminant=None):
    """Longhand transmitted color: pointwise power, then integration."""
    deep = SpectralCurve(curve.values**depth)
    return integrate_to_xyz(deep, illuminant).chromaticity()


def newton_extinction_root(iterations: int = 60) -> float:
    """Root of -log(t) - t = 0, solved independently by Newton iteration."""
    t = 0.5
    for _ in range(iterations):
        f = -math.log(t) - t
        fprime = -1.0 / t - 1.0
        t -= f / fprime
    return t


# ---------------------------------------------------------------- depth


def test_default_depth_grid_contains_unit_depth():
    depths = default_depth_grid()
    assert np.count_nonzero(depths == 1.0) == 1
    assert np.all(np.diff(depths) > 0)
    assert depths[0] == pytest.approx(0.25)
    assert depths[-1] == pytest.approx(32.0)


def test_transmittance_power_matches_oracle():
    rng = np.random.default_rng(11)
    values = rng.uniform(0.05, 1.0, GRID_SIZE)
    t1 = SpectralCurve(values)
    for depth in (0.0, 0.5, 1.0, 3.0, 17.5):
        got = transmittance_at_depth(t1, depth)
        np.testing.assert_allclose(got.values, values**depth, atol=1e-15)
    assert np.all(transmittance_at_depth(t1, 0.0).values == 1.0)
    with pytest.raises(ValueError):
        transmittance_at_depth(t1, -0.1)


def test_trajectory_unit_depth_matches_sample_color(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=5)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    traj = depth_trajectory(curve, illuminant=basis7.illuminant)
    point = traj.at_depth(1.0)
    assert point.distance(FIG_TARGET.chromaticity) < 1e-9


def test_trajectory_points_match_longhand_oracle(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=5)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    depths = np.array([0.5, 1.0, 2.0, 4.0, 8.0])
    traj = depth_trajectory(curve, depths=depths, illuminant=basis7.illuminant)
    for i, depth in enumerate(depths):
        if traj.terminal[i]:
            continue
        expected = oracle_deep_chromaticity(curve, depth, basis7.illuminant)
        assert Chromaticity(*traj.points[i]).distance(expected) < 1e-12


def test_trajectory_luminance_nonincreasing_for_bounded_spectra(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=2)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    assert np.all(curve.values <= 1.0 + 1e-12)
    traj = depth_trajectory(curve, illuminant=basis7.illuminant)
    assert np.all(np.diff(traj.luminances) <= 1e-12)


def test_trajectory_terminal_flags_and_lookup():
    t1 = SpectralCurve(np.full(GRID_SIZE, 1e-3))
    traj = depth_trajectory(t1, depths=np.array([1.0, 2.0, 10.0]))
    assert list(traj.terminal) == [False, False, True]
    assert np.all(np.isnan(traj.points[2]))
    assert traj.luminances[2] == pytest.approx(0.0, abs=1e-12)
    assert traj.at_depth(2.0) is not None
    with pytest.raises(ValueError):
        traj.at_depth(10.0)
    with pytest.raises(KeyError):
        traj.at_depth(3.14)


def test_trajectory_rejects_nonpositive_depths():
    t1 = SpectralCurve(np.full(GRID_SIZE, 0.5))
    with pytest.raises(ValueError):
        depth_trajectory(t1, depths=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        depth_trajectory(t1, depths=np.array([-1.0]))


def test_trajectory_arrays_immutable():
    t1 = SpectralCurve(np.full(GRID_SIZE, 0.5))
    traj = depth_trajectory(t1, depths=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        traj.points[0, 0] = 0.0
    with pytest.raises(ValueError):
        traj.luminances[0] = 0.0


# ---------------------------------------------------------------- medium


def test_medium_split_identities():
    rng = np.random.default_rng(3)
    values = rng.uniform(0.05, 1.0, GRID_SIZE)
    t1 = SpectralCurve(values)
    med = medium_coefficients(t1)
    np.testing.assert_array_equal(med.sigma_s.values, values)
    raw = -np.log(values) - values
    np.testing.assert_allclose(
        med.sigma_a.values, np.where(raw < 0, 0.0, raw), atol=1e-15
    )
    assert np.all(med.sigma_a.values >= 0)
    assert med.clamped == bool((raw < 0).any())
    np.testing.assert_array_equal(med.clamped_mask, raw < 0)


def test_medium_clamp_threshold_matches_newton_root():
    root = newton_extinction_root()
    # the clamp activates exactly where t exceeds the root of -log(t) = t
    assert -math.log(root) - root == pytest.approx(0.0, abs=1e-12)
    below = medium_coefficients(SpectralCurve(np.full(GRID_SIZE, root - 1e-6)))
    above = medium_coefficients(SpectralCurve(np.full(GRID_SIZE, root + 1e-6)))
    assert not below.clamped
    assert np.all(below.sigma_a.values > 0)
    assert above.clamped
    assert np.all(above.sigma_a.values == 0.0)
    assert np.all(above.clamped_mask)


def test_medium_validation():
    with pytest.raises(ValueError):
        medium_coefficients(SpectralCurve(np.zeros(GRID_SIZE)))
    with pytest.raises(ValueError):
        medium_coefficients(SpectralCurve(np.full(GRID_SIZE, 1.001)))
    med = medium_coefficients(SpectralCurve(np.ones(GRID_SIZE)))
    assert med.clamped
    assert np.all(med.sigma_a.values == 0.0)


# ---------------------------------------------------------------- hue angle


def test_hue_angle_reference_directions():
    third = 1.0 / 3.0
    assert hue_angle_around_equiluminant(Chromaticity(third + 0.1, third)) == pytest.approx(0.0)
    assert hue_angle_around_equiluminant(Chromaticity(third, third + 0.1)) == pytest.approx(
        math.pi / 2
    )
    assert hue_angle_around_equiluminant(Chromaticity(third - 0.1, third)) == pytest.approx(
        math.pi
    )
    assert hue_angle_around_equiluminant(Chromaticity(third, third - 0.1)) == pytest.approx(
        -math.pi / 2
    )


# ---------------------------------------------------------------- representatives


def test_representative_one_entry_per_triangle(basis9_warped):
    target = ColorTarget(Chromaticity(0.05, 0.46), 0.25)
    triangles = enclosing_triangles(basis9_warped, target.chromaticity)
    reps = representative_set(basis9_warped, target, d_ref=10.0)
    assert len(triangles) == 7
    assert len(reps.entries) == len(triangles)
    assert sorted(e.triangle for e in reps.entries) == sorted(triangles)
    for entry in reps.entries:
        outside = np.delete(np.arange(basis9_warped.count), entry.triangle)
        assert np.all(entry.weights[outside] == 0.0)


def test_representative_order_is_clockwise(basis11_warped):
    target = ColorTarget(Chromaticity(0.38, 0.45), 0.46)
    reps = representative_set(basis11_warped, target, d_ref=10.0)
    angles = np.array([e.hue_angle for e in reps.entries])
    assert len(angles) > 2
    assert np.all(np.diff(angles) <= 0)


def test_representative_entries_hit_target_at_unit_depth(basis9_warped):
    target = ColorTarget(Chromaticity(0.05, 0.46), 0.25)
    reps = representative_set(basis9_warped, target, d_ref=10.0)
    for entry in reps.entries:
        xyz = integrate_to_xyz(
            basis9_warped.reconstruct(entry.weights), basis9_warped.illuminant
        )
        assert xyz.chromaticity().distance(target.chromaticity) < 1e-9
        assert xyz.Y == pytest.approx(entry.achieved_luminance, abs=1e-12)
        met = abs(entry.achieved_luminance - target.luminance) <= LUMINANCE_MET_TOL
        assert entry.luminance_met == met


def test_representative_deep_color_matches_oracle(basis9_warped):
    target = ColorTarget(Chromaticity(0.05, 0.46), 0.25)
    reps = representative_set(basis9_warped, target, d_ref=10.0)
    for entry in reps.entries[:3]:
        curve = basis9_warped.reconstruct_curve(entry.weights)
        expected = oracle_deep_chromaticity(curve, 10.0, basis9_warped.illuminant)
        assert entry.chromaticity_at_ref.distance(expected) < 1e-12
        assert entry.hue_angle == pytest.approx(
            hue_angle_around_equiluminant(expected), abs=1e-12
        )


# ---------------------------------------------------------------- hue picking


def _toy_reps(angles, count=4):
    """Representative set with hand-placed hue angles and disjoint weights."""
    entries = []
    for i, angle in enumerate(angles):
        weights = np.zeros(count)
        weights[i % count] = 1.0
        entries.append(
            RepresentativeEntry(
                triangle=(0, 1, 2),
                weights=weights,
                chromaticity_at_ref=Chromaticity(
                    1 / 3 + 0.1 * math.cos(angle), 1 / 3 + 0.1 * math.sin(angle)
                ),
                hue_angle=angle,
                achieved_luminance=0.5,
                luminance_met=True,
            )
        )
    entries.sort(key=lambda e: -e.hue_angle)
    target = ColorTarget(Chromaticity(1 / 3, 1 / 3), 0.5)
    return RepresentativeSet(target=target, d_ref=10.0, entries=tuple(entries))


def test_pick_by_hue_exact_at_entry_angles(basis9_warped):
    target = ColorTarget(Chromaticity(0.05, 0.46), 0.25)
    reps = representative_set(basis9_warped, target, d_ref=10.0)
    for entry in reps.entries:
        picked = pick_by_hue(reps, entry.hue_angle)
        np.testing.assert_allclose(picked, entry.weights, atol=1e-12)


def test_pick_by_hue_preserves_target_chromaticity(basis9_warped):
    target = ColorTarget(Chromaticity(0.05, 0.46), 0.25)
    reps = representative_set(basis9_warped, target, d_ref=10.0)
    for angle in np.linspace(-math.pi, math.pi, 11):
        weights = pick_by_hue(reps, float(angle))
        spectrum = basis9_warped.reconstruct(weights)
        assert np.all(spectrum <= 1.0 + 1e-12)
        chroma = integrate_to_xyz(spectrum, basis9_warped.illuminant).chromaticity()
        assert chroma.distance(target.chromaticity) < 1e-9


def test_pick_by_hue_midpoint_blends_equally():
    reps = _toy_reps([-1.0, 0.0, 1.0, 2.0])
    picked = pick_by_hue(reps, 0.5)
    lo = next(e for e in reps.entries if e.hue_angle == 0.0)
    hi = next(e for e in reps.entries if e.hue_angle == 1.0)
    np.testing.assert_allclose(picked, 0.5 * lo.weights + 0.5 * hi.weights, atol=1e-12)


def test_pick_by_hue_wraps_through_pi():
    reps = _toy_reps([-3.0, 3.0])
    # pi sits in the gap between +3 and -3 + 2*pi; both signs agree there
    forward = pick_by_hue(reps, math.pi)
    backward = pick_by_hue(reps, -math.pi)
    np.testing.assert_allclose(forward, backward, atol=1e-12)
    lo = next(e for e in reps.entries if e.hue_angle == 3.0)
    hi = next(e for e in reps.entries if e.hue_angle == -3.0)
    alpha = (math.pi - 3.0) / ((-3.0 + 2 * math.pi) - 3.0)
    expected = (1 - alpha) * lo.weights + alpha * hi.weights
    np.testing.assert_allclose(forward, expected, atol=1e-12)


def test_pick_by_hue_degenerate_sets():
    empty = RepresentativeSet(
        target=ColorTarget(Chromaticity(1 / 3, 1 / 3), 0.5), d_ref=10.0, entries=()
    )
    with pytest.raises(ValueError):
        pick_by_hue(empty, 0.0)
    single = _toy_reps([1.0])
    picked = pick_by_hue(single, -2.0)
    np.testing.assert_array_equal(picked, single.entries[0].weights)
    assert picked is not single.entries[0].weights
    picked[0] = 7.0  # the returned copy is writable


# ---------------------------------------------------------------- inter-reflection


def test_schlick_order_one_is_base_color(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=9)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    base = integrate_to_xyz(curve, basis7.illuminant).chromaticity()
    assert schlick_order(curve, 1, basis7.illuminant).distance(base) < 1e-12


def test_schlick_order_matches_power_oracle(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=9)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    for order in (2, 3, 5):
        expected = oracle_deep_chromaticity(curve, order, basis7.illuminant)
        assert schlick_order(curve, order, basis7.illuminant).distance(expected) < 1e-12


def test_schlick_order_is_scale_invariant(basis7):
    sample = sample_class(basis7, FIG_TARGET, 1, seed=9)[0]
    curve = basis7.reconstruct_curve(sample.weights)
    half = SpectralCurve(0.5 * curve.values)
    for order in (1, 3):
        assert schlick_order(curve, order).distance(schlick_order(half, order)) < 1e-12


def test_schlick_order_separates_class_members():
    from spectraset.pubasis import PUBasis, WarpParams

    basis = PUBasis.build(9, WarpParams(0.66, 0.39))
    target = ColorTarget(Chromaticity(0.4, 0.43), 0.59)
    a, b = sample_class(basis, target, 2, seed=0)
    curve_a = basis.reconstruct_curve(a.weights)
    curve_b = basis.reconstruct_curve(b.weights)
    # same color at first contact, visibly different after three bounces
    assert schlick_order(curve_a, 1).distance(schlick_order(curve_b, 1)) < 1e-9
    assert schlick_order(curve_a, 3).distance(schlick_order(curve_b, 3)) > 0.05


def test_schlick_order_validation(basis7):
    curve = SpectralCurve(np.full(GRID_SIZE, 0.5))
    for order in (0, -2, 1.5):
        with pytest.raises(ValueError):
            schlick_order(curve, order)


# ---------------------------------------------------------------- brightest member


def test_brightest_member_dominates_samples(basis7):
    weights, luminance = brightest_member(basis7, FIG_TARGET.chromaticity)
    spectrum = basis7.reconstruct(weights)
    assert spectrum.max() == pytest.approx(1.0, abs=1e-12)
    chroma = integrate_to_xyz(spectrum, basis7.illuminant).chromaticity()
    assert chroma.distance(FIG_TARGET.chromaticity) < 1e-9
    bright_target = ColorTarget(FIG_TARGET.chromaticity, 1.0)
    for sample in sample_class(basis7, bright_target, 200, seed=21):
        assert sample.achieved_luminance <= luminance + 1e-9


def test_brightest_member_at_white_is_unit_spectrum():
    from spectraset.pubasis import PUBasis

    basis = PUBasis.build(7).with_illuminant("D65")
    white = white_point(get_illuminant("D65"))
    weights, luminance = brightest_member(basis, white)
    np.testing.assert_allclose(weights, 1.0, atol=1e-9)
    assert luminance == pytest.approx(1.0, abs=1e-9)


# ---------------------------------------------------------------- palettes


def test_palette_matches_target_under_first_illuminant(basis5):
    entries = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 24, seed=4)
    assert len(entries) == 24
    assert [e.seed_key for e in entries] == [(4, i) for i in range(24)]
    for entry in entries:
        first = entry.color_under_first
        assert first.chromaticity().distance(FIG_TARGET.chromaticity) < 1e-9
        assert first.Y == pytest.approx(FIG_TARGET.luminance, abs=1e-9)
        assert np.all(basis5.reconstruct(entry.weights) <= 1.0 + 1e-9)


def test_palette_entries_are_true_metamers(basis5):
    entries = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 12, seed=4)
    second_colors = basis5.with_illuminant("F2").basis_colors
    points = []
    for entry in entries:
        expected = entry.weights @ second_colors
        got = entry.color_under_second
        np.testing.assert_allclose((got.X, got.Y, got.Z), expected, atol=1e-9)
        points.append(got.chromaticity())
    spread = max(
        points[i].distance(points[j])
        for i in range(len(points))
        for j in range(i + 1, len(points))
    )
    # identical under D65, measurably scattered under F2
    assert spread > 1e-4


def test_palette_keeps_raw_luminance_when_not_required(basis5):
    raw = metameric_palette(
        basis5, "D65", "F2", FIG_TARGET, 6, seed=4, require_luminance=False
    )
    dim = [e for e in raw if e.color_under_first.Y < FIG_TARGET.luminance - 1e-3]
    assert dim  # unmet draws keep their own luminance
    completed = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 6, seed=4)
    for entry in completed:
        assert entry.color_under_first.Y == pytest.approx(FIG_TARGET.luminance, abs=1e-9)


def test_palette_unreachable_luminance_raises(basis5):
    target = ColorTarget(Chromaticity(0.55, 0.40), 0.95)
    with pytest.raises(LuminanceUnreachableError):
        metameric_palette(basis5, "D65", "F2", target, 4, seed=0)
    raw = metameric_palette(
        basis5, "D65", "F2", target, 4, seed=0, require_luminance=False
    )
    assert len(raw) == 4


def test_palette_is_deterministic(basis5):
    first = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 8, seed=12)
    second = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 8, seed=12)
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a.weights, b.weights)


# ---------------------------------------------------------------- pair selection


def test_most_distinct_pair_is_brute_force_maximum(basis5):
    entries = metameric_palette(basis5, "D65", "F2", FIG_TARGET, 16, seed=4)
    a, b = most_distinct_pair(entries)
    best = a.color_under_second.chromaticity().distance(
        b.color_under_second.chromaticity()
    )
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            d = entries[i].color_under_second.chromaticity().distance(
                entries[j].color_under_second.chromaticity()
            )
            assert d <= best + 1e-15


def test_most_distinct_pair_respects_luminance_floor(basis5):
    entries = metameric_palette(
        basis5, "D65", "F2", FIG_TARGET, 16, seed=4, require_luminance=False
    )
    luminances = sorted(e.color_under_first.Y for e in entries)
    floor = luminances[len(luminances) // 2]
    a, b = most_distinct_pair(entries, min_first_luminance=floor)
    assert a.color_under_first.Y >= floor
    assert b.color_under_first.Y >= floor
    with pytest.raises(ValueError):
        most_distinct_pair(entries, min_first_luminance=luminances[-1] + 1.0)
    with pytest.raises(ValueError):
        most_distinct_pair(entries[:1])


def test_equalize_luminance_levels_the_pair(basis5):
    entries = metameric_palette(
        basis5, "D65", "F2", FIG_TARGET, 8, seed=4, require_luminance=False
    )
    ordered = sorted(entries, key=lambda e: e.color_under_first.Y)
    dim, bright = ordered[0], ordered[-1]
    assert bright.color_under_first.Y > dim.color_under_first.Y + 1e-3
    wa, wb = equalize_luminance(basis5, dim.weights, bright.weights, "D65")
    ill = get_illuminant("D65")
    ya = integrate_to_xyz(basis5.reconstruct(wa), ill).Y
    yb = integrate_to_xyz(basis5.reconstruct(wb), ill).Y
    assert ya == pytest.approx(yb, abs=1e-12)
    assert ya == pytest.approx(dim.color_under_first.Y, abs=1e-12)
    np.testing.assert_array_equal(wa, dim.weights)  # dimmer one untouched
    ca = integrate_to_xyz(basis5.reconstruct(wb), ill).chromaticity()
    assert ca.distance(bright.color_under_first.chromaticity()) < 1e-9


def test_equalize_luminance_rejects_black(basis5):
    with pytest.raises(ValueError):
        equalize_luminance(basis5, np.zeros(5), np.ones(5), "D65")
