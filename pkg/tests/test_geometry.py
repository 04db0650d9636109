"""Geometry tests: areas, containment, and clipping against brute-force
and Monte Carlo oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectraset.geometry import (
    GamutPolygon,
    barycentric_coordinates,
    boundary_distance,
    classify_point,
    clip_by_convex,
    is_simple_polygon,
    point_in_polygon,
    point_in_triangle,
    point_segment_distance,
    signed_area,
)

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
TRIANGLE = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])


def oracle_segment_distance(p, a, b, steps=20001):
    """Dense scan along the segment."""
    t = np.linspace(0.0, 1.0, steps)[:, None]
    pts = a + t * (b - a)
    return np.linalg.norm(pts - p, axis=1).min()


def mc_area(vertices, lo, hi, n=200_000, seed=0):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(n, 2))
    inside = np.fromiter(
        (point_in_polygon(p, vertices) for p in pts), dtype=bool, count=n
    )
    return inside.mean() * (hi - lo) ** 2


class TestSignedArea:
    def test_square(self):
        assert signed_area(UNIT_SQUARE) == pytest.approx(1.0)

    def test_orientation_flips_sign(self):
        assert signed_area(UNIT_SQUARE[::-1]) == pytest.approx(-1.0)

    def test_triangle(self):
        assert signed_area(TRIANGLE) == pytest.approx(2.0)


class TestDistances:
    @given(
        st.lists(st.floats(-5, 5), min_size=6, max_size=6).filter(
            lambda v: abs(v[2] - v[4]) + abs(v[3] - v[5]) > 1e-6
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_point_segment_distance_matches_scan(self, values):
        p = np.array(values[0:2])
        a = np.array(values[2:4])
        b = np.array(values[4:6])
        got = point_segment_distance(p, a, b)
        want = oracle_segment_distance(p, a, b)
        assert got == pytest.approx(want, abs=1e-3)

    def test_degenerate_segment(self):
        a = np.array([1.0, 1.0])
        assert point_segment_distance(np.array([4.0, 5.0]), a, a) == pytest.approx(5.0)

    def test_boundary_distance_square(self):
        assert boundary_distance(np.array([0.5, 0.5]), UNIT_SQUARE) == pytest.approx(0.5)
        assert boundary_distance(np.array([2.0, 0.5]), UNIT_SQUARE) == pytest.approx(1.0)


class TestContainment:
    def test_classification(self):
        assert classify_point(np.array([0.5, 0.5]), UNIT_SQUARE) == "inside"
        assert classify_point(np.array([1.0, 0.5]), UNIT_SQUARE) == "boundary"
        assert classify_point(np.array([1.5, 0.5]), UNIT_SQUARE) == "outside"

    def test_vertex_is_boundary(self):
        assert classify_point(np.array([0.0, 0.0]), UNIT_SQUARE) == "boundary"

    @given(st.floats(-0.5, 1.5), st.floats(-0.5, 1.5))
    @settings(max_examples=80, deadline=None)
    def test_square_containment_matches_coordinates(self, x, y):
        on_edge = (
            (abs(x) < 1e-9 or abs(x - 1) < 1e-9) and -1e-9 <= y <= 1 + 1e-9
        ) or ((abs(y) < 1e-9 or abs(y - 1) < 1e-9) and -1e-9 <= x <= 1 + 1e-9)
        if on_edge:
            return  # handled by the explicit boundary tests
        want = 0 < x < 1 and 0 < y < 1
        assert point_in_polygon(np.array([x, y]), UNIT_SQUARE) == want

    def test_point_in_triangle_matches_barycentric(self):
        rng = np.random.default_rng(4)
        tri = rng.uniform(-1, 1, (3, 2))
        while abs(signed_area(tri)) < 0.1:
            tri = rng.uniform(-1, 1, (3, 2))
        for p in rng.uniform(-1, 1, (200, 2)):
            bary = barycentric_coordinates(p, tri)
            want = bool(np.all(bary >= -1e-9))
            assert point_in_triangle(p, tri, tol=1e-9) == want

    def test_barycentric_reconstructs_point(self):
        rng = np.random.default_rng(5)
        tri = np.array([[0.0, 0.0], [3.0, 1.0], [1.0, 2.0]])
        for _ in range(50):
            bary = rng.dirichlet(np.ones(3))
            p = bary @ tri
            got = barycentric_coordinates(p, tri)
            assert np.allclose(got, bary, atol=1e-12)
            assert got.sum() == pytest.approx(1.0, abs=1e-12)


class TestSimple:
    def test_square_is_simple(self):
        assert is_simple_polygon(UNIT_SQUARE)

    def test_bowtie_is_not(self):
        bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        assert not is_simple_polygon(bowtie)


class TestClipping:
    def test_clip_subset_returns_subject(self):
        small = 0.25 + 0.5 * UNIT_SQUARE
        out = clip_by_convex(small, UNIT_SQUARE)
        assert abs(signed_area(out)) == pytest.approx(0.25)

    def test_clip_disjoint_is_empty(self):
        far = UNIT_SQUARE + 5.0
        out = clip_by_convex(far, UNIT_SQUARE)
        assert len(out) == 0

    def test_clip_overlap_area_against_monte_carlo(self):
        # L-shaped subject clipped by a convex quadrilateral.
        subject = np.array(
            [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]]
        )
        clip = np.array([[0.5, -0.5], [2.5, 0.5], [1.5, 2.5], [-0.5, 1.5]])
        out = clip_by_convex(subject, clip)
        got = abs(signed_area(out))

        rng = np.random.default_rng(6)
        pts = rng.uniform(-0.5, 2.5, size=(400_000, 2))
        inside_both = np.fromiter(
            (
                point_in_polygon(p, subject) and point_in_polygon(p, clip)
                for p in pts
            ),
            dtype=bool,
            count=len(pts),
        )
        want = inside_both.mean() * 9.0
        # seeded MC standard error is ~6.6e-3 here; allow three sigma
        assert got == pytest.approx(want, abs=2e-2)

    def test_clip_area_never_exceeds_subject(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            pts = rng.uniform(0, 1, (5, 2))
            # order radially to get a simple polygon
            center = pts.mean(axis=0)
            order = np.argsort(np.arctan2(*(pts - center).T[::-1]))
            subject = pts[order]
            if abs(signed_area(subject)) < 1e-3:
                continue
            out = clip_by_convex(subject, UNIT_SQUARE)
            if len(out) >= 3:
                assert abs(signed_area(out)) <= abs(signed_area(subject)) + 1e-12


class TestGamutPolygon:
    def test_validation(self):
        with pytest.raises(ValueError):
            GamutPolygon(np.zeros((2, 2)))

    def test_queries(self):
        poly = GamutPolygon(UNIT_SQUARE)
        assert poly.area == pytest.approx(1.0)
        assert poly.contains((0.5, 0.5))
        assert poly.contains((1.0, 1.0))
        assert not poly.strictly_contains((1.0, 1.0))
        assert not poly.contains((1.1, 0.5))
        assert poly.is_simple()

    def test_area_against_monte_carlo(self):
        poly = GamutPolygon(TRIANGLE)
        assert poly.area == pytest.approx(mc_area(TRIANGLE, -0.5, 2.5), abs=2e-2)
