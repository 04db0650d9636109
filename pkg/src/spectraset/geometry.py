"""Planar polygon utilities for chromaticity-space geometry.

All polygons are vertex arrays of shape (n, 2); the closing edge from the
last vertex back to the first is implicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def signed_area(vertices: np.ndarray) -> float:
    """Shoelace area, positive for counter-clockwise orientation."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def point_segment_distance(point: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance from a point to the closed segment [a, b]."""
    p = np.asarray(point, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return float(np.hypot(*(p - a)))
    t = float((p - a) @ ab) / denom
    t = min(1.0, max(0.0, t))
    return float(np.hypot(*(p - (a + t * ab))))


def boundary_distance(point: np.ndarray, vertices: np.ndarray) -> float:
    """Minimum distance from a point to the polygon boundary."""
    v = np.asarray(vertices, dtype=float)
    nxt = np.roll(v, -1, axis=0)
    return min(
        point_segment_distance(point, v[i], nxt[i]) for i in range(len(v))
    )


def point_in_polygon(point: np.ndarray, vertices: np.ndarray) -> bool:
    """Ray-casting parity test; boundary points are not guaranteed either way."""
    px, py = float(point[0]), float(point[1])
    v = np.asarray(vertices, dtype=float)
    n = len(v)
    inside = False
    for i in range(n):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            x_cross = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if px < x_cross:
                inside = not inside
    return inside


def classify_point(point: np.ndarray, vertices: np.ndarray, tol: float = 1e-9) -> str:
    """Classify a point as 'inside', 'boundary', or 'outside' a simple polygon.

    Points within ``tol`` of any edge count as boundary, which makes the
    inside/outside call robust: the parity test only decides points that
    are at least ``tol`` away from every edge.
    """
    if boundary_distance(point, vertices) <= tol:
        return "boundary"
    return "inside" if point_in_polygon(point, vertices) else "outside"


def point_in_triangle(point: np.ndarray, tri: np.ndarray, tol: float = 1e-9) -> bool:
    """Inclusive point-in-triangle test via normalized edge orientations.

    A point is accepted when it is on the inner side of every edge, allowing
    a slack of ``tol`` measured as Euclidean distance to the edge line.
    """
    p = np.asarray(point, dtype=float)
    t = np.asarray(tri, dtype=float)
    area2 = signed_area(t) * 2.0
    if area2 == 0.0:
        return False
    orient = 1.0 if area2 > 0 else -1.0
    for i in range(3):
        a, b = t[i], t[(i + 1) % 3]
        edge = b - a
        length = float(np.hypot(*edge))
        if length == 0.0:
            return False
        cross = orient * float(edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0]))
        if cross / length < -tol:
            return False
    return True


def barycentric_coordinates(point: np.ndarray, tri: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of a point in a non-degenerate triangle."""
    t = np.asarray(tri, dtype=float)
    m = np.vstack([np.ones(3), t.T])
    rhs = np.array([1.0, float(point[0]), float(point[1])])
    return np.linalg.solve(m, rhs)


def _segments_cross(a1, a2, b1, b2) -> bool:
    """True when the open interiors of two segments properly intersect."""

    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    d1 = orient(b1, b2, a1)
    d2 = orient(b1, b2, a2)
    d3 = orient(a1, a2, b1)
    d4 = orient(a1, a2, b2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0


def is_simple_polygon(vertices: np.ndarray) -> bool:
    """True when no two non-adjacent edges properly cross."""
    v = np.asarray(vertices, dtype=float)
    n = len(v)
    if n < 3:
        return False
    edges = [(v[i], v[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segments_cross(edges[i][0], edges[i][1], edges[j][0], edges[j][1]):
                return False
    return True


def clip_by_convex(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clip of a simple polygon by a convex polygon.

    The result vertex list may contain degenerate joining edges when the
    subject is non-convex; its shoelace area is still the intersection area.
    """
    clip = np.asarray(clip, dtype=float)
    if signed_area(clip) < 0:
        clip = clip[::-1]
    output = [np.asarray(p, dtype=float) for p in subject]
    n = len(clip)
    for i in range(n):
        if not output:
            break
        a, b = clip[i], clip[(i + 1) % n]
        edge = b - a
        inputs = output
        output = []

        def side(p):
            return edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])

        prev = inputs[-1]
        prev_side = side(prev)
        for cur in inputs:
            cur_side = side(cur)
            if cur_side >= 0:
                if prev_side < 0:
                    t = prev_side / (prev_side - cur_side)
                    output.append(prev + t * (cur - prev))
                output.append(cur)
            elif prev_side >= 0:
                t = prev_side / (prev_side - cur_side)
                output.append(prev + t * (cur - prev))
            prev, prev_side = cur, cur_side
    if not output:
        return np.zeros((0, 2))
    return np.vstack(output)


@dataclass(frozen=True)
class GamutPolygon:
    """Simple polygon in chromaticity space with tolerance-aware queries."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs at least three 2-d vertices")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @cached_property
    def area(self) -> float:
        return abs(signed_area(self.vertices))

    def classify(self, point, tol: float = 1e-9) -> str:
        return classify_point(np.asarray(point, dtype=float), self.vertices, tol)

    def contains(self, point, tol: float = 1e-9) -> bool:
        """True for interior or boundary points."""
        return self.classify(point, tol) != "outside"

    def strictly_contains(self, point, tol: float = 1e-9) -> bool:
        return self.classify(point, tol) == "inside"

    def is_simple(self) -> bool:
        return is_simple_polygon(self.vertices)
