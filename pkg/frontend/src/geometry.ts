// Chromaticity-plane helpers for the target marker: hit testing against
// the basis gamut polygon and snapping dragged-out points back inside.
// The polygon itself always comes from the server.

import type { Point } from "./api.js";

export function pointInPolygon(point: Point, polygon: readonly Point[]): boolean {
    const [px, py] = point;
    let inside = false;
    for (let i = 0, j = polygon.length - 1; i < polygon.length; j = i++) {
        const [xi, yi] = polygon[i];
        const [xj, yj] = polygon[j];
        if (yi > py !== yj > py && px < ((xj - xi) * (py - yi)) / (yj - yi) + xi) {
            inside = !inside;
        }
    }
    return inside;
}

export function centroid(polygon: readonly Point[]): Point {
    let x = 0;
    let y = 0;
    for (const [vx, vy] of polygon) {
        x += vx;
        y += vy;
    }
    return [x / polygon.length, y / polygon.length];
}

function nearestOnSegment(p: Point, a: Point, b: Point): Point {
    const abx = b[0] - a[0];
    const aby = b[1] - a[1];
    const lengthSq = abx * abx + aby * aby;
    if (lengthSq === 0) {
        return [a[0], a[1]];
    }
    const t = Math.min(1, Math.max(0, ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / lengthSq));
    return [a[0] + t * abx, a[1] + t * aby];
}

export function nearestOnBoundary(point: Point, polygon: readonly Point[]): Point {
    let best: Point = polygon[0];
    let bestDistSq = Infinity;
    for (let i = 0; i < polygon.length; i++) {
        const candidate = nearestOnSegment(point, polygon[i], polygon[(i + 1) % polygon.length]);
        const dx = candidate[0] - point[0];
        const dy = candidate[1] - point[1];
        const distSq = dx * dx + dy * dy;
        if (distSq < bestDistSq) {
            bestDistSq = distSq;
            best = candidate;
        }
    }
    return best;
}

/**
 * Keep the target marker inside the gamut: points already inside pass
 * through; points outside land on the nearest boundary point pulled a
 * small fraction toward the centroid, so the result is strictly interior.
 */
export function clampToPolygon(
    point: Point,
    polygon: readonly Point[],
    pull = 1e-3,
): { point: Point; clamped: boolean } {
    if (pointInPolygon(point, polygon)) {
        return { point, clamped: false };
    }
    const boundary = nearestOnBoundary(point, polygon);
    const center = centroid(polygon);
    return {
        point: [
            boundary[0] + (center[0] - boundary[0]) * pull,
            boundary[1] + (center[1] - boundary[1]) * pull,
        ],
        clamped: true,
    };
}
