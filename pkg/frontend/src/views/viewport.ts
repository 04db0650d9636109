// Pixel mapping for the chromaticity plane: fit a set of point clouds
// into a canvas rectangle with margins and a flipped y axis.

import type { Point } from "../api.js";

export interface Viewport {
    scale: number;
    offsetX: number;
    offsetY: number;
    height: number;
}

export function fitViewport(
    pointSets: readonly (readonly Point[])[],
    width: number,
    height: number,
    margin = 24,
): Viewport {
    let minX = Infinity;
    let minY = Infinity;
    let maxX = -Infinity;
    let maxY = -Infinity;
    for (const points of pointSets) {
        for (const [x, y] of points) {
            minX = Math.min(minX, x);
            minY = Math.min(minY, y);
            maxX = Math.max(maxX, x);
            maxY = Math.max(maxY, y);
        }
    }
    if (!Number.isFinite(minX) || maxX === minX || maxY === minY) {
        return { scale: 1, offsetX: margin, offsetY: margin, height };
    }
    const scale = Math.min(
        (width - 2 * margin) / (maxX - minX),
        (height - 2 * margin) / (maxY - minY),
    );
    return {
        scale,
        offsetX: margin - minX * scale + (width - 2 * margin - (maxX - minX) * scale) / 2,
        offsetY: margin - minY * scale + (height - 2 * margin - (maxY - minY) * scale) / 2,
        height,
    };
}

export function toPixel(view: Viewport, point: Point): Point {
    return [
        point[0] * view.scale + view.offsetX,
        view.height - (point[1] * view.scale + view.offsetY),
    ];
}

export function fromPixel(view: Viewport, pixel: Point): Point {
    return [
        (pixel[0] - view.offsetX) / view.scale,
        (view.height - pixel[1] - view.offsetY) / view.scale,
    ];
}

/** Index of the point whose pixel position is nearest, within a radius. */
export function pickNearest(
    view: Viewport,
    points: readonly Point[],
    pixel: Point,
    radius: number,
): number | null {
    let best: number | null = null;
    let bestDistSq = radius * radius;
    points.forEach((point, index) => {
        const [px, py] = toPixel(view, point);
        const dx = px - pixel[0];
        const dy = py - pixel[1];
        const distSq = dx * dx + dy * dy;
        if (distSq <= bestDistSq) {
            bestDistSq = distSq;
            best = index;
        }
    });
    return best;
}
