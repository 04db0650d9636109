// Chromaticity diagram: spectral locus, RGB triangles, basis gamut with
// labeled vertices, the sample population (opaque when the luminance
// target was met, transparent otherwise), the depth trajectory of the
// selected member, and the draggable target marker.

import type { Point } from "../api.js";
import { cssColor } from "../color.js";
import type { DesignerController } from "../controller.js";
import { fitViewport, fromPixel, pickNearest, toPixel, type Viewport } from "./viewport.js";

const LOCUS_FILL = "#f4f2ee";
const GAMUT_STROKE = "#333333";
const SAMPLE_RADIUS = 5;

function tracePolygon(ctx: CanvasRenderingContext2D, view: Viewport, points: readonly Point[]) {
    ctx.beginPath();
    points.forEach((point, i) => {
        const [x, y] = toPixel(view, point);
        if (i === 0) {
            ctx.moveTo(x, y);
        } else {
            ctx.lineTo(x, y);
        }
    });
    ctx.closePath();
}

export class ChromaticityCanvas {
    private view: Viewport | null = null;

    constructor(
        private canvas: HTMLCanvasElement,
        private controller: DesignerController,
    ) {
        canvas.addEventListener("pointerdown", (event) => this.onPointer(event));
        controller.subscribe(() => this.render());
    }

    private samplePoints(): Point[] {
        const sampled = this.controller.data.sampleData;
        if (!sampled) {
            return [];
        }
        return sampled.samples.map((s) => s.color.chromaticity);
    }

    private onPointer(event: PointerEvent): void {
        if (!this.view || !this.controller.data.connected) {
            return;
        }
        const rect = this.canvas.getBoundingClientRect();
        const pixel: Point = [event.clientX - rect.left, event.clientY - rect.top];
        const hit = pickNearest(this.view, this.samplePoints(), pixel, SAMPLE_RADIUS + 3);
        if (hit !== null) {
            void this.controller.select(hit);
            return;
        }
        void this.controller.setTarget(fromPixel(this.view, pixel));
    }

    render(): void {
        const ctx = this.canvas.getContext("2d");
        const basis = this.controller.data.basisView;
        if (!ctx) {
            return;
        }
        const { width, height } = this.canvas;
        ctx.clearRect(0, 0, width, height);
        if (!basis) {
            return;
        }
        this.view = fitViewport([basis.locus], width, height);
        const view = this.view;

        ctx.save();
        tracePolygon(ctx, view, basis.locus);
        ctx.fillStyle = LOCUS_FILL;
        ctx.fill();
        ctx.strokeStyle = "#999999";
        ctx.stroke();

        ctx.setLineDash([5, 4]);
        ctx.strokeStyle = "#bbbbbb";
        tracePolygon(ctx, view, basis.srgb_triangle);
        ctx.stroke();
        ctx.setLineDash([2, 3]);
        tracePolygon(ctx, view, basis.wide_triangle);
        ctx.stroke();
        ctx.setLineDash([]);

        tracePolygon(ctx, view, basis.gamut);
        ctx.strokeStyle = GAMUT_STROKE;
        ctx.lineWidth = 1.5;
        ctx.stroke();
        ctx.lineWidth = 1;
        ctx.fillStyle = GAMUT_STROKE;
        ctx.font = "11px sans-serif";
        basis.basis_points.forEach((point, k) => {
            const [x, y] = toPixel(view, point);
            ctx.beginPath();
            ctx.arc(x, y, 2.5, 0, 2 * Math.PI);
            ctx.fill();
            ctx.fillText(`b${k}`, x + 4, y - 4);
        });

        this.drawSamples(ctx, view);
        this.drawTrajectory(ctx, view);
        this.drawTarget(ctx, view);
        ctx.restore();
    }

    private drawSamples(ctx: CanvasRenderingContext2D, view: Viewport): void {
        const sampled = this.controller.data.sampleData;
        if (!sampled) {
            return;
        }
        const selection = this.controller.state.selection;
        sampled.samples.forEach((sample, index) => {
            const [x, y] = toPixel(view, sample.color.chromaticity);
            ctx.beginPath();
            ctx.arc(x, y, SAMPLE_RADIUS, 0, 2 * Math.PI);
            ctx.fillStyle = cssColor(sample.color.linear_rgb, sample.luminance_met ? 1 : 0.35);
            ctx.fill();
            if (selection === index) {
                ctx.strokeStyle = "#000000";
                ctx.lineWidth = 2;
                ctx.stroke();
                ctx.lineWidth = 1;
            }
        });
        const max = sampled.max_luminance;
        const [mx, my] = toPixel(view, max.color.chromaticity);
        ctx.beginPath();
        ctx.arc(mx, my, SAMPLE_RADIUS + 2, 0, 2 * Math.PI);
        ctx.fillStyle = cssColor(max.color.linear_rgb);
        ctx.fill();
        ctx.strokeStyle = selection === "max" ? "#000000" : "#666666";
        ctx.lineWidth = selection === "max" ? 2.5 : 1;
        ctx.stroke();
        ctx.lineWidth = 1;
    }

    private drawTrajectory(ctx: CanvasRenderingContext2D, view: Viewport): void {
        const trajectory = this.controller.data.trajectory;
        if (!trajectory) {
            return;
        }
        const depth = this.controller.state.depth;
        const referenceDepth = this.controller.state.referenceDepth;
        let nearest = 0;
        trajectory.depths.forEach((d, i) => {
            if (Math.abs(d - depth) < Math.abs(trajectory.depths[nearest] - depth)) {
                nearest = i;
            }
        });
        trajectory.points.forEach((point, i) => {
            if (!point) {
                return;
            }
            const [x, y] = toPixel(view, point);
            const d = trajectory.depths[i];
            ctx.beginPath();
            ctx.arc(x, y, i === nearest ? 4 : 2, 0, 2 * Math.PI);
            ctx.fillStyle = i === nearest ? "#d05010" : "#888888";
            ctx.fill();
            if (d === 1 || d === referenceDepth) {
                ctx.fillStyle = "#444444";
                ctx.fillText(`d=${d}`, x + 5, y + 3);
            }
        });
    }

    private drawTarget(ctx: CanvasRenderingContext2D, view: Viewport): void {
        const target = this.controller.state.target;
        const [x, y] = toPixel(view, [target.x, target.y]);
        ctx.strokeStyle = this.controller.data.targetClamped ? "#c02020" : "#000000";
        ctx.lineWidth = 1.5;
        ctx.beginPath();
        ctx.moveTo(x - 8, y);
        ctx.lineTo(x + 8, y);
        ctx.moveTo(x, y - 8);
        ctx.lineTo(x, y + 8);
        ctx.stroke();
        ctx.beginPath();
        ctx.arc(x, y, 5, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.lineWidth = 1;
    }
}
