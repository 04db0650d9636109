// Hue dial: representative deep colors arranged on a ring by their hue
// angle; dragging the needle asks the server for the member whose deep
// color sits at that angle, snapping exactly onto representatives.

import type { DesignerController } from "../controller.js";
import { cssColor } from "../color.js";

export class HueDial {
    private dragging = false;

    constructor(
        private canvas: HTMLCanvasElement,
        private controller: DesignerController,
    ) {
        canvas.addEventListener("pointerdown", (event) => {
            this.dragging = true;
            canvas.setPointerCapture(event.pointerId);
            void this.apply(event);
        });
        canvas.addEventListener("pointermove", (event) => {
            if (this.dragging) {
                void this.apply(event);
            }
        });
        canvas.addEventListener("pointerup", () => {
            this.dragging = false;
        });
        controller.subscribe(() => this.render());
    }

    private angleFromEvent(event: PointerEvent): number {
        const rect = this.canvas.getBoundingClientRect();
        const cx = rect.width / 2;
        const cy = rect.height / 2;
        // canvas y grows downward; flip so angles run counter-clockwise
        return Math.atan2(cy - (event.clientY - rect.top), event.clientX - rect.left - cx);
    }

    private apply(event: PointerEvent): Promise<void> {
        return this.controller.setHueAngle(this.angleFromEvent(event));
    }

    render(): void {
        const ctx = this.canvas.getContext("2d");
        if (!ctx) {
            return;
        }
        const { width, height } = this.canvas;
        const cx = width / 2;
        const cy = height / 2;
        const radius = Math.min(width, height) / 2 - 14;
        ctx.clearRect(0, 0, width, height);

        ctx.strokeStyle = "#cccccc";
        ctx.beginPath();
        ctx.arc(cx, cy, radius, 0, 2 * Math.PI);
        ctx.stroke();

        const entries = this.controller.data.representatives?.entries ?? [];
        for (const entry of entries) {
            const x = cx + radius * Math.cos(entry.hue_angle);
            const y = cy - radius * Math.sin(entry.hue_angle);
            ctx.beginPath();
            ctx.arc(x, y, 5, 0, 2 * Math.PI);
            ctx.fillStyle = cssColor(entry.deep_color.linear_rgb);
            ctx.fill();
            ctx.strokeStyle = "#555555";
            ctx.stroke();
        }

        const angle = this.controller.state.hueAngle;
        ctx.strokeStyle = "#222222";
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.moveTo(cx, cy);
        ctx.lineTo(cx + (radius - 8) * Math.cos(angle), cy - (radius - 8) * Math.sin(angle));
        ctx.stroke();
        ctx.lineWidth = 1;

        const pick = this.controller.data.huePick;
        if (pick) {
            ctx.beginPath();
            ctx.arc(cx, cy, 9, 0, 2 * Math.PI);
            ctx.fillStyle = cssColor(pick.deep_color.linear_rgb);
            ctx.fill();
            ctx.strokeStyle = "#222222";
            ctx.stroke();
        }
    }
}
