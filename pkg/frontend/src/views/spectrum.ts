// Spectrum panel: the selected member drawn bold over the rest of the
// population, values in [0, 1] against wavelength. The adjacent depth
// slider scrubs the trajectory annotation on the chromaticity canvas.

import type { DesignerController } from "../controller.js";
import { cssColor } from "../color.js";

const MARGIN = 28;

function xPixel(width: number, wavelengths: number[], nm: number): number {
    const lo = wavelengths[0];
    const hi = wavelengths[wavelengths.length - 1];
    return MARGIN + ((nm - lo) / (hi - lo)) * (width - 2 * MARGIN);
}

function yPixel(height: number, value: number): number {
    return height - MARGIN - value * (height - 2 * MARGIN);
}

export class SpectrumPanel {
    constructor(
        private canvas: HTMLCanvasElement,
        private controller: DesignerController,
    ) {
        controller.subscribe(() => this.render());
    }

    private traceSpectrum(
        ctx: CanvasRenderingContext2D,
        wavelengths: number[],
        spectrum: number[],
    ): void {
        const { width, height } = this.canvas;
        ctx.beginPath();
        spectrum.forEach((value, i) => {
            const x = xPixel(width, wavelengths, wavelengths[i]);
            const y = yPixel(height, value);
            if (i === 0) {
                ctx.moveTo(x, y);
            } else {
                ctx.lineTo(x, y);
            }
        });
        ctx.stroke();
    }

    render(): void {
        const ctx = this.canvas.getContext("2d");
        if (!ctx) {
            return;
        }
        const { width, height } = this.canvas;
        ctx.clearRect(0, 0, width, height);
        const sampled = this.controller.data.sampleData;
        if (!sampled) {
            ctx.fillStyle = "#888888";
            ctx.font = "12px sans-serif";
            ctx.fillText("click the diagram to sample spectra", MARGIN, height / 2);
            return;
        }
        const wavelengths = sampled.wavelengths_nm;

        ctx.strokeStyle = "#dddddd";
        for (const gridValue of [0, 0.25, 0.5, 0.75, 1]) {
            const y = yPixel(height, gridValue);
            ctx.beginPath();
            ctx.moveTo(MARGIN, y);
            ctx.lineTo(width - MARGIN, y);
            ctx.stroke();
        }
        ctx.fillStyle = "#666666";
        ctx.font = "10px sans-serif";
        ctx.fillText("1", 8, yPixel(height, 1) + 3);
        ctx.fillText("0", 8, yPixel(height, 0) + 3);
        ctx.fillText(`${wavelengths[0]}nm`, MARGIN, height - 8);
        ctx.fillText(`${wavelengths[wavelengths.length - 1]}nm`, width - MARGIN - 36, height - 8);

        const selection = this.controller.state.selection;
        ctx.lineWidth = 1;
        sampled.samples.forEach((sample, index) => {
            if (index === selection) {
                return;
            }
            ctx.strokeStyle = cssColor(sample.color.linear_rgb, 0.25);
            this.traceSpectrum(ctx, wavelengths, sample.spectrum);
        });

        const selected =
            selection === "max" ? sampled.max_luminance : sampled.samples[selection];
        if (selected) {
            ctx.lineWidth = 2.5;
            ctx.strokeStyle = cssColor(selected.color.linear_rgb);
            this.traceSpectrum(ctx, wavelengths, selected.spectrum);
            ctx.lineWidth = 1;
        }
    }
}
