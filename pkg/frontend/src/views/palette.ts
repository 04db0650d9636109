// Metameric palette strip: one swatch per entry, re-colored by the
// illuminant toggle. Under the first illuminant every swatch matches the
// target; under the second they scatter.

import type { DesignerController } from "../controller.js";
import { cssColor } from "../color.js";

export class PaletteStrip {
    constructor(
        private container: HTMLElement,
        private controller: DesignerController,
    ) {
        controller.subscribe(() => this.render());
    }

    render(): void {
        const palette = this.controller.data.palette;
        const showSecond = this.controller.state.showSecondIlluminant;
        this.container.textContent = "";
        if (!palette) {
            return;
        }
        const label = document.createElement("span");
        label.className = "palette-label";
        label.textContent = showSecond ? `under ${palette.second}` : `under ${palette.first}`;
        this.container.appendChild(label);
        for (const entry of palette.entries) {
            const swatch = document.createElement("span");
            swatch.className = "swatch";
            const record = showSecond ? entry.second : entry.first;
            swatch.style.backgroundColor = cssColor(record.linear_rgb);
            swatch.title = `Y=${record.xyz[1].toFixed(3)}`;
            this.container.appendChild(swatch);
        }
    }
}
