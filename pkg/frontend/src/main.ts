// Page wiring: build the controller against the service, connect the
// views, and keep the plain controls (sliders, toggles, document
// import/export) in sync with the state.

import { ApiClient } from "./api.js";
import { DesignerController } from "./controller.js";
import { ChromaticityCanvas } from "./views/canvas.js";
import { SpectrumPanel } from "./views/spectrum.js";
import { HueDial } from "./views/huedial.js";
import { PaletteStrip } from "./views/palette.js";

function byId<T extends HTMLElement>(id: string): T {
    const element = document.getElementById(id);
    if (!element) {
        throw new Error(`missing element #${id}`);
    }
    return element as T;
}

function setupControls(controller: DesignerController): void {
    const banner = byId<HTMLDivElement>("banner");
    const luminance = byId<HTMLInputElement>("luminance");
    const depth = byId<HTMLInputElement>("depth");
    const basisCount = byId<HTMLSelectElement>("basis-count");
    const strength = byId<HTMLInputElement>("warp-strength");
    const position = byId<HTMLInputElement>("warp-position");
    const illuminantSecond = byId<HTMLInputElement>("show-second");
    const exportButton = byId<HTMLButtonElement>("export-state");
    const importInput = byId<HTMLInputElement>("import-state");
    const readout = byId<HTMLSpanElement>("readout");

    luminance.addEventListener("change", () => {
        void controller.setLuminance(Number(luminance.value));
    });
    depth.addEventListener("input", () => {
        controller.setDepth(Number(depth.value));
    });
    basisCount.addEventListener("change", () => {
        void controller.setBasis({ count: Number(basisCount.value) });
    });
    strength.addEventListener("change", () => {
        void controller.setBasis({ strength: Number(strength.value) });
    });
    position.addEventListener("change", () => {
        void controller.setBasis({ position: Number(position.value) });
    });
    illuminantSecond.addEventListener("change", () => {
        void controller.toggleSecondIlluminant(illuminantSecond.checked);
    });
    exportButton.addEventListener("click", () => {
        const blob = new Blob([controller.exportDocument()], { type: "application/json" });
        const link = document.createElement("a");
        link.href = URL.createObjectURL(blob);
        link.download = "designer-state.json";
        link.click();
        URL.revokeObjectURL(link.href);
    });
    importInput.addEventListener("change", async () => {
        const file = importInput.files?.[0];
        if (!file) {
            return;
        }
        try {
            await controller.importDocument(await file.text());
        } catch (error) {
            banner.textContent = String(error);
            banner.hidden = false;
        }
    });

    controller.subscribe((state, data) => {
        if (!data.connected) {
            banner.textContent = "service unreachable; start it with: spectraset serve";
            banner.hidden = false;
        } else if (data.targetClamped) {
            banner.textContent = "target outside the basis gamut; snapped to the nearest interior point";
            banner.hidden = false;
        } else if (data.lastError) {
            banner.textContent = data.lastError;
            banner.hidden = false;
        } else {
            banner.hidden = true;
        }
        for (const control of [luminance, depth, basisCount, strength, position]) {
            control.disabled = !data.connected;
        }
        luminance.value = String(state.target.luminance);
        const cap = data.sampleData?.luminance_cap;
        readout.textContent =
            `target (${state.target.x.toFixed(4)}, ${state.target.y.toFixed(4)}) ` +
            `Y=${state.target.luminance.toFixed(3)}` +
            (cap !== undefined ? ` (cap ${cap.toFixed(3)})` : "") +
            ` depth=${state.depth.toFixed(2)}`;
    });
}

function start(): void {
    const client = new ApiClient(window.location.origin.replace(/:\d+$/, ":8000"));
    const controller = new DesignerController(client);
    new ChromaticityCanvas(byId<HTMLCanvasElement>("chromaticity"), controller);
    new SpectrumPanel(byId<HTMLCanvasElement>("spectrum"), controller);
    new HueDial(byId<HTMLCanvasElement>("hue-dial"), controller);
    new PaletteStrip(byId<HTMLDivElement>("palette"), controller);
    setupControls(controller);
    void controller.initialize();
}

document.addEventListener("DOMContentLoaded", start);
