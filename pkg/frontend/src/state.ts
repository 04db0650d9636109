// Designer document: everything the user has dialed in, serializable to
// a shareable text document that round-trips bit for bit.

import type { BasisSpec, TargetSpec } from "./api.js";

export type Selection = "max" | number;

export interface DesignerState {
    basis: BasisSpec;
    target: TargetSpec;
    sampleCount: number;
    seed: number;
    selection: Selection;
    depth: number;
    hueAngle: number;
    referenceDepth: number;
    firstIlluminant: string;
    secondIlluminant: string;
    showSecondIlluminant: boolean;
}

export const DOCUMENT_FORMAT = "spectraset-designer/1";

export function defaultState(): DesignerState {
    return {
        basis: { count: 7, strength: 0.66, position: 0.39, offset: 100, illuminant: null },
        target: { x: 0.41, y: 0.42, luminance: 0.57 },
        sampleCount: 16,
        seed: 0,
        selection: "max",
        depth: 1,
        hueAngle: 0,
        referenceDepth: 10,
        firstIlluminant: "D65",
        secondIlluminant: "F2",
        showSecondIlluminant: false,
    };
}

function assertFinite(value: unknown, name: string): number {
    if (typeof value !== "number" || !Number.isFinite(value)) {
        throw new Error(`designer document: ${name} must be a finite number`);
    }
    return value;
}

function assertString(value: unknown, name: string): string {
    if (typeof value !== "string" || value.length === 0) {
        throw new Error(`designer document: ${name} must be a non-empty string`);
    }
    return value;
}

/**
 * Serialize with a fixed key order so identical states always produce
 * identical documents. JSON double round-tripping is exact, so
 * export/import loses no precision.
 */
export function exportState(state: DesignerState): string {
    return JSON.stringify(
        {
            format: DOCUMENT_FORMAT,
            basis: {
                count: state.basis.count,
                strength: state.basis.strength,
                position: state.basis.position,
                offset: state.basis.offset,
                illuminant: state.basis.illuminant ?? null,
            },
            target: {
                x: state.target.x,
                y: state.target.y,
                luminance: state.target.luminance,
            },
            sampleCount: state.sampleCount,
            seed: state.seed,
            selection: state.selection,
            depth: state.depth,
            hueAngle: state.hueAngle,
            referenceDepth: state.referenceDepth,
            firstIlluminant: state.firstIlluminant,
            secondIlluminant: state.secondIlluminant,
            showSecondIlluminant: state.showSecondIlluminant,
        },
        null,
        2,
    );
}

export function importState(text: string): DesignerState {
    let doc: any;
    try {
        doc = JSON.parse(text);
    } catch {
        throw new Error("designer document: not valid JSON");
    }
    if (doc?.format !== DOCUMENT_FORMAT) {
        throw new Error(`designer document: expected format ${DOCUMENT_FORMAT}`);
    }
    const count = assertFinite(doc.basis?.count, "basis.count");
    if (!Number.isInteger(count) || count < 3) {
        throw new Error("designer document: basis.count must be an integer of at least 3");
    }
    const selection = doc.selection;
    if (selection !== "max" && !(Number.isInteger(selection) && selection >= 0)) {
        throw new Error('designer document: selection must be "max" or a sample index');
    }
    const illuminant = doc.basis.illuminant;
    if (illuminant !== null && typeof illuminant !== "string") {
        throw new Error("designer document: basis.illuminant must be a string or null");
    }
    const state: DesignerState = {
        basis: {
            count,
            strength: assertFinite(doc.basis.strength, "basis.strength"),
            position: assertFinite(doc.basis.position, "basis.position"),
            offset: assertFinite(doc.basis.offset, "basis.offset"),
            illuminant,
        },
        target: {
            x: assertFinite(doc.target?.x, "target.x"),
            y: assertFinite(doc.target?.y, "target.y"),
            luminance: assertFinite(doc.target?.luminance, "target.luminance"),
        },
        sampleCount: assertFinite(doc.sampleCount, "sampleCount"),
        seed: assertFinite(doc.seed, "seed"),
        selection,
        depth: assertFinite(doc.depth, "depth"),
        hueAngle: assertFinite(doc.hueAngle, "hueAngle"),
        referenceDepth: assertFinite(doc.referenceDepth, "referenceDepth"),
        firstIlluminant: assertString(doc.firstIlluminant, "firstIlluminant"),
        secondIlluminant: assertString(doc.secondIlluminant, "secondIlluminant"),
        showSecondIlluminant: Boolean(doc.showSecondIlluminant),
    };
    if (state.target.luminance < 0 || state.target.luminance > 1) {
        throw new Error("designer document: target.luminance must lie in [0, 1]");
    }
    return state;
}
