// Orchestrates the designer: owns the state document plus everything
// fetched for it, and pushes immutable snapshots to the views. All math
// happens server-side; this layer just decides what to fetch when.

import {
    ApiError,
    type BasisSpec,
    type BasisView,
    type PaletteResponse,
    type PickHueResponse,
    type Point,
    type RepresentativesResponse,
    type SampleResponse,
    type ServiceClient,
    type TrajectoryResponse,
} from "./api.js";
import { clampToPolygon } from "./geometry.js";
import {
    defaultState,
    exportState,
    importState,
    type DesignerState,
    type Selection,
} from "./state.js";

/** Dial positions this close to a representative's angle snap to it exactly. */
export const HUE_SNAP_RADIANS = 0.06;

export interface DesignerData {
    basisView: BasisView | null;
    sampleData: SampleResponse | null;
    trajectory: TrajectoryResponse | null;
    representatives: RepresentativesResponse | null;
    huePick: PickHueResponse | null;
    palette: PaletteResponse | null;
    targetClamped: boolean;
    connected: boolean;
    lastError: string | null;
    busy: number;
}

export type Listener = (state: DesignerState, data: DesignerData) => void;

function circularDistance(a: number, b: number): number {
    const tau = 2 * Math.PI;
    const diff = Math.abs(((a - b) % tau) + tau) % tau;
    return Math.min(diff, tau - diff);
}

function isAbort(error: unknown): boolean {
    return (
        typeof error === "object" &&
        error !== null &&
        (error as { name?: string }).name === "AbortError"
    );
}

export class DesignerController {
    state: DesignerState;
    data: DesignerData = {
        basisView: null,
        sampleData: null,
        trajectory: null,
        representatives: null,
        huePick: null,
        palette: null,
        targetClamped: false,
        connected: false,
        lastError: null,
        busy: 0,
    };
    private listeners: Listener[] = [];

    constructor(private client: ServiceClient, state?: DesignerState) {
        this.state = state ?? defaultState();
    }

    subscribe(listener: Listener): void {
        this.listeners.push(listener);
    }

    private emit(): void {
        for (const listener of this.listeners) {
            listener(this.state, this.data);
        }
    }

    /** Weights of the current selection; max-luminance member by default. */
    selectedWeights(): number[] | null {
        const sampled = this.data.sampleData;
        if (!sampled) {
            return null;
        }
        if (this.state.selection === "max") {
            return sampled.max_luminance.weights;
        }
        return sampled.samples[this.state.selection]?.weights ?? null;
    }

    private async guarded<T>(work: () => Promise<T>): Promise<T | null> {
        this.data.busy += 1;
        this.emit();
        try {
            const result = await work();
            this.data.connected = true;
            this.data.lastError = null;
            return result;
        } catch (error) {
            if (isAbort(error)) {
                return null;
            }
            if (error instanceof ApiError) {
                this.data.lastError = `${error.code}: ${error.message}`;
            } else {
                // network failure: disable controls until the next success
                this.data.connected = false;
                this.data.lastError = "service unreachable";
            }
            return null;
        } finally {
            this.data.busy -= 1;
            this.emit();
        }
    }

    async initialize(): Promise<void> {
        await this.refreshBasis();
        await this.refreshSamples();
    }

    async refreshBasis(): Promise<void> {
        const view = await this.guarded(() => this.client.basis(this.state.basis));
        if (view) {
            this.data.basisView = view;
            this.emit();
        }
    }

    async refreshSamples(): Promise<void> {
        const response = await this.guarded(() =>
            this.client.sample(
                this.state.basis,
                this.state.target,
                this.state.sampleCount,
                this.state.seed,
            ),
        );
        if (!response) {
            return;
        }
        this.data.sampleData = response;
        if (this.state.selection !== "max" && this.state.selection >= response.samples.length) {
            this.state.selection = "max";
        }
        this.emit();
        await Promise.all([this.refreshTrajectory(), this.refreshRepresentatives()]);
        if (this.state.showSecondIlluminant) {
            await this.refreshPalette();
        }
    }

    async refreshTrajectory(): Promise<void> {
        const weights = this.selectedWeights();
        if (!weights) {
            return;
        }
        const trajectory = await this.guarded(() =>
            this.client.trajectory(this.state.basis, weights),
        );
        if (trajectory) {
            this.data.trajectory = trajectory;
            this.emit();
        }
    }

    async refreshRepresentatives(): Promise<void> {
        const response = await this.guarded(() =>
            this.client.representatives(
                this.state.basis,
                this.state.target,
                this.state.referenceDepth,
            ),
        );
        if (response) {
            this.data.representatives = response;
            this.emit();
        }
    }

    async refreshPalette(): Promise<void> {
        const response = await this.guarded(() =>
            this.client.palette(
                this.state.basis,
                this.state.firstIlluminant,
                this.state.secondIlluminant,
                this.state.target,
                this.state.sampleCount,
                this.state.seed,
            ),
        );
        if (response) {
            this.data.palette = response;
            this.emit();
        }
    }

    async setBasis(changes: Partial<BasisSpec>): Promise<void> {
        this.state.basis = { ...this.state.basis, ...changes };
        this.state.selection = "max";
        await this.refreshBasis();
        await this.refreshSamples();
    }

    /**
     * Move the target marker. Points dragged outside the basis gamut snap
     * to the nearest interior point and raise the clamped flag for the
     * warning banner.
     */
    async setTarget(point: Point): Promise<void> {
        const gamut = this.data.basisView?.gamut;
        if (gamut && gamut.length >= 3) {
            const { point: inside, clamped } = clampToPolygon(point, gamut);
            this.data.targetClamped = clamped;
            this.state.target = { ...this.state.target, x: inside[0], y: inside[1] };
        } else {
            this.data.targetClamped = false;
            this.state.target = { ...this.state.target, x: point[0], y: point[1] };
        }
        this.state.selection = "max";
        await this.refreshSamples();
    }

    async setLuminance(luminance: number): Promise<void> {
        this.state.target = { ...this.state.target, luminance };
        this.state.selection = "max";
        await this.refreshSamples();
    }

    async select(selection: Selection): Promise<void> {
        this.state.selection = selection;
        this.emit();
        await this.refreshTrajectory();
    }

    /** Scrub the depth slider; the trajectory is already loaded, so this
     * only moves the annotation and notifies views. */
    setDepth(depth: number): void {
        this.state.depth = depth;
        this.emit();
    }

    /** Drive the hue dial: snap to a representative's exact angle when
     * close, then ask the server for the matching member. */
    async setHueAngle(angle: number): Promise<void> {
        let snapped = angle;
        const entries = this.data.representatives?.entries ?? [];
        let bestGap = HUE_SNAP_RADIANS;
        for (const entry of entries) {
            const gap = circularDistance(angle, entry.hue_angle);
            if (gap < bestGap) {
                bestGap = gap;
                snapped = entry.hue_angle;
            }
        }
        this.state.hueAngle = snapped;
        const pick = await this.guarded(() =>
            this.client.pickHue(
                this.state.basis,
                this.state.target,
                snapped,
                this.state.referenceDepth,
            ),
        );
        if (pick) {
            this.data.huePick = pick;
            this.emit();
        }
    }

    async setIlluminantPair(first: string, second: string): Promise<void> {
        this.state.firstIlluminant = first;
        this.state.secondIlluminant = second;
        if (this.state.showSecondIlluminant) {
            await this.refreshPalette();
        } else {
            this.emit();
        }
    }

    async toggleSecondIlluminant(show: boolean): Promise<void> {
        this.state.showSecondIlluminant = show;
        if (show && !this.data.palette) {
            await this.refreshPalette();
        } else {
            this.emit();
        }
    }

    exportDocument(): string {
        return exportState(this.state);
    }

    async importDocument(text: string): Promise<void> {
        this.state = importState(text);
        await this.initialize();
    }
}
