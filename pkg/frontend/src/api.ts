// Typed client for the spectraset HTTP service. Every shape here mirrors
// the server's JSON exactly; the client does no colorimetric math of its
// own, it only carries server values to the views.

export interface BasisSpec {
    count: number;
    strength: number;
    position: number;
    offset: number;
    illuminant?: string | null;
}

export interface TargetSpec {
    x: number;
    y: number;
    luminance: number;
}

export type Point = [number, number];

export interface ColorView {
    xyz: [number, number, number];
    chromaticity: Point;
    linear_rgb: [number, number, number];
}

/** Deep colors may sit at zero luminance, where chromaticity is undefined. */
export interface DeepColorView {
    xyz: [number, number, number];
    linear_rgb: [number, number, number];
    chromaticity?: Point | null;
}

export interface BasisSummary {
    count: number;
    strength: number;
    position: number;
    offset_nm: number;
    illuminant: string;
    excess_area: number;
    smoothness_nm: number;
}

export interface BasisView {
    summary: BasisSummary;
    wavelengths_nm: number[];
    basis_curves: number[][];
    basis_points: Point[];
    gamut: Point[];
    srgb_triangle: Point[];
    wide_triangle: Point[];
    locus: Point[];
    white: Point;
}

export interface SampleView {
    weights: number[];
    bary: number[];
    triangle: number[];
    achieved_luminance: number;
    luminance_met: boolean;
    scaled: boolean;
    spectrum: number[];
    color: ColorView;
}

export interface MaxLuminanceView {
    weights: number[];
    luminance: number;
    spectrum: number[];
    color: ColorView;
}

export interface SampleResponse {
    wavelengths_nm: number[];
    samples: SampleView[];
    feasible: boolean;
    luminance_cap: number;
    max_luminance: MaxLuminanceView;
}

export interface TrajectoryResponse {
    depths: number[];
    points: (Point | null)[];
    luminances: number[];
    terminal: boolean[];
}

export interface RepresentativeView {
    triangle: number[];
    weights: number[];
    hue_angle: number;
    chromaticity_at_ref: Point;
    achieved_luminance: number;
    luminance_met: boolean;
    color: ColorView;
    deep_color: DeepColorView;
}

export interface RepresentativesResponse {
    reference_depth: number;
    entries: RepresentativeView[];
}

export interface PickHueResponse {
    weights: number[];
    wavelengths_nm: number[];
    spectrum: number[];
    color: ColorView;
    deep_color: DeepColorView;
}

export interface PaletteEntryView {
    weights: number[];
    seed_key: [number, number];
    first: { xyz: [number, number, number]; linear_rgb: [number, number, number] };
    second: { xyz: [number, number, number]; linear_rgb: [number, number, number] };
}

export interface PaletteResponse {
    first: string;
    second: string;
    entries: PaletteEntryView[];
}

/** What the controller needs from a client; ApiClient is the real one. */
export interface ServiceClient {
    basis(spec: BasisSpec): Promise<BasisView>;
    sample(
        basis: BasisSpec,
        target: TargetSpec,
        count: number,
        seed: number,
    ): Promise<SampleResponse>;
    trajectory(basis: BasisSpec, weights: number[]): Promise<TrajectoryResponse>;
    representatives(
        basis: BasisSpec,
        target: TargetSpec,
        referenceDepth: number,
    ): Promise<RepresentativesResponse>;
    pickHue(
        basis: BasisSpec,
        target: TargetSpec,
        hueAngle: number,
        referenceDepth: number,
    ): Promise<PickHueResponse>;
    palette(
        basis: BasisSpec,
        first: string,
        second: string,
        target: TargetSpec,
        count: number,
        seed: number,
    ): Promise<PaletteResponse>;
}

/** Server-reported failure: HTTP status plus the service's error code. */
export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly code: string,
        message: string,
    ) {
        super(message);
        this.name = "ApiError";
    }
}

function basisBody(basis: BasisSpec): Record<string, unknown> {
    return {
        count: basis.count,
        strength: basis.strength,
        position: basis.position,
        offset: basis.offset,
        illuminant: basis.illuminant ?? null,
    };
}

async function raiseForStatus(response: Response): Promise<never> {
    let code = "http_error";
    let message = `${response.status} ${response.statusText}`;
    try {
        const body = await response.json();
        if (typeof body.code === "string") {
            code = body.code;
            message = body.message ?? message;
        } else if (body.detail !== undefined) {
            code = "validation_error";
            message = JSON.stringify(body.detail);
        }
    } catch {
        // non-JSON error body; keep the HTTP line
    }
    throw new ApiError(response.status, code, message);
}

/**
 * Fetch wrapper with one in-flight request per channel: a new request on
 * the same channel aborts the previous one, so a scrubbed slider only
 * ever lands its latest value.
 */
export class ApiClient implements ServiceClient {
    private inflight = new Map<string, AbortController>();

    constructor(
        readonly baseUrl: string,
        private fetchImpl: typeof fetch = fetch,
    ) {}

    private async request<T>(channel: string, path: string, init: RequestInit): Promise<T> {
        this.inflight.get(channel)?.abort();
        const controller = new AbortController();
        this.inflight.set(channel, controller);
        try {
            const response = await this.fetchImpl(this.baseUrl + path, {
                ...init,
                signal: controller.signal,
            });
            if (!response.ok) {
                await raiseForStatus(response);
            }
            return (await response.json()) as T;
        } finally {
            if (this.inflight.get(channel) === controller) {
                this.inflight.delete(channel);
            }
        }
    }

    private post<T>(channel: string, path: string, body: unknown): Promise<T> {
        return this.request<T>(channel, path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
    }

    basis(spec: BasisSpec): Promise<BasisView> {
        const query = new URLSearchParams({
            K: String(spec.count),
            s: String(spec.strength),
            p: String(spec.position),
            offset: String(spec.offset),
        });
        if (spec.illuminant) {
            query.set("illuminant", spec.illuminant);
        }
        return this.request<BasisView>("basis", `/basis?${query}`, { method: "GET" });
    }

    sample(
        basis: BasisSpec,
        target: TargetSpec,
        count: number,
        seed: number,
    ): Promise<SampleResponse> {
        return this.post("sample", "/sample", {
            basis: basisBody(basis),
            target,
            count,
            seed,
        });
    }

    trajectory(basis: BasisSpec, weights: number[]): Promise<TrajectoryResponse> {
        return this.post("trajectory", "/trajectory", {
            basis: basisBody(basis),
            weights,
        });
    }

    representatives(
        basis: BasisSpec,
        target: TargetSpec,
        referenceDepth: number,
    ): Promise<RepresentativesResponse> {
        return this.post("representatives", "/representatives", {
            basis: basisBody(basis),
            target,
            reference_depth: referenceDepth,
        });
    }

    pickHue(
        basis: BasisSpec,
        target: TargetSpec,
        hueAngle: number,
        referenceDepth: number,
    ): Promise<PickHueResponse> {
        return this.post("pick_hue", "/pick_hue", {
            basis: basisBody(basis),
            target,
            hue_angle: hueAngle,
            reference_depth: referenceDepth,
        });
    }

    palette(
        basis: BasisSpec,
        first: string,
        second: string,
        target: TargetSpec,
        count: number,
        seed: number,
    ): Promise<PaletteResponse> {
        return this.post("palette", "/palette", {
            basis: basisBody(basis),
            first,
            second,
            target,
            count,
            seed,
        });
    }
}
