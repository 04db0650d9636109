import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, type BasisSpec, type TargetSpec } from "../src/api";

const BASIS: BasisSpec = { count: 7, strength: 0.66, position: 0.39, offset: 100, illuminant: null };
const TARGET: TargetSpec = { x: 0.41, y: 0.42, luminance: 0.57 };

interface RecordedCall {
    url: string;
    init: RequestInit;
}

function jsonResponse(body: unknown, status = 200): Response {
    return new Response(JSON.stringify(body), {
        status,
        headers: { "Content-Type": "application/json" },
    });
}

function makeClient(handler: (call: RecordedCall) => Response | Promise<Response>) {
    const calls: RecordedCall[] = [];
    const fetchImpl = (async (input: RequestInfo | URL, init?: RequestInit) => {
        const call = { url: String(input), init: init ?? {} };
        calls.push(call);
        return handler(call);
    }) as typeof fetch;
    return { client: new ApiClient("http://service", fetchImpl), calls };
}

function sentBody(call: RecordedCall): unknown {
    return JSON.parse(String(call.init.body));
}

describe("request construction", () => {
    it("encodes the basis request as query parameters", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.basis(BASIS);
        expect(calls[0].url).toBe("http://service/basis?K=7&s=0.66&p=0.39&offset=100");
        expect(calls[0].init.method).toBe("GET");
    });

    it("appends the illuminant override when present", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.basis({ ...BASIS, illuminant: "E" });
        expect(calls[0].url).toContain("illuminant=E");
    });

    it("posts the sampling request with a normalized basis body", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.sample(BASIS, TARGET, 16, 3);
        expect(calls[0].url).toBe("http://service/sample");
        expect(calls[0].init.method).toBe("POST");
        expect(sentBody(calls[0])).toEqual({
            basis: { count: 7, strength: 0.66, position: 0.39, offset: 100, illuminant: null },
            target: { x: 0.41, y: 0.42, luminance: 0.57 },
            count: 16,
            seed: 3,
        });
    });

    it("posts weights for the trajectory", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.trajectory(BASIS, [0.1, 0.2, 0.3]);
        expect(calls[0].url).toBe("http://service/trajectory");
        expect(sentBody(calls[0])).toMatchObject({ weights: [0.1, 0.2, 0.3] });
    });

    it("posts the reference depth for representatives", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.representatives(BASIS, TARGET, 10);
        expect(sentBody(calls[0])).toMatchObject({ reference_depth: 10 });
    });

    it("posts the hue angle in radians", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.pickHue(BASIS, TARGET, 2.5, 10);
        expect(calls[0].url).toBe("http://service/pick_hue");
        expect(sentBody(calls[0])).toMatchObject({ hue_angle: 2.5, reference_depth: 10 });
    });

    it("posts the illuminant pair for palettes", async () => {
        const { client, calls } = makeClient(() => jsonResponse({}));
        await client.palette(BASIS, "D65", "F2", TARGET, 8, 0);
        expect(calls[0].url).toBe("http://service/palette");
        expect(sentBody(calls[0])).toMatchObject({ first: "D65", second: "F2", count: 8 });
    });
});

describe("error mapping", () => {
    it("surfaces the service error code and message", async () => {
        const { client } = makeClient(() =>
            jsonResponse({ code: "out_of_gamut", message: "target outside the basis gamut" }, 400),
        );
        const error = await client.sample(BASIS, TARGET, 4, 0).catch((e: unknown) => e);
        expect(error).toBeInstanceOf(ApiError);
        expect((error as ApiError).status).toBe(400);
        expect((error as ApiError).code).toBe("out_of_gamut");
        expect((error as ApiError).message).toBe("target outside the basis gamut");
    });

    it("labels schema rejections as validation errors", async () => {
        const { client } = makeClient(() =>
            jsonResponse({ detail: [{ loc: ["body", "count"], msg: "too small" }] }, 422),
        );
        const error = await client.sample(BASIS, TARGET, 0, 0).catch((e: unknown) => e);
        expect(error).toBeInstanceOf(ApiError);
        expect((error as ApiError).code).toBe("validation_error");
        expect((error as ApiError).message).toContain("too small");
    });

    it("falls back to the HTTP status for non-JSON bodies", async () => {
        const { client } = makeClient(
            () => new Response("boom", { status: 500, statusText: "Internal Server Error" }),
        );
        const error = await client.basis(BASIS).catch((e: unknown) => e);
        expect(error).toBeInstanceOf(ApiError);
        expect((error as ApiError).code).toBe("http_error");
        expect((error as ApiError).message).toContain("500");
    });
});

describe("latest-wins requests", () => {
    it("aborts the previous request on the same channel", async () => {
        const resolvers: ((response: Response) => void)[] = [];
        const { client } = makeClient(
            (call) =>
                new Promise<Response>((resolve, reject) => {
                    call.init.signal?.addEventListener("abort", () =>
                        reject(Object.assign(new Error("aborted"), { name: "AbortError" })),
                    );
                    resolvers.push(resolve);
                }),
        );
        const first = client.sample(BASIS, TARGET, 4, 0);
        const second = client.sample(BASIS, TARGET, 8, 0);
        resolvers[1](jsonResponse({ feasible: true }));
        await expect(first).rejects.toMatchObject({ name: "AbortError" });
        await expect(second).resolves.toEqual({ feasible: true });
    });

    it("leaves other channels untouched", async () => {
        const resolvers: ((response: Response) => void)[] = [];
        const { client } = makeClient(
            (call) =>
                new Promise<Response>((resolve, reject) => {
                    call.init.signal?.addEventListener("abort", () =>
                        reject(Object.assign(new Error("aborted"), { name: "AbortError" })),
                    );
                    resolvers.push(resolve);
                }),
        );
        const basis = client.basis(BASIS);
        const sample = client.sample(BASIS, TARGET, 4, 0);
        resolvers[0](jsonResponse({ kind: "basis" }));
        resolvers[1](jsonResponse({ kind: "sample" }));
        await expect(basis).resolves.toEqual({ kind: "basis" });
        await expect(sample).resolves.toEqual({ kind: "sample" });
    });
});
