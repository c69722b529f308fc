import { describe, expect, it } from "vitest";
import { NetworkClient, networkUrl, ServiceError } from "../src/api";
import { initialViewState } from "../src/types";

function stateWith(overrides: object) {
  return { ...initialViewState(), ...overrides };
}

describe("networkUrl", () => {
  it("includes the pipeline knobs", () => {
    const url = networkUrl(
      "http://svc",
      stateWith({ query: "carbon sequestration", seed: 42, perimeterId: "lab-x" }),
    );
    const parsed = new URL(url);
    expect(parsed.pathname).toBe("/networks");
    expect(parsed.searchParams.get("q")).toBe("carbon sequestration");
    expect(parsed.searchParams.get("model")).toBe("topic");
    expect(parsed.searchParams.get("max_nodes")).toBe("300");
    expect(parsed.searchParams.get("seed")).toBe("42");
    expect(parsed.searchParams.get("perimeter")).toBe("lab-x");
  });

  it("omits seed and perimeter when unset", () => {
    const parsed = new URL(networkUrl("http://svc", stateWith({})));
    expect(parsed.searchParams.has("seed")).toBe(false);
    expect(parsed.searchParams.has("perimeter")).toBe(false);
  });
});

describe("NetworkClient", () => {
  it("wraps non-200 responses in ServiceError", async () => {
    const fetchImpl = (async () => new Response("boom", { status: 500 })) as typeof fetch;
    const client = new NetworkClient("http://svc", fetchImpl);
    await expect(client.fetchNetwork(stateWith({}))).rejects.toBeInstanceOf(ServiceError);
  });

  it("wraps network failures in ServiceError", async () => {
    const fetchImpl = (async () => {
      throw new TypeError("fetch failed");
    }) as typeof fetch;
    const client = new NetworkClient("http://svc", fetchImpl);
    await expect(client.fetchNetwork(stateWith({}))).rejects.toBeInstanceOf(ServiceError);
  });

  it("aborts the previous request when a new one starts", async () => {
    const seen: AbortSignal[] = [];
    const fetchImpl = ((_url: string, init?: RequestInit) => {
      seen.push(init!.signal as AbortSignal);
      return new Promise<Response>((resolve, reject) => {
        (init!.signal as AbortSignal).addEventListener("abort", () => {
          const err = new Error("aborted");
          err.name = "AbortError";
          reject(err);
        });
        setTimeout(
          () => resolve(new Response(JSON.stringify({ ok: true }), { status: 200 })),
          50,
        );
      });
    }) as unknown as typeof fetch;
    const client = new NetworkClient("http://svc", fetchImpl);
    const first = client.fetchNetwork(stateWith({ query: "old" }));
    const second = client.fetchNetwork(stateWith({ query: "new" }));
    await expect(first).rejects.toHaveProperty("name", "AbortError");
    await expect(second).resolves.toEqual({ ok: true });
    expect(seen[0].aborted).toBe(true);
    expect(seen[1].aborted).toBe(false);
  });
});
