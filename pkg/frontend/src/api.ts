import { NetworkResponse, ViewState } from "./types";

export class ServiceError extends Error {
  constructor(message: string, public status?: number) {
    super(message);
  }
}

export function networkUrl(base: string, state: ViewState): string {
  const params = new URLSearchParams();
  params.set("q", state.query);
  params.set("model", state.model);
  params.set("max_nodes", String(state.maxNodes));
  if (state.seed !== null) params.set("seed", String(state.seed));
  params.set("labeling", state.labeling);
  if (state.perimeterId) params.set("perimeter", state.perimeterId);
  return `${base}/networks?${params.toString()}`;
}

/**
 * Fetches a network for the current view state. Keeps at most one request
 * in flight: starting a new fetch aborts the previous one, so a slow old
 * answer can never overwrite a newer map.
 */
export class NetworkClient {
  private inflight: AbortController | null = null;

  constructor(
    private base: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  async fetchNetwork(state: ViewState): Promise<NetworkResponse> {
    if (this.inflight) this.inflight.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const resp = await this.fetchImpl(networkUrl(this.base, state), {
        signal: controller.signal,
      });
      if (!resp.ok) {
        throw new ServiceError(`service returned ${resp.status}`, resp.status);
      }
      return (await resp.json()) as NetworkResponse;
    } catch (err) {
      if (err instanceof ServiceError) throw err;
      if ((err as Error).name === "AbortError") throw err;
      throw new ServiceError(`service unreachable: ${(err as Error).message}`);
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async registerPerimeter(perimeterId: string, pubIds: string[]): Promise<void> {
    const resp = await this.fetchImpl(`${this.base}/perimeters`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ perimeter_id: perimeterId, pub_ids: pubIds }),
    });
    if (!resp.ok) throw new ServiceError(`service returned ${resp.status}`, resp.status);
  }
}
