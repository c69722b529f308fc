import { beforeEach, describe, expect, it, vi } from "vitest";
import { NetworkClient } from "../src/api";
import { createExplorer } from "../src/app";
import { NetworkResponse } from "../src/types";
import goldenJson from "./fixtures/golden_network.json";

const golden = goldenJson as unknown as NetworkResponse;

interface FakeCtx {
  arcs: number;
  ctx: CanvasRenderingContext2D;
}

// happy-dom has no 2D canvas; record draw calls instead.
function installFakeCanvas(): FakeCtx {
  const rec: FakeCtx = { arcs: 0, ctx: null as unknown as CanvasRenderingContext2D };
  const ctx = {
    clearRect: () => {},
    beginPath: () => {},
    moveTo: () => {},
    lineTo: () => {},
    stroke: () => {},
    arc: () => {
      rec.arcs += 1;
    },
    fill: () => {},
    fillRect: () => {},
    fillText: () => {},
    measureText: () => ({ width: 24 }),
    globalAlpha: 1,
    fillStyle: "",
    strokeStyle: "",
    lineWidth: 1,
    font: "",
  } as unknown as CanvasRenderingContext2D;
  rec.ctx = ctx;
  vi.spyOn(HTMLCanvasElement.prototype, "getContext").mockReturnValue(
    ctx as unknown as RenderingContext,
  );
  return rec;
}

function clientReturning(body: NetworkResponse | Error): NetworkClient {
  const fetchImpl = (async () => {
    if (body instanceof Error) throw body;
    return new Response(JSON.stringify(body), { status: 200 });
  }) as typeof fetch;
  return new NetworkClient("http://svc", fetchImpl);
}

const EMPTY: NetworkResponse = {
  network: { items: [], links: [], clusters: [] },
  diagnostics: {
    seed: 0,
    matched_docs: 0,
    pre_filter_nodes: 0,
    post_filter_nodes: 0,
    edges: 0,
    clusters: 0,
    modularity: 0,
  },
};

beforeEach(() => {
  vi.restoreAllMocks();
  document.body.innerHTML = "<div id='app'></div>";
});

function mount(client: NetworkClient) {
  return createExplorer(document.getElementById("app")!, client);
}

describe("explorer", () => {
  it("renders one canvas node per fetched item", async () => {
    const rec = installFakeCanvas();
    const app = mount(clientReturning(golden));
    await app.refresh();
    expect(app.currentScene()!.nodes.length).toBe(golden.network.items.length);
    expect(rec.arcs).toBe(golden.network.items.length);
  });

  it("renders identical cluster colors for the same query and seed", async () => {
    installFakeCanvas();
    const app1 = mount(clientReturning(golden));
    app1.state.query = "carbon sequestration";
    app1.state.seed = 3;
    await app1.refresh();
    const colors1 = app1.currentScene()!.nodes.map((n) => [n.id, n.color]);

    document.body.innerHTML = "<div id='app'></div>";
    const app2 = mount(clientReturning(golden));
    app2.state.query = "carbon sequestration";
    app2.state.seed = 3;
    await app2.refresh();
    const colors2 = app2.currentScene()!.nodes.map((n) => [n.id, n.color]);

    expect(colors2).toEqual(colors1);
  });

  it("shows the retry banner when the service is down, without crashing", async () => {
    installFakeCanvas();
    const down = new TypeError("fetch failed: connection refused");
    const app = mount(clientReturning(down));
    await app.refresh();
    const banner = document.querySelector(".error-banner") as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("Could not reach the map service");
    expect(document.querySelector(".retry")).not.toBeNull();
  });

  it("retry button re-issues the request", async () => {
    installFakeCanvas();
    let fail = true;
    const fetchImpl = (async () => {
      if (fail) throw new TypeError("down");
      return new Response(JSON.stringify(golden), { status: 200 });
    }) as typeof fetch;
    const app = mount(new NetworkClient("http://svc", fetchImpl));
    await app.refresh();
    expect((document.querySelector(".error-banner") as HTMLElement).hidden).toBe(false);
    fail = false;
    (document.querySelector(".retry") as HTMLButtonElement).click();
    await vi.waitFor(() => {
      expect(app.currentScene()).not.toBeNull();
    });
    expect((document.querySelector(".error-banner") as HTMLElement).hidden).toBe(true);
  });

  it("shows the empty-state message for an empty network", async () => {
    installFakeCanvas();
    const app = mount(clientReturning(EMPTY));
    await app.refresh();
    const empty = document.querySelector(".empty-state") as HTMLElement;
    expect(empty.hidden).toBe(false);
    expect((document.querySelector(".error-banner") as HTMLElement).hidden).toBe(true);
  });

  it("cluster selection fills the panel and dims other clusters", async () => {
    installFakeCanvas();
    const app = mount(clientReturning(golden));
    await app.refresh();
    app.selectCluster(2);
    const panel = document.querySelector(".cluster-panel") as HTMLElement;
    expect(panel.hidden).toBe(false);
    const label = golden.network.clusters.find((c) => c.cluster === 2)!.label;
    expect(panel.querySelector(".cluster-name")!.textContent).toBe(
      label === "" ? "(unlabeled)" : label,
    );
    for (const n of app.currentScene()!.nodes) {
      expect(n.dimmed).toBe(n.cluster !== 2);
    }
    app.selectCluster(null);
    expect(panel.hidden).toBe(true);
    expect(app.currentScene()!.nodes.every((n) => !n.dimmed)).toBe(true);
  });

  it("records diagnostics in view state after a fetch", async () => {
    installFakeCanvas();
    const app = mount(clientReturning(golden));
    await app.refresh();
    expect(app.state.lastDiagnostics).toEqual(golden.diagnostics);
    expect(document.querySelector(".diagnostics")!.textContent).toContain(
      `${golden.diagnostics.clusters} communities`,
    );
  });
});
