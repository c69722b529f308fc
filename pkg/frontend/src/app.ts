import { NetworkClient } from "./api";
import { renderPanel, clusterDetail } from "./panel";
import { drawScene } from "./render";
import { buildScene, defaultCamera, hitTest, Camera, Scene, SceneNode } from "./scene";
import { initialViewState, NetworkResponse, ViewState } from "./types";

export interface Explorer {
  state: ViewState;
  refresh(): Promise<void>;
  selectCluster(cluster: number | null): void;
  currentScene(): Scene | null;
  destroy(): void;
}

const TEMPLATE = `
  <form class="controls">
    <input class="query" type="search" placeholder="query, e.g. carbon sequestration" />
    <select class="model">
      <option value="topic" selected>topics</option>
      <option value="author">authors</option>
      <option value="institution">institutions</option>
      <option value="journal">journals</option>
    </select>
    <input class="max-nodes" type="number" min="2" value="300" title="max nodes" />
    <input class="seed" type="number" placeholder="seed" title="seed (blank = derived)" />
    <select class="labeling">
      <option value="fallback" selected>fallback names</option>
      <option value="llm">llm names</option>
      <option value="off">no names</option>
    </select>
    <input class="perimeter" type="text" placeholder="perimeter id" />
    <button type="submit">Map it</button>
  </form>
  <div class="banner error-banner" hidden>
    <span class="banner-text"></span>
    <button class="retry" type="button">Retry</button>
  </div>
  <div class="empty-state" hidden>No publications matched this query.</div>
  <div class="map-wrap">
    <canvas class="map" width="900" height="600"></canvas>
    <aside class="cluster-panel" hidden></aside>
  </div>
  <div class="diagnostics"></div>
`;

export function createExplorer(
  container: HTMLElement,
  client: NetworkClient,
): Explorer {
  container.innerHTML = TEMPLATE;
  const form = container.querySelector(".controls") as HTMLFormElement;
  const banner = container.querySelector(".banner") as HTMLElement;
  const bannerText = container.querySelector(".banner-text") as HTMLElement;
  const retryBtn = container.querySelector(".retry") as HTMLButtonElement;
  const emptyState = container.querySelector(".empty-state") as HTMLElement;
  const canvas = container.querySelector(".map") as HTMLCanvasElement;
  const panel = container.querySelector(".cluster-panel") as HTMLElement;
  const diagEl = container.querySelector(".diagnostics") as HTMLElement;
  const ctx = canvas.getContext("2d");

  const state: ViewState = initialViewState();
  let camera: Camera = defaultCamera();
  let response: NetworkResponse | null = null;
  let scene: Scene | null = null;
  let hovered: SceneNode | null = null;

  function redraw(): void {
    if (!response) {
      scene = null;
      return;
    }
    scene = buildScene(
      response.network,
      canvas.width,
      canvas.height,
      camera,
      state.selectedCluster,
    );
    if (ctx) drawScene(ctx, scene, hovered);
  }

  function showError(message: string): void {
    bannerText.textContent = message;
    banner.hidden = false;
  }

  async function refresh(): Promise<void> {
    banner.hidden = true;
    emptyState.hidden = true;
    try {
      response = await client.fetchNetwork(state);
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      showError(`Could not reach the map service. ${(err as Error).message}`);
      return;
    }
    state.lastDiagnostics = response.diagnostics;
    state.selectedCluster = null;
    camera = defaultCamera();
    hovered = null;
    if (response.network.items.length === 0) {
      emptyState.hidden = false;
    }
    const d = response.diagnostics;
    diagEl.textContent =
      `${d.matched_docs} documents, ${d.post_filter_nodes} nodes, ` +
      `${d.clusters} communities, Q=${d.modularity.toFixed(3)}, seed=${d.seed}`;
    renderPanel(panel, null);
    redraw();
  }

  function selectCluster(cluster: number | null): void {
    state.selectedCluster = cluster;
    if (response && cluster !== null) {
      renderPanel(panel, clusterDetail(response.network, cluster));
    } else {
      renderPanel(panel, null);
    }
    redraw();
  }

  function readForm(): void {
    state.query = (form.querySelector(".query") as HTMLInputElement).value;
    state.model = (form.querySelector(".model") as HTMLSelectElement).value;
    const maxNodes = parseInt(
      (form.querySelector(".max-nodes") as HTMLInputElement).value,
      10,
    );
    if (!Number.isNaN(maxNodes)) state.maxNodes = maxNodes;
    const seedRaw = (form.querySelector(".seed") as HTMLInputElement).value;
    state.seed = seedRaw === "" ? null : parseInt(seedRaw, 10);
    state.labeling = (form.querySelector(".labeling") as HTMLSelectElement)
      .value as ViewState["labeling"];
    const perim = (form.querySelector(".perimeter") as HTMLInputElement).value;
    state.perimeterId = perim === "" ? null : perim;
  }

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    readForm();
    void refresh();
  });
  retryBtn.addEventListener("click", () => void refresh());
  panel.addEventListener("click", (ev) => {
    if ((ev.target as HTMLElement).classList.contains("deselect")) {
      selectCluster(null);
    }
  });

  canvas.addEventListener("click", (ev) => {
    if (!scene) return;
    const hit = hitTest(scene, ev.offsetX, ev.offsetY);
    selectCluster(hit ? hit.cluster : null);
  });
  canvas.addEventListener("mousemove", (ev) => {
    if (!scene) return;
    const hit = hitTest(scene, ev.offsetX, ev.offsetY);
    if (hit !== hovered) {
      hovered = hit;
      redraw();
    }
  });
  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    camera = {
      ...camera,
      zoom: Math.min(20, Math.max(0.1, camera.zoom * (ev.deltaY < 0 ? 1.15 : 1 / 1.15))),
    };
    redraw();
  });
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  canvas.addEventListener("mousedown", (ev) => {
    dragging = true;
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  canvas.addEventListener("mousemove", (ev) => {
    if (!dragging) return;
    camera = {
      ...camera,
      panX: camera.panX + ev.clientX - lastX,
      panY: camera.panY + ev.clientY - lastY,
    };
    lastX = ev.clientX;
    lastY = ev.clientY;
    redraw();
  });

  return {
    state,
    refresh,
    selectCluster,
    currentScene: () => scene,
    destroy: () => {
      container.innerHTML = "";
    },
  };
}
