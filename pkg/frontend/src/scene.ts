import { clusterColor } from "./colors";
import { VosNetwork } from "./types";

export interface Camera {
  // screen = (world - center) * zoom + viewport/2 + pan
  panX: number;
  panY: number;
  zoom: number;
}

export interface SceneNode {
  id: string;
  label: string;
  x: number;
  y: number;
  radius: number;
  color: string;
  cluster: number;
  dimmed: boolean;
}

export interface SceneLink {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  dimmed: boolean;
}

export interface Scene {
  nodes: SceneNode[];
  links: SceneLink[];
  width: number;
  height: number;
}

const MIN_RADIUS = 4;
const MAX_RADIUS = 18;

export function defaultCamera(): Camera {
  return { panX: 0, panY: 0, zoom: 1 };
}

/**
 * Projects the fetched network into screen space. Pure: same document,
 * camera and selection in, same scene out. Every item and link in the
 * document yields exactly one scene node / link.
 */
export function buildScene(
  network: VosNetwork,
  width: number,
  height: number,
  camera: Camera,
  selectedCluster: number | null = null,
): Scene {
  const items = network.items;
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  let maxStrength = 0;
  for (const it of items) {
    minX = Math.min(minX, it.x);
    maxX = Math.max(maxX, it.x);
    minY = Math.min(minY, it.y);
    maxY = Math.max(maxY, it.y);
    maxStrength = Math.max(maxStrength, it.weights["Total link strength"] ?? 0);
  }
  if (items.length === 0) return { nodes: [], links: [], width, height };

  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  const span = Math.max(maxX - minX, maxY - minY, 1e-9);
  const fit = (0.85 * Math.min(width, height)) / span;
  const scale = fit * camera.zoom;

  const project = (x: number, y: number): [number, number] => [
    (x - cx) * scale + width / 2 + camera.panX,
    (y - cy) * scale + height / 2 + camera.panY,
  ];

  const nodes: SceneNode[] = items.map((it) => {
    const [sx, sy] = project(it.x, it.y);
    const strength = it.weights["Total link strength"] ?? 0;
    const frac = maxStrength > 0 ? strength / maxStrength : 0;
    return {
      id: it.id,
      label: it.label,
      x: sx,
      y: sy,
      radius: MIN_RADIUS + frac * (MAX_RADIUS - MIN_RADIUS),
      color: clusterColor(it.cluster),
      cluster: it.cluster,
      dimmed: selectedCluster !== null && it.cluster !== selectedCluster,
    };
  });

  const byId = new Map(nodes.map((n) => [n.id, n]));
  const maxLink = network.links.reduce((m, l) => Math.max(m, l.strength), 0);
  const links: SceneLink[] = network.links.map((l) => {
    const a = byId.get(l.source_id)!;
    const b = byId.get(l.target_id)!;
    return {
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      width: 0.5 + (maxLink > 0 ? (2.5 * l.strength) / maxLink : 0),
      dimmed: a.dimmed || b.dimmed,
    };
  });

  return { nodes, links, width, height };
}

/** Topmost node under the cursor, or null. Later nodes draw on top. */
export function hitTest(scene: Scene, x: number, y: number): SceneNode | null {
  for (let i = scene.nodes.length - 1; i >= 0; i--) {
    const n = scene.nodes[i];
    const dx = x - n.x;
    const dy = y - n.y;
    if (dx * dx + dy * dy <= n.radius * n.radius) return n;
  }
  return null;
}
