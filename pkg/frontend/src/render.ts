import { Scene, SceneNode } from "./scene";

/** Paints a scene onto a 2D canvas. Links first so nodes sit on top. */
export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  hovered: SceneNode | null = null,
): void {
  ctx.clearRect(0, 0, scene.width, scene.height);

  for (const link of scene.links) {
    ctx.globalAlpha = link.dimmed ? 0.08 : 0.35;
    ctx.strokeStyle = "#888888";
    ctx.lineWidth = link.width;
    ctx.beginPath();
    ctx.moveTo(link.x1, link.y1);
    ctx.lineTo(link.x2, link.y2);
    ctx.stroke();
  }

  for (const node of scene.nodes) {
    ctx.globalAlpha = node.dimmed ? 0.15 : 1;
    ctx.fillStyle = node.color;
    ctx.beginPath();
    ctx.arc(node.x, node.y, node.radius, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.globalAlpha = 1;

  if (hovered) {
    ctx.font = "12px sans-serif";
    const text = hovered.label || hovered.id;
    const pad = 4;
    const w = ctx.measureText(text).width;
    const tx = hovered.x + hovered.radius + 6;
    const ty = hovered.y - 8;
    ctx.fillStyle = "rgba(255,255,255,0.9)";
    ctx.fillRect(tx - pad, ty - 12, w + 2 * pad, 18);
    ctx.fillStyle = "#222222";
    ctx.fillText(text, tx, ty);
  }
}
