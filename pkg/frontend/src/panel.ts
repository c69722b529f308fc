import { VosNetwork } from "./types";

export interface ClusterDetail {
  cluster: number;
  name: string;
  size: number;
  citationScore: number | null;
  topTopics: string[];
}

/**
 * Detail view data for one community: display name ("(unlabeled)" when the
 * service returned an empty label), member count, citation score, and the
 * member topics ranked by total link strength.
 */
export function clusterDetail(network: VosNetwork, cluster: number): ClusterDetail {
  const members = network.items.filter((it) => it.cluster === cluster);
  const entry = network.clusters.find((c) => c.cluster === cluster);
  const name = entry && entry.label !== "" ? entry.label : "(unlabeled)";
  let score: number | null = null;
  for (const it of members) {
    const s = it.scores?.["Citation score"];
    if (s !== undefined) {
      score = s;
      break;
    }
  }
  const ranked = [...members].sort((a, b) => {
    const wa = a.weights["Total link strength"] ?? 0;
    const wb = b.weights["Total link strength"] ?? 0;
    return wb - wa || a.label.localeCompare(b.label);
  });
  return {
    cluster,
    name,
    size: members.length,
    citationScore: score,
    topTopics: ranked.slice(0, 5).map((it) => it.label),
  };
}

export function renderPanel(el: HTMLElement, detail: ClusterDetail | null): void {
  if (!detail) {
    el.innerHTML = "";
    el.hidden = true;
    return;
  }
  el.hidden = false;
  const score =
    detail.citationScore === null ? "n/a" : detail.citationScore.toFixed(2);
  const topics = detail.topTopics
    .map((t) => `<li>${escapeHtml(t)}</li>`)
    .join("");
  el.innerHTML = `
    <h3 class="cluster-name">${escapeHtml(detail.name)}</h3>
    <dl>
      <dt>Members</dt><dd class="cluster-size">${detail.size}</dd>
      <dt>Citation score</dt><dd class="cluster-score">${score}</dd>
    </dl>
    <ol class="cluster-topics">${topics}</ol>
    <button class="deselect" type="button">Show full map</button>
  `;
}

function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
