// Cluster colors are a pure function of the cluster id, so the same query
// with the same seed always paints the same map. Palette cycles for maps
// with more than 12 communities.

const PALETTE = [
  "#d62728",
  "#1f77b4",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#e377c2",
  "#17becf",
  "#bcbd22",
  "#7f7f7f",
  "#aec7e8",
  "#98df8a",
];

export function clusterColor(cluster: number): string {
  if (!Number.isInteger(cluster) || cluster < 1) return "#cccccc";
  return PALETTE[(cluster - 1) % PALETTE.length];
}
