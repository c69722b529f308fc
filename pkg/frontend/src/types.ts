// Shapes mirror the JSON the map service returns. The UI never invents
// pipeline state of its own; everything below comes off the wire.

export interface VosItem {
  id: string;
  label: string;
  x: number;
  y: number;
  cluster: number;
  weights: { [name: string]: number };
  scores?: { [name: string]: number };
}

export interface VosLink {
  source_id: string;
  target_id: string;
  strength: number;
}

export interface VosCluster {
  cluster: number;
  label: string;
}

export interface VosNetwork {
  items: VosItem[];
  links: VosLink[];
  clusters: VosCluster[];
}

export interface VosDocument {
  network: VosNetwork;
}

export interface Diagnostics {
  seed: number;
  matched_docs: number;
  pre_filter_nodes: number;
  post_filter_nodes: number;
  edges: number;
  clusters: number;
  modularity: number;
}

export interface NetworkResponse {
  network: VosNetwork;
  diagnostics: Diagnostics;
}

export interface ViewState {
  query: string;
  model: string;
  maxNodes: number;
  seed: number | null;
  labeling: "off" | "fallback" | "llm";
  perimeterId: string | null;
  selectedCluster: number | null;
  lastDiagnostics: Diagnostics | null;
}

export function initialViewState(): ViewState {
  return {
    query: "",
    model: "topic",
    maxNodes: 300,
    seed: null,
    labeling: "fallback",
    perimeterId: null,
    selectedCluster: null,
    lastDiagnostics: null,
  };
}
