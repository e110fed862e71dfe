/** Shapes of bundle.json, schema version 1. */

export type Side = "as" | "ad" | "Other";
export type EdgeKind = "derivative" | "common_part" | "perspective";
export type ResourceKind = "video" | "text" | "audio";

export interface Resource {
  kind: ResourceKind;
  url: string;
  label: string;
}

export interface BundleNode {
  id: string;
  title: string;
  side: Side;
  pos: [number, number];
  chapters: number[];
  symbols: string[];
  resources: Resource[];
  note: string | null;
}

export interface BundleEdge {
  from: string;
  to: string;
  kind: EdgeKind;
  note: string | null;
}

export interface GlossaryEntry {
  key: string;
  meaning: string;
}

export interface BundleGraph {
  title: string;
  sink_id: string;
  meta: Record<string, string>;
  nodes: BundleNode[];
  edges: BundleEdge[];
  glossary: GlossaryEntry[];
}

export interface HighlightEntry {
  origin: string;
  node_ids: string[];
  edge_indices: number[];
}

export interface Bundle {
  schema_version: number;
  generated_note: string;
  graph: BundleGraph;
  highlights: Record<string, HighlightEntry>;
  stats: Record<string, unknown>;
}

export interface ViewerConfig {
  hover_delay_ms: number;
  show_edge_notes: boolean;
  palette?: Partial<Record<Side | EdgeKind, string>>;
}

export const DEFAULT_CONFIG: ViewerConfig = {
  hover_delay_ms: 5000,
  show_edge_notes: true,
};
