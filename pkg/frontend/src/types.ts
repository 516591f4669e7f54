/** Wire types of the explanation service; field names match the JSON exactly. */

export interface GraphNode {
  id: string;
  labels: string[];
  allClasses: string[];
  marked: boolean;
}

export interface GraphEdge {
  source: string;
  target: string;
  role: string;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface HypothesisItem {
  axioms: string[];
  verified: boolean | null;
  depth: number;
}

export interface RelevanceInfo {
  mode: string;
  witness: string;
  contrast: string | null;
  conditions: string[];
}

export interface ExplainResponse {
  method: string;
  progress: string[];
  graph?: GraphDoc;
  relevance?: RelevanceInfo;
  hypotheses?: HypothesisItem[];
  exhausted?: boolean;
}

export interface SupportResponse {
  supported: boolean;
  message: string;
}

export interface ServiceError {
  error: { code: string; message: string };
}

export type Method =
  | "small_model"
  | "relevant_alpha"
  | "relevant_beta"
  | "relevant_delta"
  | "relevant_deltabar"
  | "naive_abduction"
  | "unravel";

export const METHODS: Method[] = [
  "small_model",
  "relevant_alpha",
  "relevant_beta",
  "relevant_delta",
  "relevant_deltabar",
  "naive_abduction",
  "unravel",
];

export function isGraphDoc(value: unknown): value is GraphDoc {
  if (typeof value !== "object" || value === null) return false;
  const doc = value as GraphDoc;
  return (
    Array.isArray(doc.nodes) &&
    Array.isArray(doc.edges) &&
    doc.nodes.every(
      (n) =>
        typeof n.id === "string" &&
        Array.isArray(n.labels) &&
        Array.isArray(n.allClasses) &&
        typeof n.marked === "boolean"
    )
  );
}
