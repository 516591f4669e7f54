/** View state and the pure render function.
 *
 * The DOM is a function of the state alone: rendering the same state twice
 * produces identical markup (the snapshot tests replay recorded server
 * responses through here).  All mutation goes through the app's action
 * methods, each of which calls exactly one service endpoint.
 */

import { renderGraph, type ViewTransform } from "./graphView.js";
import { layout, type Point } from "./layout.js";
import { hypothesisPanel, queryPanel, selectionPanel, type PanelCallbacks } from "./panels.js";
import type { GraphDoc, HypothesisItem, Method, RelevanceInfo } from "./types.js";

export interface ViewState {
  sessionId: string | null;
  queryText: string;
  method: Method;
  supported: boolean;
  supportMessage: string;
  graph: GraphDoc | null;
  relevance: RelevanceInfo | null;
  hypotheses: HypothesisItem[] | null;
  exhausted: boolean;
  selectedNode: string | null;
  selectedClasses: string[];
  k: number;
  maxClasses: number;
  pending: string[];
  status: string;
  busy: boolean;
  positions: Map<string, Point> | null;
  transform: ViewTransform;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    queryText: "",
    method: "small_model",
    supported: false,
    supportMessage: "no missing entailment specified",
    graph: null,
    relevance: null,
    hypotheses: null,
    exhausted: false,
    selectedNode: null,
    selectedClasses: [],
    k: 3,
    maxClasses: 8,
    pending: [],
    status: "",
    busy: false,
    positions: null,
    transform: { scale: 1, tx: 0, ty: 0 },
  };
}

export interface Callbacks extends PanelCallbacks {
  onSelectNode(id: string): void;
  onDragNode(id: string, x: number, y: number): void;
  onPanZoom(transform: ViewTransform): void;
}

export function ensurePositions(state: ViewState): Map<string, Point> {
  if (!state.graph) return new Map();
  if (!state.positions) state.positions = layout(state.graph);
  return state.positions;
}

export function render(state: ViewState, callbacks: Callbacks): HTMLElement {
  const root = document.createElement("div");
  root.className = "missing-why-app";
  root.appendChild(queryPanel(state, callbacks));

  const main = document.createElement("div");
  main.className = "main-view";
  if (state.graph) {
    const graphWrap = document.createElement("div");
    graphWrap.className = "graph-wrap";
    graphWrap.appendChild(
      renderGraph(
        state.graph,
        ensurePositions(state),
        state.k,
        state.selectedNode,
        state.transform,
        callbacks
      )
    );
    if (state.relevance) {
      const info = document.createElement("p");
      info.className = "relevance-info";
      const conditions = state.relevance.conditions.length
        ? ` conditions: ${state.relevance.conditions.join(", ")}`
        : "";
      info.textContent =
        `${state.relevance.mode}-relevant part, witness ${state.relevance.witness}` +
        (state.relevance.contrast ? `, contrast ${state.relevance.contrast}` : "") +
        conditions;
      graphWrap.appendChild(info);
    }
    main.appendChild(graphWrap);
    main.appendChild(selectionPanel(state, callbacks));
  }
  if (state.hypotheses) {
    main.appendChild(hypothesisPanel(state, callbacks));
  }
  if (!state.graph && !state.hypotheses) {
    const empty = document.createElement("p");
    empty.className = "empty-view";
    empty.textContent = "no explanation yet";
    main.appendChild(empty);
  }
  root.appendChild(main);
  return root;
}
