/** The application shell: state + service client + re-render on change.
 *
 * Every user-facing mutation maps to exactly one endpoint call; the ontology
 * is never edited client-side.  Action methods are public so the integration
 * test can drive the same code paths the buttons use.
 */

import { ApiError, Client } from "./api.js";
import type { ViewTransform } from "./graphView.js";
import { initialState, render, type Callbacks, type ViewState } from "./state.js";
import type { ExplainResponse, Method } from "./types.js";

export class App {
  state: ViewState = initialState();

  constructor(
    private container: HTMLElement,
    private client: Client
  ) {
    this.redraw();
  }

  redraw(): void {
    const callbacks: Callbacks = {
      onQueryInput: (text) => void this.setQuery(text),
      onMethodChange: (method) => void this.setMethod(method),
      onGenerate: () => void this.generate(),
      onCancel: () => void this.cancel(),
      onSlider: (k) => this.setSlider(k),
      onSelectNode: (id) => this.selectNode(id),
      onToggleClass: (name) => this.toggleClass(name),
      onAddDisjointness: () => void this.addDisjointness(),
      onRemoveDisjointness: (index) => void this.removeDisjointness(index),
      onRecompute: () => void this.recompute(),
      onApplyAll: () => void this.applyAll(),
      onGenerateMore: () => void this.generate(),
      onAddHypothesis: (index) => void this.addHypothesis(index),
      onExplainHypothesis: (index) => this.explainHypothesis(index),
      onDeleteHypotheses: () => void this.deleteHypotheses(),
      onDragNode: (id, x, y) => this.dragNode(id, x, y),
      onPanZoom: (transform) => this.panZoom(transform),
    };
    this.container.replaceChildren(render(this.state, callbacks));
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      this.state.status = `error [${error.code}]: ${error.message}`;
    } else {
      this.state.status = String(error);
    }
    this.state.busy = false;
    this.redraw();
  }

  async start(ontologyText: string): Promise<void> {
    const created = await this.client.createSession(ontologyText);
    this.state.sessionId = created.id;
    this.state.status = "session created";
    this.redraw();
  }

  async setQuery(text: string): Promise<void> {
    this.state.queryText = text;
    if (!this.state.sessionId || !text.trim()) return;
    try {
      await this.client.setQuery(this.state.sessionId, [text.trim()]);
      const support = await this.client.support(this.state.sessionId, this.state.method);
      this.state.supported = support.supported;
      this.state.supportMessage = support.message;
    } catch (error) {
      if (error instanceof ApiError) {
        this.state.supported = false;
        this.state.supportMessage = error.message;
      } else {
        throw error;
      }
    }
    this.redraw();
  }

  async setMethod(method: Method): Promise<void> {
    this.state.method = method;
    if (!this.state.sessionId) return;
    const support = await this.client.support(this.state.sessionId, method);
    this.state.supported = support.supported;
    this.state.supportMessage = support.message;
    this.redraw();
  }

  private takeResult(response: ExplainResponse): void {
    this.state.status = response.progress.join(" | ");
    if (response.graph) {
      this.state.graph = response.graph;
      this.state.relevance = response.relevance ?? null;
      this.state.hypotheses = null;
      this.state.positions = null; // fresh layout for a fresh model
      const known = new Set(response.graph.nodes.map((n) => n.id));
      if (!this.state.selectedNode || !known.has(this.state.selectedNode)) {
        this.state.selectedNode = response.graph.nodes[0]?.id ?? null;
        this.state.selectedClasses = [];
      }
      this.state.maxClasses = Math.max(
        1,
        ...response.graph.nodes.map((n) => n.allClasses.length)
      );
      this.state.k = Math.min(this.state.k, this.state.maxClasses);
    } else {
      this.state.hypotheses = response.hypotheses ?? [];
      this.state.exhausted = response.exhausted ?? false;
      this.state.graph = null;
      this.state.relevance = null;
    }
  }

  async generate(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.busy = true;
    this.state.status = "computing...";
    this.redraw();
    try {
      const response = await this.client.explain(this.state.sessionId, this.state.method);
      this.takeResult(response);
    } catch (error) {
      this.fail(error);
      return;
    }
    this.state.busy = false;
    this.redraw();
  }

  async cancel(): Promise<void> {
    if (!this.state.sessionId) return;
    await this.client.cancel(this.state.sessionId);
  }

  setSlider(k: number): void {
    this.state.k = k;
    this.redraw();
  }

  selectNode(id: string): void {
    this.state.selectedNode = id;
    this.state.selectedClasses = [];
    this.redraw();
  }

  toggleClass(name: string): void {
    const selected = this.state.selectedClasses;
    this.state.selectedClasses = selected.includes(name)
      ? selected.filter((n) => n !== name)
      : [...selected, name];
    this.redraw();
  }

  async addDisjointness(): Promise<void> {
    if (!this.state.sessionId || this.state.selectedClasses.length < 2) return;
    try {
      const response = await this.client.addDisjointness(
        this.state.sessionId,
        this.state.selectedClasses
      );
      this.state.pending = response.pending;
      this.state.selectedClasses = [];
    } catch (error) {
      this.fail(error);
      return;
    }
    this.redraw();
  }

  async removeDisjointness(index: number): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const response = await this.client.removeDisjointness(this.state.sessionId, index);
      this.state.pending = response.pending;
    } catch (error) {
      this.fail(error);
      return;
    }
    this.redraw();
  }

  async recompute(): Promise<void> {
    if (!this.state.sessionId) return;
    this.state.busy = true;
    this.redraw();
    try {
      const response = await this.client.recompute(this.state.sessionId, this.state.method);
      this.takeResult(response);
    } catch (error) {
      this.fail(error);
      return;
    }
    this.state.busy = false;
    this.redraw();
  }

  async applyAll(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      await this.client.applyDisjointnesses(this.state.sessionId);
      this.state.pending = [];
      this.state.status = "disjointnesses added to the ontology";
    } catch (error) {
      this.fail(error);
      return;
    }
    this.redraw();
  }

  async addHypothesis(index: number): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      await this.client.applyHypothesis(this.state.sessionId, index);
      this.state.status = "hypothesis added to the ontology";
    } catch (error) {
      this.fail(error);
      return;
    }
    this.redraw();
  }

  explainHypothesis(index: number): void {
    const hypothesis = this.state.hypotheses?.[index];
    if (!hypothesis) return;
    const status =
      hypothesis.verified === true
        ? "the hypothesis makes the missing entailment follow (verified)"
        : hypothesis.verified === false
          ? "the hypothesis does not repair the entailment"
          : "verification is not possible for this hypothesis";
    this.state.status = status;
    this.redraw();
  }

  async deleteHypotheses(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      await this.client.revert(this.state.sessionId);
      this.state.hypotheses = null;
      this.state.status = "changes reverted";
    } catch (error) {
      this.fail(error);
      return;
    }
    this.redraw();
  }

  dragNode(id: string, x: number, y: number): void {
    this.state.positions?.set(id, { x, y });
    this.redraw();
  }

  panZoom(transform: ViewTransform): void {
    this.state.transform = transform;
    this.redraw();
  }
}
