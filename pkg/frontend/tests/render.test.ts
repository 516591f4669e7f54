/** DOM snapshots from recorded server responses.
 *
 * Rendering is a pure function of the view state, so replaying the same
 * fixture must reproduce the identical DOM structure.
 */

// @vitest-environment jsdom

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { initialState, render, type Callbacks, type ViewState } from "../src/state.js";
import { layout } from "../src/layout.js";
import type { ExplainResponse } from "../src/types.js";

function fixture(name: string): ExplainResponse {
  return JSON.parse(
    readFileSync(join(__dirname, "fixtures", name), "utf-8")
  ) as ExplainResponse;
}

const noop: Callbacks = {
  onQueryInput: () => {},
  onMethodChange: () => {},
  onGenerate: () => {},
  onCancel: () => {},
  onSlider: () => {},
  onSelectNode: () => {},
  onToggleClass: () => {},
  onAddDisjointness: () => {},
  onRemoveDisjointness: () => {},
  onRecompute: () => {},
  onApplyAll: () => {},
  onGenerateMore: () => {},
  onAddHypothesis: () => {},
  onExplainHypothesis: () => {},
  onDeleteHypotheses: () => {},
  onDragNode: () => {},
  onPanZoom: () => {},
};

function stateFromGraphFixture(name: string, k = 3): ViewState {
  const response = fixture(name);
  const state = initialState();
  state.sessionId = "fixture";
  state.supported = true;
  state.queryText = "SubClassOf(:SpicyAnalogue :SpicyTarget)";
  state.graph = response.graph ?? null;
  state.k = k;
  state.selectedNode = response.graph?.nodes[0]?.id ?? null;
  state.status = response.progress.join(" | ");
  return state;
}

describe("graph rendering", () => {
  it("renders the recorded small-model response deterministically", () => {
    const first = render(stateFromGraphFixture("explain_small_model.json"), noop);
    const second = render(stateFromGraphFixture("explain_small_model.json"), noop);
    expect(first.outerHTML).toBe(second.outerHTML);
    expect(first.outerHTML).toMatchSnapshot();
  });

  it("marks exactly the root node", () => {
    const root = render(stateFromGraphFixture("explain_small_model.json"), noop);
    const marked = root.querySelectorAll("g.node.marked");
    expect(marked).toHaveLength(1);
    expect(marked[0].getAttribute("data-id")).toBe("e0");
  });

  it("truncates labels to the slider prefix", () => {
    const wide = render(stateFromGraphFixture("explain_small_model.json", 3), noop);
    const narrow = render(stateFromGraphFixture("explain_small_model.json", 1), noop);
    const spansFor = (el: HTMLElement, id: string) =>
      Array.from(el.querySelectorAll(`g.node[data-id="${id}"] tspan`)).map(
        (t) => t.textContent
      );
    const wideLabels = spansFor(wide, "e1");
    const narrowLabels = spansFor(narrow, "e1");
    expect(narrowLabels).toHaveLength(1);
    expect(wideLabels.slice(0, 1)).toEqual(narrowLabels);
  });

  it("renders the recomputed (split) model with one more node", () => {
    const before = stateFromGraphFixture("explain_small_model.json");
    const after = stateFromGraphFixture("recompute_split.json");
    expect(before.graph!.nodes).toHaveLength(2);
    expect(after.graph!.nodes).toHaveLength(3);
    const root = render(after, noop);
    expect(root.querySelectorAll("g.node")).toHaveLength(3);
    expect(root.outerHTML).toMatchSnapshot();
  });

  it("lists every class of the selected element in the side panel", () => {
    const state = stateFromGraphFixture("explain_small_model.json");
    state.selectedNode = "e1";
    const root = render(state, noop);
    const items = Array.from(root.querySelectorAll(".selected-classes li label")).map(
      (el) => el.textContent?.trim()
    );
    const node = state.graph!.nodes.find((n) => n.id === "e1")!;
    expect(items).toEqual(node.allClasses);
  });
});

describe("hypothesis rendering", () => {
  function stateFromHypotheses(name: string): ViewState {
    const response = fixture(name);
    const state = initialState();
    state.sessionId = "fixture";
    state.supported = true;
    state.hypotheses = response.hypotheses ?? [];
    state.exhausted = response.exhausted ?? false;
    return state;
  }

  it("renders the abduction fixture with an enabled Add button", () => {
    const root = render(stateFromHypotheses("abduction.json"), noop);
    const items = root.querySelectorAll("li.hypothesis");
    expect(items).toHaveLength(1);
    expect(items[0].querySelector("code")!.textContent).toBe("SubClassOf(:PepperT :SpicyT)");
    expect(items[0].querySelector("button.add-hypothesis")!.hasAttribute("disabled")).toBe(
      false
    );
    expect(root.outerHTML).toMatchSnapshot();
  });

  it("disables Add for unverifiable hypotheses with a tooltip", () => {
    const root = render(stateFromHypotheses("unravel.json"), noop);
    const buttons = Array.from(root.querySelectorAll("button.add-hypothesis"));
    const disabled = buttons.filter((b) => b.hasAttribute("disabled"));
    expect(disabled.length).toBeGreaterThan(0);
    expect(disabled[0].getAttribute("title")).toContain("cannot be verified");
  });

  it("pins the layout deterministically for the same document", () => {
    const doc = fixture("recompute_split.json").graph!;
    const a = layout(doc);
    const b = layout(doc);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });
});
