/** Side panels: query entry, selected-element classes with the disjointness
 * repair loop, and the pageable hypothesis list. */

import { METHODS, type HypothesisItem, type Method } from "./types.js";
import type { ViewState } from "./state.js";

export interface PanelCallbacks {
  onQueryInput(text: string): void;
  onMethodChange(method: Method): void;
  onGenerate(): void;
  onCancel(): void;
  onSlider(k: number): void;
  onToggleClass(name: string): void;
  onAddDisjointness(): void;
  onRemoveDisjointness(index: number): void;
  onRecompute(): void;
  onApplyAll(): void;
  onGenerateMore(): void;
  onAddHypothesis(index: number): void;
  onExplainHypothesis(index: number): void;
  onDeleteHypotheses(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export function queryPanel(state: ViewState, callbacks: PanelCallbacks): HTMLElement {
  const panel = el("section", { class: "panel query-panel" });
  panel.appendChild(el("h2", {}, "Missing entailment"));
  const input = el("input", {
    class: "query-input",
    type: "text",
    placeholder: "SubClassOf(:C :D)",
    value: state.queryText,
  });
  input.addEventListener("input", () => callbacks.onQueryInput(input.value));
  panel.appendChild(input);

  const select = el("select", { class: "method-select" });
  for (const method of METHODS) {
    const option = el("option", { value: method }, method);
    if (method === state.method) option.setAttribute("selected", "selected");
    select.appendChild(option);
  }
  select.addEventListener("change", () => callbacks.onMethodChange(select.value as Method));
  panel.appendChild(select);

  const generate = el("button", { class: "generate" }, "Generate explanation");
  if (!state.supported || state.busy) generate.setAttribute("disabled", "disabled");
  if (!state.supported) generate.setAttribute("title", state.supportMessage);
  generate.addEventListener("click", () => callbacks.onGenerate());
  panel.appendChild(generate);

  const cancel = el("button", { class: "cancel" }, "Cancel");
  if (!state.busy) cancel.setAttribute("disabled", "disabled");
  cancel.addEventListener("click", () => callbacks.onCancel());
  panel.appendChild(cancel);

  if (!state.supported && state.supportMessage) {
    panel.appendChild(el("p", { class: "support-message" }, state.supportMessage));
  }
  panel.appendChild(el("p", { class: "status-line" }, state.status));
  return panel;
}

export function selectionPanel(state: ViewState, callbacks: PanelCallbacks): HTMLElement {
  const panel = el("section", { class: "panel selection-panel" });

  panel.appendChild(el("h2", {}, "Number of displayed classes"));
  const slider = el("input", {
    class: "class-slider",
    type: "range",
    min: "0",
    max: String(state.maxClasses),
    value: String(state.k),
  });
  slider.addEventListener("input", () => callbacks.onSlider(Number(slider.value)));
  panel.appendChild(slider);
  panel.appendChild(el("span", { class: "slider-value" }, String(state.k)));

  panel.appendChild(el("h2", {}, "Classes of selected element"));
  const list = el("ul", { class: "selected-classes" });
  const selectedNode = state.graph?.nodes.find((n) => n.id === state.selectedNode);
  if (selectedNode) {
    for (const name of selectedNode.allClasses) {
      const item = el("li", {});
      const label = el("label", {});
      const checkbox = el("input", { type: "checkbox", value: name });
      if (state.selectedClasses.includes(name)) checkbox.setAttribute("checked", "checked");
      checkbox.addEventListener("change", () => callbacks.onToggleClass(name));
      label.appendChild(checkbox);
      label.appendChild(document.createTextNode(" " + name));
      item.appendChild(label);
      list.appendChild(item);
    }
  } else {
    list.appendChild(el("li", { class: "placeholder" }, "select a node"));
  }
  panel.appendChild(list);

  const add = el("button", { class: "add-disjointness" }, "Add disjointnesses");
  if (state.selectedClasses.length < 2) add.setAttribute("disabled", "disabled");
  add.addEventListener("click", () => callbacks.onAddDisjointness());
  panel.appendChild(add);

  panel.appendChild(el("h2", {}, "Disjointnesses"));
  const pending = el("ol", { class: "pending-disjointnesses" });
  state.pending.forEach((entry, index) => {
    const item = el("li", {}, entry + " ");
    const remove = el("button", { class: "remove-disjointness" }, "Remove");
    remove.addEventListener("click", () => callbacks.onRemoveDisjointness(index));
    item.appendChild(remove);
    pending.appendChild(item);
  });
  panel.appendChild(pending);

  const recompute = el("button", { class: "recompute" }, "Recompute example");
  if (state.busy || !state.graph) recompute.setAttribute("disabled", "disabled");
  recompute.addEventListener("click", () => callbacks.onRecompute());
  panel.appendChild(recompute);

  const applyAll = el("button", { class: "apply-all" }, "Add all to ontology");
  if (state.pending.length === 0) applyAll.setAttribute("disabled", "disabled");
  applyAll.addEventListener("click", () => callbacks.onApplyAll());
  panel.appendChild(applyAll);

  return panel;
}

export function hypothesisPanel(state: ViewState, callbacks: PanelCallbacks): HTMLElement {
  const panel = el("section", { class: "panel hypothesis-panel" });
  panel.appendChild(el("h2", {}, "Hypotheses"));
  const list = el("ol", { class: "hypothesis-list" });
  (state.hypotheses ?? []).forEach((hypothesis: HypothesisItem, index: number) => {
    const item = el("li", { class: "hypothesis" });
    item.appendChild(el("code", {}, hypothesis.axioms.join("  ")));
    const badgeText =
      hypothesis.verified === true
        ? "verified"
        : hypothesis.verified === false
          ? "does not repair"
          : "unverifiable";
    item.appendChild(el("span", { class: `badge ${badgeText.split(" ")[0]}` }, badgeText));

    const add = el("button", { class: "add-hypothesis" }, "Add");
    if (hypothesis.verified === null) {
      add.setAttribute("disabled", "disabled");
      add.setAttribute(
        "title",
        "cannot be verified: uses constructs outside the ontology language"
      );
    }
    add.addEventListener("click", () => callbacks.onAddHypothesis(index));
    item.appendChild(add);

    const explain = el("button", { class: "explain-hypothesis" }, "Explain");
    explain.addEventListener("click", () => callbacks.onExplainHypothesis(index));
    item.appendChild(explain);

    const remove = el("button", { class: "delete-hypothesis" }, "Delete");
    remove.addEventListener("click", () => callbacks.onDeleteHypotheses());
    item.appendChild(remove);
    list.appendChild(item);
  });
  panel.appendChild(list);

  const more = el("button", { class: "generate-more" }, "Generate more");
  if (state.busy || state.exhausted) more.setAttribute("disabled", "disabled");
  more.addEventListener("click", () => callbacks.onGenerateMore());
  panel.appendChild(more);
  if (state.exhausted) {
    panel.appendChild(el("p", { class: "exhausted" }, "no further hypotheses"));
  }
  return panel;
}
