"""Vocabulary-filtered graph documents for interpretations.

Node labels are ordered from more specific to less specific: a name is
suppressed when a strictly more specific retained name is present, survivors
are ranked by how many permitted names subsume them (more subsumers = more
specific), ties broken by text.  ``labels`` is the first k of that ranking;
``allClasses`` lists the survivors first and then the suppressed names, so
the label list is always a prefix and the selection panel still sees every
name the element belongs to.

The JSON shape is part of the wire contract: key order and field names are
fixed and tested byte-for-byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .interpretation import Interpretation
from .reasoner import probe_subsumed, subsumption_probe
from .syntax import Axiom, Name, Signature


@dataclass(frozen=True)
class GraphNode:
    id: str
    labels: tuple[str, ...]
    all_classes: tuple[str, ...]
    marked: bool


@dataclass(frozen=True)
class GraphEdge:
    source: str
    target: str
    role: str


@dataclass(frozen=True)
class GraphDoc:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]


def export_graph(
    interp: Interpretation,
    k: int,
    signature: Signature | None,
    tbox: list[Axiom],
) -> GraphDoc:
    """Project an interpretation onto the permitted vocabulary with ordered labels."""
    if k < 0:
        raise ValueError("label count must be non-negative")
    all_names = sorted({n for labels in interp.classes.values() for n in labels})
    if signature is not None:
        visible = [n for n in all_names if n in signature.concepts]
    else:
        visible = all_names
    probe_concepts = [Name(n) for n in visible]
    index, reps = subsumption_probe(tbox, probe_concepts)

    def strictly_subsumed(specific: str, general: str) -> bool:
        return probe_subsumed(index, reps, Name(specific), Name(general)) and not probe_subsumed(
            index, reps, Name(general), Name(specific)
        )

    subsumer_count = {
        n: sum(1 for m in visible if probe_subsumed(index, reps, Name(n), Name(m)))
        for n in visible
    }

    ids = {element: f"e{i}" for i, element in enumerate(interp.elements)}
    nodes = []
    for element in interp.elements:
        candidates = [n for n in visible if n in interp.classes.get(element, frozenset())]
        survivors = [
            n
            for n in candidates
            if not any(strictly_subsumed(other, n) for other in candidates if other != n)
        ]
        suppressed = [n for n in candidates if n not in survivors]
        order = lambda n: (-subsumer_count[n], n)
        survivors.sort(key=order)
        suppressed.sort(key=order)
        nodes.append(
            GraphNode(
                id=ids[element],
                labels=tuple(survivors[:k]),
                all_classes=tuple(survivors + suppressed),
                marked=element in interp.marked,
            )
        )

    edges = []
    for source, role, target in interp.roles:
        if signature is not None and role not in signature.roles:
            continue
        edges.append(GraphEdge(ids[source], ids[target], role))
    edges.sort(key=lambda e: (e.source, e.role, e.target))
    return GraphDoc(tuple(nodes), tuple(edges))


def graph_to_json(doc: GraphDoc) -> str:
    """Bit-exact wire form; key order is fixed."""
    payload = {
        "nodes": [
            {
                "id": n.id,
                "labels": list(n.labels),
                "allClasses": list(n.all_classes),
                "marked": n.marked,
            }
            for n in doc.nodes
        ],
        "edges": [
            {"source": e.source, "target": e.target, "role": e.role} for e in doc.edges
        ],
    }
    return json.dumps(payload, separators=(",", ":"))


def graph_to_dot(doc: GraphDoc) -> str:
    lines = ["digraph counterexample {"]
    for node in doc.nodes:
        label = "\\n".join(node.labels)
        attrs = f'label="{label}"'
        if node.marked:
            attrs += ", penwidth=3"
        lines.append(f"  {node.id} [{attrs}];")
    for edge in doc.edges:
        lines.append(f'  {edge.source} -> {edge.target} [label="{edge.role}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
