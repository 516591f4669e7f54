"""Relevance-filtered fragments of canonical models.

Four successively finer views of why a plain-EL TBox fails to entail
``C ⊑ D``, all cut out of the canonical model:

* alpha: the witness element for C together with everything role-reachable
  from it;
* beta: alpha plus the part reachable from a representative element of D,
  so the user can contrast the two;
* delta: the beta part restricted to the structure illustrating contrasting
  conditions (concepts every D is forced into but C is not), plus the
  witness's own satisfaction structure for C and its outgoing edges for the
  roles those conditions start with;
* deltabar: delta with each condition generalized to the shallowest
  depth-truncation that still separates C, paths truncated to match.

The exact delta element sets are one faithful operationalization of the
published idea; the contract is the refinement chain and the witness
properties checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BottomInTBox, ExtendedSyntaxInCoreContext, IsEntailed
from .interpretation import Interpretation, extension
from .ontology import Ontology
from .reasoner import canonical_model, entails, probe_subsumed, subsumption_probe
from .syntax import (
    TOP,
    And,
    Axiom,
    Concept,
    Exists,
    Name,
    SubClassOf,
    is_core_axiom,
    is_core_concept,
    render,
    role_depth,
    signature_of,
    subconcepts,
    uses_bottom,
)


class RelevanceMode(Enum):
    ALPHA = "alpha"
    BETA = "beta"
    DELTA = "delta"
    DELTABAR = "deltabar"


@dataclass
class RelevantPart:
    mode: RelevanceMode
    interpretation: Interpretation
    witness: str
    contrast: str | None
    conditions: tuple[Concept, ...]


def _require_el(tbox: list[Axiom], *concepts: Concept) -> None:
    for axiom in tbox:
        if not is_core_axiom(axiom):
            raise ExtendedSyntaxInCoreContext(f"not a plain EL axiom: {render(axiom)}")
        if uses_bottom(axiom):
            raise BottomInTBox(
                "relevant counterexamples need a bottom-free TBox: " + render(axiom)
            )
    for c in concepts:
        if not is_core_concept(c):
            raise ExtendedSyntaxInCoreContext(f"not a plain EL concept: {render(c)}")
        if uses_bottom(c):
            raise BottomInTBox("owl:Nothing cannot appear in this query")


def _reachable(interp: Interpretation, start: str) -> set[str]:
    seen = {start}
    frontier = [start]
    while frontier:
        element = frontier.pop()
        for s, _, t in interp.roles:
            if s == element and t not in seen:
                seen.add(t)
                frontier.append(t)
    return seen


def _sub_interpretation(
    interp: Interpretation, elements: set[str], edges: set | None, marked: str
) -> Interpretation:
    kept = tuple(e for e in interp.elements if e in elements)
    if edges is None:
        roles = tuple(t for t in interp.roles if t[0] in elements and t[2] in elements)
    else:
        roles = tuple(t for t in interp.roles if t in edges)
    return Interpretation(
        elements=kept,
        classes={e: interp.classes[e] for e in kept},
        roles=roles,
        marked=frozenset({marked}),
        element_origin={e: interp.element_origin.get(e, e) for e in kept},
    )


def _existential_prefix(concept: Concept) -> tuple[list[str], Concept]:
    roles: list[str] = []
    while isinstance(concept, Exists):
        roles.append(concept.role)
        concept = concept.filler
    return roles, concept


def _witness_structure(
    interp: Interpretation, element: str, concept: Concept
) -> tuple[set[str], set[tuple[str, str, str]]]:
    """A minimal deterministic substructure witnessing membership."""
    elements: set[str] = set()
    edges: set[tuple[str, str, str]] = set()

    def walk(at: str, c: Concept) -> None:
        if isinstance(c, And):
            for arg in c.args:
                walk(at, arg)
        elif isinstance(c, Exists):
            filler_ext = extension(interp, c.filler)
            for e in interp.elements:
                if (at, c.role, e) in set(interp.roles) and e in filler_ext:
                    elements.add(e)
                    edges.add((at, c.role, e))
                    walk(e, c.filler)
                    return

    elements.add(element)
    walk(element, concept)
    return elements, edges


def _witness_path(
    interp: Interpretation, element: str, concept: Concept
) -> tuple[list[tuple[str, str, str]], set[str], set[tuple[str, str, str]]]:
    """Witness of ``element ∈ concept``: the existential-prefix spine plus
    the body's witness structure at the spine's tail."""
    spine: list[tuple[str, str, str]] = []
    elements = {element}
    edges: set[tuple[str, str, str]] = set()
    at = element
    roles, body = _existential_prefix(concept)
    role_set = set(interp.roles)
    for i, role in enumerate(roles):
        remainder: Concept = body
        for r in reversed(roles[i + 1 :]):
            remainder = Exists(r, remainder)
        remainder_ext = extension(interp, remainder)
        nxt = next(
            (e for e in interp.elements if (at, role, e) in role_set and e in remainder_ext),
            None,
        )
        if nxt is None:
            return spine, elements, edges
        spine.append((at, role, nxt))
        elements.add(nxt)
        edges.add((at, role, nxt))
        at = nxt
    body_elements, body_edges = _witness_structure(interp, at, body)
    elements |= body_elements
    edges |= body_edges
    return spine, elements, edges


def contrasting_conditions(tbox: list[Axiom], c: Concept, d: Concept) -> list[Concept]:
    """Concepts that every D must satisfy but some C need not.

    The candidate pool is every concept name plus existential chains over
    them (and owl:Thing), up to the role depth occurring in the TBox and D.
    """
    _require_el(tbox, c, d)
    ont = Ontology.from_axioms(tbox)
    if entails(ont, SubClassOf(c, d)):
        raise IsEntailed(f"{render(c)} is subsumed by {render(d)}")
    sig = signature_of(list(tbox) + [SubClassOf(c, d)])
    names = sorted(sig.concepts)
    roles = sorted(sig.roles)
    depth_cap = max(
        (role_depth(s) for s in subconcepts(list(tbox) + [d])), default=0
    )
    pool: list[Concept] = [Name(n) for n in names]
    layer: list[Concept] = pool + [TOP]
    for _ in range(depth_cap):
        layer = [Exists(r, f) for r in roles for f in layer]
        pool.extend(layer)
    pool = sorted(set(pool), key=lambda e: (role_depth(e), render(e)))
    index, reps = subsumption_probe(tbox, [c, d] + pool)
    return [
        e
        for e in pool
        if probe_subsumed(index, reps, d, e) and not probe_subsumed(index, reps, c, e)
    ]


def generalize_condition(tbox: list[Axiom], c: Concept, e: Concept) -> Concept:
    """Shallowest depth-truncation of ``e`` still not entailed for ``c``."""
    _require_el(tbox, c, e)
    ont = Ontology.from_axioms(tbox)
    roles, _ = _existential_prefix(e)
    candidates: list[Concept] = []
    for depth in range(1, len(roles)):
        truncated: Concept = TOP
        for r in reversed(roles[:depth]):
            truncated = Exists(r, truncated)
        candidates.append(truncated)
    candidates.append(e)
    for candidate in candidates:
        if not entails(ont, SubClassOf(c, candidate)):
            return candidate
    raise IsEntailed(f"{render(c)} is subsumed even by {render(e)}")


def extract_relevant_part(
    tbox: list[Axiom], query: SubClassOf, mode: RelevanceMode
) -> RelevantPart:
    """Cut the mode's fragment out of the canonical model for the query."""
    if not isinstance(query, SubClassOf):
        raise TypeError("relevant counterexamples explain a single SubClassOf axiom")
    c, d = query.sub, query.sup
    _require_el(tbox, c, d)
    if entails(Ontology.from_axioms(tbox), query):
        raise IsEntailed(f"{render(c)} is subsumed by {render(d)}")

    if mode is RelevanceMode.ALPHA:
        model = canonical_model(tbox, [c])
        witness = render(c)
        keep = _reachable(model, witness)
        return RelevantPart(mode, _sub_interpretation(model, keep, None, witness), witness, None, ())

    model = canonical_model(tbox, [c, d])
    witness, contrast = render(c), render(d)
    if mode is RelevanceMode.BETA:
        keep = _reachable(model, witness) | _reachable(model, contrast)
        return RelevantPart(
            mode, _sub_interpretation(model, keep, None, witness), witness, contrast, ()
        )

    conditions = contrasting_conditions(tbox, c, d)
    if mode is RelevanceMode.DELTABAR:
        generalized = [generalize_condition(tbox, c, e) for e in conditions]
    else:
        generalized = list(conditions)

    elements = {witness, contrast}
    edges: set[tuple[str, str, str]] = set()
    wit_elements, wit_edges = _witness_structure(model, witness, c)
    elements |= wit_elements
    edges |= wit_edges
    role_set = set(model.roles)
    for original, shown in zip(conditions, generalized):
        spine, path_elements, path_edges = _witness_path(model, contrast, original)
        if mode is RelevanceMode.DELTABAR and shown != original:
            depth = len(_existential_prefix(shown)[0])
            kept_spine = spine[:depth]
            path_elements = {contrast} | {t for (_, _, t) in kept_spine}
            path_edges = set(kept_spine)
        elements |= path_elements
        edges |= path_edges
        prefix_roles, _ = _existential_prefix(original)
        if prefix_roles:
            first = prefix_roles[0]
            for s, r, t in model.roles:
                if s == witness and r == first:
                    elements.add(t)
                    edges.add((s, r, t))
    shown_conditions = tuple(
        sorted(set(generalized), key=lambda e: (role_depth(e), render(e)))
    )
    return RelevantPart(
        mode,
        _sub_interpretation(model, elements, edges, witness),
        witness,
        contrast,
        shown_conditions,
    )
