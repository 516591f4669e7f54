"""Finite interpretations and semantic model checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import ExtendedSyntaxInCoreContext, UnknownIndividual
from .syntax import (
    And,
    Axiom,
    Bottom,
    ClassAssertion,
    Concept,
    DisjointClasses,
    EquivalentClasses,
    Exists,
    Name,
    RoleAssertion,
    SubClassOf,
    Top,
    conj,
)


@dataclass(frozen=True, eq=True)
class Interpretation:
    """A finite model: elements, class extensions, role edges, marked elements.

    ``element_origin`` records where an element came from: the tableau
    individual name, or the rendered concept indexing a canonical-model
    element.  Element order is meaningful (export order, determinism).
    """

    elements: tuple[str, ...]
    classes: Mapping[str, frozenset[str]]
    roles: tuple[tuple[str, str, str], ...]
    marked: frozenset[str]
    element_origin: Mapping[str, str] = field(default_factory=dict)

    def successors(self, element: str, role: str) -> list[str]:
        return [t for (s, r, t) in self.roles if s == element and r == role]


def extension(interp: Interpretation, concept: Concept) -> frozenset[str]:
    """Evaluate a plain EL-with-bottom concept by structural recursion."""
    if isinstance(concept, Top):
        return frozenset(interp.elements)
    if isinstance(concept, Bottom):
        return frozenset()
    if isinstance(concept, Name):
        return frozenset(
            e for e in interp.elements if concept.name in interp.classes.get(e, frozenset())
        )
    if isinstance(concept, And):
        result = frozenset(interp.elements)
        for arg in concept.args:
            result &= extension(interp, arg)
        return result
    if isinstance(concept, Exists):
        if not isinstance(concept.role, str):
            raise ExtendedSyntaxInCoreContext("inverse roles cannot be model-checked")
        filler = extension(interp, concept.filler)
        return frozenset(s for (s, r, t) in interp.roles if r == concept.role and t in filler)
    raise ExtendedSyntaxInCoreContext(f"cannot evaluate extended concept {concept!r}")


def _element_for(interp: Interpretation, individual: str) -> str:
    for e in interp.elements:
        if interp.element_origin.get(e) == individual:
            return e
    raise UnknownIndividual(f"no element for individual {individual!r}")


def model_satisfies(interp: Interpretation, axiom: Axiom) -> bool:
    """Semantic evaluation of one axiom against a finite interpretation."""
    if isinstance(axiom, SubClassOf):
        return extension(interp, axiom.sub) <= extension(interp, axiom.sup)
    if isinstance(axiom, EquivalentClasses):
        exts = [extension(interp, c) for c in axiom.concepts]
        return all(e == exts[0] for e in exts[1:])
    if isinstance(axiom, DisjointClasses):
        concepts = axiom.concepts
        for i in range(len(concepts)):
            for j in range(i + 1, len(concepts)):
                if extension(interp, conj([concepts[i], concepts[j]])):
                    return False
        return True
    if isinstance(axiom, ClassAssertion):
        return _element_for(interp, axiom.individual) in extension(interp, axiom.concept)
    if isinstance(axiom, RoleAssertion):
        s = _element_for(interp, axiom.subject)
        t = _element_for(interp, axiom.target)
        return (s, axiom.role, t) in interp.roles
    raise TypeError(f"cannot evaluate {axiom!r}")
