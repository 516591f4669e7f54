"""Ontology as an immutable TBox/ABox pair with stable axiom identity.

Axiom ids grow monotonically and never get reused, so applying a change and
reverting it restores a byte-identical serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .syntax import Axiom, is_assertion, render


@dataclass(frozen=True)
class Ontology:
    tbox: tuple[tuple[int, Axiom], ...]
    abox: tuple[tuple[int, Axiom], ...]
    next_id: int

    @staticmethod
    def from_axioms(axioms: Iterable[Axiom]) -> "Ontology":
        tbox = []
        abox = []
        next_id = 0
        for axiom in axioms:
            (abox if is_assertion(axiom) else tbox).append((next_id, axiom))
            next_id += 1
        return Ontology(tuple(tbox), tuple(abox), next_id)

    def add(self, axioms: Iterable[Axiom]) -> "Ontology":
        tbox = list(self.tbox)
        abox = list(self.abox)
        next_id = self.next_id
        for axiom in axioms:
            (abox if is_assertion(axiom) else tbox).append((next_id, axiom))
            next_id += 1
        return Ontology(tuple(tbox), tuple(abox), next_id)

    def remove(self, axiom_id: int) -> "Ontology":
        return Ontology(
            tuple(e for e in self.tbox if e[0] != axiom_id),
            tuple(e for e in self.abox if e[0] != axiom_id),
            self.next_id,
        )

    def axioms(self) -> list[Axiom]:
        """All axioms in document order (by id across TBox and ABox)."""
        return [a for _, a in sorted(self.tbox + self.abox)]

    def tbox_axioms(self) -> list[Axiom]:
        return [a for _, a in self.tbox]

    def abox_axioms(self) -> list[Axiom]:
        return [a for _, a in self.abox]

    def serialize(self) -> str:
        """Canonical document: one axiom per line in id order, LF endings."""
        return "".join(render(a) + "\n" for a in self.axioms())
