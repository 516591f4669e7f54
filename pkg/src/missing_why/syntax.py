"""Concept and axiom ASTs with canonical rendering and signature extraction.

Two layers share one class hierarchy:

* the plain EL-with-bottom core: ``Top``, ``Bottom``, ``Name``, ``And``,
  ``Exists`` over plain role names, and the five axiom kinds;
* the richer hypothesis syntax, which adds ``Or``, ``Nominal``, ``Inverse``
  roles, and least-fixpoint terms ``Mu``/``Var``.

Conjunctions and disjunctions are kept flattened, deduplicated and sorted by
their rendered text, so structural equality of the frozen dataclasses is
canonical equality.  Always build them through :func:`conj` / :func:`disj`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

TOP_TOKEN = "owl:Thing"
BOTTOM_TOKEN = "owl:Nothing"

#: user-visible names may never start with this prefix; the reasoner draws
#: fresh names from it and strips them from every exported label set
RESERVED_PREFIX = "_:"


# ---------------------------------------------------------------------------
# concepts


@dataclass(frozen=True)
class Concept:
    """Base class; concrete subclasses hold the data."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Concept):
    pass


@dataclass(frozen=True)
class Bottom(Concept):
    pass


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Name(Concept):
    name: str


@dataclass(frozen=True)
class Inverse:
    """Inverse role, hypothesis syntax only."""

    role: str


Role = Union[str, Inverse]


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    filler: Concept


@dataclass(frozen=True)
class And(Concept):
    args: tuple[Concept, ...]  # flattened, deduplicated, render-sorted, len >= 2


@dataclass(frozen=True)
class Or(Concept):
    args: tuple[Concept, ...]  # same invariants as And


@dataclass(frozen=True)
class Nominal(Concept):
    individual: str


@dataclass(frozen=True)
class Var(Concept):
    token: str


@dataclass(frozen=True)
class Mu(Concept):
    var: str
    body: Concept


def conj(args: Iterable[Concept]) -> Concept:
    """Canonical conjunction: flatten, dedupe, sort; collapse trivial arities."""
    flat: list[Concept] = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    uniq = sorted(set(flat), key=render)
    if not uniq:
        return TOP
    if len(uniq) == 1:
        return uniq[0]
    return And(tuple(uniq))


def disj(args: Iterable[Concept]) -> Concept:
    """Canonical disjunction; empty disjunction collapses to owl:Nothing."""
    flat: list[Concept] = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    uniq = sorted(set(flat), key=render)
    if not uniq:
        return BOTTOM
    if len(uniq) == 1:
        return uniq[0]
    return Or(tuple(uniq))


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class Axiom:
    __slots__ = ()


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: Concept
    sup: Concept


@dataclass(frozen=True)
class EquivalentClasses(Axiom):
    concepts: tuple[Concept, ...]  # user order preserved for round-tripping


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    concepts: tuple[Concept, ...]


@dataclass(frozen=True)
class ClassAssertion(Axiom):
    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    role: str
    subject: str
    target: str


def is_assertion(axiom: Axiom) -> bool:
    return isinstance(axiom, (ClassAssertion, RoleAssertion))


# ---------------------------------------------------------------------------
# canonical text


def _render_name(token: str) -> str:
    return ":" + token


def render_role(role: Role) -> str:
    if isinstance(role, Inverse):
        return f"ObjectInverseOf({_render_name(role.role)})"
    return _render_name(role)


def render(entity) -> str:
    """Deterministic canonical text; ``parse(render(x)) == x`` for every AST."""
    if isinstance(entity, Top):
        return TOP_TOKEN
    if isinstance(entity, Bottom):
        return BOTTOM_TOKEN
    if isinstance(entity, Name):
        return _render_name(entity.name)
    if isinstance(entity, And):
        return "ObjectIntersectionOf(" + " ".join(render(a) for a in entity.args) + ")"
    if isinstance(entity, Or):
        return "ObjectUnionOf(" + " ".join(render(a) for a in entity.args) + ")"
    if isinstance(entity, Exists):
        return f"ObjectSomeValuesFrom({render_role(entity.role)} {render(entity.filler)})"
    if isinstance(entity, Nominal):
        return f"ObjectOneOf({_render_name(entity.individual)})"
    if isinstance(entity, Var):
        return entity.token
    if isinstance(entity, Mu):
        return f"Mu({entity.var} {render(entity.body)})"
    if isinstance(entity, SubClassOf):
        return f"SubClassOf({render(entity.sub)} {render(entity.sup)})"
    if isinstance(entity, EquivalentClasses):
        return "EquivalentClasses(" + " ".join(render(c) for c in entity.concepts) + ")"
    if isinstance(entity, DisjointClasses):
        return "DisjointClasses(" + " ".join(render(c) for c in entity.concepts) + ")"
    if isinstance(entity, ClassAssertion):
        return f"ClassAssertion({render(entity.concept)} {_render_name(entity.individual)})"
    if isinstance(entity, RoleAssertion):
        return (
            f"ObjectPropertyAssertion({_render_name(entity.role)} "
            f"{_render_name(entity.subject)} {_render_name(entity.target)})"
        )
    raise TypeError(f"cannot render {entity!r}")


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    concepts: frozenset[str]
    roles: frozenset[str]
    individuals: frozenset[str]

    @staticmethod
    def of(*name_sets) -> "Signature":
        c, r, i = name_sets if name_sets else (set(), set(), set())
        return Signature(frozenset(c), frozenset(r), frozenset(i))

    def issubset(self, other: "Signature") -> bool:
        return (
            self.concepts <= other.concepts
            and self.roles <= other.roles
            and self.individuals <= other.individuals
        )

    def union(self, other: "Signature") -> "Signature":
        return Signature(
            self.concepts | other.concepts,
            self.roles | other.roles,
            self.individuals | other.individuals,
        )


EMPTY_SIGNATURE = Signature(frozenset(), frozenset(), frozenset())


def _collect(entity, concepts: set, roles: set, individuals: set) -> None:
    if isinstance(entity, (Top, Bottom, Var)):
        return
    if isinstance(entity, Name):
        concepts.add(entity.name)
    elif isinstance(entity, (And, Or)):
        for a in entity.args:
            _collect(a, concepts, roles, individuals)
    elif isinstance(entity, Exists):
        role = entity.role
        roles.add(role.role if isinstance(role, Inverse) else role)
        _collect(entity.filler, concepts, roles, individuals)
    elif isinstance(entity, Nominal):
        individuals.add(entity.individual)
    elif isinstance(entity, Mu):
        _collect(entity.body, concepts, roles, individuals)
    elif isinstance(entity, SubClassOf):
        _collect(entity.sub, concepts, roles, individuals)
        _collect(entity.sup, concepts, roles, individuals)
    elif isinstance(entity, (EquivalentClasses, DisjointClasses)):
        for c in entity.concepts:
            _collect(c, concepts, roles, individuals)
    elif isinstance(entity, ClassAssertion):
        individuals.add(entity.individual)
        _collect(entity.concept, concepts, roles, individuals)
    elif isinstance(entity, RoleAssertion):
        roles.add(entity.role)
        individuals.add(entity.subject)
        individuals.add(entity.target)
    else:
        raise TypeError(f"cannot extract signature from {entity!r}")


def signature_of(entity) -> Signature:
    """Exactly the names occurring syntactically; owl:Thing/owl:Nothing excluded.

    Accepts a concept, an axiom, an iterable of axioms, or anything exposing
    ``.axioms()`` (an ontology).
    """
    concepts: set[str] = set()
    roles: set[str] = set()
    individuals: set[str] = set()
    if hasattr(entity, "axioms"):
        entity = entity.axioms()
    if isinstance(entity, (Concept, Axiom)):
        _collect(entity, concepts, roles, individuals)
    else:
        for item in entity:
            _collect(item, concepts, roles, individuals)
    return Signature(frozenset(concepts), frozenset(roles), frozenset(individuals))


# ---------------------------------------------------------------------------
# fragment checks and small structural helpers


def is_core_concept(c: Concept) -> bool:
    """True for plain EL-with-bottom: no union, nominal, inverse or fixpoint."""
    if isinstance(c, (Top, Bottom, Name)):
        return True
    if isinstance(c, And):
        return all(is_core_concept(a) for a in c.args)
    if isinstance(c, Exists):
        return isinstance(c.role, str) and is_core_concept(c.filler)
    return False


def is_core_axiom(a: Axiom) -> bool:
    if isinstance(a, SubClassOf):
        return is_core_concept(a.sub) and is_core_concept(a.sup)
    if isinstance(a, (EquivalentClasses, DisjointClasses)):
        return all(is_core_concept(c) for c in a.concepts)
    if isinstance(a, ClassAssertion):
        return is_core_concept(a.concept)
    return isinstance(a, RoleAssertion)


def uses_bottom(entity) -> bool:
    """True if owl:Nothing occurs syntactically (disjointness counts via lowering)."""
    if isinstance(entity, Bottom):
        return True
    if isinstance(entity, (Top, Name, Nominal, Var)):
        return False
    if isinstance(entity, (And, Or)):
        return any(uses_bottom(a) for a in entity.args)
    if isinstance(entity, Exists):
        return uses_bottom(entity.filler)
    if isinstance(entity, Mu):
        return uses_bottom(entity.body)
    if isinstance(entity, SubClassOf):
        return uses_bottom(entity.sub) or uses_bottom(entity.sup)
    if isinstance(entity, DisjointClasses):
        return True
    if isinstance(entity, EquivalentClasses):
        return any(uses_bottom(c) for c in entity.concepts)
    if isinstance(entity, ClassAssertion):
        return uses_bottom(entity.concept)
    return False


def role_depth(c: Concept) -> int:
    if isinstance(c, (Top, Bottom, Name, Nominal, Var)):
        return 0
    if isinstance(c, (And, Or)):
        return max(role_depth(a) for a in c.args)
    if isinstance(c, Exists):
        return 1 + role_depth(c.filler)
    if isinstance(c, Mu):
        return role_depth(c.body)
    raise TypeError(f"no role depth for {c!r}")


def axiom_role_depth(a: Axiom) -> int:
    if isinstance(a, SubClassOf):
        return max(role_depth(a.sub), role_depth(a.sup))
    if isinstance(a, (EquivalentClasses, DisjointClasses)):
        return max(role_depth(c) for c in a.concepts)
    if isinstance(a, ClassAssertion):
        return role_depth(a.concept)
    return 0


def check_closed(entity, bound: frozenset[str] = frozenset()) -> None:
    """Raise UnboundFixpointVariable unless every Var sits under a matching Mu.

    Parsed terms are closed by construction; this guards programmatically
    built ASTs before unraveling or verification.
    """
    from .errors import UnboundFixpointVariable

    if isinstance(entity, Var):
        if entity.token not in bound:
            raise UnboundFixpointVariable(entity.token)
    elif isinstance(entity, Mu):
        check_closed(entity.body, bound | {entity.var})
    elif isinstance(entity, (And, Or)):
        for a in entity.args:
            check_closed(a, bound)
    elif isinstance(entity, Exists):
        check_closed(entity.filler, bound)
    elif isinstance(entity, SubClassOf):
        check_closed(entity.sub, bound)
        check_closed(entity.sup, bound)
    elif isinstance(entity, (EquivalentClasses, DisjointClasses)):
        for c in entity.concepts:
            check_closed(c, bound)
    elif isinstance(entity, ClassAssertion):
        check_closed(entity.concept, bound)


def subconcepts(entity) -> set[Concept]:
    """All subconcepts (the sub(.) closure) of a concept, axiom or iterable."""
    out: set[Concept] = set()

    def walk(c: Concept) -> None:
        out.add(c)
        if isinstance(c, (And, Or)):
            for a in c.args:
                walk(a)
        elif isinstance(c, Exists):
            walk(c.filler)
        elif isinstance(c, Mu):
            walk(c.body)

    def walk_axiom(a: Axiom) -> None:
        if isinstance(a, SubClassOf):
            walk(a.sub)
            walk(a.sup)
        elif isinstance(a, (EquivalentClasses, DisjointClasses)):
            for c in a.concepts:
                walk(c)
        elif isinstance(a, ClassAssertion):
            walk(a.concept)

    if isinstance(entity, Concept):
        walk(entity)
    elif isinstance(entity, Axiom):
        walk_axiom(entity)
    else:
        for item in entity:
            if isinstance(item, Concept):
                walk(item)
            else:
                walk_axiom(item)
    return out
