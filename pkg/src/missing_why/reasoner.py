"""EL-with-bottom reasoning: normalization, saturation, entailment, canonical models.

Entailment is decided by completion-rule saturation over the four normal
axiom shapes, the standard polynomial procedure for this logic.  ABox
individuals are internalized as fresh concept names (one per individual):
``C(a)`` becomes ``N_a ⊑ C`` and ``r(a,b)`` becomes ``N_a ⊑ ∃r.N_b``.  That
encoding is sound and complete here because the logic has no nominals or
cardinalities, so disjoint unions of models are models; the ontology is
inconsistent exactly when owl:Thing or some ``N_a`` is forced below
owl:Nothing.  Role assertions are entailed only when asserted (or the
ontology is inconsistent), for the same reason.

Fresh names live in the reserved ``_:`` namespace, which the parser refuses
in user input, and are stripped before any name set leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cancellation import CancelToken
from .errors import ExtendedSyntaxInCoreContext, SeedInconsistent
from .interpretation import Interpretation
from .ontology import Ontology
from .syntax import (
    BOTTOM,
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
    Signature,
    SubClassOf,
    Top,
    conj,
    is_core_axiom,
    is_core_concept,
    render,
    subconcepts,
)

_TOP = "_:top"
_BOT = "_:bot"
_QUERY_SUB = "_:q:x"
_QUERY_SUP = "_:q:y"
_IND_PREFIX = "_:i:"

#: number of saturation runs since import; check_support tests assert this
#: stays constant across support checks (support must stay cheap, purely
#: syntactic)
SATURATION_RUNS = 0


@dataclass(frozen=True)
class NonEntailmentQuery:
    """The axioms P the user expected plus the permitted vocabulary.

    ``signature=None`` means "the whole ontology vocabulary", resolved by the
    service at use time.
    """

    missing: tuple[Axiom, ...]
    signature: Signature | None = None


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class AtomSub:
    sub: str
    sup: str


@dataclass(frozen=True)
class ConjSub:
    left1: str
    left2: str
    sup: str


@dataclass(frozen=True)
class ExistsSup:
    sub: str
    role: str
    filler: str


@dataclass(frozen=True)
class ExistsSub:
    role: str
    filler: str
    sup: str


NormAxiom = AtomSub | ConjSub | ExistsSup | ExistsSub


@dataclass
class NormalizedTBox:
    axioms: tuple[NormAxiom, ...]
    fresh_map: dict[str, Concept]
    fresh_next: int


class FreshNames:
    def __init__(self, start: int = 0):
        self.counter = start

    def take(self) -> str:
        name = f"_:X{self.counter}"
        self.counter += 1
        return name


def _atom(c: Concept) -> str | None:
    if isinstance(c, Name):
        return c.name
    if isinstance(c, Top):
        return _TOP
    if isinstance(c, Bottom):
        return _BOT
    return None


def _concept_for(token: str) -> Concept:
    if token == _TOP:
        return Top()
    if token == _BOT:
        return BOTTOM
    return Name(token)


class _Normalizer:
    """Rewrites arbitrary core GCIs into the four normal shapes.

    One fresh name is allotted per distinct complex concept; the defining
    axioms are emitted per needed direction ("ub": X below the concept,
    "lb": concept below X), so a concept used on both sides ends up fully
    defined.  Interpreting each fresh name as the extension of its concept
    shows the extension is conservative over the input signature.
    """

    def __init__(self, fresh: FreshNames):
        self.fresh = fresh
        self.out: list[NormAxiom] = []
        self.seen: set[NormAxiom] = set()
        self.names: dict[Concept, str] = {}
        self.done: set[tuple[str, str]] = set()
        self.fresh_map: dict[str, Concept] = {}

    def emit(self, axiom: NormAxiom) -> None:
        if isinstance(axiom, AtomSub) and (axiom.sup == _TOP or axiom.sub == _BOT):
            return
        if axiom not in self.seen:
            self.seen.add(axiom)
            self.out.append(axiom)

    def name_for(self, c: Concept, direction: str) -> str:
        atom = _atom(c)
        if atom is not None:
            return atom
        x = self.names.get(c)
        if x is None:
            x = self.fresh.take()
            self.names[c] = x
            self.fresh_map[x] = c
        if direction in ("ub", "eq") and (x, "ub") not in self.done:
            self.done.add((x, "ub"))
            self._emit_upper(x, c)
        if direction in ("lb", "eq") and (x, "lb") not in self.done:
            self.done.add((x, "lb"))
            self._emit_lower(x, c)
        return x

    def _emit_upper(self, x: str, c: Concept) -> None:
        # axioms making x ⊑ c
        if isinstance(c, And):
            for arg in c.args:
                atom = _atom(arg)
                if atom is not None:
                    self.emit(AtomSub(x, atom))
                elif isinstance(arg, Exists):
                    self.emit(ExistsSup(x, arg.role, self.name_for(arg.filler, "ub")))
                else:
                    self.emit(AtomSub(x, self.name_for(arg, "ub")))
        elif isinstance(c, Exists):
            self.emit(ExistsSup(x, c.role, self.name_for(c.filler, "ub")))
        else:
            raise ExtendedSyntaxInCoreContext(f"cannot normalize {c!r}")

    def _emit_lower(self, x: str, c: Concept) -> None:
        # axioms making c ⊑ x
        if isinstance(c, And):
            operands = [self.name_for(arg, "lb") for arg in c.args]
            self._fold_conj(operands, x)
        elif isinstance(c, Exists):
            self.emit(ExistsSub(c.role, self.name_for(c.filler, "lb"), x))
        else:
            raise ExtendedSyntaxInCoreContext(f"cannot normalize {c!r}")

    def _fold_conj(self, operands: list[str], sup: str) -> None:
        current = operands[0]
        for nxt in operands[1:-1]:
            temp = self.fresh.take()
            self.fresh_map[temp] = conj([_concept_for(current), _concept_for(nxt)])
            self.emit(ConjSub(current, nxt, temp))
            current = temp
        self.emit(ConjSub(current, operands[-1], sup))

    def gci(self, lhs: Concept, rhs: Concept) -> None:
        if isinstance(rhs, And):
            for arg in rhs.args:
                self.gci(lhs, arg)
            return
        rhs_atom = _atom(rhs)
        if rhs_atom is not None:
            lhs_atom = _atom(lhs)
            if lhs_atom is not None:
                self.emit(AtomSub(lhs_atom, rhs_atom))
            elif isinstance(lhs, And):
                self._fold_conj([self.name_for(arg, "lb") for arg in lhs.args], rhs_atom)
            elif isinstance(lhs, Exists):
                self.emit(ExistsSub(lhs.role, self.name_for(lhs.filler, "lb"), rhs_atom))
            else:
                raise ExtendedSyntaxInCoreContext(f"cannot normalize {lhs!r}")
            return
        if isinstance(rhs, Exists):
            lhs_name = _atom(lhs)
            if lhs_name is None:
                lhs_name = self.name_for(lhs, "lb")
            self.emit(ExistsSup(lhs_name, rhs.role, self.name_for(rhs.filler, "ub")))
            return
        raise ExtendedSyntaxInCoreContext(f"cannot normalize {rhs!r}")


def lower(axioms: Iterable[Axiom]) -> list[SubClassOf]:
    """Lower equivalence/disjointness to plain GCIs; drop nothing else."""
    gcis: list[SubClassOf] = []
    for axiom in axioms:
        if isinstance(axiom, SubClassOf):
            gcis.append(axiom)
        elif isinstance(axiom, EquivalentClasses):
            cs = axiom.concepts
            for i in range(len(cs)):
                for j in range(len(cs)):
                    if i != j:
                        gcis.append(SubClassOf(cs[i], cs[j]))
        elif isinstance(axiom, DisjointClasses):
            cs = axiom.concepts
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    gcis.append(SubClassOf(conj([cs[i], cs[j]]), BOTTOM))
        elif isinstance(axiom, (ClassAssertion, RoleAssertion)):
            raise ValueError("assertions must be internalized, not lowered")
        else:
            raise TypeError(f"cannot lower {axiom!r}")
    return gcis


def normalize(
    tbox: Iterable[Axiom], fresh: FreshNames | None = None
) -> NormalizedTBox:
    """Rewrite a TBox into the four normal shapes, conservatively."""
    fresh = fresh or FreshNames()
    for axiom in tbox:
        if not is_core_axiom(axiom):
            raise ExtendedSyntaxInCoreContext(f"cannot normalize {render(axiom)}")
    normalizer = _Normalizer(fresh)
    for gci in lower(tbox):
        normalizer.gci(gci.sub, gci.sup)
    return NormalizedTBox(tuple(normalizer.out), normalizer.fresh_map, fresh.counter)


def normalize_gcis(
    gcis: Iterable[SubClassOf], fresh: FreshNames
) -> tuple[tuple[NormAxiom, ...], dict[str, Concept]]:
    """Normalize pre-lowered GCIs, continuing an existing fresh-name counter."""
    normalizer = _Normalizer(fresh)
    for gci in gcis:
        normalizer.gci(gci.sub, gci.sup)
    return tuple(normalizer.out), normalizer.fresh_map


# ---------------------------------------------------------------------------
# saturation


@dataclass
class SaturationIndex:
    """Least fixed point of the completion rules.

    ``subs[A]`` holds every name subsuming A (reflexive, always includes the
    internal top); once owl:Nothing enters ``subs[A]`` the whole universe is
    materialized into it.  ``links[(A, r)]`` holds the derived existential
    successors.
    """

    subs: dict[str, set[str]]
    links: dict[tuple[str, str], set[str]]
    universe: frozenset[str]

    def subsumed(self, sub: str, sup: str) -> bool:
        return sup in self.subs.get(sub, ())

    def bottom_forced(self, name: str) -> bool:
        return _BOT in self.subs.get(name, ())


def saturate(
    axioms: Sequence[NormAxiom],
    extra_names: Iterable[str] = (),
    cancel: CancelToken | None = None,
) -> SaturationIndex:
    global SATURATION_RUNS
    SATURATION_RUNS += 1

    atom_by_sub: dict[str, list[str]] = {}
    conj_by_left: dict[str, list[tuple[str, str]]] = {}
    exsup_by_sub: dict[str, list[tuple[str, str]]] = {}
    exsub_by_rf: dict[tuple[str, str], list[str]] = {}
    universe: set[str] = {_TOP, _BOT}
    universe.update(extra_names)

    for ax in axioms:
        if isinstance(ax, AtomSub):
            atom_by_sub.setdefault(ax.sub, []).append(ax.sup)
            universe.update((ax.sub, ax.sup))
        elif isinstance(ax, ConjSub):
            conj_by_left.setdefault(ax.left1, []).append((ax.left2, ax.sup))
            conj_by_left.setdefault(ax.left2, []).append((ax.left1, ax.sup))
            universe.update((ax.left1, ax.left2, ax.sup))
        elif isinstance(ax, ExistsSup):
            exsup_by_sub.setdefault(ax.sub, []).append((ax.role, ax.filler))
            universe.update((ax.sub, ax.filler))
        else:
            exsub_by_rf.setdefault((ax.role, ax.filler), []).append(ax.sup)
            universe.update((ax.filler, ax.sup))

    subs: dict[str, set[str]] = {name: set() for name in universe}
    links: dict[tuple[str, str], set[str]] = {}
    preds: dict[str, set[tuple[str, str]]] = {}
    work: list[tuple] = []
    for name in universe:
        work.append(("s", name, name))
        work.append(("s", name, _TOP))

    steps = 0
    while work:
        steps += 1
        if cancel is not None and steps % 512 == 0:
            cancel.raise_if_cancelled()
        item = work.pop()
        if item[0] == "s":
            _, a, b = item
            if b in subs[a]:
                continue
            subs[a].add(b)
            for c in atom_by_sub.get(b, ()):
                work.append(("s", a, c))
            for other, c in conj_by_left.get(b, ()):
                if other in subs[a]:
                    work.append(("s", a, c))
            for role, filler in exsup_by_sub.get(b, ()):
                work.append(("l", a, role, filler))
            for x, role in preds.get(a, ()):
                for c in exsub_by_rf.get((role, b), ()):
                    work.append(("s", x, c))
                if b == _BOT:
                    work.append(("s", x, _BOT))
        else:
            _, a, role, b = item
            targets = links.setdefault((a, role), set())
            if b in targets:
                continue
            targets.add(b)
            preds.setdefault(b, set()).add((a, role))
            for b2 in subs[b]:
                for c in exsub_by_rf.get((role, b2), ()):
                    work.append(("s", a, c))
            if _BOT in subs[b]:
                work.append(("s", a, _BOT))

    frozen_universe = frozenset(universe)
    for name in universe:
        if _BOT in subs[name]:
            subs[name] = set(frozen_universe)
    return SaturationIndex(subs, links, frozen_universe)


# ---------------------------------------------------------------------------
# entailment and consistency


@dataclass
class _Base:
    """Lowered TBox plus internalized ABox, ready for normalization."""

    gcis: list[SubClassOf]
    individuals: dict[str, str]
    role_assertions: set[tuple[str, str, str]]


def _individual_name(individual: str) -> str:
    return _IND_PREFIX + individual


def _prepare(axioms: Iterable[Axiom]) -> _Base:
    tbox: list[Axiom] = []
    gcis: list[SubClassOf] = []
    individuals: dict[str, str] = {}
    role_assertions: set[tuple[str, str, str]] = set()
    for axiom in axioms:
        if not is_core_axiom(axiom):
            raise ExtendedSyntaxInCoreContext(f"not a plain EL axiom: {render(axiom)}")
        if isinstance(axiom, ClassAssertion):
            n = individuals.setdefault(axiom.individual, _individual_name(axiom.individual))
            gcis.append(SubClassOf(Name(n), axiom.concept))
        elif isinstance(axiom, RoleAssertion):
            ns = individuals.setdefault(axiom.subject, _individual_name(axiom.subject))
            nt = individuals.setdefault(axiom.target, _individual_name(axiom.target))
            gcis.append(SubClassOf(Name(ns), Exists(axiom.role, Name(nt))))
            role_assertions.add((axiom.role, axiom.subject, axiom.target))
        else:
            tbox.append(axiom)
    gcis = lower(tbox) + gcis
    return _Base(gcis, individuals, role_assertions)


def _axioms_of(source) -> list[Axiom]:
    if isinstance(source, Ontology):
        return source.axioms()
    return list(source)


def _inconsistent(index: SaturationIndex, individuals: Iterable[str]) -> bool:
    if index.bottom_forced(_TOP):
        return True
    return any(index.bottom_forced(n) for n in individuals)


def _saturate_base(
    base: _Base, extra_gcis: list[SubClassOf] = [], extra_names: Iterable[str] = ()
) -> SaturationIndex:
    norm, _ = normalize_gcis(base.gcis + extra_gcis, FreshNames())
    names = list(base.individuals.values()) + list(extra_names)
    return saturate(norm, extra_names=names)


def is_consistent(ontology) -> bool:
    """True iff a model exists; decided by saturation."""
    base = _prepare(_axioms_of(ontology))
    index = _saturate_base(base)
    return not _inconsistent(index, base.individuals.values())


def _entails_gci(base: _Base, sub: Concept, sup: Concept) -> bool:
    extra = [SubClassOf(Name(_QUERY_SUB), sub), SubClassOf(sup, Name(_QUERY_SUP))]
    index = _saturate_base(base, extra, (_QUERY_SUB, _QUERY_SUP))
    if _inconsistent(index, base.individuals.values()):
        return True
    return index.subsumed(_QUERY_SUB, _QUERY_SUP)


def _entails_instance(base: _Base, individual: str, concept: Concept) -> bool:
    name = base.individuals.get(individual, _individual_name(individual))
    extra = [SubClassOf(concept, Name(_QUERY_SUP))]
    index = _saturate_base(base, extra, (name, _QUERY_SUP))
    if _inconsistent(index, base.individuals.values()):
        return True
    return index.subsumed(name, _QUERY_SUP)


def entails(ontology, axiom: Axiom) -> bool:
    """True iff every model of the ontology satisfies the axiom."""
    if not is_core_axiom(axiom):
        raise ExtendedSyntaxInCoreContext(f"cannot decide {render(axiom)}")
    base = _prepare(_axioms_of(ontology))
    if isinstance(axiom, SubClassOf):
        return _entails_gci(base, axiom.sub, axiom.sup)
    if isinstance(axiom, EquivalentClasses):
        cs = axiom.concepts
        return all(
            _entails_gci(base, cs[i], cs[j])
            for i in range(len(cs))
            for j in range(len(cs))
            if i != j
        )
    if isinstance(axiom, DisjointClasses):
        cs = axiom.concepts
        return all(
            _entails_gci(base, conj([cs[i], cs[j]]), BOTTOM)
            for i in range(len(cs))
            for j in range(i + 1, len(cs))
        )
    if isinstance(axiom, ClassAssertion):
        return _entails_instance(base, axiom.individual, axiom.concept)
    if isinstance(axiom, RoleAssertion):
        key = (axiom.role, axiom.subject, axiom.target)
        if key in base.role_assertions:
            return True
        index = _saturate_base(base)
        return _inconsistent(index, base.individuals.values())
    raise TypeError(f"cannot decide {axiom!r}")


def entails_all(ontology, axioms: Iterable[Axiom]) -> bool:
    return all(entails(ontology, a) for a in axioms)


def subsumption_probe(
    tbox: Iterable[Axiom], concepts: Sequence[Concept]
) -> tuple[SaturationIndex, dict[Concept, str]]:
    """One saturation answering all pairwise subsumptions among ``concepts``.

    Returns the index plus a representative name per concept;
    ``tbox |= X ⊑ Y`` iff the representative of Y subsumes that of X (or X's
    representative is bottom-forced).
    """
    normalizer = _Normalizer(FreshNames())
    for gci in lower(tbox):
        normalizer.gci(gci.sub, gci.sup)
    reps = {c: normalizer.name_for(c, "eq") for c in concepts}
    index = saturate(tuple(normalizer.out), extra_names=reps.values())
    return index, reps


def probe_subsumed(index: SaturationIndex, reps: dict, sub: Concept, sup: Concept) -> bool:
    return index.bottom_forced(reps[sub]) or index.subsumed(reps[sub], reps[sup])


# ---------------------------------------------------------------------------
# canonical models


def canonical_model(
    tbox: Iterable[Axiom], seeds: Sequence[Concept], cancel: CancelToken | None = None
) -> Interpretation:
    """Concepts-as-elements model indexed by the seeds and existential fillers.

    For every indexed concept F: the element for F belongs to a name A iff
    the TBox entails F ⊑ A, and has an r-edge to the element for G iff the
    TBox entails F ⊑ ∃r.G.  Bottom-forced concepts are dropped from the
    domain; a bottom-forced seed is an error rather than a silent omission.
    """
    tbox = list(tbox)
    for axiom in tbox:
        if not is_core_axiom(axiom):
            raise ExtendedSyntaxInCoreContext(f"not a plain EL axiom: {render(axiom)}")
    for seed in seeds:
        if not is_core_concept(seed):
            raise ExtendedSyntaxInCoreContext(f"not a plain EL concept: {render(seed)}")

    index_concepts: list[Concept] = []
    seen: set[Concept] = set()
    for seed in seeds:
        if seed not in seen:
            seen.add(seed)
            index_concepts.append(seed)
    fillers = {
        sc.filler for sc in subconcepts(list(tbox) + list(seeds)) if isinstance(sc, Exists)
    }
    for filler in sorted(fillers, key=render):
        if filler not in seen:
            seen.add(filler)
            index_concepts.append(filler)

    fresh = FreshNames()
    normalizer = _Normalizer(fresh)
    for gci in lower(tbox):
        normalizer.gci(gci.sub, gci.sup)
    reps = {c: normalizer.name_for(c, "eq") for c in index_concepts}
    index = saturate(tuple(normalizer.out), extra_names=reps.values(), cancel=cancel)

    for seed in seeds:
        if index.bottom_forced(reps[seed]):
            raise SeedInconsistent(f"seed {render(seed)} is subsumed by owl:Nothing")

    domain = [c for c in index_concepts if not index.bottom_forced(reps[c])]
    ids = {c: render(c) for c in domain}
    classes = {
        ids[c]: frozenset(
            n for n in index.subs[reps[c]] if not n.startswith("_:")
        )
        for c in domain
    }
    role_names = sorted(
        {ax.role for ax in subconcepts(list(tbox) + list(seeds)) if isinstance(ax, Exists)}
    )
    edges = []
    for c in domain:
        for role in role_names:
            targets = index.links.get((reps[c], role), ())
            if not targets:
                continue
            for g in domain:
                if any(index.subsumed(b, reps[g]) for b in targets):
                    edges.append((ids[c], role, ids[g]))
    edges.sort()
    marked = frozenset({ids[seeds[0]]} if seeds and seeds[0] in ids else set())
    return Interpretation(
        elements=tuple(ids[c] for c in domain),
        classes=classes,
        roles=tuple(edges),
        marked=marked,
        element_origin={ids[c]: ids[c] for c in domain},
    )
