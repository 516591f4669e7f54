"""Hypothesis-side explanations: verification, bounded abduction, fixpoint
unraveling and the post-processing pipeline.

``verify_hypothesis`` answers whether adding a hypothesis makes the missing
axioms follow.  Hypotheses written in the richer syntax (union, nominals,
inverse roles, fixpoints) are reported as unverifiable rather than guessed
at, since the reasoner only decides the plain fragment.

``naive_abduce`` is a desk-scale, exhaustive abducer over a bounded
candidate space: GCIs ``A ⊑ F`` and assertions ``F(a)`` whose names all come
from the permitted vocabulary, F ranging over names and existential chains
up to the depth bound.  Larger conjunctive right-hand sides are expressible
as several axioms, so the pool omits them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .cancellation import CancelToken
from .errors import AlreadyEntailed, EmptySignature, NonPositiveCount
from .ontology import Ontology
from .reasoner import NonEntailmentQuery, entails, is_consistent
from .syntax import (
    BOTTOM,
    TOP,
    And,
    Axiom,
    Bottom,
    ClassAssertion,
    Concept,
    DisjointClasses,
    EquivalentClasses,
    Exists,
    Mu,
    Name,
    Or,
    Signature,
    SubClassOf,
    Top,
    Var,
    axiom_role_depth,
    check_closed,
    conj,
    disj,
    is_core_axiom,
    render,
)


@dataclass(frozen=True)
class Hypothesis:
    """A set of axioms whose addition should repair the missing entailment.

    ``verified`` is None until checked (or when the axioms fall outside the
    verifiable fragment), otherwise the outcome of the last verification.
    """

    axioms: tuple[Axiom, ...]
    verified: bool | None = None

    @staticmethod
    def of(axioms) -> "Hypothesis":
        return Hypothesis(tuple(sorted(axioms, key=render)))

    @property
    def depth(self) -> int:
        return max((axiom_role_depth(a) for a in self.axioms), default=0)

    @property
    def is_extended(self) -> bool:
        return not all(is_core_axiom(a) for a in self.axioms)

    def render_key(self) -> str:
        return " ".join(render(a) for a in self.axioms)


@dataclass(frozen=True)
class FixpointHypothesisSet:
    """Alternative hypotheses, each a conjunction of (possibly fixpoint) axioms."""

    disjuncts: tuple[tuple[Axiom, ...], ...]


def parse_fixpoint_blocks(text: str) -> FixpointHypothesisSet:
    """Parse '---'-separated blocks of extended axioms, one block per disjunct."""
    from .parsing import parse

    disjuncts = []
    for block in text.split("---"):
        axioms = []
        for line in block.split("\n"):
            stripped = line.split("#", 1)[0].strip()
            if stripped:
                axioms.append(parse(stripped, kind="extended_axiom"))
        if axioms:
            disjuncts.append(tuple(axioms))
    return FixpointHypothesisSet(tuple(disjuncts))


# ---------------------------------------------------------------------------
# verification


def verify_hypothesis(
    ontology: Ontology, hypothesis: Hypothesis, query: NonEntailmentQuery
) -> bool | None:
    """True/False when decidable; None when the hypothesis leaves the fragment."""
    if hypothesis.is_extended or not all(is_core_axiom(p) for p in query.missing):
        return None
    for axiom in hypothesis.axioms:
        check_closed(axiom)
    extended = ontology.add(hypothesis.axioms)
    if not is_consistent(extended):
        return False
    return all(entails(extended, p) for p in query.missing)


def with_verification(
    ontology: Ontology, hypothesis: Hypothesis, query: NonEntailmentQuery
) -> Hypothesis:
    return replace(hypothesis, verified=verify_hypothesis(ontology, hypothesis, query))


# ---------------------------------------------------------------------------
# bounded abduction


def _concept_pool(signature: Signature, max_depth: int) -> list[Concept]:
    layer: list[Concept] = [Name(n) for n in sorted(signature.concepts)]
    pool = list(layer)
    for _ in range(max_depth):
        layer = [Exists(r, f) for r in sorted(signature.roles) for f in layer]
        pool.extend(layer)
    return pool


def candidate_axioms(signature: Signature, max_depth: int) -> list[Axiom]:
    pool = _concept_pool(signature, max_depth)
    candidates: list[Axiom] = []
    for name in sorted(signature.concepts):
        for f in pool:
            if f != Name(name):
                candidates.append(SubClassOf(Name(name), f))
    for individual in sorted(signature.individuals):
        for f in pool:
            candidates.append(ClassAssertion(f, individual))
    candidates.sort(key=lambda a: (axiom_role_depth(a), render(a)))
    return candidates


def naive_abduce(
    ontology: Ontology,
    query: NonEntailmentQuery,
    max_axioms: int = 2,
    max_depth: int = 1,
    cancel: CancelToken | None = None,
) -> list[Hypothesis]:
    """Exhaustive signature-bounded abduction; every result is verified and
    subset-minimal among the results.  Ordered by (size, total depth, text)."""
    signature = query.signature
    if signature is None or not (signature.concepts or signature.individuals):
        raise EmptySignature("abduction needs a non-empty permitted vocabulary")
    missing = list(query.missing)
    if all(entails(ontology, p) for p in missing):
        raise AlreadyEntailed(render(missing[0]))
    candidates = candidate_axioms(signature, max_depth)
    kept: list[tuple[frozenset[Axiom], Hypothesis]] = []
    for size in range(1, max_axioms + 1):
        for combo in itertools.combinations(candidates, size):
            if cancel is not None:
                cancel.raise_if_cancelled()
            combo_set = frozenset(combo)
            if any(prior <= combo_set for prior, _ in kept):
                continue
            extended = ontology.add(combo)
            if not is_consistent(extended):
                continue
            if all(entails(extended, p) for p in missing):
                kept.append((combo_set, Hypothesis.of(combo)))
    hypotheses = [replace(h, verified=True) for _, h in kept]
    hypotheses.sort(
        key=lambda h: (
            len(h.axioms),
            sum(axiom_role_depth(a) for a in h.axioms),
            h.render_key(),
        )
    )
    return hypotheses


# ---------------------------------------------------------------------------
# fixpoint unraveling


def substitute(concept: Concept, token: str, replacement: Concept) -> Concept:
    if isinstance(concept, Var):
        return replacement if concept.token == token else concept
    if isinstance(concept, Mu):
        if concept.var == token:  # shadowed
            return concept
        return Mu(concept.var, substitute(concept.body, token, replacement))
    if isinstance(concept, And):
        return conj([substitute(a, token, replacement) for a in concept.args])
    if isinstance(concept, Or):
        return disj([substitute(a, token, replacement) for a in concept.args])
    if isinstance(concept, Exists):
        return Exists(concept.role, substitute(concept.filler, token, replacement))
    return concept


def simplify(concept: Concept) -> Concept:
    """Equivalence-preserving cleanup: flatten, dedupe, absorb top/bottom."""
    if isinstance(concept, And):
        args = [simplify(a) for a in concept.args]
        if any(isinstance(a, Bottom) for a in args):
            return BOTTOM
        args = [a for a in args if not isinstance(a, Top)]
        return conj(args)
    if isinstance(concept, Or):
        args = [simplify(a) for a in concept.args]
        if any(isinstance(a, Top) for a in args):
            return TOP
        args = [a for a in args if not isinstance(a, Bottom)]
        return disj(args)
    if isinstance(concept, Exists):
        filler = simplify(concept.filler)
        if isinstance(filler, Bottom):
            return BOTTOM
        return Exists(concept.role, filler)
    if isinstance(concept, Mu):
        body = simplify(concept.body)
        if isinstance(body, Bottom) or body == Var(concept.var):
            return BOTTOM
        return Mu(concept.var, body)
    return concept


def _unfold(concept: Concept, steps: int) -> Concept:
    """Replace every least-fixpoint term by its ``steps``-th approximant."""
    if isinstance(concept, Mu):
        body = _unfold(concept.body, steps)
        current: Concept = BOTTOM
        for _ in range(steps):
            current = simplify(substitute(body, concept.var, current))
        return current
    if isinstance(concept, And):
        return conj([_unfold(a, steps) for a in concept.args])
    if isinstance(concept, Or):
        return disj([_unfold(a, steps) for a in concept.args])
    if isinstance(concept, Exists):
        return Exists(concept.role, _unfold(concept.filler, steps))
    return concept


def _unfold_axiom(axiom: Axiom, steps: int) -> Axiom:
    if isinstance(axiom, SubClassOf):
        return SubClassOf(_unfold(axiom.sub, steps), _unfold(axiom.sup, steps))
    if isinstance(axiom, EquivalentClasses):
        return EquivalentClasses(tuple(_unfold(c, steps) for c in axiom.concepts))
    if isinstance(axiom, DisjointClasses):
        return DisjointClasses(tuple(_unfold(c, steps) for c in axiom.concepts))
    if isinstance(axiom, ClassAssertion):
        return ClassAssertion(_unfold(axiom.concept, steps), axiom.individual)
    return axiom


def _has_fixpoint(axiom: Axiom) -> bool:
    def walk(c: Concept) -> bool:
        if isinstance(c, Mu):
            return True
        if isinstance(c, (And, Or)):
            return any(walk(a) for a in c.args)
        if isinstance(c, Exists):
            return walk(c.filler)
        return False

    if isinstance(axiom, SubClassOf):
        return walk(axiom.sub) or walk(axiom.sup)
    if isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        return any(walk(c) for c in axiom.concepts)
    if isinstance(axiom, ClassAssertion):
        return walk(axiom.concept)
    return False


def unravel_fixpoints(fhs: FixpointHypothesisSet, count: int) -> list[Hypothesis]:
    """Fixpoint-free approximant hypotheses in order of increasing role depth.

    Every fixpoint term starts from owl:Nothing and is unfolded once more per
    approximant, with bottom-absorbing simplification applied at each step.
    Fixpoint-free disjuncts pass through unchanged, exactly once.
    """
    if count < 1:
        raise NonPositiveCount(f"count must be positive, got {count}")
    for disjunct in fhs.disjuncts:
        for axiom in disjunct:
            check_closed(axiom)
    pool: list[Hypothesis] = []
    for disjunct in fhs.disjuncts:
        if not any(_has_fixpoint(a) for a in disjunct):
            pool.append(Hypothesis.of(disjunct))
            continue
        previous: tuple[Axiom, ...] | None = None
        for steps in range(1, count + 1):
            unfolded = tuple(_unfold_axiom(a, steps) for a in disjunct)
            if unfolded == previous:
                break  # syntactic fixpoint reached, later approximants repeat
            previous = unfolded
            pool.append(Hypothesis.of(unfolded))
    pool.sort(key=lambda h: (h.depth, h.render_key()))
    return pool[:count]


# ---------------------------------------------------------------------------
# post-processing


def _syntactically_subsumed(sub: Concept, sup: Concept) -> bool:
    """Structural sufficient check for sub ⊑ sup, no reasoning."""
    if isinstance(sup, Top) or isinstance(sub, Bottom) or sub == sup:
        return True
    if isinstance(sup, And):
        return all(_syntactically_subsumed(sub, s) for s in sup.args)
    if isinstance(sub, Or):
        return all(_syntactically_subsumed(s, sup) for s in sub.args)
    if isinstance(sub, And):
        return any(_syntactically_subsumed(s, sup) for s in sub.args)
    if isinstance(sup, Or):
        return any(_syntactically_subsumed(sub, s) for s in sup.args)
    if isinstance(sub, Exists) and isinstance(sup, Exists) and sub.role == sup.role:
        return _syntactically_subsumed(sub.filler, sup.filler)
    return False


def _drop_redundant_disjuncts(concept: Concept) -> Concept:
    if not isinstance(concept, Or):
        return concept
    args = list(concept.args)
    changed = True
    while changed:
        changed = False
        for i, candidate in enumerate(args):
            rest = args[:i] + args[i + 1 :]
            if rest and any(_syntactically_subsumed(candidate, other) for other in rest):
                args = rest
                changed = True
                break
    return disj(args)


def _simplify_axiom_members(ontology: Ontology, axiom: Axiom) -> Axiom:
    """Drop right-hand-side conjuncts entailed by their siblings under O."""
    if not is_core_axiom(axiom):
        if isinstance(axiom, SubClassOf):
            return SubClassOf(axiom.sub, _drop_redundant_disjuncts(axiom.sup))
        if isinstance(axiom, ClassAssertion):
            return ClassAssertion(_drop_redundant_disjuncts(axiom.concept), axiom.individual)
        return axiom

    def prune(rhs: Concept) -> Concept:
        if not isinstance(rhs, And):
            return rhs
        args = list(rhs.args)
        changed = True
        while changed:
            changed = False
            for i, candidate in enumerate(args):
                rest = args[:i] + args[i + 1 :]
                if rest and entails(ontology, SubClassOf(conj(rest), candidate)):
                    args = rest
                    changed = True
                    break
        return conj(args)

    if isinstance(axiom, SubClassOf):
        return SubClassOf(axiom.sub, prune(axiom.sup))
    if isinstance(axiom, ClassAssertion):
        return ClassAssertion(prune(axiom.concept), axiom.individual)
    return axiom


def _implies(ontology: Ontology, h1: Hypothesis, h2: Hypothesis) -> bool:
    """Every axiom of h2 follows from the ontology extended by h1."""
    if h1.is_extended or h2.is_extended:
        return False
    extended = ontology.add(h1.axioms)
    return all(entails(extended, a) for a in h2.axioms)


def postprocess_hypotheses(
    ontology: Ontology,
    hypotheses: list[Hypothesis],
    drop_redundant_axioms: bool = True,
    simplify_members: bool = True,
    order_by_specificity: bool = True,
) -> list[Hypothesis]:
    """The three cleanup steps, all on by default.

    Hypotheses outside the plain fragment skip the entailment-based steps
    (disjunct pruning is purely syntactic, so it still applies).
    """
    out: list[Hypothesis] = []
    for hyp in hypotheses:
        axioms = list(hyp.axioms)
        if drop_redundant_axioms and not hyp.is_extended:
            changed = True
            while changed:
                changed = False
                for i, axiom in enumerate(axioms):
                    rest = axioms[:i] + axioms[i + 1 :]
                    if rest and entails(ontology.add(rest), axiom):
                        axioms = rest
                        changed = True
                        break
        if simplify_members:
            axioms = [_simplify_axiom_members(ontology, a) for a in axioms]
        out.append(replace(Hypothesis.of(axioms), verified=hyp.verified))

    if order_by_specificity and len(out) > 1:
        implies_matrix = {
            (i, j): _implies(ontology, out[i], out[j])
            for i in range(len(out))
            for j in range(len(out))
            if i != j
        }

        def strictly_implies(i: int, j: int) -> bool:
            return implies_matrix[(i, j)] and not implies_matrix[(j, i)]

        remaining = list(range(len(out)))
        ordered: list[int] = []
        while remaining:
            pick = next(
                i
                for i in remaining
                if not any(strictly_implies(j, i) for j in remaining if j != i)
            )
            remaining.remove(pick)
            ordered.append(pick)
        out = [out[i] for i in ordered]
    return out
