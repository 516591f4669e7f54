"""Tableau construction of small counterexample models.

For a non-entailed GCI ``C ⊑ D`` the algorithm asserts C at a fresh root
individual, extends the TBox with ``D ⊑ G`` for a fresh goal name G, and
exhaustively applies four expansion rules.  The successor rule runs only
when nothing else applies and first tries to reuse an existing individual,
which keeps models small; a candidate is reused only if doing so keeps the
working ABox consistent and does not force the goal name onto the root.
The final ABox induces the returned interpretation, and the GCI is entailed
exactly when the goal name reached the root.

Rule and candidate scans follow assertion insertion order and individual
creation order, so identical inputs produce identical traces and models.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cancellation import CancelToken
from .errors import InconsistentInput, InternalClash, NotSaturated, StepBudgetExceeded
from .interpretation import Interpretation
from .ontology import Ontology
from .reasoner import (
    _BOT,
    _IND_PREFIX,
    _TOP,
    AtomSub,
    ConjSub,
    ExistsSub,
    ExistsSup,
    FreshNames,
    NormalizedTBox,
    entails,
    normalize,
    normalize_gcis,
    saturate,
)
from .syntax import (
    BOTTOM,
    TOP,
    And,
    Axiom,
    Bottom,
    ClassAssertion,
    Concept,
    Exists,
    Name,
    RoleAssertion,
    SubClassOf,
    Top,
    render,
)

ROOT = "root"
GOAL = "_:goal"

MAX_RULE_APPLICATIONS = 100_000
MAX_SECONDS = 5.0

_RULE_CONJ = "conj"
_RULE_EXISTS1 = "exists1"
_RULE_SUBSUMPTION = "subsumption"
_RULE_EXISTS2 = "exists2"


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    triggers: tuple[Axiom, ...]
    added: tuple[Axiom, ...]


@dataclass
class RunStats:
    rule_applications: dict[str, int]
    individual_count: int
    seconds: float


@dataclass
class CounterexampleResult:
    entailed: bool
    model: Interpretation | None
    stats: RunStats
    trace: tuple[TraceEntry, ...]


def _token_concept(token: str) -> Concept:
    if token == _TOP:
        return TOP
    if token == _BOT:
        return BOTTOM
    return Name(token)


def _concept_token(c: Concept) -> str | None:
    if isinstance(c, Name):
        return c.name
    if isinstance(c, Top):
        return _TOP
    if isinstance(c, Bottom):
        return _BOT
    return None


@dataclass
class TableauState:
    norm: NormalizedTBox
    assertions: dict[Axiom, None]
    individuals: list[str]
    root: str
    goal: str
    trace: list[TraceEntry] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    _memo: dict = field(default_factory=dict)

    def has(self, assertion: Axiom) -> bool:
        return assertion in self.assertions

    def _apply(self, rule: str, triggers: tuple[Axiom, ...], added: tuple[Axiom, ...]):
        for assertion in added:
            if isinstance(assertion, ClassAssertion):
                token = _concept_token(assertion.concept)
                if token == _BOT:
                    raise InternalClash(
                        f"owl:Nothing asserted for {assertion.individual}; "
                        "the input violates the consistency precondition"
                    )
            self.assertions.setdefault(assertion, None)
        self.trace.append(TraceEntry(rule, triggers, added))
        self.counts[rule] = self.counts.get(rule, 0) + 1

    # -- rule search, one instance per call --------------------------------

    def _find_conj(self):
        for assertion in self.assertions:
            if isinstance(assertion, ClassAssertion) and isinstance(assertion.concept, And):
                for conjunct in assertion.concept.args:
                    candidate = ClassAssertion(conjunct, assertion.individual)
                    if not self.has(candidate):
                        return assertion, candidate
        return None

    def _find_exists1(self):
        for assertion in self.assertions:
            if not isinstance(assertion, RoleAssertion):
                continue
            for other in self.assertions:
                if (
                    isinstance(other, ClassAssertion)
                    and other.individual == assertion.target
                    and isinstance(other.concept, (Name, Top))
                ):
                    candidate = ClassAssertion(
                        Exists(assertion.role, other.concept), assertion.subject
                    )
                    if not self.has(candidate):
                        return assertion, other, candidate
        return None

    def _find_subsumption(self):
        for assertion in self.assertions:
            if not isinstance(assertion, ClassAssertion):
                continue
            individual = assertion.individual
            token = _concept_token(assertion.concept)
            if token is not None:
                for ax in self.norm.axioms:
                    if isinstance(ax, AtomSub) and ax.sub == token:
                        candidate = ClassAssertion(_token_concept(ax.sup), individual)
                        if not self.has(candidate):
                            return (assertion,), candidate
                    elif isinstance(ax, ExistsSup) and ax.sub == token:
                        candidate = ClassAssertion(
                            Exists(ax.role, _token_concept(ax.filler)), individual
                        )
                        if not self.has(candidate):
                            return (assertion,), candidate
                    elif isinstance(ax, ConjSub) and token in (ax.left1, ax.left2):
                        other_token = ax.left2 if token == ax.left1 else ax.left1
                        partner = ClassAssertion(_token_concept(other_token), individual)
                        if self.has(partner):
                            candidate = ClassAssertion(_token_concept(ax.sup), individual)
                            if not self.has(candidate):
                                return (assertion, partner), candidate
            elif isinstance(assertion.concept, Exists):
                filler_token = _concept_token(assertion.concept.filler)
                if filler_token is None:
                    continue
                for ax in self.norm.axioms:
                    if (
                        isinstance(ax, ExistsSub)
                        and ax.role == assertion.concept.role
                        and ax.filler == filler_token
                    ):
                        candidate = ClassAssertion(_token_concept(ax.sup), individual)
                        if not self.has(candidate):
                            return (assertion,), candidate
        return None

    def _find_exists2(self):
        for assertion in self.assertions:
            if not (
                isinstance(assertion, ClassAssertion)
                and isinstance(assertion.concept, Exists)
            ):
                continue
            role, filler = assertion.concept.role, assertion.concept.filler
            subject = assertion.individual
            witnessed = any(
                isinstance(ra, RoleAssertion)
                and ra.subject == subject
                and ra.role == role
                and self.has(ClassAssertion(filler, ra.target))
                for ra in self.assertions
            )
            if not witnessed:
                return assertion
        return None

    def find_applicable(self) -> str | None:
        if self._find_conj():
            return _RULE_CONJ
        if self._find_exists1():
            return _RULE_EXISTS1
        if self._find_subsumption():
            return _RULE_SUBSUMPTION
        if self._find_exists2():
            return _RULE_EXISTS2
        return None

    # -- the successor rule's semantic side conditions ----------------------

    def _check_with(self, extra: tuple[Axiom, ...]) -> tuple[bool, bool]:
        """(consistent, root entails goal) for the ABox extended by ``extra``."""
        gcis = []
        individual_names = {}
        for assertion in list(self.assertions) + list(extra):
            if isinstance(assertion, ClassAssertion):
                n = individual_names.setdefault(
                    assertion.individual, _IND_PREFIX + assertion.individual
                )
                gcis.append(SubClassOf(Name(n), assertion.concept))
            else:
                ns = individual_names.setdefault(
                    assertion.subject, _IND_PREFIX + assertion.subject
                )
                nt = individual_names.setdefault(
                    assertion.target, _IND_PREFIX + assertion.target
                )
                gcis.append(SubClassOf(Name(ns), Exists(assertion.role, Name(nt))))
        extra_norm, _ = normalize_gcis(gcis, FreshNames(self.norm.fresh_next))
        index = saturate(
            self.norm.axioms + extra_norm, extra_names=individual_names.values()
        )
        inconsistent = index.bottom_forced(_TOP) or any(
            index.bottom_forced(n) for n in individual_names.values()
        )
        entails_goal = inconsistent or index.subsumed(_IND_PREFIX + self.root, self.goal)
        return not inconsistent, entails_goal


def tableau_expand_once(state: TableauState) -> str | None:
    """Apply one rule instance; return the rule name or None when saturated."""
    found = state._find_conj()
    if found:
        trigger, candidate = found
        state._apply(_RULE_CONJ, (trigger,), (candidate,))
        return _RULE_CONJ

    found = state._find_exists1()
    if found:
        edge, label, candidate = found
        state._apply(_RULE_EXISTS1, (edge, label), (candidate,))
        return _RULE_EXISTS1

    found = state._find_subsumption()
    if found:
        triggers, candidate = found
        state._apply(_RULE_SUBSUMPTION, triggers, (candidate,))
        return _RULE_SUBSUMPTION

    trigger = state._find_exists2()
    if trigger is not None:
        role, filler = trigger.concept.role, trigger.concept.filler
        subject = trigger.individual
        epoch = len(state.assertions)
        # reuse must not introduce the goal at the root; when the goal is
        # already entailed, only consistency can block reuse (otherwise no
        # candidate would ever qualify and successor chains would not
        # terminate)
        goal_key = ("goal", epoch)
        if goal_key not in state._memo:
            state._memo[goal_key] = state._check_with(())[1]
        goal_already = state._memo[goal_key]
        for candidate in state.individuals:
            extra = (RoleAssertion(role, subject, candidate), ClassAssertion(filler, candidate))
            key = (subject, role, render(filler), candidate, epoch)
            if key not in state._memo:
                state._memo[key] = state._check_with(extra)
            consistent, entails_goal = state._memo[key]
            if consistent and (goal_already or not entails_goal):
                state._apply(_RULE_EXISTS2, (trigger,), extra)
                return _RULE_EXISTS2
        fresh = f"n{len(state.individuals)}"
        state.individuals.append(fresh)
        state._apply(
            _RULE_EXISTS2,
            (trigger,),
            (
                RoleAssertion(role, subject, fresh),
                ClassAssertion(filler, fresh),
                ClassAssertion(TOP, fresh),
            ),
        )
        return _RULE_EXISTS2
    return None


def induce_interpretation(state: TableauState) -> Interpretation:
    """Read the model off a saturated ABox.

    Only concept-name assertions become labels; reserved-namespace names
    (normalization helpers and the goal) are stripped.
    """
    if state.find_applicable() is not None:
        raise NotSaturated("the tableau still has applicable rules")
    classes: dict[str, frozenset[str]] = {}
    for individual in state.individuals:
        labels = {
            a.concept.name
            for a in state.assertions
            if isinstance(a, ClassAssertion)
            and a.individual == individual
            and isinstance(a.concept, Name)
            and not a.concept.name.startswith("_:")
        }
        classes[individual] = frozenset(labels)
    roles = sorted(
        (a.subject, a.role, a.target)
        for a in state.assertions
        if isinstance(a, RoleAssertion)
    )
    return Interpretation(
        elements=tuple(state.individuals),
        classes=classes,
        roles=tuple(roles),
        marked=frozenset({state.root}),
        element_origin={i: i for i in state.individuals},
    )


def initialize_state(tbox: list[Axiom], query: SubClassOf) -> TableauState:
    norm = normalize(list(tbox) + [SubClassOf(query.sup, Name(GOAL))])
    assertions: dict[Axiom, None] = {}
    assertions[ClassAssertion(query.sub, ROOT)] = None
    assertions[ClassAssertion(TOP, ROOT)] = None
    return TableauState(
        norm=norm, assertions=assertions, individuals=[ROOT], root=ROOT, goal=GOAL
    )


def generate_small_model(
    tbox: list[Axiom],
    query: SubClassOf,
    cancel: CancelToken | None = None,
    max_steps: int = MAX_RULE_APPLICATIONS,
    max_seconds: float = MAX_SECONDS,
) -> CounterexampleResult:
    """Run the tableau to saturation and report Entailed or a counterexample."""
    if not isinstance(query, SubClassOf):
        raise TypeError("the small-model generator explains a single SubClassOf axiom")
    if entails(Ontology.from_axioms(tbox), SubClassOf(query.sub, BOTTOM)):
        raise InconsistentInput(
            f"no element can satisfy {render(query.sub)} under this TBox"
        )
    state = initialize_state(tbox, query)
    goal_at_root = ClassAssertion(Name(GOAL), ROOT)
    started = time.monotonic()
    steps = 0
    while True:
        if cancel is not None:
            cancel.raise_if_cancelled()
        if state.has(goal_at_root):
            # assertions only grow, so the outcome is already decided and no
            # model will be induced
            elapsed = time.monotonic() - started
            stats = RunStats(dict(state.counts), len(state.individuals), elapsed)
            return CounterexampleResult(True, None, stats, tuple(state.trace))
        if steps >= max_steps:
            raise StepBudgetExceeded(f"more than {max_steps} rule applications")
        if time.monotonic() - started > max_seconds:
            raise StepBudgetExceeded(f"more than {max_seconds}s of expansion")
        if tableau_expand_once(state) is None:
            break
        steps += 1
    elapsed = time.monotonic() - started
    stats = RunStats(dict(state.counts), len(state.individuals), elapsed)
    if state.has(goal_at_root):
        return CounterexampleResult(True, None, stats, tuple(state.trace))
    return CounterexampleResult(
        False, induce_interpretation(state), stats, tuple(state.trace)
    )
