"""Sessions and the interactive explanation workflow.

A session owns a working copy of the ontology plus the baseline it was
created from, the current non-entailment query, staged (not yet committed)
disjointness axioms, and the last displayed result.  Results are cleared by
any ontology change except those made through :func:`apply_changes`, which
is the service's own repair path; reverting restores the baseline
byte-identically.

``check_support`` is purely syntactic: it never runs saturation, so the UI
can call it on every keystroke.  Its message strings are part of the
contract and golden-tested.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field

from .abduction import (
    FixpointHypothesisSet,
    Hypothesis,
    naive_abduce,
    postprocess_hypotheses,
    unravel_fixpoints,
    with_verification,
)
from .cancellation import CancelToken
from .errors import (
    AlreadyEntailed,
    EmptyQuery,
    HypothesisNotApplicable,
    InconsistentInput,
    InconsistentWithDisjointness,
    IndexOutOfRange,
    IsEntailed,
    NonLogicalAxiom,
    NoResult,
    NothingToApply,
    TooFewNames,
    UnknownName,
    UnsupportedMethod,
)
from .graphdoc import GraphDoc, export_graph
from .interpretation import Interpretation
from .ontology import Ontology
from .parsing import parse
from .reasoner import NonEntailmentQuery, entails
from .relevance import RelevanceMode, RelevantPart, extract_relevant_part
from .smallmodel import generate_small_model
from .syntax import (
    Axiom,
    DisjointClasses,
    Name,
    Signature,
    SubClassOf,
    is_core_axiom,
    is_core_concept,
    render,
    signature_of,
    uses_bottom,
)

SMALL_MODEL = "small_model"
RELEVANT_ALPHA = "relevant_alpha"
RELEVANT_BETA = "relevant_beta"
RELEVANT_DELTA = "relevant_delta"
RELEVANT_DELTABAR = "relevant_deltabar"
NAIVE_ABDUCTION = "naive_abduction"
UNRAVEL = "unravel"

COUNTEREXAMPLE_METHODS = (
    SMALL_MODEL,
    RELEVANT_ALPHA,
    RELEVANT_BETA,
    RELEVANT_DELTA,
    RELEVANT_DELTABAR,
)
HYPOTHESIS_METHODS = (NAIVE_ABDUCTION, UNRAVEL)
METHODS = COUNTEREXAMPLE_METHODS + HYPOTHESIS_METHODS

_RELEVANCE_MODES = {
    RELEVANT_ALPHA: RelevanceMode.ALPHA,
    RELEVANT_BETA: RelevanceMode.BETA,
    RELEVANT_DELTA: RelevanceMode.DELTA,
    RELEVANT_DELTABAR: RelevanceMode.DELTABAR,
}

DEFAULT_LABEL_COUNT = 3


@dataclass
class SessionOptions:
    drop_redundant_axioms: bool = True
    simplify_members: bool = True
    order_by_specificity: bool = True
    abduction_max_axioms: int = 2
    abduction_max_depth: int = 1


@dataclass
class GraphPayload:
    interpretation: Interpretation
    relevant: RelevantPart | None
    tbox: tuple[Axiom, ...]
    signature: Signature | None


@dataclass
class HypothesesPayload:
    hypotheses: tuple[Hypothesis, ...]
    exhausted: bool


@dataclass
class ExplanationResult:
    method: str
    payload: GraphPayload | HypothesesPayload
    progress_log: tuple[str, ...]


@dataclass
class Support:
    supported: bool
    message: str = ""


@dataclass
class Session:
    id: str
    ontology: Ontology
    baseline: Ontology
    query: NonEntailmentQuery | None = None
    pending_disjointnesses: list[DisjointClasses] = field(default_factory=list)
    fixpoints: FixpointHypothesisSet | None = None
    last_result: ExplanationResult | None = None
    epoch: int = 0
    options: SessionOptions = field(default_factory=SessionOptions)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    current_cancel: CancelToken | None = field(default=None, repr=False)

    def resolved_signature(self) -> Signature | None:
        if self.query is None:
            return None
        if self.query.signature is None:
            return signature_of(self.ontology)
        return self.query.signature


def create_session(ontology_text: str, options: SessionOptions | None = None) -> Session:
    ontology = parse(ontology_text, kind="ontology")
    return Session(
        id=uuid.uuid4().hex,
        ontology=ontology,
        baseline=ontology,
        options=options or SessionOptions(),
    )


def edit_ontology(session: Session, ontology_text: str) -> None:
    """Replace the active ontology (an edit outside the repair buttons).

    Displayed results reset; the new text also becomes the revert baseline.
    """
    ontology = parse(ontology_text, kind="ontology")
    session.ontology = ontology
    session.baseline = ontology
    session.epoch += 1
    session.last_result = None


def set_query(
    session: Session, missing: list[Axiom], signature: Signature | None = None
) -> None:
    """Store the missing axioms and permitted vocabulary (None = whole ontology)."""
    if not missing:
        raise EmptyQuery("at least one missing axiom is required")
    for axiom in missing:
        if not isinstance(axiom, Axiom):
            raise NonLogicalAxiom(f"not a logical axiom: {axiom!r}")
    session.query = NonEntailmentQuery(tuple(missing), signature)
    session.last_result = None


def attach_fixpoints(session: Session, fixpoints: FixpointHypothesisSet) -> None:
    session.fixpoints = fixpoints


def check_support(session: Session, method: str) -> Support:
    """Syntactic-only support check; must never trigger reasoning."""
    if method not in METHODS:
        return Support(False, f"unknown method: {method}")
    if method == UNRAVEL:
        if session.fixpoints is None:
            return Support(False, "no fixpoint hypothesis set attached")
        return Support(True)
    if session.query is None:
        return Support(False, "no missing entailment specified")
    missing = session.query.missing
    if method in COUNTEREXAMPLE_METHODS:
        if len(missing) != 1 or not isinstance(missing[0], SubClassOf):
            return Support(False, "requires a single subclass axiom")
        gci = missing[0]
        if not (is_core_concept(gci.sub) and is_core_concept(gci.sup)):
            return Support(False, "the subclass axiom uses constructs outside EL")
        if method != SMALL_MODEL:
            if uses_bottom(gci):
                return Support(False, "owl:Nothing is not supported by this generator")
            for axiom in session.ontology.tbox_axioms():
                if uses_bottom(axiom):
                    return Support(
                        False,
                        "the ontology uses owl:Nothing or disjointness; "
                        "relevant counterexamples need a bottom-free TBox",
                    )
        return Support(True)
    # naive abduction
    if not all(is_core_axiom(a) for a in missing):
        return Support(False, "missing entailments must be plain EL axioms")
    return Support(True)


def _staged_tbox(session: Session) -> list[Axiom]:
    return session.ontology.tbox_axioms() + list(session.pending_disjointnesses)


def _generate_graph(
    session: Session,
    method: str,
    tbox: list[Axiom],
    cancel: CancelToken | None,
    progress: list[str],
) -> GraphPayload:
    gci = session.query.missing[0]
    signature = session.resolved_signature()
    if method == SMALL_MODEL:
        progress.append("building a small model by tableau expansion")
        result = generate_small_model(tbox, gci, cancel=cancel)
        if result.entailed:
            raise AlreadyEntailed(render(gci))
        applications = sum(result.stats.rule_applications.values())
        progress.append(
            f"saturated after {applications} rule applications, "
            f"{result.stats.individual_count} individuals"
        )
        return GraphPayload(result.model, None, tuple(tbox), signature)
    progress.append("building the canonical model and filtering for relevance")
    try:
        part = extract_relevant_part(tbox, gci, _RELEVANCE_MODES[method])
    except IsEntailed as exc:
        raise AlreadyEntailed(render(gci)) from exc
    progress.append(f"kept {len(part.interpretation.elements)} relevant elements")
    return GraphPayload(part.interpretation, part, tuple(tbox), signature)


def generate_explanations(
    session: Session,
    method: str,
    page_size: int = 5,
    cancel: CancelToken | None = None,
) -> ExplanationResult:
    """Dispatch to a generator and store the result on the session.

    Counterexample methods ignore the ABox.  Hypothesis methods extend the
    previously displayed list by ``page_size`` items and post-process it
    with the session options.  Cancellation leaves the last result intact.
    """
    support = check_support(session, method)
    if not support.supported:
        raise UnsupportedMethod(support.message)
    session.current_cancel = cancel
    progress: list[str] = []
    try:
        if method in COUNTEREXAMPLE_METHODS:
            payload = _generate_graph(
                session, method, session.ontology.tbox_axioms(), cancel, progress
            )
            result = ExplanationResult(method, payload, tuple(progress))
        elif method == NAIVE_ABDUCTION:
            for p in session.query.missing:
                if entails(session.ontology, p):
                    raise AlreadyEntailed(render(p))
            query = NonEntailmentQuery(session.query.missing, session.resolved_signature())
            progress.append("enumerating candidate hypotheses over the vocabulary")
            stream = naive_abduce(
                session.ontology,
                query,
                max_axioms=session.options.abduction_max_axioms,
                max_depth=session.options.abduction_max_depth,
                cancel=cancel,
            )
            progress.append(f"{len(stream)} verified minimal hypotheses in total")
            previous = _previous_hypothesis_count(session, method)
            shown = stream[: previous + page_size]
            processed = postprocess_hypotheses(
                session.ontology,
                shown,
                drop_redundant_axioms=session.options.drop_redundant_axioms,
                simplify_members=session.options.simplify_members,
                order_by_specificity=session.options.order_by_specificity,
            )
            payload = HypothesesPayload(
                tuple(processed), exhausted=len(shown) >= len(stream)
            )
            result = ExplanationResult(method, payload, tuple(progress))
        else:  # unravel
            previous = _previous_hypothesis_count(session, method)
            count = previous + page_size
            progress.append(f"unraveling fixpoints into the first {count} hypotheses")
            hypotheses = unravel_fixpoints(session.fixpoints, count)
            exhausted = len(hypotheses) < count
            if session.query is not None:
                hypotheses = [
                    with_verification(session.ontology, h, session.query)
                    for h in hypotheses
                ]
            processed = postprocess_hypotheses(
                session.ontology,
                hypotheses,
                drop_redundant_axioms=session.options.drop_redundant_axioms,
                simplify_members=session.options.simplify_members,
                order_by_specificity=session.options.order_by_specificity,
            )
            payload = HypothesesPayload(tuple(processed), exhausted=exhausted)
            result = ExplanationResult(method, payload, tuple(progress))
    finally:
        session.current_cancel = None
    session.last_result = result
    return result


def _previous_hypothesis_count(session: Session, method: str) -> int:
    if (
        session.last_result is not None
        and session.last_result.method == method
        and isinstance(session.last_result.payload, HypothesesPayload)
    ):
        return len(session.last_result.payload.hypotheses)
    return 0


def mutate_disjointnesses(
    session: Session, add: list[str] | None = None, remove: int | None = None
) -> None:
    """Stage or unstage a disjointness axiom; the ontology is untouched."""
    if add is not None:
        if len(add) < 2:
            raise TooFewNames("a disjointness needs at least two class names")
        known = signature_of(session.ontology).concepts | (
            signature_of(list(session.query.missing)).concepts if session.query else set()
        )
        for name in add:
            if name not in known:
                raise UnknownName(f"unknown class name: {name}")
        session.pending_disjointnesses.append(
            DisjointClasses(tuple(Name(n) for n in add))
        )
        return
    if remove is not None:
        if not 0 <= remove < len(session.pending_disjointnesses):
            raise IndexOutOfRange(f"no staged disjointness at index {remove}")
        session.pending_disjointnesses.pop(remove)
        return
    raise ValueError("nothing to do: pass add=... or remove=...")


def recompute(
    session: Session, method: str, cancel: CancelToken | None = None
) -> ExplanationResult:
    """Re-run a counterexample method with the staged disjointnesses applied,
    without committing them."""
    if method not in COUNTEREXAMPLE_METHODS:
        raise UnsupportedMethod("recompute only applies to counterexample methods")
    support = check_support(session, method)
    if not support.supported:
        raise UnsupportedMethod(support.message)
    staged = _staged_tbox(session)
    if method != SMALL_MODEL and any(uses_bottom(a) for a in staged):
        raise UnsupportedMethod(
            "staged disjointnesses introduce owl:Nothing; "
            "relevant counterexamples need a bottom-free TBox"
        )
    session.current_cancel = cancel
    progress: list[str] = [
        f"recomputing with {len(session.pending_disjointnesses)} staged disjointnesses"
    ]
    try:
        payload = _generate_graph(session, method, staged, cancel, progress)
    except InconsistentInput as exc:
        raise InconsistentWithDisjointness(
            "the staged disjointnesses make the query's left-hand side unsatisfiable"
        ) from exc
    finally:
        session.current_cancel = None
    result = ExplanationResult(method, payload, tuple(progress))
    session.last_result = result
    return result


def apply_changes(session: Session, what: str, index: int | None = None) -> None:
    """Commit staged disjointnesses or one hypothesis into the working ontology.

    This is the service's own edit path, so the displayed result survives.
    """
    if what == "disjointnesses":
        if not session.pending_disjointnesses:
            raise NothingToApply("no staged disjointnesses")
        session.ontology = session.ontology.add(session.pending_disjointnesses)
        session.pending_disjointnesses.clear()
        session.epoch += 1
        return
    if what == "hypothesis":
        result = session.last_result
        if result is None or not isinstance(result.payload, HypothesesPayload):
            raise NothingToApply("no hypothesis list is displayed")
        hypotheses = result.payload.hypotheses
        if index is None or not 0 <= index < len(hypotheses):
            raise IndexOutOfRange(f"no hypothesis at index {index}")
        hypothesis = hypotheses[index]
        if hypothesis.is_extended:
            raise HypothesisNotApplicable(
                "this hypothesis uses constructs the ontology language cannot hold"
            )
        session.ontology = session.ontology.add(hypothesis.axioms)
        session.epoch += 1
        return
    raise ValueError(f"unknown apply target {what!r}")


def revert_changes(session: Session) -> None:
    """Restore the baseline exactly; staged edits and results are discarded."""
    session.ontology = session.baseline
    session.pending_disjointnesses.clear()
    session.last_result = None
    session.epoch += 1


def cancel_current(session: Session) -> bool:
    token = session.current_cancel
    if token is None:
        return False
    token.cancel()
    return True


def result_graph(session: Session, k: int = DEFAULT_LABEL_COUNT) -> GraphDoc:
    """Export the last graph result at the requested label count."""
    result = session.last_result
    if result is None or not isinstance(result.payload, GraphPayload):
        raise NoResult("no graph result to export")
    payload = result.payload
    return export_graph(payload.interpretation, k, payload.signature, list(payload.tbox))


# ---------------------------------------------------------------------------
# save files


def query_to_json(missing: list[Axiom]) -> str:
    return json.dumps({"missing": [render(a) for a in missing]})


def query_from_json(text: str) -> list[Axiom]:
    data = json.loads(text)
    return [parse(s, kind="axiom") for s in data["missing"]]


def signature_to_json(signature: Signature) -> str:
    return json.dumps(
        {
            "permitted": {
                "concepts": sorted(signature.concepts),
                "roles": sorted(signature.roles),
                "individuals": sorted(signature.individuals),
            }
        }
    )


def signature_from_json(text: str) -> Signature:
    data = json.loads(text)["permitted"]
    return Signature(
        frozenset(data.get("concepts", ())),
        frozenset(data.get("roles", ())),
        frozenset(data.get("individuals", ())),
    )


def session_snapshot(session: Session) -> str:
    """Single JSON document capturing the restorable session state."""
    return json.dumps(
        {
            "id": session.id,
            "ontology": session.ontology.serialize(),
            "baseline": session.baseline.serialize(),
            "missing": [render(a) for a in session.query.missing] if session.query else None,
            "signature": (
                json.loads(signature_to_json(session.query.signature))
                if session.query and session.query.signature is not None
                else None
            ),
            "pending": [render(a) for a in session.pending_disjointnesses],
            "epoch": session.epoch,
        }
    )


def session_restore(text: str) -> Session:
    data = json.loads(text)
    session = Session(
        id=data["id"],
        ontology=parse(data["ontology"], kind="ontology"),
        baseline=parse(data["baseline"], kind="ontology"),
        epoch=data["epoch"],
    )
    if data.get("missing"):
        signature = None
        if data.get("signature") is not None:
            signature = signature_from_json(json.dumps(data["signature"]))
        session.query = NonEntailmentQuery(
            tuple(parse(s, kind="axiom") for s in data["missing"]), signature
        )
    for staged in data.get("pending", ()):
        axiom = parse(staged, kind="axiom")
        session.pending_disjointnesses.append(axiom)
    return session
