"""missing-why: explain why an ontology does not entail an axiom.

Counterexample models (tableau-built small models, relevance-filtered
canonical models), signature-bounded abduction with fixpoint unraveling,
and an interactive repair loop over a functional-style ontology syntax.
"""

from .abduction import (
    FixpointHypothesisSet,
    Hypothesis,
    naive_abduce,
    parse_fixpoint_blocks,
    postprocess_hypotheses,
    unravel_fixpoints,
    verify_hypothesis,
)
from .cancellation import CancelToken
from .graphdoc import GraphDoc, export_graph, graph_to_dot, graph_to_json
from .interpretation import Interpretation, extension, model_satisfies
from .ontology import Ontology
from .parsing import parse
from .reasoner import (
    NonEntailmentQuery,
    NormalizedTBox,
    canonical_model,
    entails,
    is_consistent,
    normalize,
)
from .relevance import (
    RelevanceMode,
    RelevantPart,
    contrasting_conditions,
    extract_relevant_part,
    generalize_condition,
)
from .smallmodel import CounterexampleResult, generate_small_model
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
    Inverse,
    Mu,
    Name,
    Nominal,
    Or,
    RoleAssertion,
    Signature,
    SubClassOf,
    Top,
    Var,
    conj,
    disj,
    render,
    signature_of,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Axiom",
    "BOTTOM",
    "Bottom",
    "CancelToken",
    "ClassAssertion",
    "Concept",
    "CounterexampleResult",
    "DisjointClasses",
    "EquivalentClasses",
    "Exists",
    "FixpointHypothesisSet",
    "GraphDoc",
    "Hypothesis",
    "Interpretation",
    "Inverse",
    "Mu",
    "Name",
    "Nominal",
    "NonEntailmentQuery",
    "NormalizedTBox",
    "Ontology",
    "Or",
    "RelevanceMode",
    "RelevantPart",
    "RoleAssertion",
    "Signature",
    "SubClassOf",
    "TOP",
    "Top",
    "Var",
    "canonical_model",
    "conj",
    "contrasting_conditions",
    "disj",
    "entails",
    "export_graph",
    "extension",
    "extract_relevant_part",
    "generalize_condition",
    "generate_small_model",
    "graph_to_dot",
    "graph_to_json",
    "is_consistent",
    "model_satisfies",
    "naive_abduce",
    "normalize",
    "parse",
    "parse_fixpoint_blocks",
    "postprocess_hypotheses",
    "render",
    "signature_of",
    "unravel_fixpoints",
    "verify_hypothesis",
]
