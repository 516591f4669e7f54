"""Exception types shared across the package.

Every error carries a machine-readable ``code`` used verbatim by the HTTP
layer, so changing a code is an API break.
"""

from __future__ import annotations


class MissingWhyError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ParseError(MissingWhyError):
    """Concrete-syntax error with a 1-based source position."""

    code = "syntax_error"

    def __init__(self, message: str, line: int, col: int, expected: str | None = None):
        self.line = line
        self.col = col
        self.expected = expected
        detail = f"line {line}, col {col}: {message}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class UnboundFixpointVariable(MissingWhyError):
    """A fixpoint variable occurs outside any binder for its token."""

    code = "unbound_fixpoint_variable"

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"fixpoint variable {token!r} is not bound by any enclosing Mu")


class ExtendedSyntaxInCoreContext(MissingWhyError):
    """Union, nominal, inverse role or Mu used where only plain EL is allowed."""

    code = "extended_syntax"


class SeedInconsistent(MissingWhyError):
    """A canonical-model seed concept is subsumed by owl:Nothing."""

    code = "seed_inconsistent"


class InconsistentInput(MissingWhyError):
    """The query's left-hand side cannot have any instance under this TBox."""

    code = "inconsistent_input"


class Cancelled(MissingWhyError):
    code = "cancelled"


class StepBudgetExceeded(MissingWhyError):
    """Watchdog tripped: too many rule applications or too much wall time."""

    code = "step_budget_exceeded"


class NotSaturated(MissingWhyError):
    code = "not_saturated"


class UnknownIndividual(MissingWhyError):
    code = "unknown_individual"


class IsEntailed(MissingWhyError):
    """Raised by relevance operations when the queried subsumption holds."""

    code = "is_entailed"


class BottomInTBox(MissingWhyError):
    """Relevant counterexamples need a bottom-free (plain EL) ontology."""

    code = "bottom_in_tbox"


class AlreadyEntailed(MissingWhyError):
    """The ontology already entails the axiom that was declared missing."""

    code = "already_entailed"

    def __init__(self, axiom_text: str):
        self.axiom_text = axiom_text
        super().__init__(f"the entailment already holds: {axiom_text}")


class EmptySignature(MissingWhyError):
    code = "empty_signature"


class EmptyQuery(MissingWhyError):
    code = "empty_query"


class NonLogicalAxiom(MissingWhyError):
    code = "non_logical_axiom"


class NonPositiveCount(MissingWhyError):
    code = "non_positive_count"


class UnsupportedMethod(MissingWhyError):
    """generate/recompute called although check_support said Unsupported."""

    code = "unsupported_method"


class IndexOutOfRange(MissingWhyError):
    code = "index_out_of_range"


class TooFewNames(MissingWhyError):
    code = "too_few_names"


class UnknownName(MissingWhyError):
    code = "unknown_name"


class NothingToApply(MissingWhyError):
    code = "nothing_to_apply"


class NoResult(MissingWhyError):
    """No stored result of the kind the operation needs."""

    code = "no_result"


class InconsistentWithDisjointness(MissingWhyError):
    """Staged disjointness axioms make the query's left-hand side unsatisfiable."""

    code = "inconsistent_with_disjointness"


class HypothesisNotApplicable(MissingWhyError):
    """The selected hypothesis uses syntax the ontology language cannot hold."""

    code = "hypothesis_not_applicable"


class SessionNotFound(MissingWhyError):
    code = "session_not_found"


class InternalClash(MissingWhyError):
    """Defensive guard: owl:Nothing was derived for a tableau individual.

    Unreachable when the documented preconditions hold; raised instead of
    silently producing a broken model.
    """

    code = "internal_clash"
