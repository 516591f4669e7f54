"""Parser for the functional-style concrete syntax.

One axiom per line; ``#`` starts a comment; the ``:`` prefix on names is
optional.  ``kind`` selects the start symbol: ``ontology``, ``axiom``,
``concept`` or ``extended_axiom``.  Only ``extended_axiom`` admits union,
nominals, inverse roles and Mu fixpoints; elsewhere those raise
:class:`ExtendedSyntaxInCoreContext`.

Inside ``Mu(X ...)`` any occurrence of the binder token (with or without the
``:`` prefix) refers to the bound variable, so parsed fixpoint terms are
closed by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExtendedSyntaxInCoreContext, ParseError
from .ontology import Ontology
from .syntax import (
    BOTTOM,
    BOTTOM_TOKEN,
    RESERVED_PREFIX,
    TOP,
    TOP_TOKEN,
    Axiom,
    ClassAssertion,
    Concept,
    DisjointClasses,
    EquivalentClasses,
    Exists,
    Inverse,
    Mu,
    Nominal,
    RoleAssertion,
    SubClassOf,
    Var,
    conj,
    disj,
    Name,
)

_AXIOM_KEYWORDS = {
    "SubClassOf",
    "EquivalentClasses",
    "DisjointClasses",
    "ClassAssertion",
    "ObjectPropertyAssertion",
}
_CONCEPT_KEYWORDS = {
    "ObjectIntersectionOf",
    "ObjectSomeValuesFrom",
    "ObjectUnionOf",
    "ObjectOneOf",
    "ObjectInverseOf",
    "Mu",
}
_EXTENDED_KEYWORDS = {"ObjectUnionOf", "ObjectOneOf", "ObjectInverseOf", "Mu"}
_KEYWORDS = _AXIOM_KEYWORDS | _CONCEPT_KEYWORDS


@dataclass(frozen=True)
class _Token:
    kind: str  # "(", ")", "name", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str, first_line: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    line = first_line
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and not text[i].isspace() and text[i] not in "()#":
                i += 1
                col += 1
            tokens.append(_Token("name", text[start:i], line, start_col))
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], extended: bool):
        self.tokens = tokens
        self.pos = 0
        self.extended = extended

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, expected: str | None = None, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col, expected)

    def expect(self, kind: str, expected: str):
        tok = self.next()
        if tok.kind != kind:
            self.fail(f"got {tok.text!r}", expected, tok)
        return tok

    def name_token(self, what: str) -> str:
        tok = self.next()
        if tok.kind != "name":
            self.fail(f"got {tok.text!r}", what, tok)
        token = tok.text
        if token.startswith(":"):
            token = token[1:]
        if not token:
            self.fail("empty name", what, tok)
        if token.startswith(RESERVED_PREFIX):
            self.fail(f"{tok.text!r} uses the reserved '_:' namespace", what, tok)
        if token in _KEYWORDS or token in (TOP_TOKEN, BOTTOM_TOKEN):
            self.fail(f"{token!r} is a reserved word", what, tok)
        return token

    # -- concepts ---------------------------------------------------------

    def concept(self, scope: frozenset[str] = frozenset()) -> Concept:
        tok = self.next()
        if tok.kind != "name":
            self.fail(f"got {tok.text!r}", "concept", tok)
        word = tok.text
        if word == TOP_TOKEN:
            return TOP
        if word == BOTTOM_TOKEN:
            return BOTTOM
        if word in _EXTENDED_KEYWORDS and not self.extended:
            raise ExtendedSyntaxInCoreContext(
                f"line {tok.line}, col {tok.col}: {word} is only allowed in hypotheses"
            )
        if word == "ObjectIntersectionOf":
            return conj(self.concept_args(scope, tok))
        if word == "ObjectUnionOf":
            return disj(self.concept_args(scope, tok))
        if word == "ObjectSomeValuesFrom":
            self.expect("(", "'('")
            role = self.role()
            if self.peek().kind == ")":
                self.fail("ObjectSomeValuesFrom needs a role and a filler", "concept")
            filler = self.concept(scope)
            self.expect(")", "')'")
            return Exists(role, filler)
        if word == "ObjectOneOf":
            self.expect("(", "'('")
            ind = self.name_token("individual")
            self.expect(")", "')'")
            return Nominal(ind)
        if word == "Mu":
            self.expect("(", "'('")
            var_tok = self.next()
            if var_tok.kind != "name":
                self.fail(f"got {var_tok.text!r}", "fixpoint variable", var_tok)
            var = var_tok.text.lstrip(":")
            if not var or var in _KEYWORDS:
                self.fail("bad fixpoint variable", "fixpoint variable", var_tok)
            body = self.concept(scope | {var})
            self.expect(")", "')'")
            return Mu(var, body)
        if word in _KEYWORDS:
            self.fail(f"{word!r} cannot start a concept here", "concept", tok)
        token = word[1:] if word.startswith(":") else word
        if not token:
            self.fail("empty name", "concept", tok)
        if token in scope:
            return Var(token)
        if token.startswith(RESERVED_PREFIX):
            self.fail(f"{word!r} uses the reserved '_:' namespace", "concept", tok)
        return Name(token)

    def concept_args(self, scope: frozenset[str], head: _Token, minimum: int = 2) -> list[Concept]:
        self.expect("(", "'('")
        args = []
        while self.peek().kind != ")":
            if self.peek().kind == "eof":
                self.fail("unclosed argument list", "')'")
            args.append(self.concept(scope))
        self.next()
        if len(args) < minimum:
            self.fail(f"{head.text} needs at least {minimum} arguments", "concept", head)
        return args

    def role(self):
        tok = self.peek()
        if tok.kind == "name" and tok.text == "ObjectInverseOf":
            self.next()
            if not self.extended:
                raise ExtendedSyntaxInCoreContext(
                    f"line {tok.line}, col {tok.col}: ObjectInverseOf is only allowed in hypotheses"
                )
            self.expect("(", "'('")
            role = self.name_token("role")
            self.expect(")", "')'")
            return Inverse(role)
        return self.name_token("role")

    # -- axioms -----------------------------------------------------------

    def axiom(self) -> Axiom:
        tok = self.next()
        if tok.kind != "name" or tok.text not in _AXIOM_KEYWORDS:
            self.fail(f"got {tok.text!r}", "axiom keyword", tok)
        word = tok.text
        self.expect("(", "'('")
        if word == "SubClassOf":
            sub = self.concept()
            if self.peek().kind == ")":
                self.fail("SubClassOf needs two concepts", "concept")
            sup = self.concept()
            self.expect(")", "')'")
            return SubClassOf(sub, sup)
        if word in ("EquivalentClasses", "DisjointClasses"):
            concepts = []
            while self.peek().kind != ")":
                if self.peek().kind == "eof":
                    self.fail("unclosed argument list", "')'")
                concepts.append(self.concept())
            self.next()
            if len(concepts) < 2:
                self.fail(f"{word} needs at least 2 concepts", "concept", tok)
            cls = EquivalentClasses if word == "EquivalentClasses" else DisjointClasses
            return cls(tuple(concepts))
        if word == "ClassAssertion":
            concept = self.concept()
            ind = self.name_token("individual")
            self.expect(")", "')'")
            return ClassAssertion(concept, ind)
        # ObjectPropertyAssertion
        role = self.name_token("role")
        subject = self.name_token("individual")
        target = self.name_token("individual")
        self.expect(")", "')'")
        return RoleAssertion(role, subject, target)

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "eof":
            self.fail(f"trailing input {tok.text!r}", "end of input", tok)


def parse(text: str, kind: str = "ontology"):
    """Parse ``text`` into the AST selected by ``kind``.

    Returns an :class:`Ontology`, an :class:`Axiom` or a :class:`Concept`.
    """
    if kind == "ontology":
        axioms: list[Axiom] = []
        for lineno, raw in enumerate(text.split("\n"), start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            parser = _Parser(_tokenize(raw.split("#", 1)[0], first_line=lineno), extended=False)
            axioms.append(parser.axiom())
            parser.finish()
        return Ontology.from_axioms(axioms)
    if kind == "axiom":
        parser = _Parser(_tokenize(text), extended=False)
        result = parser.axiom()
    elif kind == "extended_axiom":
        parser = _Parser(_tokenize(text), extended=True)
        result = parser.axiom()
    elif kind == "concept":
        parser = _Parser(_tokenize(text), extended=False)
        result = parser.concept()
    elif kind == "extended_concept":
        parser = _Parser(_tokenize(text), extended=True)
        result = parser.concept()
    else:
        raise ValueError(f"unknown parse kind {kind!r}")
    parser.finish()
    return result
