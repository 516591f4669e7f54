"""Parser, canonical printer and signature extraction."""

import random

import pytest

from missing_why.errors import (
    ExtendedSyntaxInCoreContext,
    ParseError,
    UnboundFixpointVariable,
)
from missing_why.parsing import parse
from missing_why.syntax import (
    BOTTOM,
    TOP,
    And,
    ClassAssertion,
    DisjointClasses,
    EquivalentClasses,
    Exists,
    Inverse,
    Mu,
    Name,
    Nominal,
    Or,
    RoleAssertion,
    SubClassOf,
    Var,
    check_closed,
    conj,
    disj,
    render,
    signature_of,
)


def test_parse_intersection_with_existential():
    concept = parse("ObjectIntersectionOf(:A ObjectSomeValuesFrom(:r :B))", kind="concept")
    assert concept == And((Name("A"), Exists("r", Name("B"))))


def test_parse_reserved_top_token():
    assert parse("owl:Thing", kind="concept") == TOP
    assert parse("owl:Nothing", kind="concept") == BOTTOM


def test_parse_arity_violation_reports_position():
    with pytest.raises(ParseError) as err:
        parse("ObjectSomeValuesFrom(:r)", kind="concept")
    assert err.value.line == 1
    assert err.value.col > 1


def test_parse_error_names_offending_line():
    text = "SubClassOf(:A :B)\nSubClassOf(:A\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == 2


def test_render_sorts_conjuncts():
    assert render(conj([Name("B"), Name("A")])) == "ObjectIntersectionOf(:A :B)"


def test_render_bottom():
    assert render(BOTTOM) == "owl:Nothing"


def test_conjunction_is_canonical():
    left = conj([Name("A"), conj([Name("B"), Name("A")])])
    right = conj([Name("B"), Name("A")])
    assert left == right
    assert conj([Name("A")]) == Name("A")


def test_extended_syntax_rejected_in_core_kinds():
    for text in (
        "ObjectUnionOf(:A :B)",
        "ObjectOneOf(:a)",
        "Mu(X ObjectSomeValuesFrom(:r X))",
        "ObjectSomeValuesFrom(ObjectInverseOf(:r) :A)",
    ):
        with pytest.raises(ExtendedSyntaxInCoreContext):
            parse(text, kind="concept")


def test_extended_axiom_parses_fixpoint_and_inverse():
    axiom = parse(
        "ClassAssertion(Mu(X ObjectUnionOf(ObjectOneOf(:p) "
        "ObjectSomeValuesFrom(ObjectInverseOf(:r) X))) :q)",
        kind="extended_axiom",
    )
    assert isinstance(axiom, ClassAssertion)
    mu = axiom.concept
    assert isinstance(mu, Mu)
    assert Var("X") in _vars_of(mu.body)


def _vars_of(concept):
    out = set()

    def walk(c):
        if isinstance(c, Var):
            out.add(c)
        elif isinstance(c, (And, Or)):
            for a in c.args:
                walk(a)
        elif isinstance(c, Exists):
            walk(c.filler)
        elif isinstance(c, Mu):
            walk(c.body)

    walk(concept)
    return out


def test_unbound_variable_check():
    with pytest.raises(UnboundFixpointVariable):
        check_closed(Exists("r", Var("X")))
    check_closed(Mu("X", Exists("r", Var("X"))))  # closed, no error


def test_reserved_namespace_rejected():
    with pytest.raises(ParseError):
        parse("SubClassOf(:_:X0 :B)", kind="axiom")


def test_ontology_parsing_splits_tbox_and_abox():
    text = (
        "# a comment line\n"
        "SubClassOf(:A :B)\n"
        "\n"
        "ClassAssertion(:A :a)  # trailing comment\n"
        "ObjectPropertyAssertion(:r :a :b)\n"
    )
    ontology = parse(text)
    assert [render(a) for a in ontology.tbox_axioms()] == ["SubClassOf(:A :B)"]
    assert len(ontology.abox_axioms()) == 2


def test_ontology_serialize_preserves_document_order():
    text = "ClassAssertion(:A :a)\nSubClassOf(:A :B)\n"
    assert parse(text).serialize() == text


def test_ontology_ids_survive_add_remove():
    ontology = parse("SubClassOf(:A :B)\n")
    extended = ontology.add([SubClassOf(Name("B"), Name("C"))])
    assert extended.remove(1).serialize() == ontology.serialize()


# -- round trips -------------------------------------------------------------


def _random_core_concept(rng, depth):
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        return rng.choice([Name(rng.choice("ABCDE")), TOP, BOTTOM])
    if roll < 0.7:
        return Exists(rng.choice("rs"), _random_core_concept(rng, depth - 1))
    return conj([_random_core_concept(rng, depth - 1) for _ in range(rng.randint(2, 3))])


def _random_extended_concept(rng, depth, scope=()):
    roll = rng.random()
    if depth == 0 or roll < 0.3:
        choices = [Name(rng.choice("ABCDE")), TOP, BOTTOM, Nominal(rng.choice("pq"))]
        if scope:
            choices.append(Var(rng.choice(scope)))
        return rng.choice(choices)
    if roll < 0.5:
        role = rng.choice(["r", "s", Inverse("r")])
        return Exists(role, _random_extended_concept(rng, depth - 1, scope))
    if roll < 0.65:
        return conj([_random_extended_concept(rng, depth - 1, scope) for _ in range(2)])
    if roll < 0.8:
        return disj([_random_extended_concept(rng, depth - 1, scope) for _ in range(2)])
    var = rng.choice("XYZ")
    return Mu(var, _random_extended_concept(rng, depth - 1, tuple(scope) + (var,)))


def _random_axiom(rng):
    kind = rng.randrange(5)
    c = lambda: _random_core_concept(rng, rng.randint(0, 3))
    if kind == 0:
        return SubClassOf(c(), c())
    if kind == 1:
        return EquivalentClasses((c(), c()))
    if kind == 2:
        return DisjointClasses(tuple(c() for _ in range(rng.randint(2, 3))))
    if kind == 3:
        return ClassAssertion(c(), rng.choice("ab"))
    return RoleAssertion(rng.choice("rs"), rng.choice("ab"), rng.choice("ab"))


def test_round_trip_1000_random_asts():
    rng = random.Random(42)
    for _ in range(700):
        axiom = _random_axiom(rng)
        assert parse(render(axiom), kind="axiom") == axiom
    for _ in range(300):
        concept = _random_extended_concept(rng, rng.randint(0, 3))
        rendered = render(concept)
        assert parse(rendered, kind="extended_concept") == concept
        assert render(parse(rendered, kind="extended_concept")) == rendered


def test_signature_survives_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        axiom = _random_axiom(rng)
        assert signature_of(parse(render(axiom), kind="axiom")) == signature_of(axiom)


# -- signatures ---------------------------------------------------------------


def test_signature_of_gci():
    sig = signature_of(SubClassOf(Name("A"), Exists("r", Name("B"))))
    assert set(sig.concepts) == {"A", "B"}
    assert set(sig.roles) == {"r"}
    assert not sig.individuals


def test_signature_of_top_is_empty():
    sig = signature_of(TOP)
    assert not sig.concepts and not sig.roles and not sig.individuals


def test_signature_of_corpus_matches_hand_count(corpus_text):
    # counted by hand from the corpus file
    sig = signature_of(parse(corpus_text))
    assert sig.concepts == frozenset(
        {
            "Pizza",
            "Food",
            "ToppingT",
            "CheeseT",
            "VegT",
            "SpicyT",
            "MozzarellaT",
            "TomatoT",
            "PepperT",
            "SpicyAnalogue",
            "SpicyTarget",
        }
    )
    assert sig.roles == frozenset({"hasTopping"})
    assert sig.individuals == frozenset({"demoPizza"})
