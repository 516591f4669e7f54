"""Relevance-filtered canonical model fragments."""

import random

import pytest

from families import random_gci, random_ontology_axioms

from missing_why.errors import BottomInTBox, IsEntailed
from missing_why.interpretation import extension
from missing_why.ontology import Ontology
from missing_why.reasoner import canonical_model, entails
from missing_why.relevance import (
    RelevanceMode,
    contrasting_conditions,
    extract_relevant_part,
    generalize_condition,
)
from missing_why.syntax import (
    BOTTOM,
    TOP,
    DisjointClasses,
    Exists,
    Name,
    SubClassOf,
    render,
)


def test_alpha_part_example():
    tbox = [SubClassOf(Name("A"), Exists("r", Name("B")))]
    query = SubClassOf(Name("A"), Exists("r", Name("C")))
    part = extract_relevant_part(tbox, query, RelevanceMode.ALPHA)
    assert set(part.interpretation.elements) == {":A", ":B"}
    assert (":A", "r", ":B") in part.interpretation.roles
    assert part.witness == ":A"
    assert part.contrast is None


def test_beta_part_adds_contrast_element():
    tbox = [SubClassOf(Name("A"), Exists("r", Name("B")))]
    query = SubClassOf(Name("A"), Exists("r", Name("C")))
    part = extract_relevant_part(tbox, query, RelevanceMode.BETA)
    contrast_id = render(Exists("r", Name("C")))
    assert part.contrast == contrast_id
    assert contrast_id in part.interpretation.elements
    assert (contrast_id, "r", ":C") in part.interpretation.roles


def test_alpha_trivial_single_element():
    part = extract_relevant_part([], SubClassOf(Name("A"), Name("B")), RelevanceMode.ALPHA)
    assert part.interpretation.elements == (":A",)


def test_entailed_query_rejected():
    with pytest.raises(IsEntailed):
        extract_relevant_part(
            [SubClassOf(Name("A"), Name("B"))],
            SubClassOf(Name("A"), Name("B")),
            RelevanceMode.ALPHA,
        )


def test_bottom_in_tbox_rejected():
    for tbox in (
        [SubClassOf(Name("A"), BOTTOM)],
        [DisjointClasses((Name("A"), Name("B")))],
    ):
        with pytest.raises(BottomInTBox):
            extract_relevant_part(tbox, SubClassOf(Name("A"), Name("B")), RelevanceMode.ALPHA)


# -- contrasting conditions -----------------------------------------------------


def test_contrasting_conditions_direct_definition():
    tbox = [SubClassOf(Name("D"), Name("E1"))]
    conditions = contrasting_conditions(tbox, Name("C"), Name("D"))
    assert Name("E1") in conditions and Name("D") in conditions
    assert Name("C") not in conditions


def test_contrasting_conditions_empty_tbox():
    assert contrasting_conditions([], Name("C"), Name("D")) == [Name("D")]


def test_contrasting_conditions_satisfy_definition():
    checked = 0
    seed = 0
    while checked < 80:
        seed += 1
        rng = random.Random(60_000 + seed)
        tbox = random_ontology_axioms(rng, with_abox=False, allow_bottom=False)
        query = random_gci(rng, depth=1)
        ont = Ontology.from_axioms(tbox)
        if entails(ont, query):
            continue
        conditions = contrasting_conditions(tbox, query.sub, query.sup)
        for e in conditions:
            assert entails(ont, SubClassOf(query.sup, e)), (seed, render(e))
            assert not entails(ont, SubClassOf(query.sub, e)), (seed, render(e))
        # sorted by (depth, text) and duplicate-free
        keys = [(len(render(e).split("ObjectSomeValuesFrom")) - 1, render(e)) for e in conditions]
        assert keys == sorted(keys) and len(set(conditions)) == len(conditions)
        checked += 1


def test_contrasting_conditions_entailed_query_rejected():
    with pytest.raises(IsEntailed):
        contrasting_conditions([SubClassOf(Name("C"), Name("D"))], Name("C"), Name("D"))


# -- generalization --------------------------------------------------------------


def test_generalize_three_deep_chain_to_top():
    deep = Exists("r", Exists("r", Exists("r", Name("F"))))
    assert generalize_condition([], Name("C"), deep) == Exists("r", TOP)


def test_generalize_name_unchanged():
    assert generalize_condition([], Name("C"), Name("B")) == Name("B")


def test_generalize_keeps_full_condition_when_prefix_entailed():
    tbox = [SubClassOf(Name("C"), Exists("r", Name("G")))]
    condition = Exists("r", Name("F"))
    assert generalize_condition(tbox, Name("C"), condition) == condition


def test_generalize_output_contract():
    checked = 0
    seed = 0
    while checked < 60:
        seed += 1
        rng = random.Random(70_000 + seed)
        tbox = random_ontology_axioms(rng, with_abox=False, allow_bottom=False)
        query = random_gci(rng, depth=1)
        ont = Ontology.from_axioms(tbox)
        if entails(ont, query):
            continue
        for e in contrasting_conditions(tbox, query.sub, query.sup):
            g = generalize_condition(tbox, query.sub, e)
            assert entails(ont, SubClassOf(e, g)), "truncation must weaken"
            assert not entails(ont, SubClassOf(query.sub, g))
        checked += 1


# -- refinement chain -------------------------------------------------------------


def test_refinement_chain_and_witness_properties():
    checked = 0
    seed = 0
    while checked < 120:
        seed += 1
        rng = random.Random(80_000 + seed)
        tbox = random_ontology_axioms(rng, with_abox=False, allow_bottom=False)
        query = random_gci(rng)
        ont = Ontology.from_axioms(tbox)
        if entails(ont, query):
            continue
        parts = {mode: extract_relevant_part(tbox, query, mode) for mode in RelevanceMode}
        elements = {mode: set(parts[mode].interpretation.elements) for mode in RelevanceMode}
        assert elements[RelevanceMode.ALPHA] <= elements[RelevanceMode.BETA]
        assert (
            elements[RelevanceMode.DELTABAR]
            <= elements[RelevanceMode.DELTA]
            <= elements[RelevanceMode.BETA]
        )
        full = canonical_model(tbox, [query.sub, query.sup])
        for mode, part in parts.items():
            sub = part.interpretation
            # the subinterpretation still refutes the query at the witness
            assert part.witness in extension(sub, query.sub), (seed, mode)
            assert part.witness not in extension(sub, query.sup), (seed, mode)
            # and the witness properties hold in the full canonical model too
            assert part.witness in extension(full, query.sub), (seed, mode)
            assert part.witness not in extension(full, query.sup), (seed, mode)
            assert sub.marked == frozenset({part.witness})
        checked += 1


def test_delta_conditions_populated_and_deltabar_generalized():
    tbox = [
        SubClassOf(Name("D"), Exists("r", Exists("r", Name("F")))),
        SubClassOf(Name("C"), Name("G")),
    ]
    query = SubClassOf(Name("C"), Name("D"))
    delta = extract_relevant_part(tbox, query, RelevanceMode.DELTA)
    deep = Exists("r", Exists("r", Name("F")))
    assert deep in delta.conditions
    deltabar = extract_relevant_part(tbox, query, RelevanceMode.DELTABAR)
    assert Exists("r", TOP) in deltabar.conditions
    assert deep not in deltabar.conditions
    assert set(deltabar.interpretation.elements) <= set(delta.interpretation.elements)
