import random

import pytest

from prefonto import DecisionProblem, DescriptionPattern, KnowledgeBase, decide, match_option
from prefonto.errors import (
    AmbiguousPreference,
    DecisionError,
    NoApplicablePreference,
    NoUniqueMatch,
    UnknownDescription,
    UnknownIndividual,
)

import oracles
from generators import random_poset


def drinking(id, drink):
    return DescriptionPattern(
        id, (("a", "Agent"), ("e", "Consuming"), ("o", drink)),
        (("e", "performedBy", "a"), ("e", "objectActedOn", "o")),
    )


def test_coffee_or_tea(coffee_kb):
    result = decide(coffee_kb, DecisionProblem("user1", ("descCoffee", "descTea")))
    assert result.choices == ("descTea",)
    assert result.matched == {"descCoffee": ("elCoffee",), "descTea": ("elTea",)}
    assert result.unmatched == ()
    assert result.provenance == ("order1",)


def test_single_option(coffee_kb):
    assert decide(coffee_kb, DecisionProblem("user1", ("descCoffee",))).choices == ("descCoffee",)


def test_match_option(coffee_kb):
    assert match_option(coffee_kb, "descCoffee", "pref1") == "elCoffee"
    assert match_option(coffee_kb, "descTea", "pref1") == "elTea"


def test_unmatched_option_is_reported(coffee_kb):
    coffee_kb.define_concept("Juice", ["Beverage"])
    coffee_kb.add_description(drinking("descJuice", "Juice"))
    result = decide(coffee_kb, DecisionProblem("user1", ("descCoffee", "descJuice")))
    assert result.choices == ("descCoffee",)
    assert result.unmatched == ("descJuice",)
    assert match_option(coffee_kb, "descJuice", "pref1") is None


def test_no_applicable_preference(coffee_kb):
    coffee_kb.define_concept("Juice", ["Beverage"])
    coffee_kb.add_description(drinking("descJuice", "Juice"))
    with pytest.raises(NoApplicablePreference):
        decide(coffee_kb, DecisionProblem("user1", ("descJuice",)))


def test_most_specific_candidate_wins(coffee_kb):
    coffee_kb.add_description(drinking("descBeverage", "Beverage"))
    coffee_kb.add_element("order1", "elBeverage", "descBeverage")
    assert match_option(coffee_kb, "descCoffee", "pref1") == "elCoffee"
    coffee_kb.define_concept("Juice", ["Beverage"])
    coffee_kb.add_description(drinking("descJuice", "Juice"))
    assert match_option(coffee_kb, "descJuice", "pref1") == "elBeverage"


def test_incomparable_candidates_are_ambiguous():
    kb = KnowledgeBase()
    kb.define_concept("Consuming", ["Event"])
    kb.define_concept("Hot")
    kb.define_concept("Sweet")
    kb.define_concept("Cocoa", ["Hot", "Sweet"])
    for d in ("Hot", "Sweet", "Cocoa"):
        kb.add_description(drinking(f"desc{d}", d))
    kb.add_individual("u", ["Agent"])
    kb.add_order("o")
    kb.add_element("o", "elHot", "descHot")
    kb.add_element("o", "elSweet", "descSweet")
    kb.add_preference("p", "u", "o")
    with pytest.raises(NoUniqueMatch) as info:
        match_option(kb, "descCocoa", "p")
    assert set(info.value.candidates) == {"elHot", "elSweet"}


def test_conflicting_preferences_are_surfaced(coffee_kb):
    coffee_kb.add_order("order2")
    coffee_kb.add_element("order2", "elCoffee2", "descCoffee")
    coffee_kb.add_element("order2", "elTea2", "descTea")
    coffee_kb.add_leq("order2", "elTea2", "elCoffee2")
    coffee_kb.add_preference("pref2", "user1", "order2")
    with pytest.raises(AmbiguousPreference) as info:
        decide(coffee_kb, DecisionProblem("user1", ("descCoffee", "descTea")))
    assert info.value.choice_sets == {"pref1": ["descTea"], "pref2": ["descCoffee"]}


def test_context_filters_preferences(coffee_kb):
    coffee_kb.add_individual("emptySit", ["Situation"])
    with pytest.raises(NoApplicablePreference):
        decide(coffee_kb, DecisionProblem("user1", ("descCoffee", "descTea"), "emptySit"))
    result = decide(coffee_kb, DecisionProblem("user1", ("descCoffee", "descTea"), "sit1"))
    assert result.choices == ("descTea",)


def test_inventory_marks_infeasible_options(coffee_kb):
    problem = DecisionProblem("user1", ("descCoffee", "descTea"))
    # at depth 1 coffee stands in for tea, both being beverages
    assert decide(coffee_kb, problem, inventory=["coffee1"]).choices == ("descTea",)
    result = decide(coffee_kb, problem, inventory=["coffee1"], depth=0)
    assert result.choices == ("descCoffee",)
    assert result.infeasible == ("descTea",)


def test_bad_problems(coffee_kb):
    with pytest.raises(DecisionError):
        DecisionProblem("user1", ())
    with pytest.raises(DecisionError):
        DecisionProblem("user1", ("descTea", "descTea"))
    with pytest.raises(UnknownIndividual):
        decide(coffee_kb, DecisionProblem("coffee1", ("descTea",)))
    with pytest.raises(UnknownDescription):
        decide(coffee_kb, DecisionProblem("user1", ("descMilk",)))


def antichain_kb(rng, n):
    """One agent, one order over ``n`` drink descriptions plus two unranked ones."""
    kb = KnowledgeBase()
    kb.define_concept("Beverage")
    kb.define_concept("Consuming", ["Event"])
    kb.add_individual("u", ["Agent"])
    kb.add_order("o")
    elements, pairs = random_poset(rng, n)
    for i, e in enumerate(elements):
        kb.define_concept(f"D{i}", ["Beverage"])
        kb.add_description(drinking(f"d{i}", f"D{i}"))
        kb.add_element("o", e, f"d{i}")
    for a, b in pairs:
        kb.add_leq("o", a, b)
    for j in (n, n + 1):
        kb.define_concept(f"D{j}", ["Beverage"])
        kb.add_description(drinking(f"d{j}", f"D{j}"))
    kb.add_preference("p", "u", "o")
    return kb, elements, pairs


def test_antichain_of_three_returns_all():
    kb = KnowledgeBase()
    kb.define_concept("Consuming", ["Event"])
    kb.add_individual("u", ["Agent"])
    kb.add_order("o")
    for d in "xyz":
        kb.define_concept(d.upper())
        kb.add_description(drinking(d, d.upper()))
        kb.add_element("o", f"el{d}", d)
    kb.add_preference("p", "u", "o")
    assert decide(kb, DecisionProblem("u", ("x", "y", "z"))).choices == ("x", "y", "z")


@pytest.mark.parametrize("seed", range(60))
def test_choices_are_preimage_of_maxima(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    kb, elements, pairs = antichain_kb(rng, n)
    rel = oracles.closure(elements, pairs)
    descs = [f"d{i}" for i in range(n + 2)]
    options = rng.sample(descs, rng.randint(1, min(8, len(descs))))
    el_of = {f"d{i}": e for i, e in enumerate(elements)}
    matched = {o: el_of[o] for o in options if o in el_of}
    if not matched:
        with pytest.raises(NoApplicablePreference):
            decide(kb, DecisionProblem("u", tuple(options)))
        return
    top = oracles.maximal(set(matched.values()), rel)
    result = decide(kb, DecisionProblem("u", tuple(options)))
    assert set(result.choices) == {o for o, e in matched.items() if e in top}
    assert set(result.unmatched) == set(options) - set(matched)
    assert set(result.matched) | set(result.unmatched) == set(options)
    assert decide(kb, DecisionProblem("u", tuple(reversed(options)))) == result


@pytest.mark.parametrize("seed", range(30))
def test_adding_a_dominated_option_changes_nothing(seed):
    rng = random.Random(seed)
    kb, elements, pairs = antichain_kb(rng, rng.randint(2, 7))
    order = kb.order("o")
    el_desc = {e: f"d{i}" for i, e in enumerate(elements)}
    for bottom in elements:
        rest = [e for e in elements if e != bottom]
        chosen = [e for e in rest if rng.random() < 0.6] or rest[:1]
        if not all(order.less(bottom, e) for e in chosen):
            continue
        before = decide(kb, DecisionProblem("u", tuple(el_desc[e] for e in chosen)))
        after = decide(kb, DecisionProblem("u", tuple(el_desc[e] for e in chosen + [bottom])))
        assert before.choices == after.choices
