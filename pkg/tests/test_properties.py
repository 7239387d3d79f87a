import random

from hypothesis import given, settings
from hypothesis import strategies as st

from prefonto import DecisionProblem, KnowledgeBase, PreferenceOrder, decide, fulfillable
from prefonto.errors import CycleError, CycleIntroduced, DecisionError, FunctionalViolation

import oracles
from generators import random_kb

seeds = st.integers(min_value=0, max_value=10**6)
edges = st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=30)


def acyclic(kb: KnowledgeBase) -> bool:
    return all(c not in oracles.ancestors(kb, p) for c in kb.taxonomy for p in kb.taxonomy.parents(c))


@given(edges)
def test_taxonomy_stays_a_dag(pairs):
    kb = KnowledgeBase()
    for i in range(8):
        kb.define_concept(f"K{i}")
    for a, b in pairs:
        try:
            kb.add_parent(f"K{a}", f"K{b}")
        except CycleIntroduced:
            pass
        assert acyclic(kb)


@given(seeds, st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.booleans()), max_size=20))
def test_ordered_by_and_encapsulates_stay_functional(seed, moves):
    kb = random_kb(random.Random(seed))
    elements = sorted(kb.instances_of("OrderedElement"))
    orders = sorted(kb.orders)
    descs = sorted(kb.descriptions)
    for i, j, which in moves:
        el = elements[i % len(elements)]
        try:
            if which:
                kb.assert_triple(el, "orderedBy", orders[j % len(orders)])
            else:
                kb.assert_triple(el, "encapsulates", descs[j % len(descs)])
        except FunctionalViolation:
            pass
    for el in elements:
        assert len(kb.objects(el, "orderedBy")) == 1
        assert len(kb.objects(el, "encapsulates")) == 1
    assert kb.validate().ok


@given(edges)
def test_partial_order_laws(pairs):
    order = PreferenceOrder("o")
    els = [f"e{i}" for i in range(8)]
    for e in els:
        order.add_element(e)
    for a, b in pairs:
        try:
            order.add_leq(f"e{a}", f"e{b}")
        except CycleError:
            pass
    for a in els:
        assert order.leq(a, a)
        for b in els:
            if a != b and order.leq(a, b):
                assert not order.leq(b, a)
            for c in els:
                if order.leq(a, b) and order.leq(b, c):
                    assert order.leq(a, c)
    top = order.maximal_elements()
    assert top and all(not order.less(t, x) for t in top for x in els)


@settings(max_examples=60)
@given(seeds, st.integers(0, 4))
def test_fulfillability_is_monotone_in_depth(seed, depth):
    rng = random.Random(seed)
    kb = random_kb(rng, 14)
    inv = [i for i in sorted(kb.individuals()) if i.startswith("obj") and rng.random() < 0.5]
    for desc in kb.descriptions:
        if fulfillable(kb, desc, inv, depth).fulfillable:
            assert fulfillable(kb, desc, inv, depth + 1).fulfillable


@settings(max_examples=60)
@given(seeds)
def test_decide_is_deterministic(seed):
    rng = random.Random(seed)
    kb = random_kb(rng)
    agent = sorted(kb.instances_of("Agent"))[0]
    options = tuple(rng.sample(sorted(kb.descriptions), rng.randint(1, len(kb.descriptions))))
    problem = DecisionProblem(agent, options)

    def attempt():
        try:
            return decide(kb, problem)
        except DecisionError as exc:
            return type(exc), str(exc)

    first = attempt()
    v = kb.version
    assert attempt() == first
    assert kb.version == v
