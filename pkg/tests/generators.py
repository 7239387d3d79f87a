"""Seeded random knowledge bases, patterns and queries for the oracle tests."""

from __future__ import annotations

import random

from prefonto.kb import KnowledgeBase
from prefonto.query.ast import Name, NotExists, Query, TriplePattern, Var
from prefonto.situation import DescriptionPattern


def random_taxonomy(rng: random.Random, kb: KnowledgeBase, n: int) -> list[str]:
    names = []
    for i in range(n):
        pool = ["Entity"] + names
        parents = rng.sample(pool, k=min(len(pool), rng.choice((1, 1, 2))))
        names.append(kb.define_concept(f"C{i}", parents))
    return names


def connected_pattern(rng: random.Random, id: str, concepts: list[str], relations: list[str],
                      n_vars: int, extra_edges: int = 1, distinct: bool = True) -> DescriptionPattern:
    vars_ = [f"v{i}" for i in range(n_vars)]
    edges = set()
    for i in range(1, n_vars):
        j = rng.randrange(i)
        a, b = (vars_[i], vars_[j]) if rng.random() < 0.5 else (vars_[j], vars_[i])
        edges.add((a, rng.choice(relations), b))
    for _ in range(rng.randint(0, extra_edges)):
        edges.add((rng.choice(vars_), rng.choice(relations), rng.choice(vars_)))
    pairs = set()
    if distinct and n_vars > 1 and rng.random() < 0.4:
        a, b = rng.sample(vars_, 2)
        pairs.add((a, b))
    return DescriptionPattern(
        id, tuple((v, rng.choice(concepts)) for v in vars_), tuple(sorted(edges)), tuple(sorted(pairs))
    )


def random_kb(rng: random.Random, n_individuals: int = 20, *, causal: bool = True) -> KnowledgeBase:
    """A KB that passes ``validate`` with at most ``n_individuals`` non-structural individuals."""
    kb = KnowledgeBase()
    concepts = random_taxonomy(rng, kb, rng.randint(2, 5))
    kb.define_concept("Consuming", ["Event"])
    kb.declare_relation("near")
    kb.declare_relation("weight", "Entity", "integer")

    budget = max(6, n_individuals)
    n_agents = rng.randint(1, 2)
    n_sits = rng.randint(1, 3)
    n_events = rng.randint(1, 3)
    n_objects = max(1, budget - n_agents - n_sits - n_events)
    agents = [kb.add_individual(f"agent{i}", ["Agent"]) for i in range(n_agents)]
    sits = [kb.add_individual(f"sit{i}", ["Situation"]) for i in range(n_sits)]
    events = [kb.add_individual(f"ev{i}", ["Consuming"]) for i in range(n_events)]
    objects = [
        kb.add_individual(f"obj{i}", rng.sample(concepts, k=rng.choice((1, 1, 2))))
        for i in range(n_objects)
    ]
    things = agents + events + objects

    for e in events:
        kb.assert_triple(e, "performedBy", rng.choice(agents))
        kb.assert_triple(e, "objectActedOn", rng.choice(objects))
    for s in sits:
        for x in rng.sample(things, k=rng.randint(1, min(4, len(things)))):
            kb.assert_triple(s, "hasSetting", x)
    for _ in range(rng.randint(0, len(things))):
        kb.assert_triple(rng.choice(things), "near", rng.choice(things))
    for x in rng.sample(objects, k=min(2, len(objects))):
        kb.assert_triple(x, "weight", rng.randint(1, 3))

    descs = []
    for i in range(rng.randint(2, 4)):
        p = connected_pattern(
            rng, f"desc{i}", ["Agent", "Consuming", "Entity"] + concepts,
            ["performedBy", "objectActedOn", "near"], rng.randint(1, 3),
        )
        kb.add_description(p)
        descs.append(p.id)

    for k in range(rng.randint(1, 2)):
        oid = f"order{k}"
        kb.add_order(oid)
        els = [kb.add_element(oid, f"el{k}_{i}", rng.choice(descs)) for i in range(rng.randint(2, 4))]
        rank = els[:]
        rng.shuffle(rank)
        for i in range(len(rank)):
            for j in range(i + 1, len(rank)):
                if rng.random() < 0.4:
                    kb.add_leq(oid, rank[i], rank[j])
        kb.add_preference(f"pref{k}", rng.choice(agents), oid)

    if causal:
        for i in range(len(descs)):
            for j in range(i + 1, len(descs)):
                if rng.random() < 0.25:
                    kb.add_causal_link(descs[i], descs[j])
    return kb


def small_situation(rng: random.Random) -> tuple[KnowledgeBase, str, list[str]]:
    """A situation over at most six nodes plus some unreachable noise."""
    kb = KnowledgeBase()
    concepts = random_taxonomy(rng, kb, 3)
    kb.declare_relation("r")
    kb.declare_relation("s")
    sit = kb.add_individual("sit", ["Situation"])
    nodes = [kb.add_individual(f"n{i}", [rng.choice(concepts + ["Entity"])]) for i in range(rng.randint(2, 5))]
    outside = kb.add_individual("far", [rng.choice(concepts)])
    for n in rng.sample(nodes, k=rng.randint(1, len(nodes))):
        kb.assert_triple(sit, "hasSetting", n)
    for _ in range(rng.randint(1, 8)):
        kb.assert_triple(rng.choice(nodes), rng.choice(("r", "s")), rng.choice(nodes))
    kb.assert_triple(outside, "r", rng.choice(nodes))
    return kb, sit, concepts


def random_query(rng: random.Random, kb: KnowledgeBase) -> Query:
    """A connected query over the KB's vocabulary, sometimes with a FILTER NOT EXISTS block."""
    concepts = sorted(kb.taxonomy)
    relations = ["performedBy", "objectActedOn", "near", "hasSetting", "hasPreference", "describes",
                 "orders", "orderedBy", "encapsulates", "weight", "bringsAbout"]
    individuals = kb.individuals()
    n_vars = rng.randint(1, 4)
    names = [f"x{i}" for i in range(n_vars)]

    def pattern(a: str, b: str) -> TriplePattern:
        kind = rng.random()
        if kind < 0.15:
            return TriplePattern(Var(a), "satisfies", Var(b))
        if kind < 0.3:
            return TriplePattern(Var(a), rng.choice(("leq", "geq", "less", "greater")), Var(b))
        return TriplePattern(Var(a), rng.choice(relations), Var(b))

    where = []
    for i in range(1, n_vars):
        j = rng.randrange(i)
        where.append(pattern(names[i], names[j]) if rng.random() < 0.5 else pattern(names[j], names[i]))
    for v in names:
        if rng.random() < 0.5:
            where.append(TriplePattern(Var(v), "a", Name(rng.choice(concepts))))
    if rng.random() < 0.3:
        where.append(TriplePattern(Var(rng.choice(names)), rng.choice(relations), Name(rng.choice(individuals))))
    if not where:
        where.append(TriplePattern(Var(names[0]), "a", Name(rng.choice(concepts))))

    blocks = []
    if rng.random() < 0.4:
        anchor = rng.choice(names)
        inner = [pattern(anchor, "y")]
        if rng.random() < 0.5:
            inner.append(TriplePattern(Var("y"), "a", Name(rng.choice(concepts))))
        blocks.append(NotExists(tuple(inner), ("y",)))
    select = tuple(sorted(rng.sample(names, k=rng.randint(1, n_vars))))
    return Query(select, tuple(where), tuple(blocks))


def scaled_kb(rng: random.Random, n_triples: int = 10_000, *, n_agents: int = 5,
              n_situations: int = 40) -> KnowledgeBase:
    """A household-sized KB: a few users and situations over a large body of background facts."""
    kb = KnowledgeBase()
    kb.define_concept("Beverage")
    drinks = [kb.define_concept(f"Drink{i}", ["Beverage"]) for i in range(10)]
    kb.define_concept("Container")
    kb.define_concept("Consuming", ["Event"])
    kb.declare_relation("near")
    kb.declare_relation("storedIn", "Entity", "Container")
    kb.declare_relation("weight", "Entity", "integer")
    descs = []
    for i, d in enumerate(drinks):
        descs.append(kb.add_description(DescriptionPattern(
            f"desc{i}", (("a", "Agent"), ("e", "Consuming"), ("o", d)),
            (("e", "objectActedOn", "o"), ("e", "performedBy", "a")),
        )).id)
    agents = [kb.add_individual(f"agent{i}", ["Agent"]) for i in range(n_agents)]
    for k, agent in enumerate(agents):
        oid = f"order{k}"
        kb.add_order(oid)
        els = [kb.add_element(oid, f"el{k}_{i}", d) for i, d in enumerate(rng.sample(descs, 4))]
        for a, b in zip(els, els[1:]):
            if rng.random() < 0.8:
                kb.add_leq(oid, a, b)
        kb.add_preference(f"pref{k}", agent, oid)
    containers = [kb.add_individual(f"box{i}", ["Container"]) for i in range(100)]
    objects = [kb.add_individual(f"obj{i}", [rng.choice(drinks)]) for i in range(1500)]
    for s in range(n_situations):
        sit = kb.add_individual(f"sit{s}", ["Situation"])
        ev = kb.add_individual(f"ev{s}", ["Consuming"])
        agent, obj = rng.choice(agents), rng.choice(objects)
        kb.assert_triple(ev, "performedBy", agent)
        kb.assert_triple(ev, "objectActedOn", obj)
        for x in (agent, ev, obj):
            kb.assert_triple(sit, "hasSetting", x)
    for obj in objects:
        kb.assert_triple(obj, "storedIn", rng.choice(containers))
        kb.assert_triple(obj, "weight", rng.randint(1, 500))
    while len(kb) < n_triples:
        kb.assert_triple(rng.choice(objects), "near", rng.choice(objects))
    return kb


def random_poset(rng: random.Random, n: int, density: float | None = None) -> tuple[list[str], list[tuple[str, str]]]:
    """Elements and asserted ``<=`` pairs consistent with a hidden linear ranking, in shuffled order."""
    names = [f"e{i}" for i in range(n)]
    rank = names[:]
    rng.shuffle(rank)
    p = rng.random() if density is None else density
    pairs = [(rank[i], rank[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    rng.shuffle(pairs)
    return names, pairs
