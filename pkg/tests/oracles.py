"""Brute-force reference implementations.

Each one recomputes its answer from the raw asserted data (parent lists,
triples, asserted leq pairs) without touching the indexes, caches or search
code under test.
"""

from __future__ import annotations

from itertools import product

from prefonto.kb import ORDER_PREDICATES, KnowledgeBase
from prefonto.query.ast import Name, Query, TriplePattern, Var


def ancestors(kb: KnowledgeBase, concept: str) -> set[str]:
    seen, stack = {concept}, [concept]
    while stack:
        for p in kb.taxonomy.parents(stack.pop()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def types(kb: KnowledgeBase, ind) -> set[str]:
    if not isinstance(ind, str) or ind not in kb:
        return set()
    return set().union(*(ancestors(kb, t) for t in kb.types_of(ind)))


def closure(elements, pairs) -> set[tuple]:
    """Reflexive-transitive closure by Floyd-Warshall."""
    els = sorted(elements)
    rel = {(a, a) for a in els} | set(pairs)
    for k in els:
        for i in els:
            if (i, k) in rel:
                for j in els:
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def maximal(subset, rel) -> set:
    return {x for x in subset if not any((x, y) in rel and (y, x) not in rel for y in subset)}


def setting(kb: KnowledgeBase, sit: str) -> set[str]:
    triples = kb.triples()
    traversable = {r for r, d in kb.relations.items() if not d.virtual and not d.literal}
    reached = {o for s, r, o in triples if s == sit and r == "hasSetting" and o in kb}
    changed = True
    while changed:
        changed = False
        for s, r, o in triples:
            if s in reached and r in traversable and o not in reached and isinstance(o, str) and o in kb:
                reached.add(o)
                changed = True
    return reached | {sit}


def homomorphisms(kb: KnowledgeBase, pattern, domain) -> list[dict]:
    names = [v for v, _ in pattern.vars]
    triples = set(kb.triples())
    found = []
    for values in product(sorted(domain), repeat=len(names)):
        m = dict(zip(names, values))
        if not all(c in types(kb, m[v]) for v, c in pattern.vars):
            continue
        if not all((m[s], r, m[o]) in triples for s, r, o in pattern.edges):
            continue
        if any(m[a] == m[b] for a, b in pattern.distinct):
            continue
        found.append(m)
    return found


def satisfies(kb: KnowledgeBase, sit: str, desc: str) -> bool:
    return bool(homomorphisms(kb, kb.descriptions[desc], setting(kb, sit)))


def order_relation(kb: KnowledgeBase, order_id: str) -> set[tuple]:
    order = kb.orders[order_id]
    return closure(order.elements, order.asserted_pairs())


class QueryOracle:
    """Evaluates a parsed query by enumerating every variable assignment."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.triples = set(kb.triples())
        self.sat: dict[tuple, bool] = {}
        self.rel = {o: order_relation(kb, o) for o in kb.orders}
        self.domain = sorted(
            set(kb.individuals()) | set(kb.taxonomy) | {o for _, _, o in self.triples},
            key=lambda v: (isinstance(v, int), str(v)),
        )

    def holds(self, p: TriplePattern, m: dict) -> bool:
        def val(t):
            return m[t.name] if isinstance(t, Var) else t.value

        s, o = val(p.subject), val(p.object)
        kb = self.kb
        if p.predicate == "a":
            return isinstance(o, str) and o in kb.taxonomy and o in types(kb, s)
        if p.predicate == "satisfies":
            if not (isinstance(o, str) and o in kb.descriptions and "Situation" in types(kb, s)):
                return False
            key = (s, o)
            if key not in self.sat:
                self.sat[key] = satisfies(kb, s, o)
            return self.sat[key]
        if p.predicate in ORDER_PREDICATES:
            for rel in self.rel.values():
                le, ge = (s, o) in rel, (o, s) in rel
                if {"leq": le, "geq": ge, "less": le and not ge, "greater": ge and not le}[p.predicate]:
                    return True
            return False
        return (s, p.predicate, o) in self.triples

    def solutions(self, patterns, start: dict) -> list[dict]:
        order = []
        for p in patterns:
            for v in sorted(p.vars()):
                if v not in start and v not in order:
                    order.append(v)
        out = []

        def ready(p, m):
            return all(v in m for v in p.vars())

        def go(k: int, m: dict, pending: list):
            if k == len(order):
                if all(self.holds(p, m) for p in pending):
                    out.append(dict(m))
                return
            for value in self.domain:
                m[order[k]] = value
                now = [p for p in pending if ready(p, m)]
                if all(self.holds(p, m) for p in now):
                    go(k + 1, m, [p for p in pending if not ready(p, m)])
                del m[order[k]]

        go(0, dict(start), list(patterns))
        return out

    def rows(self, q: Query) -> set[tuple]:
        rows = set()
        for m in self.solutions(q.where, {}):
            if any(self.solutions(b.patterns, {v: m[v] for v in b.vars() if v in m}) for b in q.not_exists):
                continue
            rows.add(tuple(m[v] for v in q.select))
        return rows


def fulfillable(kb: KnowledgeBase, option: str, available, depth: int) -> bool:
    """Some injective-where-required assignment of inventory items to object vars."""
    from prefonto.inference import object_vars

    pattern = kb.descriptions[option]
    wanted = object_vars(kb, pattern)

    def near(concept: str) -> set[str]:
        frontier, anc = {concept}, {concept}
        for _ in range(depth):
            frontier = set().union(*(kb.taxonomy.parents(c) for c in frontier)) if frontier else set()
            anc |= frontier
        return anc

    def fits(var, ind):
        need = pattern.constraint(var)
        have = types(kb, ind)
        if need in have:
            return True
        return bool((near(need) - {"Entity"}) & have) if depth > 0 else False

    for values in product(sorted(available), repeat=len(wanted)):
        m = dict(zip(wanted, values))
        if not all(fits(v, m[v]) for v in wanted):
            continue
        if any(a in m and b in m and m[a] == m[b] for a, b in pattern.distinct):
            continue
        return True
    return not wanted


def all_posets(n: int) -> list[set[tuple[int, int]]]:
    """Every partial order on ``range(n)``, as sets of strict pairs ``(a, b)`` meaning a < b.

    Built by inserting element k into each poset on ``range(k)`` with every
    compatible (down-set, up-set) pair, which yields each labelled poset once.
    """
    posets: list[set[tuple[int, int]]] = [set()]
    for k in range(n):
        grown = []
        for rel in posets:
            subsets = [frozenset(i for i in range(k) if mask >> i & 1) for mask in range(1 << k)]
            downs = [d for d in subsets if all((x, y) not in rel or x in d for y in d for x in range(k))]
            ups = [u for u in subsets if all((x, y) not in rel or y in u for x in u for y in range(k))]
            for d in downs:
                for u in ups:
                    if d & u or any((x, y) not in rel for x in d for y in u):
                        continue
                    grown.append(rel | {(x, k) for x in d} | {(k, y) for y in u})
        posets = grown
    return posets
