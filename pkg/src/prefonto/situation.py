"""Situations as graphs, descriptions as typed variable patterns.

A situation's content is its *setting closure*: the situation itself plus
everything reachable from it by a ``hasSetting`` edge followed by any number
of ordinary (non-virtual, non-literal) relation edges.  A situation satisfies
a description when the description's pattern maps homomorphically into that
closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import PatternError, UnknownDescription, UnknownIndividual

if TYPE_CHECKING:
    from .kb import KnowledgeBase

Binding = dict[str, str]


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class DescriptionPattern:
    """A connected graph of typed variables.

    ``vars`` keeps declaration order; ``edges`` and ``distinct`` are stored
    sorted and de-duplicated so that equal patterns compare equal.
    """

    id: str
    vars: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str, str], ...] = ()
    distinct: tuple[tuple[str, str], ...] = ()
    _constraints: Mapping[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vars_ = tuple((str(v), str(c)) for v, c in self.vars)
        names = [v for v, _ in vars_]
        if not names:
            raise PatternError(f"description {self.id!r} declares no variables")
        if len(set(names)) != len(names):
            raise PatternError(f"description {self.id!r} declares a variable twice")
        known = set(names)
        edges = tuple(sorted({(str(s), str(r), str(o)) for s, r, o in self.edges}))
        for s, r, o in edges:
            for v in (s, o):
                if v not in known:
                    raise PatternError(f"description {self.id!r}: edge {s} {r} {o} uses undeclared var {v!r}")
        distinct = tuple(sorted({_pair(str(a), str(b)) for a, b in self.distinct}))
        for a, b in distinct:
            if a == b:
                raise PatternError(f"description {self.id!r}: {a!r} cannot be distinct from itself")
            for v in (a, b):
                if v not in known:
                    raise PatternError(f"description {self.id!r}: distinct pair uses undeclared var {v!r}")
        object.__setattr__(self, "vars", vars_)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "distinct", distinct)
        object.__setattr__(self, "_constraints", dict(vars_))
        others: dict[str, frozenset[str]] = {v: frozenset() for v, _ in vars_}
        for a, b in distinct:
            others[a] |= {b}
            others[b] |= {a}
        object.__setattr__(self, "_distinct_from", others)
        object.__setattr__(self, "_var_names", tuple(v for v, _ in vars_))
        if not self._connected():
            raise PatternError(f"description {self.id!r} is not connected")

    def _connected(self) -> bool:
        adj: dict[str, set[str]] = {v: set() for v, _ in self.vars}
        for s, _, o in self.edges:
            adj[s].add(o)
            adj[o].add(s)
        start = self.vars[0][0]
        seen = {start}
        stack = [start]
        while stack:
            for n in adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(adj)

    @property
    def var_names(self) -> tuple[str, ...]:
        return self._var_names

    def constraint(self, var: str) -> str:
        return self._constraints[var]

    def distinct_from(self, var: str) -> frozenset[str]:
        return self._distinct_from[var]


def _pattern(kb: KnowledgeBase, d: DescriptionPattern | str) -> DescriptionPattern:
    if isinstance(d, DescriptionPattern):
        return d
    try:
        return kb.descriptions[d]
    except KeyError:
        raise UnknownDescription(f"no description pattern {d!r}") from None


def setting_closure(kb: KnowledgeBase, sit: str) -> frozenset[str]:
    """Individuals that make up situation ``sit``, ``sit`` included."""
    if sit not in kb:
        raise UnknownIndividual(f"unknown situation {sit!r}")
    targets = [o for o in kb.objects(sit, "hasSetting") if isinstance(o, str) and o in kb]
    return frozenset({sit}).union(*(kb.reachable(t) for t in targets))


_Plan = tuple[list[str], dict[str, frozenset[str]], dict[str, list[tuple[str, str]]], dict[str, list[tuple[str, str]]]]


def _plan(kb: KnowledgeBase, pattern: DescriptionPattern) -> _Plan | None:
    """Var order, candidate sets and edge maps for ``pattern``; None if some var has no instance.

    Depends only on the pattern and the KB, so it is cached until the KB changes.
    """
    cache = kb._match_plans
    if cache[0] != kb.version:
        cache = kb._match_plans = (kb.version, {})
    key = (pattern.id, pattern.vars, pattern.edges)
    if key in cache[1]:
        return cache[1][key]
    instances: dict[str, frozenset[str]] = {}
    for var, concept in pattern.vars:
        if concept not in kb.taxonomy or not kb.instances_of(concept):
            cache[1][key] = None
            return None
        instances[var] = kb.instances_of(concept)

    out_edges: dict[str, list[tuple[str, str]]] = {v: [] for v in pattern.var_names}
    in_edges: dict[str, list[tuple[str, str]]] = {v: [] for v in pattern.var_names}
    for s, r, o in pattern.edges:
        out_edges[s].append((r, o))
        in_edges[o].append((r, s))

    # rarest concept first, then grow along edges so every later var is narrowed
    order: list[str] = []
    remaining = set(pattern.var_names)
    while remaining:
        adjacent = [
            v for v in remaining
            if any(o in order for _, o in out_edges[v]) or any(s in order for _, s in in_edges[v])
        ]
        nxt = min(adjacent or remaining, key=lambda v: (len(instances[v]), v))
        order.append(nxt)
        remaining.discard(nxt)
    plan = cache[1][key] = (order, instances, out_edges, in_edges)
    return plan


def match_pattern(kb: KnowledgeBase, pattern: DescriptionPattern, domain: Iterable[str],
                  limit: int | None = None) -> list[Binding]:
    """All homomorphisms of ``pattern`` into the sub-graph induced by ``domain``.

    With ``limit`` the search stops after that many bindings (the result is
    then not guaranteed to be the lexicographically first ones).
    """
    if not isinstance(domain, (set, frozenset)):
        domain = set(domain)
    plan = _plan(kb, pattern)
    if plan is None:
        return []
    order, instances, out_edges, in_edges = plan

    results: list[Binding] = []
    binding: Binding = {}

    def options(var: str) -> Iterable[str]:
        cands = None
        for r, o in out_edges[var]:
            if o != var and o in binding:
                found = kb.subjects(r, binding[o])
                cands = found if cands is None else cands & found
        for r, s in in_edges[var]:
            if s != var and s in binding:
                found = kb.objects(binding[s], r)
                cands = found if cands is None else cands & found
        allowed = instances[var]
        if cands is None:
            cands = allowed & domain
        else:
            cands = {c for c in cands if c in allowed and c in domain}
        return sorted(cands)

    def extend(k: int) -> None:
        if k == len(order):
            results.append(dict(binding))
            return
        if limit is not None and len(results) >= limit:
            return
        var = order[k]
        others = pattern.distinct_from(var)
        for ind in options(var):
            if any(binding.get(o) == ind for o in others):
                continue
            if any(o == var and not kb.has_triple(ind, r, ind) for r, o in out_edges[var]):
                continue
            binding[var] = ind
            extend(k + 1)
            del binding[var]
            if limit is not None and len(results) >= limit:
                return

    extend(0)
    results.sort(key=lambda b: tuple(sorted(b.items())))
    return results


def satisfies(kb: KnowledgeBase, sit: str, description: DescriptionPattern | str) -> list[Binding]:
    """Every way situation ``sit`` realises ``description``; empty if it does not."""
    pattern = _pattern(kb, description)
    return match_pattern(kb, pattern, setting_closure(kb, sit))


def pattern_subsumes(kb: KnowledgeBase, general: DescriptionPattern | str,
                     specific: DescriptionPattern | str) -> bool:
    """True if every situation described by ``specific`` is also described by ``general``.

    Decided structurally: some var mapping general -> specific keeps edges,
    keeps distinct pairs, and only maps a var onto one whose constraint is
    the same concept or a subconcept.
    """
    g = _pattern(kb, general)
    s = _pattern(kb, specific)
    s_edges = set(s.edges)
    s_distinct = set(s.distinct)
    candidates = {
        gv: [sv for sv, sc in s.vars if kb.is_subconcept(sc, gc)] for gv, gc in g.vars
    }
    if any(not c for c in candidates.values()):
        return False
    order = sorted(g.var_names, key=lambda v: (len(candidates[v]), v))
    mapping: dict[str, str] = {}

    def consistent(var: str) -> bool:
        for a, r, b in g.edges:
            if var in (a, b) and a in mapping and b in mapping:
                if (mapping[a], r, mapping[b]) not in s_edges:
                    return False
        for a, b in g.distinct:
            if var in (a, b) and a in mapping and b in mapping:
                if mapping[a] == mapping[b] or _pair(mapping[a], mapping[b]) not in s_distinct:
                    return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        var = order[k]
        for target in candidates[var]:
            mapping[var] = target
            if consistent(var) and search(k + 1):
                return True
            del mapping[var]
        return False

    return search(0)
