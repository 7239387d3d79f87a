"""Concept taxonomy, relation vocabulary and assertion store.

The taxonomy (TBox fragment) is a DAG of concept names rooted at ``Entity``.
The ABox holds typed individuals and ``(subject, relation, object)`` triples
under set semantics.  Preference orders and description patterns are kept
alongside the triples so that a single object answers every query.

Queries and validation are closed-world: a fact that is neither asserted nor
computable is false.  Distinct ids always denote distinct individuals.

Mutating methods assume exclusive access; every read-only method is safe to
call concurrently as long as no writer is active.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import (
    CrossOrderError,
    CycleIntroduced,
    DuplicateConcept,
    DuplicateIndividual,
    DuplicateRelation,
    FunctionalViolation,
    KnowledgeBaseError,
    UnknownConcept,
    UnknownDescription,
    UnknownElement,
    UnknownIndividual,
    UnknownObject,
    UnknownParent,
    UnknownRelation,
    UnknownSubject,
    VirtualRelationError,
)
from .order import Preference, PreferenceOrder
from .situation import DescriptionPattern

Literal = Union[str, int]
Term = Union[str, int]

ROOT = "Entity"

BUILTIN_CONCEPTS: dict[str, tuple[str, ...]] = {
    "Entity": (),
    "Agent": ("Entity",),
    "Situation": ("Entity",),
    "Description": ("Entity",),
    "Event": ("Entity",),
    "Task": ("Entity",),
    "Role": ("Entity",),
    "Quality": ("Entity",),
    "Disposition": ("Quality",),
    "Preference": ("Disposition",),
    "PreferenceOrder": ("Description",),
    "OrderedElement": ("Entity",),
}

# ranges usable by literal-valued relations instead of a concept
LITERAL_RANGES: dict[str, tuple[type, ...]] = {
    "string": (str,),
    "integer": (int,),
    "literal": (str, int),
}

ORDER_PREDICATES = ("leq", "geq", "less", "greater")


@dataclass(frozen=True)
class RelationDecl:
    name: str
    domain: str
    range: str
    functional: bool = False
    inverse: str | None = None
    virtual: bool = False

    @property
    def literal(self) -> bool:
        return self.range in LITERAL_RANGES


BUILTIN_RELATIONS: tuple[RelationDecl, ...] = (
    RelationDecl("hasSetting", "Situation", "Entity"),
    RelationDecl("satisfies", "Situation", "Description", virtual=True),
    RelationDecl("hasPreference", "Agent", "Preference"),
    RelationDecl("describes", "Description", "Preference"),
    RelationDecl("orders", "PreferenceOrder", "OrderedElement", inverse="orderedBy"),
    RelationDecl("orderedBy", "OrderedElement", "PreferenceOrder", functional=True, inverse="orders"),
    RelationDecl("encapsulates", "OrderedElement", "Description", functional=True),
    RelationDecl("performedBy", "Event", "Agent"),
    RelationDecl("objectActedOn", "Event", "Entity"),
    RelationDecl("bringsAbout", "Description", "Description"),
    *(RelationDecl(p, "OrderedElement", "OrderedElement", virtual=True) for p in ORDER_PREDICATES),
)


class ConceptTaxonomy:
    """Subsumption DAG over concept names; multiple inheritance allowed."""

    def __init__(self):
        self._parents: dict[str, frozenset[str]] = {
            name: frozenset(parents) for name, parents in BUILTIN_CONCEPTS.items()
        }
        self._ancestors: dict[str, frozenset[str]] = {}

    def __contains__(self, name: object) -> bool:
        return name in self._parents

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._parents))

    def __len__(self) -> int:
        return len(self._parents)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConceptTaxonomy):
            return NotImplemented
        return self._parents == other._parents

    __hash__ = None  # type: ignore[assignment]

    def _require(self, name: str) -> None:
        if name not in self._parents:
            raise UnknownConcept(f"unknown concept {name!r}")

    def parents(self, name: str) -> frozenset[str]:
        self._require(name)
        return self._parents[name]

    def is_builtin(self, name: str) -> bool:
        return name in BUILTIN_CONCEPTS and self._parents.get(name) == frozenset(BUILTIN_CONCEPTS[name])

    def upward_path(self, start: str, goal: str) -> list[str]:
        """Shortest parent-link path ``start`` .. ``goal`` or ``[]``."""
        prev = {start: start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            if c == goal:
                path = [c]
                while path[-1] != start:
                    path.append(prev[path[-1]])
                return path[::-1]
            for p in sorted(self._parents[c]):
                if p not in prev:
                    prev[p] = c
                    queue.append(p)
        return []

    def define(self, name: str, parents: Iterable[str]) -> str:
        parents = list(dict.fromkeys(parents))
        for p in parents:
            if p not in self._parents:
                raise UnknownParent(f"unknown parent concept {p!r} for {name!r}")
        if name in self._parents:
            for p in parents:
                path = self.upward_path(p, name)
                if path:
                    raise CycleIntroduced([name] + path)
            raise DuplicateConcept(f"concept {name!r} already defined")
        if not parents:
            raise UnknownParent(f"concept {name!r} needs at least one parent")
        self._parents[name] = frozenset(parents)
        self._ancestors.clear()
        return name

    def add_parent(self, child: str, parent: str) -> None:
        self._require(child)
        if parent not in self._parents:
            raise UnknownParent(f"unknown parent concept {parent!r}")
        path = self.upward_path(parent, child)
        if path:
            raise CycleIntroduced([child] + path)
        self._parents[child] = self._parents[child] | {parent}
        self._ancestors.clear()

    def ancestors(self, name: str) -> frozenset[str]:
        """Reflexive set of superconcepts."""
        cached = self._ancestors.get(name)
        if cached is not None:
            return cached
        self._require(name)
        seen = {name}
        stack = [name]
        while stack:
            for p in self._parents[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        result = frozenset(seen)
        self._ancestors[name] = result
        return result

    def ancestors_within(self, name: str, steps: int) -> dict[str, int]:
        """Superconcepts at most ``steps`` parent links above ``name``, with distance."""
        self._require(name)
        dist = {name: 0}
        frontier = [name]
        for d in range(1, steps + 1):
            nxt = []
            for c in frontier:
                for p in self._parents[c]:
                    if p not in dist:
                        dist[p] = d
                        nxt.append(p)
            frontier = nxt
        return dist

    def descendants(self, name: str) -> frozenset[str]:
        self._require(name)
        return frozenset(c for c in self._parents if name in self.ancestors(c))

    def is_subconcept(self, a: str, b: str) -> bool:
        self._require(b)
        return b in self.ancestors(a)


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str
    relation: str | None = None
    object: Term | None = None

    def sort_key(self) -> tuple:
        return (self.kind, self.subject, self.relation or "", str(self.object))

    def __str__(self) -> str:
        return f"[{self.kind}] {self.subject}: {self.message}"


class ValidationReport:
    """Ordered, immutable list of violations; empty iff the KB conforms."""

    def __init__(self, violations: Iterable[Violation] = ()):
        self.violations = tuple(sorted(set(violations), key=Violation.sort_key))

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ValidationReport):
            return self.violations == other.violations
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]

    def __repr__(self) -> str:
        return f"ValidationReport({list(self.violations)!r})"


def _is_literal(value: object) -> bool:
    return isinstance(value, (str, int)) and not isinstance(value, bool)


class KnowledgeBase:
    def __init__(self):
        self.taxonomy = ConceptTaxonomy()
        self.relations: dict[str, RelationDecl] = {r.name: r for r in BUILTIN_RELATIONS}
        self.descriptions: dict[str, DescriptionPattern] = {}
        self.orders: dict[str, PreferenceOrder] = {}
        self._types: dict[str, frozenset[str]] = {}
        self._triples: set[tuple[str, str, Term]] = set()
        self._sp: dict[tuple[str, str], set[Term]] = defaultdict(set)
        self._po: dict[tuple[str, Term], set[str]] = defaultdict(set)
        self._p: dict[str, set[tuple[str, Term]]] = defaultdict(set)
        self._out: dict[str, set[tuple[str, Term]]] = defaultdict(set)
        self._type_cache: dict[str, frozenset[str]] = {}
        self._instance_cache: dict[str, frozenset[str]] = {}
        self.version = 0
        self._reach: tuple[int, dict[str, frozenset[str]]] | None = None
        # (version, plans) for the pattern matcher, rebuilt after any change
        self._match_plans: tuple[int, dict] = (-1, {})
        # set by the document loader
        self.load_report: ValidationReport | None = None

    def __repr__(self) -> str:
        return (
            f"KnowledgeBase({len(self._types)} individuals, {len(self._triples)} triples, "
            f"{len(self.descriptions)} descriptions, {len(self.orders)} orders)"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (
            self.taxonomy == other.taxonomy
            and self.relations == other.relations
            and self._types == other._types
            and self._triples == other._triples
            and self.descriptions == other.descriptions
            and self.orders == other.orders
        )

    __hash__ = None  # type: ignore[assignment]

    def _touch(self, types_changed: bool = False) -> None:
        self.version += 1
        if types_changed:
            self._type_cache.clear()
            self._instance_cache.clear()

    # -- taxonomy -----------------------------------------------------------

    def define_concept(self, name: str, parents: Iterable[str] = (ROOT,)) -> str:
        self.taxonomy.define(name, parents)
        self._touch(types_changed=True)
        return name

    def add_parent(self, child: str, parent: str) -> None:
        self.taxonomy.add_parent(child, parent)
        self._touch(types_changed=True)

    def is_subconcept(self, a: str, b: str) -> bool:
        if a not in self.taxonomy:
            raise UnknownConcept(f"unknown concept {a!r}")
        return self.taxonomy.is_subconcept(a, b)

    # -- relations ----------------------------------------------------------

    def declare_relation(self, name: str, domain: str = ROOT, range: str = ROOT, *,
                         functional: bool = False, inverse: str | None = None) -> RelationDecl:
        if name in self.relations:
            raise DuplicateRelation(f"relation {name!r} already declared")
        if domain not in self.taxonomy:
            raise UnknownConcept(f"unknown domain concept {domain!r}")
        if range not in self.taxonomy and range not in LITERAL_RANGES:
            raise UnknownConcept(f"unknown range {range!r}")
        if inverse is not None and inverse not in self.relations and inverse != name:
            raise UnknownRelation(f"inverse {inverse!r} must be declared first")
        decl = RelationDecl(name, domain, range, functional, inverse)
        self.relations[name] = decl
        if inverse is not None and inverse != name:
            other = self.relations[inverse]
            self.relations[inverse] = RelationDecl(
                other.name, other.domain, other.range, other.functional, name, other.virtual
            )
        self._touch()
        return decl

    def relation(self, name: str) -> RelationDecl:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownRelation(f"unknown relation {name!r}") from None

    def traversable_relations(self) -> frozenset[str]:
        return frozenset(r for r, d in self.relations.items() if not d.virtual and not d.literal)

    # -- individuals --------------------------------------------------------

    def __contains__(self, ind: object) -> bool:
        return ind in self._types

    def individuals(self) -> list[str]:
        return sorted(self._types)

    def add_individual(self, id: str, types: Iterable[str]) -> str:
        types = frozenset(types)
        if id in self._types:
            raise DuplicateIndividual(f"individual {id!r} already exists")
        if not types:
            raise KnowledgeBaseError(f"individual {id!r} needs at least one type")
        for t in types:
            if t not in self.taxonomy:
                raise UnknownConcept(f"unknown concept {t!r} for individual {id!r}")
        self._types[id] = types
        self._touch(types_changed=True)
        self._sync_order(id)
        return id

    def add_types(self, id: str, types: Iterable[str]) -> None:
        self._require(id)
        types = frozenset(types)
        for t in types:
            if t not in self.taxonomy:
                raise UnknownConcept(f"unknown concept {t!r}")
        self._types[id] = self._types[id] | types
        self._touch(types_changed=True)
        self._sync_order(id)

    def _require(self, id: str, exc: type[UnknownIndividual] = UnknownIndividual) -> None:
        if id not in self._types:
            raise exc(f"unknown individual {id!r}")

    def types_of(self, id: str) -> frozenset[str]:
        """Asserted types of ``id``."""
        self._require(id)
        return self._types[id]

    def type_closure(self, id: str) -> frozenset[str]:
        """Asserted types of ``id`` and all their superconcepts."""
        cached = self._type_cache.get(id)
        if cached is None:
            self._require(id)
            cached = frozenset().union(*(self.taxonomy.ancestors(t) for t in self._types[id]))
            self._type_cache[id] = cached
        return cached

    def has_type(self, id: object, concept: str) -> bool:
        if id not in self._types:
            return False
        return concept in self.type_closure(id)  # type: ignore[arg-type]

    def instances_of(self, concept: str) -> frozenset[str]:
        cached = self._instance_cache.get(concept)
        if cached is None:
            if concept not in self.taxonomy:
                raise UnknownConcept(f"unknown concept {concept!r}")
            if not self._instance_cache:
                self._index_instances()
            cached = self._instance_cache.setdefault(concept, frozenset())
        return cached

    def _index_instances(self) -> None:
        buckets: dict[str, set[str]] = defaultdict(set)
        for i in self._types:
            for c in self.type_closure(i):
                buckets[c].add(i)
        self._instance_cache.update((c, frozenset(m)) for c, m in buckets.items())

    # -- triples ------------------------------------------------------------

    def assert_triple(self, s: str, r: str, o: Term, *, strict: bool = True) -> None:
        """Store ``(s, r, o)``; idempotent.

        ``strict=False`` skips existence and functionality checks so that
        faulty data can be loaded and then reported by :meth:`validate`.
        """
        decl = self.relations.get(r)
        if strict:
            if decl is None:
                raise UnknownRelation(f"unknown relation {r!r}")
            self._require(s, UnknownSubject)
            if decl.literal:
                if not _is_literal(o):
                    raise UnknownObject(f"{r} expects a literal, got {o!r}")
            elif not isinstance(o, str) or o not in self._types:
                raise UnknownObject(f"unknown individual {o!r}")
        if decl is not None and decl.virtual:
            raise VirtualRelationError(f"{r} is computed, not asserted")
        new = [(s, r, o)]
        if decl is not None and decl.inverse and isinstance(o, str):
            new.append((o, decl.inverse, s))
        if strict:
            for ts, tr, to in new:
                tdecl = self.relations[tr]
                if tdecl.functional:
                    existing = self._sp.get((ts, tr), set()) - {to}
                    if existing:
                        raise FunctionalViolation(ts, tr, min(existing, key=str), to)
        for t in new:
            self._insert(t)

    def _insert(self, t: tuple[str, str, Term]) -> None:
        if t in self._triples:
            return
        s, r, o = t
        self._triples.add(t)
        self._sp[(s, r)].add(o)
        self._po[(r, o)].add(s)
        self._p[r].add((s, o))
        self._out[s].add((r, o))
        if r == "orderedBy" and o in self.orders:
            self.orders[o].add_element(s)  # type: ignore[index]
        self._touch()

    def build_indexes(self) -> None:
        """Precompute the instance and reachability indexes ahead of the first query.

        Both are caches: any later change to the KB invalidates and rebuilds them lazily.
        """
        if not self._instance_cache:
            self._index_instances()
        if self._reach is None or self._reach[0] != self.version:
            self._reach = (self.version, self._reach_sets())

    def reachable(self, node: str) -> frozenset[str]:
        """Individuals reachable from ``node`` over traversable relations, ``node`` included."""
        if self._reach is None or self._reach[0] != self.version:
            self._reach = (self.version, self._reach_sets())
        return self._reach[1][node]

    def _reach_sets(self) -> dict[str, frozenset[str]]:
        # Tarjan's SCC algorithm, iterative; components come out sinks first
        traversable = self.traversable_relations()
        types = self._types
        succ = {
            x: [o for r, o in self._out[x] if r in traversable and o in types] if x in self._out else []
            for x in types
        }
        index: dict[str, int] = {}
        low: dict[str, int] = {}
        stack: list[str] = []
        on_stack: set[str] = set()
        reach: dict[str, frozenset[str]] = {}
        for root in types:
            if root in index:
                continue
            index[root] = low[root] = len(index)
            stack.append(root)
            on_stack.add(root)
            work = [(root, iter(succ[root]))]
            while work:
                v, children = work[-1]
                for w in children:
                    if w not in index:
                        index[w] = low[w] = len(index)
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(succ[w])))
                        break
                    if w in on_stack and index[w] < low[v]:
                        low[v] = index[w]
                else:
                    work.pop()
                    if work:
                        parent = work[-1][0]
                        if low[v] < low[parent]:
                            low[parent] = low[v]
                    if low[v] == index[v]:
                        comp = []
                        while True:
                            w = stack.pop()
                            on_stack.discard(w)
                            comp.append(w)
                            if w == v:
                                break
                        members = set(comp)
                        below = {id(r): r for x in comp for w in succ[x] if w not in members for r in (reach[w],)}
                        result = frozenset(members.union(*below.values()))
                        for x in comp:
                            reach[x] = result
        return reach

    def has_triple(self, s: str, r: str, o: Term) -> bool:
        return (s, r, o) in self._triples

    def objects(self, s: str, r: str) -> set[Term] | frozenset:
        return self._sp.get((s, r)) or frozenset()

    def subjects(self, r: str, o: Term) -> set[str] | frozenset:
        return self._po.get((r, o)) or frozenset()

    def pairs(self, r: str) -> set[tuple[str, Term]] | frozenset:
        return self._p.get(r) or frozenset()

    def outgoing(self, s: str) -> set[tuple[str, Term]] | frozenset:
        return self._out.get(s) or frozenset()

    def triples(self, s: str | None = None, r: str | None = None, o: Term | None = None) -> list[tuple[str, str, Term]]:
        if s is not None and r is not None:
            found = [(s, r, x) for x in self.objects(s, r)]
        elif r is not None and o is not None:
            found = [(x, r, o) for x in self.subjects(r, o)]
        elif r is not None:
            found = [(a, r, b) for a, b in self.pairs(r)]
        elif s is not None:
            found = [(s, a, b) for a, b in self.outgoing(s)]
        else:
            found = list(self._triples)
        found = [t for t in found if (s is None or t[0] == s) and (o is None or t[2] == o)]
        return sorted(found, key=lambda t: (t[0], t[1], str(t[2])))

    def __len__(self) -> int:
        return len(self._triples)

    # -- descriptions, orders, preferences ----------------------------------

    def add_description(self, pattern: DescriptionPattern, types: Iterable[str] = ("Description",)) -> DescriptionPattern:
        if pattern.id in self.descriptions:
            raise DuplicateIndividual(f"description {pattern.id!r} already defined")
        for var, concept in pattern.vars:
            if concept not in self.taxonomy:
                raise UnknownConcept(f"description {pattern.id!r}: unknown concept {concept!r} for {var}")
        for _, r, _ in pattern.edges:
            decl = self.relation(r)
            if decl.virtual or decl.literal:
                raise UnknownRelation(f"description {pattern.id!r}: {r!r} cannot be used in a pattern")
        if pattern.id in self._types:
            if not self.has_type(pattern.id, "Description"):
                raise KnowledgeBaseError(f"{pattern.id!r} exists and is not a Description")
        else:
            self.add_individual(pattern.id, types)
        self.descriptions[pattern.id] = pattern
        self._touch()
        return pattern

    def description(self, id: str) -> DescriptionPattern:
        try:
            return self.descriptions[id]
        except KeyError:
            raise UnknownDescription(f"no description pattern {id!r}") from None

    def _sync_order(self, id: str) -> None:
        if id not in self.orders and self.has_type(id, "PreferenceOrder"):
            order = PreferenceOrder(id)
            self.orders[id] = order
            for el in self.subjects("orderedBy", id):
                order.add_element(el)

    def add_order(self, id: str, *, lenient: bool = False) -> PreferenceOrder:
        if id not in self._types:
            self.add_individual(id, ["PreferenceOrder"])
        elif not self.has_type(id, "PreferenceOrder"):
            self.add_types(id, ["PreferenceOrder"])
        order = self.orders[id]
        order.lenient = lenient
        return order

    def order(self, id: str) -> PreferenceOrder:
        try:
            return self.orders[id]
        except KeyError:
            raise UnknownIndividual(f"no preference order {id!r}") from None

    def add_element(self, order_id: str, element_id: str, description_id: str) -> str:
        self.order(order_id)
        self.description(description_id)
        if element_id not in self._types:
            self.add_individual(element_id, ["OrderedElement"])
        self.assert_triple(element_id, "orderedBy", order_id)
        self.assert_triple(element_id, "encapsulates", description_id)
        return element_id

    def add_leq(self, order_id: str, a: str, b: str) -> None:
        self.order(order_id).add_leq(a, b)
        self._touch()

    def orders_containing(self, element: str) -> list[PreferenceOrder]:
        return [self.orders[o] for o in sorted(self.objects(element, "orderedBy")) if o in self.orders]

    def order_of(self, element: str) -> PreferenceOrder:
        found = self.orders_containing(element)
        if not found:
            raise UnknownElement(f"{element!r} is not ordered by any preference order")
        return found[0]

    def description_of(self, element: str) -> str | None:
        found = sorted(self.objects(element, "encapsulates"))
        return found[0] if found else None  # type: ignore[return-value]

    def leq(self, a: str, b: str) -> bool:
        """``a <= b`` within their shared order; comparing across orders is an error."""
        oa = {o.id for o in self.orders_containing(a)}
        ob = {o.id for o in self.orders_containing(b)}
        if not oa:
            raise UnknownElement(f"{a!r} is not ordered by any preference order")
        if not ob:
            raise UnknownElement(f"{b!r} is not ordered by any preference order")
        shared = sorted(oa & ob)
        if not shared:
            raise CrossOrderError(f"{a!r} ({', '.join(sorted(oa))}) and {b!r} ({', '.join(sorted(ob))}) "
                                  "belong to different orders")
        return self.orders[shared[0]].leq(a, b)

    def add_preference(self, id: str, bearer: str, order_id: str) -> Preference:
        self._require(bearer)
        self.order(order_id)
        if id not in self._types:
            self.add_individual(id, ["Preference"])
        self.assert_triple(bearer, "hasPreference", id)
        self.assert_triple(order_id, "describes", id)
        return self.preference(id)

    def preference(self, id: str) -> Preference:
        self._require(id)
        bearers = sorted(b for b in self.subjects("hasPreference", id))
        orders = sorted(o for o in self.subjects("describes", id) if o in self.orders)
        return Preference(id, bearers[0] if bearers else None, orders[0] if orders else None)

    def preferences(self, bearer: str | None = None) -> list[Preference]:
        if bearer is not None:
            ids = sorted(p for p in self.objects(bearer, "hasPreference") if self.has_type(p, "Preference"))
        else:
            ids = sorted(self.instances_of("Preference"))
        return [self.preference(p) for p in ids]  # type: ignore[arg-type]

    def add_causal_link(self, cause: str, effect: str) -> None:
        self.description(cause)
        self.description(effect)
        path = self._causal_path(effect, cause)
        if path:
            raise CycleIntroduced(path + [effect])
        self.assert_triple(cause, "bringsAbout", effect)

    def _causal_path(self, start: str, goal: str) -> list[str]:
        prev = {start: start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            if x == goal:
                path = [x]
                while path[-1] != start:
                    path.append(prev[path[-1]])
                return path[::-1]
            for y in sorted(self.objects(x, "bringsAbout"), key=str):
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        return []

    def causal_links(self) -> list[tuple[str, str]]:
        return sorted((c, e) for c, e in self.pairs("bringsAbout"))  # type: ignore[misc]

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Every TBox constraint the ABox breaks; empty iff the KB conforms."""
        out: list[Violation] = []
        for s, r, o in self.triples():
            decl = self.relations.get(r)
            if decl is None:
                out.append(Violation("unknown-relation", s, f"undeclared relation {r!r}", r, o))
                continue
            if s not in self._types:
                out.append(Violation("dangling-subject", s, f"subject of {r} is not an individual", r, o))
            elif not self.has_type(s, decl.domain):
                out.append(Violation("domain", s, f"{r} expects a {decl.domain} subject", r, o))
            if decl.literal:
                if not isinstance(o, LITERAL_RANGES[decl.range]) or isinstance(o, bool):
                    out.append(Violation("range", s, f"{r} expects a {decl.range} literal", r, o))
            elif not isinstance(o, str) or o not in self._types:
                out.append(Violation("dangling-object", s, f"object {o!r} of {r} is not an individual", r, o))
            elif not self.has_type(o, decl.range):
                out.append(Violation("range", s, f"{r} expects a {decl.range} object", r, o))

        for r, decl in sorted(self.relations.items()):
            if not decl.functional:
                continue
            by_subject: dict[str, list[Term]] = defaultdict(list)
            for s, o in self.pairs(r):
                by_subject[s].append(o)
            for s, objs in by_subject.items():
                if len(objs) > 1:
                    objs = sorted(objs, key=str)
                    out.append(Violation(
                        "functional", s, f"{r} is functional but relates to {', '.join(map(str, objs))}", r,
                        ",".join(map(str, objs)),
                    ))

        for el in sorted(self.instances_of("OrderedElement")):
            if not self.objects(el, "orderedBy"):
                out.append(Violation("cardinality", el, "ordered element without an order", "orderedBy"))
            if not self.objects(el, "encapsulates"):
                out.append(Violation("cardinality", el, "ordered element encapsulates no description", "encapsulates"))

        for pref in sorted(self.instances_of("Preference")):
            bearers = [b for b in self.subjects("hasPreference", pref)]
            orders = [o for o in self.subjects("describes", pref) if self.has_type(o, "PreferenceOrder")]
            if len(bearers) != 1:
                out.append(Violation("cardinality", pref, f"preference has {len(bearers)} bearers", "hasPreference"))
            if len(orders) != 1:
                out.append(Violation("cardinality", pref, f"preference is described by {len(orders)} orders", "describes"))

        cycle = self._causal_cycle()
        if cycle:
            out.append(Violation("cycle", cycle[0], "bringsAbout cycle: " + " -> ".join(cycle), "bringsAbout"))
        return ValidationReport(out)

    def _causal_cycle(self) -> list[str]:
        nodes = sorted({x for pair in self.pairs("bringsAbout") for x in pair}, key=str)
        for n in nodes:
            for y in sorted(self.objects(n, "bringsAbout"), key=str):
                path = self._causal_path(y, n)  # type: ignore[arg-type]
                if path:
                    return [n] + path
        return []


def validate(kb: KnowledgeBase) -> ValidationReport:
    return kb.validate()
