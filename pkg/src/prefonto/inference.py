"""Two fixed rules over the knowledge base.

* fulfillability: can the agent realise an option with what it has at hand,
  allowing a nearby sibling concept (e.g. honey for sugar) to stand in;
* cause derivation: preferring one effect over another carries over to the
  descriptions that bring those effects about.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import AmbiguousCause, UnknownIndividual
from .kb import ROOT, KnowledgeBase
from .order import Preference, PreferenceOrder

# vars constrained below one of these are roles of the performer or of the
# situation itself, not things that must be supplied from an inventory
NON_OBJECT_CONCEPTS = ("Agent", "Event", "Situation", "Description", "Task", "Role", "Quality", "OrderedElement")

DEFAULT_DEPTH = 1


@dataclass(frozen=True)
class Inventory:
    available: frozenset[str]

    @classmethod
    def of(cls, ids: Iterable[str]) -> Inventory:
        return cls(frozenset(ids))

    def check(self, kb: KnowledgeBase) -> None:
        for i in sorted(self.available):
            if i not in kb:
                raise UnknownIndividual(f"inventory item {i!r} is not in the knowledge base")


@dataclass(frozen=True)
class Substitution:
    var: str
    required: str
    supplied: str
    ancestor: str


@dataclass(frozen=True)
class FulfillabilityReport:
    option: str
    fulfillable: bool
    bindings: dict[str, str]
    substitutions: tuple[Substitution, ...]
    missing: tuple[str, ...]


@dataclass(frozen=True)
class CausalLink:
    cause: str
    effect: str


def object_vars(kb: KnowledgeBase, pattern) -> list[str]:
    return [
        v for v, c in pattern.vars
        if not any(kb.is_subconcept(c, n) for n in NON_OBJECT_CONCEPTS)
    ]


def _candidates(kb: KnowledgeBase, concept: str, available: list[str], depth: int) -> list[tuple[int, str, str]]:
    """``(distance, individual, shared ancestor)`` realisers, best first."""
    reach = kb.taxonomy.ancestors_within(concept, depth)
    found = []
    for ind in available:
        closure = kb.type_closure(ind)
        if concept in closure:
            found.append((0, ind, concept))
            continue
        # the root is shared by everything, so it licenses no substitution
        shared = sorted((d, a) for a, d in reach.items() if a in closure and a != ROOT)
        if shared:
            d, a = shared[0]
            found.append((d, ind, a))
    return sorted(found)


def fulfillable(kb: KnowledgeBase, option: str, inventory: Inventory | Iterable[str],
                depth: int = DEFAULT_DEPTH) -> FulfillabilityReport:
    """Check whether every object var of ``option`` can be supplied.

    ``depth`` bounds how many parent links above a required concept the
    search may climb to find a shared ancestor; 0 means exact subsumption.
    """
    if depth < 0:
        raise ValueError("substitution depth must be >= 0")
    if not isinstance(inventory, Inventory):
        inventory = Inventory.of(inventory)
    pattern = kb.description(option)
    inventory.check(kb)
    available = sorted(inventory.available)
    wanted = object_vars(kb, pattern)
    cands = {v: _candidates(kb, pattern.constraint(v), available, depth) for v in wanted}

    chosen: dict[str, tuple[int, str, str]] = {}

    def clashes(var: str, ind: str) -> bool:
        return any(chosen[o][1] == ind for o in pattern.distinct_from(var) if o in chosen)

    def search(k: int) -> bool:
        if k == len(wanted):
            return True
        var = wanted[k]
        for c in cands[var]:
            if clashes(var, c[1]):
                continue
            chosen[var] = c
            if search(k + 1):
                return True
            del chosen[var]
        return False

    missing = []
    if not search(0):
        chosen.clear()
        for var in wanted:
            pick = next((c for c in cands[var] if not clashes(var, c[1])), None)
            if pick is None:
                missing.append(var)
            else:
                chosen[var] = pick

    bindings = {v: chosen[v][1] for v in wanted if v in chosen}
    subs = tuple(
        Substitution(v, pattern.constraint(v), chosen[v][1], chosen[v][2])
        for v in wanted if v in chosen and chosen[v][0] > 0
    )
    return FulfillabilityReport(option, not missing, bindings, subs, tuple(missing))


def element_description(kb: KnowledgeBase, order: PreferenceOrder, element: str) -> str | None:
    return order.descriptions.get(element) or kb.description_of(element)


def filter_fulfillable(kb: KnowledgeBase, pref: Preference | str, inventory: Inventory | Iterable[str],
                       depth: int = DEFAULT_DEPTH) -> list[str]:
    """Elements of the preference's order whose description can be realised."""
    if isinstance(pref, str):
        pref = kb.preference(pref)
    if pref.order is None:
        return []
    order = kb.order(pref.order)
    keep = []
    for el in sorted(order.elements):
        desc = element_description(kb, order, el)
        if desc in kb.descriptions and fulfillable(kb, desc, inventory, depth).fulfillable:
            keep.append(el)
    return keep


def derive_cause_preferences(kb: KnowledgeBase, order: PreferenceOrder | str,
                             links: Iterable[CausalLink | tuple[str, str]] | None = None) -> PreferenceOrder:
    """Order the causes of ordered effects the way their effects are ordered.

    The result is a standalone order (never merged into ``order``) whose
    element ids are the cause description ids.  Links whose effect is not
    encapsulated in ``order`` are ignored.
    """
    if isinstance(order, str):
        order = kb.order(order)
    if links is None:
        links = kb.causal_links()
    links = [l if isinstance(l, CausalLink) else CausalLink(*l) for l in links]
    for l in links:
        kb.description(l.cause)
        kb.description(l.effect)

    by_description: dict[str, list[str]] = {}
    for el in sorted(order.elements):
        desc = element_description(kb, order, el)
        if desc is not None:
            by_description.setdefault(desc, []).append(el)

    cause_of: dict[str, str] = {}  # effect element -> cause
    element_of: dict[str, str] = {}  # cause -> effect element
    for l in sorted(set(links), key=lambda l: (l.effect, l.cause)):
        els = by_description.get(l.effect)
        if not els:
            continue
        if len(els) > 1:
            raise AmbiguousCause(f"effect {l.effect!r} is encapsulated by several elements: {', '.join(els)}")
        el = els[0]
        if el in cause_of and cause_of[el] != l.cause:
            raise AmbiguousCause(f"effect {l.effect!r} has several causes: {cause_of[el]}, {l.cause}")
        if l.cause in element_of and element_of[l.cause] != el:
            raise AmbiguousCause(f"cause {l.cause!r} brings about several ordered effects")
        cause_of[el] = l.cause
        element_of[l.cause] = el

    derived = PreferenceOrder(f"{order.id}/derived", lenient=order.lenient, derived_from=order.id)
    for cause in sorted(element_of):
        derived.add_element(cause)
        derived.descriptions[cause] = cause
    for a, b in order.closure_pairs(reflexive=False):
        if a in cause_of and b in cause_of:
            derived.add_leq(cause_of[a], cause_of[b])
    return derived
