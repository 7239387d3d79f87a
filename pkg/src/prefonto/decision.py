"""Choice selection: pick the options a performer's preferences rank highest."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    AmbiguousPreference,
    DecisionError,
    NoApplicablePreference,
    NoUniqueMatch,
    UnknownIndividual,
)
from .inference import DEFAULT_DEPTH, Inventory, element_description, filter_fulfillable
from .kb import KnowledgeBase
from .order import Preference
from .situation import pattern_subsumes, satisfies


@dataclass(frozen=True)
class DecisionProblem:
    performer: str
    options: tuple[str, ...]
    context: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        if not self.options:
            raise DecisionError("a decision needs at least one option")
        if len(set(self.options)) != len(self.options):
            raise DecisionError("options must be distinct")


@dataclass(frozen=True)
class DecisionResult:
    choices: tuple[str, ...]
    # option -> the element it matched in each consulted preference
    matched: dict[str, tuple[str, ...]]
    unmatched: tuple[str, ...]
    provenance: tuple[str, ...]
    infeasible: tuple[str, ...] = ()
    per_preference: dict[str, tuple[str, ...]] = field(default_factory=dict)


def match_option(kb: KnowledgeBase, option: str, pref: Preference | str) -> str | None:
    """The element of ``pref``'s order that most specifically describes ``option``.

    Returns ``None`` when no element's description subsumes the option.
    """
    if isinstance(pref, str):
        pref = kb.preference(pref)
    kb.description(option)
    if pref.order is None:
        return None
    order = kb.order(pref.order)
    candidates: list[tuple[str, str]] = []
    for el in sorted(order.elements):
        desc = element_description(kb, order, el)
        if desc in kb.descriptions and pattern_subsumes(kb, desc, option):
            candidates.append((el, desc))
    if not candidates:
        return None
    best = [
        el for el, desc in candidates
        if all(pattern_subsumes(kb, other, desc) for _, other in candidates)
    ]
    if len(best) == 1:
        return best[0]
    raise NoUniqueMatch(option, best or [el for el, _ in candidates])


def relevant_preferences(kb: KnowledgeBase, performer: str, context: str | None) -> list[Preference]:
    """The performer's preferences, restricted to those about ``context`` if given."""
    prefs = [p for p in kb.preferences(performer) if p.order is not None]
    if context is None:
        return prefs
    keep = []
    for p in prefs:
        order = kb.order(p.order)  # type: ignore[arg-type]
        for el in sorted(order.elements):
            desc = element_description(kb, order, el)
            if desc in kb.descriptions and satisfies(kb, context, desc):
                keep.append(p)
                break
    return keep


def decide(kb: KnowledgeBase, problem: DecisionProblem, inventory: Inventory | Iterable[str] | None = None,
           depth: int = DEFAULT_DEPTH) -> DecisionResult:
    """Select the options whose matched elements are maximal among the matched ones.

    With an ``inventory``, options whose element cannot be realised are set
    aside as infeasible before maximality is computed.
    """
    if not kb.has_type(problem.performer, "Agent"):
        raise UnknownIndividual(f"{problem.performer!r} is not an Agent")
    for opt in problem.options:
        kb.description(opt)
    if problem.context is not None and problem.context not in kb:
        raise UnknownIndividual(f"unknown context situation {problem.context!r}")

    prefs = relevant_preferences(kb, problem.performer, problem.context)
    matched: dict[str, list[str]] = {}
    infeasible: set[str] = set()
    per_pref: dict[str, set[str]] = {}
    for pref in prefs:
        order = kb.order(pref.order)  # type: ignore[arg-type]
        hits = {}
        for opt in problem.options:
            el = match_option(kb, opt, pref)
            if el is not None:
                hits[opt] = el
                matched.setdefault(opt, []).append(el)
        if inventory is not None and hits:
            feasible = set(filter_fulfillable(kb, pref, inventory, depth))
            for opt, el in list(hits.items()):
                if el not in feasible:
                    infeasible.add(opt)
                    del hits[opt]
        if not hits:
            continue
        top = set(order.maximal_elements(set(hits.values())))
        per_pref[pref.id] = {opt for opt, el in hits.items() if el in top}

    if not per_pref:
        raise NoApplicablePreference(
            f"no preference of {problem.performer!r} applies to {', '.join(problem.options)}"
        )
    sets = list(per_pref.values())
    choices = set.intersection(*sets)
    if not choices:
        raise AmbiguousPreference({k: list(v) for k, v in per_pref.items()})

    return DecisionResult(
        choices=tuple(sorted(choices)),
        matched={opt: tuple(matched[opt]) for opt in sorted(matched)},
        unmatched=tuple(sorted(set(problem.options) - set(matched))),
        provenance=tuple(sorted(kb.preference(p).order for p in per_pref)),  # type: ignore[misc]
        infeasible=tuple(sorted(infeasible)),
        per_preference={k: tuple(sorted(v)) for k, v in sorted(per_pref.items())},
    )
