"""Why an option ranks where it does: matched elements, order paths, substitutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .decision import match_option, relevant_preferences
from .inference import DEFAULT_DEPTH, FulfillabilityReport, Inventory, element_description, fulfillable
from .kb import KnowledgeBase


@dataclass(frozen=True)
class Comparison:
    element: str
    other: str
    # "above", "below", "equivalent" or "incomparable"
    relation: str
    # chain of asserted pairs witnessing the relation, lowest element first
    path: tuple[str, ...] = ()

    @property
    def asserted(self) -> bool:
        return len(self.path) == 2


@dataclass(frozen=True)
class PreferenceTrace:
    preference: str
    order: str
    element: str | None
    comparisons: tuple[Comparison, ...] = ()


@dataclass(frozen=True)
class Explanation:
    choice: str
    performer: str
    traces: tuple[PreferenceTrace, ...]
    fulfillability: FulfillabilityReport | None = None


def _compare(order, el: str, other: str) -> Comparison:
    up, down = order.leq(other, el), order.leq(el, other)
    if up and down:
        return Comparison(el, other, "equivalent", tuple(order.asserted_path(other, el)))
    if up:
        return Comparison(el, other, "above", tuple(order.asserted_path(other, el)))
    if down:
        return Comparison(el, other, "below", tuple(order.asserted_path(el, other)))
    return Comparison(el, other, "incomparable")


def explain(kb: KnowledgeBase, choice: str, performer: str, *, options: Iterable[str] | None = None,
            context: str | None = None, inventory: Inventory | Iterable[str] | None = None,
            depth: int = DEFAULT_DEPTH) -> Explanation:
    """Trace ``choice`` through each of the performer's relevant preferences.

    Without ``options`` the matched element is compared against every other
    element of the order; with them, only against the other options' elements.
    """
    kb.description(choice)
    others = None if options is None else [o for o in dict.fromkeys(options) if o != choice]
    traces = []
    for pref in relevant_preferences(kb, performer, context):
        order = kb.order(pref.order)  # type: ignore[arg-type]
        el = match_option(kb, choice, pref)
        if el is None:
            traces.append(PreferenceTrace(pref.id, order.id, None))
            continue
        if others is None:
            rivals = sorted(order.elements - {el})
        else:
            rivals = sorted({e for o in others if (e := match_option(kb, o, pref)) is not None} - {el})
        traces.append(PreferenceTrace(pref.id, order.id, el, tuple(_compare(order, el, r) for r in rivals)))
    report = None if inventory is None else fulfillable(kb, choice, inventory, depth)
    return Explanation(choice, performer, tuple(traces), report)


def render(kb: KnowledgeBase, expl: Explanation) -> str:
    lines = [f"choice: {expl.choice}"]
    if not expl.traces:
        lines.append(f"  no preference of {expl.performer} applies")
    for t in expl.traces:
        lines.append(f"preference {t.preference} (order {t.order})")
        if t.element is None:
            lines.append("  no element matches")
            continue
        desc = element_description(kb, kb.order(t.order), t.element)
        lines.append(f"  matched element: {t.element} ({desc})")
        for c in t.comparisons:
            if c.relation == "incomparable":
                lines.append(f"  {c.other}: incomparable")
                continue
            kind = "asserted" if c.asserted else "derived"
            chain = " <= ".join(c.path) if c.path else "(closure)"
            lines.append(f"  {c.relation} {c.other}: {kind}: {chain}")
    if expl.fulfillability is not None:
        r = expl.fulfillability
        lines.append(f"fulfillable: {'yes' if r.fulfillable else 'no'}")
        for var, ind in sorted(r.bindings.items()):
            lines.append(f"  ?{var} <- {ind}")
        for s in r.substitutions:
            lines.append(f"  substitution: {s.supplied} for {s.required} (shared ancestor {s.ancestor})")
        for var in r.missing:
            lines.append(f"  missing: ?{var}")
    return "\n".join(lines)
