"""The two standing questions, implemented directly against the KB API.

``QUERY_A`` and ``QUERY_B`` express the same questions in the query language;
the test-suite checks that both routes agree.
"""

from __future__ import annotations

from ..errors import NoApplicablePreference, UnknownIndividual
from ..kb import KnowledgeBase
from ..situation import satisfies

# Preferences of a user that bear on a situation.
QUERY_A = """\
SELECT ?user ?sit ?pref WHERE {
    ?user a Agent ;
          hasPreference ?pref .
    ?sit a Situation ;
         satisfies ?desc .
    ?pref a Preference .
    ?desc a Description .
    ?elem a OrderedElement ;
          encapsulates ?desc .
    ?ord a PreferenceOrder ;
         orders ?elem ;
         describes ?pref .
}
"""

# Descriptions the user ranks highest among those the situation satisfies.
QUERY_B = """\
SELECT ?user ?sit ?pref ?desc WHERE {
    ?user a Agent ;
          hasPreference ?pref .
    ?sit a Situation ;
         satisfies ?desc .
    ?pref a Preference .
    ?desc a Description .
    ?elem a OrderedElement ;
          encapsulates ?desc .
    ?ord a PreferenceOrder ;
         orders ?elem ;
         describes ?pref .
    FILTER NOT EXISTS {
        ?better a OrderedElement ;
                greater ?elem ;
                encapsulates ?other .
        ?other a Description .
        ?sit satisfies ?other .
    }
}
"""


def _relevant_elements(kb: KnowledgeBase, user: str, situation: str) -> dict[str, dict[str, list[str]]]:
    """pref -> order -> elements whose description ``situation`` satisfies."""
    for ind in (user, situation):
        if ind not in kb:
            raise UnknownIndividual(f"unknown individual {ind!r}")
    out: dict[str, dict[str, list[str]]] = {}
    if not kb.has_type(user, "Agent") or not kb.has_type(situation, "Situation"):
        return out
    sat_cache: dict[str, bool] = {}

    def sat(desc: str) -> bool:
        if desc not in sat_cache:
            sat_cache[desc] = (
                desc in kb.descriptions
                and kb.has_type(desc, "Description")
                and bool(satisfies(kb, situation, desc))
            )
        return sat_cache[desc]

    for pref in sorted(kb.objects(user, "hasPreference")):
        if not kb.has_type(pref, "Preference"):
            continue
        for ord_id in sorted(kb.subjects("describes", pref)):
            if not kb.has_type(ord_id, "PreferenceOrder"):
                continue
            elems = [
                el for el in sorted(kb.objects(ord_id, "orders"))  # type: ignore[type-var]
                if kb.has_type(el, "OrderedElement")
                and any(sat(d) for d in kb.objects(el, "encapsulates"))  # type: ignore[arg-type]
            ]
            if elems:
                out.setdefault(pref, {})[ord_id] = elems  # type: ignore[index]
    return out


def cq1(kb: KnowledgeBase, user: str, situation: str) -> list[str]:
    """Preferences of ``user`` with at least one element ``situation`` satisfies."""
    return sorted(_relevant_elements(kb, user, situation))


def cq2(kb: KnowledgeBase, user: str, situation: str) -> list[str]:
    """Descriptions ``user`` ranks highest among those ``situation`` satisfies.

    Raises ``NoApplicablePreference`` when none of the user's preferences
    bears on the situation.
    """
    relevant = _relevant_elements(kb, user, situation)
    if not relevant:
        raise NoApplicablePreference(f"no preference of {user!r} bears on {situation!r}")
    found: set[str] = set()
    for per_order in relevant.values():
        for ord_id, elems in per_order.items():
            order = kb.orders.get(ord_id)
            if order is None:
                continue
            members = [e for e in elems if e in order]
            for el in order.maximal_elements(members):
                for d in kb.objects(el, "encapsulates"):
                    if d in kb.descriptions and kb.has_type(d, "Description") and satisfies(kb, situation, d):  # type: ignore[arg-type]
                        found.add(d)  # type: ignore[arg-type]
    return sorted(found)
