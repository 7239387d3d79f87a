"""Reference knowledge bases, shipped as documents and rebuildable from code.

``coffee_tea.json``: one situation in which an agent is offered coffee and
tea, and a preference whose order puts tea above coffee.

``sweeteners.json``: a coffee-sweetening option that asks for sugar, with
honey as the only sweetener at hand.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..kb import KnowledgeBase
from ..situation import DescriptionPattern

NAMES = ("coffee_tea", "sweeteners")


def path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"no fixture {name!r}; choose from {', '.join(NAMES)}")
    return Path(str(resources.files(__package__) / f"{name}.json"))


def _consumption(id: str, drink: str) -> DescriptionPattern:
    return DescriptionPattern(
        id,
        (("a", "Agent"), ("e", "Consuming"), ("o", drink)),
        (("e", "performedBy", "a"), ("e", "objectActedOn", "o")),
    )


def coffee_tea() -> KnowledgeBase:
    kb = KnowledgeBase()
    kb.define_concept("Beverage")
    kb.define_concept("Coffee", ["Beverage"])
    kb.define_concept("Tea", ["Beverage"])
    kb.define_concept("Consuming", ["Event"])

    kb.add_individual("user1", ["Agent"])
    kb.add_individual("coffee1", ["Coffee"])
    kb.add_individual("tea1", ["Tea"])
    kb.add_individual("consuming1", ["Consuming"])
    kb.add_individual("consuming2", ["Consuming"])
    kb.add_individual("sit1", ["Situation"])
    for ind in ("user1", "consuming1", "coffee1", "consuming2", "tea1"):
        kb.assert_triple("sit1", "hasSetting", ind)
    kb.assert_triple("consuming1", "performedBy", "user1")
    kb.assert_triple("consuming1", "objectActedOn", "coffee1")
    kb.assert_triple("consuming2", "performedBy", "user1")
    kb.assert_triple("consuming2", "objectActedOn", "tea1")

    kb.add_description(_consumption("descCoffee", "Coffee"))
    kb.add_description(_consumption("descTea", "Tea"))
    kb.add_order("order1")
    kb.add_element("order1", "elCoffee", "descCoffee")
    kb.add_element("order1", "elTea", "descTea")
    kb.add_leq("order1", "elCoffee", "elTea")
    kb.add_preference("pref1", "user1", "order1")
    return kb


def sweeteners() -> KnowledgeBase:
    kb = KnowledgeBase()
    kb.define_concept("Sweetener")
    kb.define_concept("Sugar", ["Sweetener"])
    kb.define_concept("Honey", ["Sweetener"])
    kb.define_concept("Sweetening", ["Event"])
    kb.add_individual("robot1", ["Agent"])
    kb.add_individual("honey1", ["Honey"])
    kb.add_description(DescriptionPattern(
        "descSugar",
        (("a", "Agent"), ("e", "Sweetening"), ("o", "Sugar")),
        (("e", "performedBy", "a"), ("e", "objectActedOn", "o")),
    ))
    return kb
