"""Preference orders: partial orders over ordered elements.

Each element of an order stands for one encapsulated description; ``a <= b``
reads "b is preferred at least as much as a".  The reflexive-transitive
closure is kept up to date on every insertion so that ``leq`` is a set lookup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import CycleError, UnknownElement


@dataclass(frozen=True)
class Preference:
    """A bearer's disposition, characterised by exactly one order."""

    id: str
    bearer: str | None
    order: str | None


class PreferenceOrder:
    """Partial order over element ids.

    With ``lenient=True`` cycles are accepted and mutually-related elements
    form indifference classes; this is an extension beyond a strict partial
    order and is off by default.
    """

    def __init__(self, id: str, *, lenient: bool = False, derived_from: str | None = None):
        self.id = id
        self.lenient = lenient
        self.derived_from = derived_from
        self._asserted: set[tuple[str, str]] = set()
        # _up[x] = {y | x <= y}, _down[y] = {x | x <= y}; both reflexive
        self._up: dict[str, set[str]] = {}
        self._down: dict[str, set[str]] = {}
        # element -> description, only for orders living outside a KB
        self.descriptions: dict[str, str] = {}

    def __repr__(self) -> str:
        return f"PreferenceOrder({self.id!r}, {len(self._up)} elements, {len(self._asserted)} pairs)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreferenceOrder):
            return NotImplemented
        return (
            self.id == other.id
            and self.lenient == other.lenient
            and self.derived_from == other.derived_from
            and self._up.keys() == other._up.keys()
            and self._asserted == other._asserted
            and self.descriptions == other.descriptions
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def elements(self) -> frozenset[str]:
        return frozenset(self._up)

    def __contains__(self, element: object) -> bool:
        return element in self._up

    def __len__(self) -> int:
        return len(self._up)

    def _require(self, *elements: str) -> None:
        for e in elements:
            if e not in self._up:
                raise UnknownElement(f"{e!r} is not an element of order {self.id!r}")

    def add_element(self, element: str) -> None:
        if element not in self._up:
            self._up[element] = {element}
            self._down[element] = {element}

    def add_leq(self, a: str, b: str) -> None:
        """Record ``a <= b`` and extend the closure."""
        self._require(a, b)
        if b in self._up[a]:
            self._asserted.add((a, b))
            return
        if not self.lenient and a in self._up[b]:
            # b <= .. <= a already holds; a <= b would close it
            raise CycleError(self.asserted_path(b, a) + [b])
        self._asserted.add((a, b))
        uppers = list(self._up[b])
        for x in list(self._down[a]):
            up_x = self._up[x]
            for y in uppers:
                if y not in up_x:
                    up_x.add(y)
                    self._down[y].add(x)

    def leq(self, a: str, b: str) -> bool:
        self._require(a, b)
        return b in self._up[a]

    def geq(self, a: str, b: str) -> bool:
        return self.leq(b, a)

    def less(self, a: str, b: str) -> bool:
        """Strict part: ``a <= b`` and not ``b <= a``."""
        self._require(a, b)
        return b in self._up[a] and a not in self._up[b]

    def greater(self, a: str, b: str) -> bool:
        return self.less(b, a)

    def comparable(self, a: str, b: str) -> bool:
        self._require(a, b)
        return b in self._up[a] or a in self._up[b]

    def upper_set(self, a: str) -> frozenset[str]:
        self._require(a)
        return frozenset(self._up[a])

    def lower_set(self, a: str) -> frozenset[str]:
        self._require(a)
        return frozenset(self._down[a])

    def maximal_elements(self, subset: Iterable[str] | None = None) -> list[str]:
        """Elements of ``subset`` with nothing strictly above them in ``subset``.

        Ties come back together, sorted by id.
        """
        members = set(self._up) if subset is None else set(subset)
        self._require(*members)
        out = []
        for e in members:
            above = self._up[e]
            if not any(f in above and e not in self._up[f] for f in members if f != e):
                out.append(e)
        return sorted(out)

    def minimal_elements(self, subset: Iterable[str] | None = None) -> list[str]:
        members = set(self._up) if subset is None else set(subset)
        self._require(*members)
        return sorted(
            e
            for e in members
            if not any(f in self._down[e] and e not in self._down[f] for f in members if f != e)
        )

    def asserted_pairs(self) -> list[tuple[str, str]]:
        return sorted(self._asserted)

    def closure_pairs(self, reflexive: bool = True) -> list[tuple[str, str]]:
        pairs = [(a, b) for a, ups in self._up.items() for b in ups if reflexive or a != b]
        return sorted(pairs)

    def derived_pairs(self) -> list[tuple[str, str]]:
        """Non-reflexive closure pairs that were not asserted directly."""
        return [p for p in self.closure_pairs(reflexive=False) if p not in self._asserted]

    def asserted_path(self, a: str, b: str) -> list[str]:
        """Shortest chain ``a <= .. <= b`` through asserted pairs, or ``[]``."""
        self._require(a, b)
        if a == b:
            return [a]
        succ: dict[str, list[str]] = {}
        for x, y in sorted(self._asserted):
            succ.setdefault(x, []).append(y)
        prev = {a: a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in succ.get(x, ()):
                if y in prev:
                    continue
                prev[y] = x
                if y == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(y)
        return []

    def indifference_classes(self) -> list[list[str]]:
        """Groups of mutually ``<=``-related elements (singletons in strict mode)."""
        seen: set[str] = set()
        classes = []
        for e in sorted(self._up):
            if e in seen:
                continue
            cls = sorted(self._up[e] & self._down[e])
            seen.update(cls)
            classes.append(cls)
        return classes

    def copy(self, id: str | None = None) -> PreferenceOrder:
        new = PreferenceOrder(id or self.id, lenient=self.lenient, derived_from=self.derived_from)
        new._asserted = set(self._asserted)
        new._up = {k: set(v) for k, v in self._up.items()}
        new._down = {k: set(v) for k, v in self._down.items()}
        new.descriptions = dict(self.descriptions)
        return new
