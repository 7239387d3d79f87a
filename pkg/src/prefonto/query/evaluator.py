"""Nested-loop evaluation of parsed queries over a knowledge base.

Patterns are joined in a static order chosen greedily: at each step the
cheapest remaining pattern given the variables bound so far.  Virtual
predicates (``satisfies`` and the order comparisons) are computed on demand
and memoised for the duration of one evaluation only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import EvaluationError, UnknownConcept, UnknownRelation
from ..kb import ORDER_PREDICATES, KnowledgeBase
from ..situation import match_pattern, setting_closure
from .ast import TYPE_PREDICATE, Lit, Name, Query, Term, TriplePattern, Var
from .parser import parse

Value = Union[str, int]
Bindings = dict[str, Value]

JSON_FORMAT_VERSION = 1


def _row_key(row: tuple[Value, ...]) -> tuple:
    return tuple((1, v, "") if isinstance(v, int) else (0, 0, v) for v in row)


@dataclass(frozen=True)
class BindingTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[Value, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple[Value, ...]]:
        return iter(self.rows)

    def as_dicts(self) -> list[dict[str, Value]]:
        return [dict(zip(self.columns, r)) for r in self.rows]

    def column(self, name: str) -> list[Value]:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_json(self) -> dict:
        return {
            "format-version": JSON_FORMAT_VERSION,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
        }

    def to_text(self) -> str:
        header = [f"?{c}" for c in self.columns]
        cells = [[str(v) for v in r] for r in self.rows]
        widths = [max(len(x) for x in col) for col in zip(header, *cells)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        lines.append(f"({len(self.rows)} row{'s' if len(self.rows) != 1 else ''})")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _value(term: Term, binding: Bindings) -> Value | None:
    if isinstance(term, Var):
        return binding.get(term.name)
    return term.value


def _bind(binding: Bindings | None, term: Term, value: Value) -> Bindings | None:
    if binding is None:
        return None
    if isinstance(term, Var):
        current = binding.get(term.name)
        if current is None:
            new = dict(binding)
            new[term.name] = value
            return new
        return binding if current == value else None
    return binding if term.value == value else None


class _Evaluation:
    """Per-evaluation caches; discarded when the evaluation ends."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self._closure: dict[str, frozenset[str]] = {}
        self._sat: dict[tuple[str, str], bool] = {}
        self._satisfying: dict[str, list[str]] = {}

    # -- static checks --------------------------------------------------------

    def check(self, patterns: list[TriplePattern]) -> None:
        kb = self.kb
        for p in patterns:
            if p.predicate == TYPE_PREDICATE:
                if isinstance(p.object, Name) and p.object.value not in kb.taxonomy:
                    raise UnknownConcept(f"unknown concept {p.object.value!r} in '{p}'")
                continue
            if p.predicate not in kb.relations:
                raise UnknownRelation(f"unknown relation {p.predicate!r} in '{p}'")
            if p.predicate in ORDER_PREDICATES and isinstance(p.subject, Name) and isinstance(p.object, Name):
                a = {o.id for o in kb.orders_containing(p.subject.value)}
                b = {o.id for o in kb.orders_containing(p.object.value)}
                if a and b and not a & b:
                    raise EvaluationError(
                        f"'{p}' compares elements of different orders ({', '.join(sorted(a))} vs "
                        f"{', '.join(sorted(b))})"
                    )

    # -- virtual predicates -------------------------------------------------

    def closure(self, sit: str) -> frozenset[str]:
        c = self._closure.get(sit)
        if c is None:
            c = self._closure[sit] = setting_closure(self.kb, sit)
        return c

    def sat(self, sit: Value, desc: Value) -> bool:
        key = (sit, desc)
        hit = self._sat.get(key)  # type: ignore[arg-type]
        if hit is None:
            kb = self.kb
            pattern = kb.descriptions.get(desc)  # type: ignore[arg-type]
            if pattern is None or not kb.has_type(sit, "Situation"):
                hit = False
            elif any(self.kb.instances_of(c).isdisjoint(self.closure(sit)) for _, c in pattern.vars):  # type: ignore[arg-type]
                hit = False
            else:
                hit = bool(match_pattern(kb, pattern, self.closure(sit), limit=1))  # type: ignore[arg-type]
            self._sat[key] = hit  # type: ignore[index]
        return hit

    def satisfying(self, desc: Value) -> list[str]:
        found = self._satisfying.get(desc)  # type: ignore[arg-type]
        if found is None:
            if desc not in self.kb.descriptions:
                found = []
            else:
                found = [s for s in sorted(self.kb.instances_of("Situation")) if self.sat(s, desc)]
            self._satisfying[desc] = found  # type: ignore[index]
        return found

    def compare(self, pred: str, x: Value, y: Value) -> bool:
        kb = self.kb
        if not isinstance(x, str) or not isinstance(y, str):
            return False
        for order in kb.orders_containing(x):
            if y in order and getattr(order, pred)(x, y):
                return True
        return False

    def related(self, pred: str, x: str, upward: bool) -> list[str]:
        """Elements y with ``pred(x, y)`` (upward) or ``pred(y, x)``."""
        out = set()
        for order in self.kb.orders_containing(x):
            up, down = order.upper_set(x), order.lower_set(x)
            if pred == "leq":
                cands = up if upward else down
            elif pred == "geq":
                cands = down if upward else up
            elif pred == "less":
                cands = (up if upward else down) - (down if upward else up)
            else:  # greater
                cands = (down if upward else up) - (up if upward else down)
            out.update(cands)
        return sorted(out)

    # -- matching -----------------------------------------------------------

    def match(self, p: TriplePattern, b: Bindings) -> Iterator[Bindings]:
        kb = self.kb
        s = _value(p.subject, b)
        o = _value(p.object, b)
        pred = p.predicate

        if pred == TYPE_PREDICATE:
            if o is not None:
                if not isinstance(o, str) or o not in kb.taxonomy:
                    return
                if s is not None:
                    if kb.has_type(s, o):
                        yield b
                    return
                for i in sorted(kb.instances_of(o)):
                    nb = _bind(b, p.subject, i)
                    if nb is not None:
                        yield nb
                return
            subjects = [s] if s is not None else kb.individuals()
            for i in subjects:
                if i not in kb:
                    continue
                for c in sorted(kb.type_closure(i)):  # type: ignore[arg-type]
                    nb = _bind(_bind(b, p.subject, i), p.object, c)  # type: ignore[arg-type]
                    if nb is not None:
                        yield nb
            return

        if pred == "satisfies":
            if s is not None and o is not None:
                if self.sat(s, o):
                    yield b
            elif s is not None:
                for d in sorted(kb.descriptions):
                    if self.sat(s, d):
                        yield _bind(b, p.object, d)  # type: ignore[misc]
            elif o is not None:
                for sit in self.satisfying(o):
                    yield _bind(b, p.subject, sit)  # type: ignore[misc]
            else:
                for d in sorted(kb.descriptions):
                    for sit in self.satisfying(d):
                        nb = _bind(_bind(b, p.subject, sit), p.object, d)
                        if nb is not None:
                            yield nb
            return

        if pred in ORDER_PREDICATES:
            if s is not None and o is not None:
                if self.compare(pred, s, o):
                    yield b
            elif s is not None:
                if isinstance(s, str):
                    for y in self.related(pred, s, upward=True):
                        yield _bind(b, p.object, y)  # type: ignore[misc]
            elif o is not None:
                if isinstance(o, str):
                    for x in self.related(pred, o, upward=False):
                        yield _bind(b, p.subject, x)  # type: ignore[misc]
            else:
                for oid in sorted(kb.orders):
                    order = kb.orders[oid]
                    for x in sorted(order.elements):
                        for y in sorted(order.elements):
                            if getattr(order, pred)(x, y):
                                nb = _bind(_bind(b, p.subject, x), p.object, y)
                                if nb is not None:
                                    yield nb
            return

        if s is not None and o is not None:
            if kb.has_triple(s, pred, o):  # type: ignore[arg-type]
                yield b
        elif s is not None:
            for x in sorted(kb.objects(s, pred), key=str):  # type: ignore[arg-type]
                yield _bind(b, p.object, x)  # type: ignore[misc]
        elif o is not None:
            for x in sorted(kb.subjects(pred, o)):
                yield _bind(b, p.subject, x)  # type: ignore[misc]
        else:
            for x, y in sorted(kb.pairs(pred), key=lambda t: (t[0], str(t[1]))):
                nb = _bind(_bind(b, p.subject, x), p.object, y)
                if nb is not None:
                    yield nb

    # -- planning -----------------------------------------------------------

    def cost(self, p: TriplePattern, bound: set[str]) -> float:
        kb = self.kb

        def is_bound(t: Term) -> bool:
            return not isinstance(t, Var) or t.name in bound

        sb, ob = is_bound(p.subject), is_bound(p.object)
        if p.predicate == TYPE_PREDICATE:
            if sb:
                return 0.5
            if isinstance(p.object, Name):
                return float(len(kb.instances_of(p.object.value)))
            return 10.0 * len(kb.individuals())
        if p.predicate == "satisfies":
            n_sit = len(kb.instances_of("Situation"))
            n_desc = len(kb.descriptions)
            if sb and ob:
                return 2.0
            if sb:
                return 5.0 * n_desc
            if ob:
                return 5.0 * n_sit
            return 5.0 * n_sit * n_desc
        if p.predicate in ORDER_PREDICATES:
            sizes = [len(o) for o in kb.orders.values()] or [0]
            if sb and ob:
                return 0.5
            if sb or ob:
                return float(max(sizes))
            return float(sum(n * n for n in sizes))
        n_pairs = len(kb.pairs(p.predicate))
        if sb and ob:
            return 0.25
        if sb or ob:
            return 1.0 + n_pairs / max(1, len(kb.individuals()))
        return float(n_pairs)

    def plan(self, patterns: list[TriplePattern], bound: set[str]) -> list[TriplePattern]:
        bound = set(bound)
        remaining = list(enumerate(patterns))
        out = []
        while remaining:
            idx = min(range(len(remaining)), key=lambda k: (self.cost(remaining[k][1], bound), remaining[k][0]))
            _, p = remaining.pop(idx)
            out.append(p)
            bound |= p.vars()
        return out

    def solve(self, plan: list[TriplePattern], binding: Bindings, i: int = 0) -> Iterator[Bindings]:
        if i == len(plan):
            yield binding
            return
        for nb in self.match(plan[i], binding):
            yield from self.solve(plan, nb, i + 1)


def evaluate(query: Query | str, kb: KnowledgeBase) -> BindingTable:
    """Rows of ``query.select`` values satisfying the WHERE patterns and no FILTER block."""
    if isinstance(query, str):
        query = parse(query)
    ev = _Evaluation(kb)
    ev.check(list(query.where) + [p for b in query.not_exists for p in b.patterns])

    outer = query.vars()
    main = ev.plan(list(query.where), set())
    blocks = []
    for block in query.not_exists:
        shared = tuple(sorted(block.vars() & outer))
        blocks.append((shared, ev.plan(list(block.patterns), set(shared)), {}))

    rows = set()
    for b in ev.solve(main, {}):
        rejected = False
        for shared, plan, memo in blocks:
            key = tuple(b[v] for v in shared)
            hit = memo.get(key)
            if hit is None:
                start = {v: b[v] for v in shared}
                hit = memo[key] = next(ev.solve(plan, start), None) is not None
            if hit:
                rejected = True
                break
        if not rejected:
            rows.add(tuple(b[v] for v in query.select))
    return BindingTable(tuple(query.select), tuple(sorted(rows, key=_row_key)))
