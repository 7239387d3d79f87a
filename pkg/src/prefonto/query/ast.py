from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True)
class Name:
    """An individual id, concept name or relation name."""

    value: str

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Lit:
    value: Union[str, int]

    def __str__(self) -> str:
        return str(self.value) if isinstance(self.value, int) else json.dumps(self.value)


Term = Union[Var, Name, Lit]

TYPE_PREDICATE = "a"
VIRTUAL_PREDICATES = frozenset({"satisfies", "greater", "less", "leq", "geq"})


@dataclass(frozen=True)
class TriplePattern:
    subject: Term
    predicate: str
    object: Term

    def vars(self) -> set[str]:
        return {t.name for t in (self.subject, self.object) if isinstance(t, Var)}

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object}"


@dataclass(frozen=True)
class NotExists:
    patterns: tuple[TriplePattern, ...]
    # vars bound only inside the block
    local_vars: tuple[str, ...]

    def vars(self) -> set[str]:
        return set().union(*(p.vars() for p in self.patterns))


@dataclass(frozen=True)
class Query:
    select: tuple[str, ...]
    where: tuple[TriplePattern, ...]
    not_exists: tuple[NotExists, ...] = ()

    def vars(self) -> set[str]:
        return set().union(*(p.vars() for p in self.where))


def format_query(q: Query) -> str:
    """Canonical text; ``parse(format_query(q)) == q``."""
    lines = ["SELECT " + " ".join(f"?{v}" for v in q.select) + " WHERE {"]
    lines += [f"  {p} ." for p in q.where]
    for block in q.not_exists:
        lines.append("  FILTER NOT EXISTS {")
        lines += [f"    {p} ." for p in block.patterns]
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines)
