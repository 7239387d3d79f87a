"""KB document format: a single JSON file with eight fixed sections.

``save`` is canonical (fixed section order, records sorted by id, one record
per line), so equal knowledge bases serialise to identical bytes and
``load(save(kb)) == kb``.  See ``docs/FORMAT.md`` for the full schema.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictBool,
    StrictInt,
    StrictStr,
    StringConstraints,
    ValidationError,
)

from .errors import (
    CycleError,
    DocumentReferenceError,
    IoError,
    KnowledgeBaseError,
    ParseError,
    UnknownConcept,
    UnknownElement,
    ValidationFailed,
)
from .kb import BUILTIN_RELATIONS, LITERAL_RANGES, KnowledgeBase, RelationDecl, ValidationReport, Violation
from .situation import DescriptionPattern

FORMAT_VERSION = 1

SECTIONS = (
    "concepts", "relations", "individuals", "triples",
    "descriptions", "orders", "preferences", "causal-links",
)

Id = Annotated[StrictStr, StringConstraints(min_length=1)]
Pair = tuple[Id, Id]


class _Record(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ConceptRecord(_Record):
    name: Id
    parents: list[Id]


class RelationRecord(_Record):
    name: Id
    domain: Id = "Entity"
    range: Id = "Entity"
    functional: StrictBool = False
    inverse: Optional[Id] = None


class IndividualRecord(_Record):
    id: Id
    types: Annotated[list[Id], Field(min_length=1)]


class DescriptionRecord(_Record):
    id: Id
    vars: Annotated[list[Pair], Field(min_length=1)]
    edges: list[tuple[Id, Id, Id]] = []
    distinct: list[Pair] = []


class ElementRecord(_Record):
    id: Id
    encapsulates: Optional[Id] = None


class OrderRecord(_Record):
    id: Id
    lenient: StrictBool = False
    elements: list[ElementRecord] = []
    leq: list[Pair] = []


class PreferenceRecord(_Record):
    id: Id
    bearer: Optional[Id] = None
    order: Optional[Id] = None


class CausalLinkRecord(_Record):
    cause: Id
    effect: Id


class Document(_Record):
    format_version: Literal[1] = Field(FORMAT_VERSION, alias="format-version")
    concepts: list[ConceptRecord] = []
    relations: list[RelationRecord] = []
    individuals: list[IndividualRecord] = []
    triples: list[tuple[Id, Id, Union[StrictInt, Id]]] = []
    descriptions: list[DescriptionRecord] = []
    orders: list[OrderRecord] = []
    preferences: list[PreferenceRecord] = []
    causal_links: list[CausalLinkRecord] = Field([], alias="causal-links")


# violations that mean the document refers to something it never declares
_DANGLING = frozenset({"dangling-subject", "dangling-object", "unknown-relation"})

PathLike = Union[str, "os.PathLike[str]"]


def _where(loc: tuple) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in loc)


def _read_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def parse_document(text: str, source: str = "<document>") -> dict:
    """Check ``text`` against the document schema; return it with defaults filled in."""
    return validate_document(_read_json(text, source), source)


def validate_document(raw: Any, source: str = "<document>") -> dict:
    try:
        doc = Document.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors(include_url=False)[0]
        raise ParseError(first["msg"], f"{source}:{_where(first['loc'])}") from None
    return doc.model_dump(by_alias=True)


def from_document(doc: Any, *, strict: bool = True, source: str = "<document>") -> KnowledgeBase:
    """Build a KB from a decoded document.

    Dangling ids always raise ``DocumentReferenceError``.  Other constraint
    violations raise ``ValidationFailed`` in strict mode and are otherwise
    left in ``kb.load_report``.
    """
    doc = validate_document(doc, source)
    kb = KnowledgeBase()

    def ref_error(where: str, exc: Exception) -> DocumentReferenceError:
        return DocumentReferenceError(f"{source}:{where}: {exc}")

    # concepts may list parents defined later in the section
    pending = [(i, c["name"], c["parents"]) for i, c in enumerate(doc.get("concepts", []))]
    while pending:
        progress = []
        for i, name, parents in pending:
            if all(p in kb.taxonomy for p in parents):
                try:
                    if name in kb.taxonomy:
                        for p in parents:
                            if p not in kb.taxonomy.parents(name):
                                kb.add_parent(name, p)
                    else:
                        kb.define_concept(name, parents)
                except KnowledgeBaseError as exc:
                    raise ValidationFailed(ValidationReport(
                        [Violation("cycle", name, str(exc))]
                    )) from None
                progress.append(i)
        if not progress:
            waiting = {name for _, name, _ in pending}
            for i, name, parents in pending:
                missing = [p for p in parents if p not in kb.taxonomy]
                if not set(missing) <= waiting:
                    break
            else:
                # every blocked parent is itself blocked: the section is cyclic
                raise ValidationFailed(ValidationReport([Violation(
                    "cycle", pending[0][1], f"concepts {', '.join(sorted(waiting))} form a parent cycle"
                )]))
            raise DocumentReferenceError(
                f"{source}:$.concepts[{i}]: unknown parent concept(s) {', '.join(missing)} for {name!r}"
            )
        pending = [p for p in pending if p[0] not in progress]

    # every record carries its own inverse, so both sides are written verbatim
    rel_records = doc.get("relations", [])
    for i, r in enumerate(rel_records):
        domain, range_ = r.get("domain", "Entity"), r.get("range", "Entity")
        for c in (domain, range_):
            if c not in kb.taxonomy and c not in LITERAL_RANGES:
                raise ref_error(f"$.relations[{i}]", UnknownConcept(f"unknown concept {c!r}"))
        kb.relations[r["name"]] = RelationDecl(
            r["name"], domain, range_, r.get("functional", False), r.get("inverse")
        )
    for i, r in enumerate(rel_records):
        inv = r.get("inverse")
        if inv is not None and inv not in kb.relations:
            raise DocumentReferenceError(f"{source}:$.relations[{i}]: unknown inverse relation {inv!r}")

    for i, ind in enumerate(doc.get("individuals", [])):
        try:
            kb.add_individual(ind["id"], ind["types"])
        except UnknownConcept as exc:
            raise ref_error(f"$.individuals[{i}]", exc) from None
        except KnowledgeBaseError as exc:
            raise ParseError(str(exc), f"{source}:$.individuals[{i}]") from None

    for i, d in enumerate(doc.get("descriptions", [])):
        where = f"$.descriptions[{i}]"
        try:
            pattern = DescriptionPattern(
                d["id"], tuple(map(tuple, d["vars"])),
                tuple(map(tuple, d.get("edges", []))), tuple(map(tuple, d.get("distinct", []))),
            )
            kb.add_description(pattern)
        except (UnknownConcept, LookupError) as exc:
            raise ref_error(where, exc) from None
        except KnowledgeBaseError as exc:
            raise ParseError(str(exc), f"{source}:{where}") from None

    for i, o in enumerate(doc.get("orders", [])):
        try:
            kb.add_order(o["id"], lenient=o.get("lenient", False))
        except KnowledgeBaseError as exc:
            raise ParseError(str(exc), f"{source}:$.orders[{i}]") from None
        for el in o.get("elements", []):
            if el["id"] not in kb:
                kb.add_individual(el["id"], ["OrderedElement"])
            kb.assert_triple(el["id"], "orderedBy", o["id"], strict=False)
            if el.get("encapsulates") is not None:
                kb.assert_triple(el["id"], "encapsulates", el["encapsulates"], strict=False)

    for i, (s, r, obj) in enumerate(doc.get("triples", [])):
        decl = kb.relations.get(r)
        if decl is not None and decl.virtual:
            raise ParseError(f"{r} is computed and cannot be asserted", f"{source}:$.triples[{i}]")
        kb.assert_triple(s, r, obj, strict=False)

    for i, p in enumerate(doc.get("preferences", [])):
        if p["id"] not in kb:
            kb.add_individual(p["id"], ["Preference"])
        if p.get("bearer") is not None:
            kb.assert_triple(p["bearer"], "hasPreference", p["id"], strict=False)
        if p.get("order") is not None:
            kb.assert_triple(p["order"], "describes", p["id"], strict=False)

    for link in doc.get("causal-links", []):
        kb.assert_triple(link["cause"], "bringsAbout", link["effect"], strict=False)

    report = kb.validate()
    dangling = [v for v in report if v.kind in _DANGLING]
    if dangling:
        raise DocumentReferenceError(f"{source}: " + "; ".join(map(str, dangling)))

    cycles = []
    for i, o in enumerate(doc.get("orders", [])):
        order = kb.orders[o["id"]]
        for a, b in o.get("leq", []):
            try:
                order.add_leq(a, b)
            except UnknownElement as exc:
                raise ref_error(f"$.orders[{i}].leq", exc) from None
            except CycleError as exc:
                cycles.append(Violation("cycle", o["id"], str(exc), "leq", f"{a}<={b}"))
    if cycles:
        raise ValidationFailed(ValidationReport(list(report) + cycles))

    kb.load_report = report
    if strict and not report.ok:
        raise ValidationFailed(report)
    kb.build_indexes()
    return kb


def load(path: PathLike, *, strict: bool = True) -> KnowledgeBase:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror}") from None
    return from_document(_read_json(text, str(path)), strict=strict, source=str(path))


def loads(text: str, *, strict: bool = True) -> KnowledgeBase:
    return from_document(_read_json(text, "<document>"), strict=strict)


def to_document(kb: KnowledgeBase) -> dict:
    consumed: set[tuple] = set()

    concepts = [
        {"name": c, "parents": sorted(kb.taxonomy.parents(c))}
        for c in kb.taxonomy if not kb.taxonomy.is_builtin(c)
    ]
    builtin = {r.name: r for r in BUILTIN_RELATIONS}
    relations = [
        {"name": d.name, "domain": d.domain, "range": d.range, "functional": d.functional, "inverse": d.inverse}
        for name, d in sorted(kb.relations.items()) if builtin.get(name) != d
    ]
    individuals = [{"id": i, "types": sorted(kb.types_of(i))} for i in kb.individuals()]

    descriptions = []
    for did in sorted(kb.descriptions):
        p = kb.descriptions[did]
        descriptions.append({
            "id": did,
            "vars": [list(v) for v in p.vars],
            "edges": [list(e) for e in p.edges],
            "distinct": [list(d) for d in p.distinct],
        })

    orders = []
    for oid in sorted(kb.orders):
        order = kb.orders[oid]
        elements = []
        for el in sorted(kb.subjects("orderedBy", oid)):
            if set(kb.objects(el, "orderedBy")) != {oid}:
                continue
            enc = sorted(kb.objects(el, "encapsulates"), key=str)
            if len(enc) > 1:
                continue
            consumed.update({(el, "orderedBy", oid), (oid, "orders", el)})
            if enc:
                consumed.add((el, "encapsulates", enc[0]))
            elements.append({"id": el, "encapsulates": enc[0] if enc else None})
        orders.append({
            "id": oid,
            "lenient": order.lenient,
            "elements": elements,
            "leq": [list(p) for p in order.asserted_pairs()],
        })

    preferences = []
    for pid in sorted(kb.instances_of("Preference")):
        bearers = sorted(kb.subjects("hasPreference", pid))
        describers = sorted(kb.subjects("describes", pid))
        if len(bearers) > 1 or len(describers) > 1:
            continue
        consumed.update((b, "hasPreference", pid) for b in bearers)
        consumed.update((o, "describes", pid) for o in describers)
        preferences.append({
            "id": pid,
            "bearer": bearers[0] if bearers else None,
            "order": describers[0] if describers else None,
        })

    links = []
    for cause, effect in kb.causal_links():
        consumed.add((cause, "bringsAbout", effect))
        links.append({"cause": cause, "effect": effect})

    triples = [list(t) for t in kb.triples() if t not in consumed]

    return {
        "format-version": FORMAT_VERSION,
        "concepts": concepts,
        "relations": relations,
        "individuals": individuals,
        "triples": triples,
        "descriptions": descriptions,
        "orders": orders,
        "preferences": preferences,
        "causal-links": links,
    }


def dumps(kb: KnowledgeBase) -> str:
    """Canonical text: one record per line, sections in fixed order."""
    doc = to_document(kb)
    parts = [f'  "format-version": {FORMAT_VERSION}']
    for name in SECTIONS:
        records = [json.dumps(r, ensure_ascii=False, separators=(", ", ": ")) for r in doc[name]]
        body = "[]" if not records else "[\n" + ",\n".join(f"    {r}" for r in records) + "\n  ]"
        parts.append(f"  {json.dumps(name)}: {body}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save(kb: KnowledgeBase, path: PathLike) -> str:
    """Write the canonical document for ``kb`` to ``path`` and return its text."""
    text = dumps(kb)
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}") from None
    return text
