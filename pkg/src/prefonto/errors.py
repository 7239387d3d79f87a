"""Exception hierarchy shared by every prefonto module."""

from __future__ import annotations


class PrefOntoError(Exception):
    """Base class for all errors raised by prefonto."""


# -- knowledge base -----------------------------------------------------------


class KnowledgeBaseError(PrefOntoError):
    pass


class DuplicateConcept(KnowledgeBaseError):
    pass


class UnknownConcept(KnowledgeBaseError, LookupError):
    pass


class UnknownParent(UnknownConcept):
    pass


class CycleIntroduced(KnowledgeBaseError):
    """A parent link would make the taxonomy cyclic.

    ``path`` lists the concepts along the cycle, first and last being equal.
    """

    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("taxonomy cycle: " + " -> ".join(self.path))


class DuplicateIndividual(KnowledgeBaseError):
    pass


class UnknownIndividual(KnowledgeBaseError, LookupError):
    pass


class UnknownSubject(UnknownIndividual):
    pass


class UnknownObject(UnknownIndividual):
    pass


class UnknownRelation(KnowledgeBaseError, LookupError):
    pass


class DuplicateRelation(KnowledgeBaseError):
    pass


class FunctionalViolation(KnowledgeBaseError):
    def __init__(self, subject: str, relation: str, existing: object, new: object):
        self.subject = subject
        self.relation = relation
        self.existing = existing
        self.new = new
        super().__init__(
            f"{relation} is functional: {subject} already relates to {existing!r}, "
            f"refusing {new!r}"
        )


class VirtualRelationError(KnowledgeBaseError):
    """Raised when asserting a computed relation such as ``satisfies``."""


class UnknownDescription(KnowledgeBaseError, LookupError):
    pass


class PatternError(KnowledgeBaseError, ValueError):
    """A description pattern is malformed (unknown var, disconnected, ...)."""


# -- preference orders --------------------------------------------------------


class OrderError(PrefOntoError):
    pass


class UnknownElement(OrderError, LookupError):
    pass


class CycleError(OrderError):
    """Adding a pair would relate two distinct elements both ways."""

    def __init__(self, path: list[str]):
        self.path = list(path)
        super().__init__("preference cycle: " + " <= ".join(self.path))


class CrossOrderError(OrderError):
    """Two elements from different preference orders were compared."""


# -- decisions and inference --------------------------------------------------


class DecisionError(PrefOntoError):
    pass


class NoUniqueMatch(DecisionError):
    def __init__(self, option: str, candidates: list[str]):
        self.option = option
        self.candidates = sorted(candidates)
        super().__init__(
            f"option {option!r} matches incomparable elements: {', '.join(self.candidates)}"
        )


class NoApplicablePreference(DecisionError):
    pass


class AmbiguousPreference(DecisionError):
    def __init__(self, choice_sets: dict[str, list[str]]):
        self.choice_sets = {k: sorted(v) for k, v in sorted(choice_sets.items())}
        detail = "; ".join(f"{k}: {{{', '.join(v)}}}" for k, v in self.choice_sets.items())
        super().__init__(f"preferences disagree on the choice: {detail}")


class InferenceError(PrefOntoError):
    pass


class AmbiguousCause(InferenceError):
    pass


# -- queries ------------------------------------------------------------------


class QueryError(PrefOntoError):
    pass


class QuerySyntaxError(QueryError):
    def __init__(self, message: str, line: int, column: int, hint: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.hint = hint
        text = f"line {line}, column {column}: {message}"
        if hint:
            text += f" ({hint})"
        super().__init__(text)


class EvaluationError(QueryError):
    pass


# -- documents ----------------------------------------------------------------


class DocumentError(PrefOntoError):
    pass


class ParseError(DocumentError):
    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class IoError(DocumentError):
    """A document file could not be read or written."""


class DocumentReferenceError(DocumentError):
    """A document refers to an id that is never declared."""


class ValidationFailed(DocumentError):
    def __init__(self, report):
        self.report = report
        lines = [str(v) for v in report]
        super().__init__(f"{len(lines)} violation(s):\n" + "\n".join(lines))
