"""Recursive-descent parser for the SPARQL-like query language.

Grammar (keywords case-insensitive)::

    query     := SELECT var+ WHERE '{' group '}'
    group     := ( statement | filter | notin )*
    statement := subject predicate object ( ';' predicate object )* [ ';' ] [ '.' ]
               | predicate object '.'            -- continues the previous subject
    filter    := FILTER NOT EXISTS '{' group '}' [ '.' ]
    notin     := NOT IN '(' SELECT var WHERE ( '{' group '}' | group ) ')' [ '.' ]

``NOT IN`` applies to the subject of the preceding statement: it keeps rows
whose subject is *not* among the sub-select's answers, and is rewritten to a
``FILTER NOT EXISTS`` block with the selected var replaced by that subject.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from ..errors import QuerySyntaxError
from .ast import Lit, Name, NotExists, Query, Term, TriplePattern, Var

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_:\-]*)
  | (?P<punct>[{}().;])
    """,
    re.VERBOSE,
)

KEYWORDS = frozenset({"SELECT", "WHERE", "FILTER", "NOT", "EXISTS", "IN"})


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.value)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append(Token(kind, value, line, pos - line_start + 1))  # type: ignore[arg-type]
        for i, ch in enumerate(value):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class _NotIn:
    target: Term
    var: str
    patterns: list[TriplePattern]
    inner_vars: set[str]


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, tok: Token, message: str, hint: str | None = None) -> QuerySyntaxError:
        return QuerySyntaxError(message, tok.line, tok.col, hint)

    def is_punct(self, value: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.kind == "punct" and tok.value == value

    def is_keyword(self, word: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.kind == "name" and tok.value.upper() == word

    def expect_punct(self, value: str, hint: str | None = None) -> Token:
        tok = self.peek()
        if not (tok.kind == "punct" and tok.value == value):
            raise self.error(tok, f"expected {value!r}, found {tok.describe()}", hint)
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if not self.is_keyword(word):
            raise self.error(tok, f"expected {word}, found {tok.describe()}")
        return self.advance()

    # -- terms --------------------------------------------------------------

    def subject(self) -> Term:
        tok = self.peek()
        if tok.kind == "var":
            self.advance()
            return Var(tok.value[1:])
        if tok.kind == "name" and tok.value.upper() not in KEYWORDS:
            self.advance()
            return Name(tok.value)
        raise self.error(tok, f"expected a subject, found {tok.describe()}", "a ?variable or an id")

    def predicate(self) -> tuple[str, Token]:
        tok = self.peek()
        if tok.kind == "name":
            self.advance()
            return tok.value, tok
        if tok.kind == "var":
            raise self.error(tok, "variable predicates are not supported")
        raise self.error(tok, f"expected a predicate, found {tok.describe()}", "a relation name or 'a'")

    def object(self, pred_tok: Token) -> Term:
        tok = self.peek()
        if tok.kind == "var":
            self.advance()
            return Var(tok.value[1:])
        if tok.kind == "name" and tok.value.upper() not in KEYWORDS:
            self.advance()
            return Name(tok.value)
        if tok.kind == "int":
            self.advance()
            return Lit(int(tok.value))
        if tok.kind == "string":
            self.advance()
            return Lit(json.loads(tok.value))
        raise self.error(
            pred_tok,
            f"dangling predicate {pred_tok.value!r}: expected an object",
            f"found {tok.describe()}; an object is a ?variable, id, integer or string",
        )

    # -- structure ----------------------------------------------------------

    def query(self) -> Query:
        self.expect_keyword("SELECT")
        select: list[tuple[str, Token]] = []
        while self.peek().kind == "var":
            tok = self.advance()
            select.append((tok.value[1:], tok))
        if not select:
            raise self.error(self.peek(), "expected at least one ?variable after SELECT")
        self.expect_keyword("WHERE")
        self.expect_punct("{")
        where, filters, notins = self.group("}")
        self.expect_punct("}", "close the WHERE block")
        if self.peek().kind != "eof":
            raise self.error(self.peek(), f"unexpected {self.peek().describe()} after the query")

        outer = set().union(*(p.vars() for p in where))
        for name, tok in select:
            if name not in outer:
                raise self.error(tok, f"selected variable ?{name} does not occur in WHERE")
        names = outer | set().union(*(p.vars() for f in filters for p in f)) \
            | set().union(*(n.inner_vars for n in notins))

        blocks = [NotExists(tuple(f), tuple(sorted(set().union(*(p.vars() for p in f)) - outer)))
                  for f in filters]
        for n in notins:
            renames = {}
            for v in sorted(n.inner_vars & outer):
                k = 1
                while f"{v}_{k}" in names:
                    k += 1
                renames[v] = f"{v}_{k}"
                names.add(renames[v])
            pats = tuple(_rename(p, renames) for p in n.patterns)
            local = set().union(*(p.vars() for p in pats)) - outer
            blocks.append(NotExists(pats, tuple(sorted(local))))
        return Query(tuple(n for n, _ in select), tuple(where), tuple(blocks))

    def group(self, closer: str, nested: bool = False):
        where: list[TriplePattern] = []
        filters: list[list[TriplePattern]] = []
        notins: list[_NotIn] = []
        last_subject: Term | None = None
        while not self.is_punct(closer):
            tok = self.peek()
            if tok.kind == "eof":
                raise self.error(tok, f"unexpected end of input, expected {closer!r}")
            if self.is_keyword("FILTER"):
                if nested:
                    raise self.error(tok, "FILTER is not allowed inside a nested block")
                self.advance()
                self.expect_keyword("NOT")
                self.expect_keyword("EXISTS")
                self.expect_punct("{")
                inner, _, _ = self.group("}", nested=True)
                self.expect_punct("}")
                filters.append(inner)
                self._optional_dot()
                continue
            if self.is_keyword("NOT") and self.is_keyword("IN", 1):
                if nested:
                    raise self.error(tok, "NOT IN is not allowed inside a nested block")
                if last_subject is None:
                    raise self.error(tok, "NOT IN needs a preceding statement whose subject it restricts")
                notins.append(self.not_in(last_subject))
                continue
            if tok.kind == "name" and last_subject is not None and self.is_punct(".", 2):
                # "pred obj ." after a finished statement: same subject as before
                pred, ptok = self.predicate()
                where.append(TriplePattern(last_subject, pred, self.object(ptok)))
                self.advance()
                continue
            subject = self.subject()
            where.extend(self.predicate_objects(subject))
            last_subject = subject
            if self.is_punct("."):
                self.advance()
            elif not (self.is_punct(closer) or self.is_keyword("FILTER") or self.is_keyword("NOT")):
                raise self.error(self.peek(), f"expected '.' or ';', found {self.peek().describe()}")
        return where, filters, notins

    def predicate_objects(self, subject: Term) -> list[TriplePattern]:
        out = []
        while True:
            pred, ptok = self.predicate()
            out.append(TriplePattern(subject, pred, self.object(ptok)))
            if not self.is_punct(";"):
                return out
            self.advance()
            nxt = self.peek()
            if nxt.kind == "punct" or nxt.kind == "eof":
                return out

    def not_in(self, target: Term) -> _NotIn:
        self.advance()
        self.advance()
        self.expect_punct("(")
        self.expect_keyword("SELECT")
        tok = self.peek()
        if tok.kind != "var":
            raise self.error(tok, "NOT IN sub-select must select exactly one ?variable")
        var = self.advance().value[1:]
        if self.peek().kind == "var":
            raise self.error(self.peek(), "NOT IN sub-select must select exactly one ?variable")
        self.expect_keyword("WHERE")
        if self.is_punct("{"):
            self.advance()
            inner, _, _ = self.group("}", nested=True)
            self.expect_punct("}")
        else:
            inner, _, _ = self.group(")", nested=True)
        self.expect_punct(")")
        self._optional_dot()
        inner_vars = set().union(*(p.vars() for p in inner))
        if var not in inner_vars:
            raise self.error(tok, f"?{var} does not occur in the sub-select")
        pats = [_substitute(p, var, target) for p in inner]
        return _NotIn(target, var, pats, inner_vars - {var})

    def _optional_dot(self) -> None:
        if self.is_punct("."):
            self.advance()


def _substitute(p: TriplePattern, var: str, term: Term) -> TriplePattern:
    def sub(t: Term) -> Term:
        return term if isinstance(t, Var) and t.name == var else t
    return TriplePattern(sub(p.subject), p.predicate, sub(p.object))


def _rename(p: TriplePattern, renames: dict[str, str]) -> TriplePattern:
    def sub(t: Term) -> Term:
        return Var(renames[t.name]) if isinstance(t, Var) and t.name in renames else t
    return TriplePattern(sub(p.subject), p.predicate, sub(p.object))


def parse(text: str) -> Query:
    """Parse query text into a :class:`Query`; raises ``QuerySyntaxError``."""
    return _Parser(text).query()
