"""Query language: parser, canonical printer, evaluator and named queries."""

from .ast import Lit, Name, NotExists, Query, TriplePattern, Var, format_query
from .builtins import QUERY_A, QUERY_B, cq1, cq2
from .evaluator import BindingTable, evaluate
from .parser import parse

__all__ = [
    "BindingTable", "Lit", "Name", "NotExists", "QUERY_A", "QUERY_B", "Query", "TriplePattern", "Var",
    "cq1", "cq2", "evaluate", "format_query", "parse",
]
