"""Knowledge base and reasoning engine for situation-dependent user preferences."""

from .decision import DecisionProblem, DecisionResult, decide, match_option
from .inference import (
    CausalLink,
    FulfillabilityReport,
    Inventory,
    Substitution,
    derive_cause_preferences,
    filter_fulfillable,
    fulfillable,
)
from .kb import ConceptTaxonomy, KnowledgeBase, RelationDecl, ValidationReport, Violation, validate
from .order import Preference, PreferenceOrder
from .query import QUERY_A, QUERY_B, BindingTable, cq1, cq2, evaluate, format_query, parse
from .situation import DescriptionPattern, pattern_subsumes, satisfies, setting_closure

__version__ = "0.1.0"

__all__ = [
    "BindingTable", "CausalLink", "ConceptTaxonomy", "DecisionProblem", "DecisionResult",
    "DescriptionPattern", "FulfillabilityReport", "Inventory", "KnowledgeBase", "Preference",
    "PreferenceOrder", "QUERY_A", "QUERY_B", "RelationDecl", "Substitution", "ValidationReport",
    "Violation", "cq1", "cq2", "decide", "derive_cause_preferences", "evaluate", "filter_fulfillable",
    "format_query", "fulfillable", "match_option", "parse", "pattern_subsumes", "satisfies",
    "setting_closure", "validate",
]
