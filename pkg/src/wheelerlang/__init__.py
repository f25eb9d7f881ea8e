"""Wheeler-related classification of regular languages given as DFAs."""

__version__ = "0.1.0"

from .automaton import (Dfa, EmptyLanguage, accepts, complement, complete, incoming_labels,
                        is_finite_language, is_minimal, is_prefix_universal, isomorphic,
                        make_input_consistent, minimize, trim)
from .classify import (ClassificationReport, classify, ew_necessary, is_definite,
                       is_reverse_definite, is_slt, prefix_intersection_finite,
                       rdef_decomposition)
from .order import (AlphabetOrder, automaton_colex_order, build_violating_order,
                    colex_compare, is_wheeler_language, lt_relation, validate_wheeler_axioms)
from .textio import export_dot, parse_dfa, serialize_dfa
from .uw import decide_uw, intertwined

__all__ = [
    "AlphabetOrder", "ClassificationReport", "Dfa", "EmptyLanguage", "accepts",
    "automaton_colex_order", "build_violating_order", "classify", "colex_compare",
    "complement", "complete", "decide_uw", "ew_necessary", "export_dot", "incoming_labels",
    "intertwined", "is_definite", "is_finite_language", "is_minimal", "is_prefix_universal",
    "is_reverse_definite", "is_slt", "is_wheeler_language", "isomorphic", "lt_relation",
    "make_input_consistent", "minimize", "parse_dfa", "prefix_intersection_finite",
    "rdef_decomposition", "serialize_dfa", "trim", "validate_wheeler_axioms",
]
