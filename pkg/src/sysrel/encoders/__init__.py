"""Reductions into the SCA framework: pushdown automata, variable hierarchies, distances."""

from .distance import NormalDistance, ball, region_query
from .hierarchy import HierarchySpec, LayoutError, Rule, build_hierarchy_machine, evaluate
from .pda import (Encoding, Pda, PdaError, ambncn_grammar, anbn_grammar, anbncm_grammar,
                  check_pda, counter_pda, encode_pda, epsilon_pda, grammar_to_pda)

__all__ = [
    "NormalDistance", "ball", "region_query",
    "HierarchySpec", "LayoutError", "Rule", "build_hierarchy_machine", "evaluate",
    "Encoding", "Pda", "PdaError", "ambncn_grammar", "anbn_grammar", "anbncm_grammar",
    "check_pda", "counter_pda", "encode_pda", "epsilon_pda", "grammar_to_pda",
]
