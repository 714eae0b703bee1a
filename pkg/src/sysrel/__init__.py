"""Synchronous subsequential relations, self-constructing automata and their approximations."""

from .approx import (ApproxDecision, Budget, EmptyCertificate, Exhausted, Reached,
                     approx_language, decide_empty_n, decide_inclusion_n, decide_universal_n,
                     lim_estimate, reach_semidecide)
from .projection import (FiniteRelation, MonoidAutomaton, chi_nfa, closure_plus, compose_fr,
                         eps_saturate, identity_relation, monoid_automaton, sigma_n, tau_n)
from .regular import Nfa
from .sca import Sca, SemiSca, intersect_sca, member, phi_of_word, reach_query
from .transducer import (SysTransducer, ValidationReport, compose, diamond, image_nfa,
                         pair_member, validate)
from .words import Alphabet, convolution, eta_normalize, gcp, pad_to

__version__ = "0.1.0"

__all__ = [
    "ApproxDecision", "Budget", "EmptyCertificate", "Exhausted", "Reached",
    "approx_language", "decide_empty_n", "decide_inclusion_n", "decide_universal_n",
    "lim_estimate", "reach_semidecide",
    "FiniteRelation", "MonoidAutomaton", "chi_nfa", "closure_plus", "compose_fr",
    "eps_saturate", "identity_relation", "monoid_automaton", "sigma_n", "tau_n",
    "Nfa", "Sca", "SemiSca", "intersect_sca", "member", "phi_of_word", "reach_query",
    "SysTransducer", "ValidationReport", "compose", "diamond", "image_nfa", "pair_member",
    "validate", "Alphabet", "convolution", "eta_normalize", "gcp", "pad_to",
]
