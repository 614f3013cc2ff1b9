"""Growth classification of regular languages.

Decides whether the number of words of length ``m`` in a regular language
is bounded by a polynomial or grows exponentially, finds the exact
polynomial degree for DFAs, and relates both to the spectral radius of the
automaton's adjacency matrix.
"""

from .automata import (
    Dfa,
    Nfa,
    StateBudgetExceeded,
    determinize,
    format_automaton,
    intersect,
    parse_automaton,
    shortest_accepted_word,
    trim,
)
from .classifier import Growth, classify, is_state_commutative
from .oracle import count_words, degree_estimate, structural_growth_oracle
from .order import NotPolynomialGrowth, bounded_witness, polynomial_order
from .regex import compile_regex, parse_regex, regex_to_nfa
from .spectral import adjacency_of, matrix_power, spectral_class, verify_growth_law
from .words import power_star_dfa, primitive_root

__version__ = "0.1.0"
