"""Synchronization problems for deterministic automata, with an emphasis on weakly acyclic ones."""

from .automata import (
    UNDEFINED,
    Dfa,
    NotWeaklyAcyclic,
    PartialDfa,
    StateSet,
    TopoOrder,
    UndefinedStep,
    apply,
    identity_dfa,
    image,
    is_eulerian,
    is_weakly_acyclic,
    partial_image,
    sink_states,
    topological_sort,
)
from .engines import (
    careful_shortest_word,
    greedy_rank_word_wa,
    intersection_nonempty,
    is_subset_reachable,
    is_synchronizing,
    max_sync_set,
    max_sync_set_unary,
    rank_of_automaton,
    rank_of_subset,
    shortest_sync_word,
    subset_shortest_sync_word,
    verify_eulerian_partition,
)
from .errors import InputError, ParseError, ResourceError, WasyncError
from .formats import parse_dfa, serialize_dfa
from .generators import gen_random_dfa, gen_random_eulerian, gen_random_weakly_acyclic
from .instances import CnfFormula, Graph

__version__ = "0.1.0"
