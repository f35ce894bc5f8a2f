"""State complexity of reversal for deterministic finite automata with output."""

from .complexity import (
    corollary_lower_bound,
    formula_F,
    formula_G,
    lemma_tau,
    stirling2,
    tau_ulm_size,
    verify_lemma_tau,
)
from .dfao import (
    Dfao,
    ReversedDfao,
    format_dfao,
    minimize,
    parse_dfao,
    reversal_state_complexity,
    reverse,
    trim,
    word_action,
)
from .monoid import (
    MonoidClosure,
    OutputMap,
    close,
    full_tm_generators,
    tau_orbit,
    tau_orbit_size,
    u_lm_contains,
    u_lm_generators,
    u_lm_size,
    v1n_generators,
    v_dn_contains,
    v_n_generators,
)
from .search import (
    SearchConfig,
    SearchResult,
    brute_force,
    check_unreachability,
    conjugacy_class_reps,
    random_search,
    surjections,
    v1n_conjecture_scan,
)
from .transforms import (
    Permutation,
    Transformation,
    compose,
    conjugate,
    format_cycles,
    parse_cycles,
    permutation_order,
    rank,
)

__version__ = "0.1.0"
