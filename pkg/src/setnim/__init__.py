"""Engine, verification harness, and play service for NecklaceNim and
related set-based Nim games."""

from .errors import (
    BudgetExceededError,
    DomainError,
    GameParameterError,
    IllegalMoveError,
    SetNimError,
    StrategyError,
)
from .games import (
    GameSpec,
    Move,
    Position,
    apply_move,
    as_position,
    build_spec,
    circular,
    clasp,
    generic,
    is_terminal,
    legal_moves,
    mirror,
    mirror_move,
    moore,
    necklace,
    nim,
    path,
    reversal_symmetric,
    validate_move,
)
from .oracle import Oracle, default_oracle, option_positions
from .characterize import (
    DerivedQuantities,
    PredicateReport,
    closed_form,
    decremented_quantities,
    derived_quantities,
    is_half_window,
    p_circular_small,
    p_half_window,
    p_path,
    p_window_n_minus_1,
    p_window_n_minus_2,
)
from .reductions import (
    InvariantVector,
    ReductionStep,
    anchor_reduce,
    find_isomorphism,
    identify_family,
    indicator_min,
    invariance_reduce,
    invariant_vectors,
    merge_reduce,
    mergeable_classes,
    pair_min_sum,
    reduction_pipeline,
    restore_zeros,
    specs_same_sets,
    subsume,
    zero_reduce,
)
from .strategy import (
    AlgorithmTrace,
    StrategyMove,
    TraceRow,
    case1_move,
    circular_small_move,
    delta_alg,
    path_winning_move,
    search_predicate_move,
    small_delta,
    two_delta,
    unit_adjust,
    winning_move,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
