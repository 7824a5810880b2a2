"""Solvers for two-player reachability and parity games on temporal graphs."""

from .errors import (
    BudgetExceeded,
    CapExceeded,
    DeadlockVertex,
    GameFormatError,
    NonMonotoneInstance,
    NotDeclining,
    NotImproving,
    NotWinning,
    OperationCancelled,
    SolverError,
    StrategyUnavailableMove,
    TargetHasOutEdges,
    TargetNotP1,
)
from .model import (
    Always,
    FiniteHorizon,
    Intervals,
    Never,
    Parity,
    Periodic,
    PeriodicClass,
    Punctual,
    Reachability,
    Static,
    StaticGameGraph,
    TemporalGame,
    Threshold,
    TimeSet,
    UltimatelyPeriodic,
    Violation,
    change_points,
    deadlock_warnings,
    shift_timeset,
    static_to_temporal,
    successors,
    timeset_contains,
    validate,
)
from .staticgames import SolveResult, attractor, solve_parity_with_deadlocks, solve_static_parity
from .punctual import (
    PreSequenceTrace,
    pre,
    pre_sequence_trace,
    punctual_layers,
    solve_exists_target_time,
    solve_punctual,
    solve_punctual_temporal,
    solve_punctual_with_strategy,
    solve_temporal_reachability,
)
from .periodic import (
    Certificate,
    CertificateCheck,
    PeriodicParityResult,
    RealisabilityResult,
    Summary,
    build_colour_product,
    check_cycle_condition,
    check_realisable,
    compute_summary,
    enumerate_certificates,
    extract_certificate,
    solve_periodic_parity,
    solve_ultimately_periodic_parity,
    suffix_game,
    verify_certificate,
)
from .monotone import (
    MonotoneClass,
    MonotoneKind,
    classify_monotonicity,
    is_declining,
    is_decreasing,
    is_improving,
    is_increasing,
    solve_declining_parity,
    solve_declining_reachability,
    solve_improving_reachability,
    stabilized_graph,
)
from .reductions import (
    ReductionOutput,
    dualize,
    reach_to_parity,
    reduce_exists_to_punctual,
    reduce_punctual_to_decreasing,
    reduce_punctual_to_increasing,
    reduce_punctual_to_periodically_declining,
    reduce_punctual_to_temporal,
)
from .oracle import (
    ExpansionGraph,
    OracleAnswer,
    build_expansion,
    oracle_enumerate_summaries,
    oracle_solve,
)
from .fileformat import (
    digest,
    parse_certificate,
    parse_game,
    serialise_certificate,
    serialise_game,
)
from .generators import PROFILES, generate
from .stats import SolveStats

__version__ = "0.1.0"
