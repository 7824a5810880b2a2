"""Polynomial-time solvers for declining and improving temporal games.

A game is declining when Player 1's edges can only disappear over time
and Player 2's can only appear (improving is the reverse).  Such games
stabilise: past the largest threshold bound the edge set never changes
again, so the tail is an ordinary static game and the finite prefix can
be crossed backwards.  The prefix walk is accelerated: whenever one
backward step leaves the winning set unchanged inside a span with no
availability change, the set stays fixed down to the next change point,
so the walk jumps there directly.  The total number of executed
backward steps is bounded by |V| + |N| where N is the set of threshold
bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import NotDeclining, NotImproving
from .model import (
    GE,
    LE,
    Always,
    Never,
    Periodic,
    PeriodicClass,
    Reachability,
    StaticGameGraph,
    TemporalGame,
    Threshold,
    TimeSet,
    timeset_contains,
)
from .punctual import pre
from .staticgames import attractor, solve_parity_with_deadlocks
from .stats import SolveStats


class MonotoneKind(Enum):
    DECLINING = "declining"
    IMPROVING = "improving"
    DECREASING = "decreasing"
    INCREASING = "increasing"
    PERIODICALLY_DECLINING = "periodically-declining"
    PERIODICALLY_IMPROVING = "periodically-improving"
    NONE = "none"


@dataclass(frozen=True)
class MonotoneClass:
    kind: MonotoneKind
    period: int | None = None

    def __str__(self) -> str:
        if self.period is not None:
            return f"{self.kind.value}({self.period})"
        return self.kind.value


def _edge_decreasing(ts: TimeSet) -> bool:
    return isinstance(ts, (Always, Never)) or (isinstance(ts, Threshold) and ts.op == LE)


def _edge_increasing(ts: TimeSet) -> bool:
    return isinstance(ts, (Always, Never)) or (isinstance(ts, Threshold) and ts.op == GE)


def _threshold_only(g: TemporalGame) -> bool:
    return all(isinstance(ts, (Always, Never, Threshold)) for ts in g.edges.values())


def is_declining(g: TemporalGame) -> bool:
    """Player 1's edges decreasing and Player 2's increasing."""
    return _threshold_only(g) and all(
        _edge_decreasing(ts) if g.owner[u] == 1 else _edge_increasing(ts)
        for (u, _), ts in g.edges.items())


def is_improving(g: TemporalGame) -> bool:
    """Player 1's edges increasing and Player 2's decreasing."""
    return _threshold_only(g) and all(
        _edge_increasing(ts) if g.owner[u] == 1 else _edge_decreasing(ts)
        for (u, _), ts in g.edges.items())


def is_decreasing(g: TemporalGame) -> bool:
    return _threshold_only(g) and all(_edge_decreasing(ts) for ts in g.edges.values())


def is_increasing(g: TemporalGame) -> bool:
    return _threshold_only(g) and all(_edge_increasing(ts) for ts in g.edges.values())


def _phase_set(ts: TimeSet, period: int) -> frozenset | None:
    if isinstance(ts, Always):
        return frozenset(range(period))
    if isinstance(ts, Never):
        return frozenset()
    if isinstance(ts, Periodic) and ts.offset == 0 and ts.period > 0 and period % ts.period == 0:
        return frozenset(i for i in range(period) if i % ts.period in ts.residues)
    return None


def _prefix_closed(phases: frozenset, period: int) -> bool:
    return phases == frozenset(range(len(phases)))


def _suffix_closed(phases: frozenset, period: int) -> bool:
    return phases == frozenset(range(period - len(phases), period))


def _periodically(g: TemporalGame, declining: bool) -> bool:
    if not isinstance(g.class_hint, PeriodicClass):
        return False
    period = g.class_hint.period
    for (u, _), ts in g.edges.items():
        phases = _phase_set(ts, period)
        if phases is None:
            return False
        p1_edge = g.owner[u] == (1 if declining else 2)
        ok = _prefix_closed(phases, period) if p1_edge else _suffix_closed(phases, period)
        if not ok:
            return False
    return True


def classify_monotonicity(g: TemporalGame) -> MonotoneClass:
    """Syntactic monotonicity class; the most useful label wins when
    several apply (always/never edges count as both directions)."""
    if is_declining(g):
        return MonotoneClass(MonotoneKind.DECLINING)
    if is_improving(g):
        return MonotoneClass(MonotoneKind.IMPROVING)
    if is_decreasing(g):
        return MonotoneClass(MonotoneKind.DECREASING)
    if is_increasing(g):
        return MonotoneClass(MonotoneKind.INCREASING)
    if _periodically(g, declining=True):
        return MonotoneClass(MonotoneKind.PERIODICALLY_DECLINING, g.class_hint.period)
    if _periodically(g, declining=False):
        return MonotoneClass(MonotoneKind.PERIODICALLY_IMPROVING, g.class_hint.period)
    return MonotoneClass(MonotoneKind.NONE)


def stabilized_graph(g: TemporalGame, m: int) -> StaticGameGraph:
    """The static graph with exactly the edges available at time ``m``."""
    targets = g.objective.targets if isinstance(g.objective, Reachability) else None
    return StaticGameGraph(
        vertices=g.vertices,
        owner=dict(g.owner),
        edges=frozenset(e for e, ts in g.edges.items() if timeset_contains(ts, m)),
        colour=dict(g.colour) if g.colour is not None else None,
        targets=targets,
    )


def _change_times(g: TemporalGame) -> list[int]:
    """Times d >= 1 at which the edge set entering d differs from d - 1.

    A bound ``x <= c`` changes the graph entering ``c + 1``; a bound
    ``x >= c`` changes it entering ``c``.
    """
    changes: set[int] = set()
    for ts in g.edges.values():
        if isinstance(ts, Threshold):
            d = ts.bound + 1 if ts.op == LE else ts.bound
            if d >= 1:
                changes.add(d)
    return sorted(changes)


def _backward_walk(g: TemporalGame, region: frozenset, start: int,
                   changes: list[int], absorb: frozenset, require_move: bool,
                   growing: bool, stats: SolveStats | None) -> frozenset:
    """Walk the winning set from time ``start`` down to 0.

    ``region`` must be valid for every time >= ``start`` and the edge
    set must be constant on every half-open span between consecutive
    change times.  A step that leaves the set unchanged proves it is a
    fixpoint of the span's (constant) predecessor map, which licenses
    jumping to the bottom of the span.
    """
    current = region
    n = start
    below = [d for d in changes if d < start]
    while n > 0:
        t = n - 1
        stepped = absorb | pre(g, 1, current, t, require_move=require_move)
        if stats is not None:
            stats.backward_steps += 1
        older, newer = (current, stepped) if growing else (stepped, current)
        if not older <= newer:
            raise AssertionError(
                "monotone solver invariant violated: winning sets are not "
                f"{'non-shrinking' if growing else 'non-growing'} backwards in time")
        if stepped == current:
            while below and below[-1] > t:
                below.pop()
            n = below.pop() if below else 0
            if stats is not None:
                stats.jumps += 1
        else:
            current = stepped
            n = t
    return current


def _reach_targets(g: TemporalGame, targets: frozenset | None) -> frozenset:
    if targets is not None:
        return frozenset(targets)
    if isinstance(g.objective, Reachability):
        return g.objective.targets
    raise ValueError("no target set given and the objective is not reachability")


def solve_declining_reachability(g: TemporalGame, targets: frozenset | None = None,
                                 *, stats: SolveStats | None = None) -> frozenset:
    """Time-0 winning region of Player 1 for reaching the targets ever.

    Solves the stabilised static game past the last change time, then
    walks backwards with change-point acceleration.  Works with at most
    |V| + |N| backward steps regardless of how large the bounds are.
    """
    if not is_declining(g):
        raise NotDeclining(f"game classifies as {classify_monotonicity(g)}")
    return _monotone_reach(g, _reach_targets(g, targets), growing=True, stats=stats)


def solve_improving_reachability(g: TemporalGame, targets: frozenset | None = None,
                                 *, stats: SolveStats | None = None) -> frozenset:
    """Improving counterpart of :func:`solve_declining_reachability`.

    Player 2's avoidance regions are the complements of the sets this
    walk maintains, so computing Player 1's sets directly and never
    complementing is the same single code path run with the reversed
    containment direction.
    """
    if not is_improving(g):
        raise NotImproving(f"game classifies as {classify_monotonicity(g)}")
    return _monotone_reach(g, _reach_targets(g, targets), growing=False, stats=stats)


def _monotone_reach(g: TemporalGame, targets: frozenset, growing: bool,
                    stats: SolveStats | None) -> frozenset:
    changes = _change_times(g)
    settle = changes[-1] if changes else 0
    stable = attractor(stabilized_graph(g, settle), 1, targets).winning1
    return _backward_walk(g, stable, settle, changes, targets,
                          require_move=True, growing=growing, stats=stats)


def solve_declining_parity(g: TemporalGame, *, stats: SolveStats | None = None) -> frozenset:
    """Time-0 Player 1 region for the parity objective on a declining
    (or, dually, improving) game: static parity on the stabilised graph,
    then the same accelerated backward walk."""
    declining = is_declining(g)
    if not declining and not is_improving(g):
        raise NotDeclining(f"game classifies as {classify_monotonicity(g)}")
    changes = _change_times(g)
    settle = changes[-1] if changes else 0
    stable = solve_parity_with_deadlocks(stabilized_graph(g, settle)).winning1
    return _backward_walk(g, stable, settle, changes, frozenset(),
                          require_move=False, growing=declining, stats=stats)
