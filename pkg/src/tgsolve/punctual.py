"""Backward solvers for punctual and finite-horizon reachability.

The workhorse is the one-step controlled predecessor ``pre``: the set of
vertices from which a player forces entering a given set in exactly one
move.  Iterating it ``T`` times from the target set solves the punctual
game ("be on a target at exactly time ``T``"); layering it under a
horizon solves reachability on finite temporal graphs.

Deadlock convention.  A play that halts because the player to move has
no available edge is losing for the player with the reachability
objective: a halted play never reached the target.  The solvers in this
module therefore evaluate the universal branch of ``pre`` only over
vertices that still have a move (``require_move=True``).  The public
``pre`` defaults to the literal vacuous reading of the universal
quantifier, which is what parity-style objectives need; both flavours
coincide on deadlock-free games.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import BudgetExceeded, OperationCancelled
from .model import StaticGameGraph, TemporalGame, Vertex
from .staticgames import attractor
from .stats import SolveStats

DEFAULT_ITERATION_BUDGET = 10**7
_CANCEL_MASK = (1 << 16) - 1


def _moves(g: TemporalGame | StaticGameGraph, v: Vertex, t: int) -> list:
    if isinstance(g, StaticGameGraph):
        return g.succ(v)
    return [w for w, ts in g.out_edges(v) if ts.contains(t)]


def pre(g: TemporalGame | StaticGameGraph, player: int, targets: frozenset,
        t: int = 0, *, require_move: bool = False) -> frozenset:
    """One-step controlled predecessor of ``targets`` at departure time ``t``.

    Contains the player's vertices with some available move into the set
    and the opponent's vertices whose available moves all lead into it.
    For static graphs ``t`` is ignored.  By default an opponent vertex
    with no move at ``t`` satisfies the universal branch vacuously; with
    ``require_move=True`` it does not (see the module docstring).
    """
    result = set()
    for v in g.vertices:
        succs = _moves(g, v, t)
        if g.owner[v] == player:
            if any(w in targets for w in succs):
                result.add(v)
        else:
            if require_move and not succs:
                continue
            if all(w in targets for w in succs):
                result.add(v)
    return frozenset(result)


def _check_budget(t: int, budget: int) -> None:
    if t > budget:
        raise BudgetExceeded(
            f"target time {t} exceeds the iteration budget {budget}", budget)


def _tick(k: int, cancel: Callable[[], bool] | None) -> None:
    if cancel is not None and (k & _CANCEL_MASK) == 0 and cancel():
        raise OperationCancelled("cancelled during backward iteration")


def solve_punctual(g: StaticGameGraph, targets: frozenset, target_time: int,
                   *, budget: int = DEFAULT_ITERATION_BUDGET,
                   cancel: Callable[[], bool] | None = None,
                   stats: SolveStats | None = None) -> frozenset:
    """Vertices from which Player 1 forces being on a target at exactly
    ``target_time``; the ``target_time``-fold predecessor of the targets."""
    _check_budget(target_time, budget)
    current = frozenset(targets)
    for k in range(target_time):
        _tick(k, cancel)
        current = pre(g, 1, current, require_move=True)
        if stats is not None:
            stats.iterations += 1
        if not current:
            break
    return current


def solve_punctual_with_strategy(g: StaticGameGraph, targets: frozenset,
                                 target_time: int,
                                 *, budget: int = DEFAULT_ITERATION_BUDGET
                                 ) -> tuple[frozenset, dict]:
    """Like :func:`solve_punctual` but also returns the witness move for
    every winning (vertex, time) pair; memory grows with ``target_time``."""
    layers = punctual_layers(g, targets, target_time, budget=budget)
    moves: dict = {}
    for t in range(target_time):
        nxt = layers[t + 1]
        for v in layers[t]:
            if g.owner[v] == 1:
                for w in g.succ(v):
                    if w in nxt:
                        moves[(v, t)] = w
                        break
    return layers[0], moves


def punctual_layers(g: TemporalGame | StaticGameGraph, targets: frozenset,
                    target_time: int, *, budget: int = DEFAULT_ITERATION_BUDGET,
                    require_move: bool = True) -> list[frozenset]:
    """All backward layers ``layers[t]`` = winners at time ``t`` of the
    punctual game; ``layers[target_time]`` is the target set itself."""
    _check_budget(target_time, budget)
    layers = [frozenset()] * (target_time + 1)
    layers[target_time] = frozenset(targets)
    for t in range(target_time - 1, -1, -1):
        layers[t] = pre(g, 1, layers[t + 1], t, require_move=require_move)
    return layers


def solve_punctual_temporal(g: TemporalGame, targets: frozenset, target_time: int,
                            *, budget: int = DEFAULT_ITERATION_BUDGET,
                            cancel: Callable[[], bool] | None = None,
                            stats: SolveStats | None = None,
                            require_move: bool = True) -> frozenset:
    """Starting vertices from which Player 1 forces reaching a target at
    exactly ``target_time``, with edge availability evaluated along the way.

    Keeps a single vertex set: the step computing winners at time ``t``
    evaluates availability at departure time ``t``.
    """
    _check_budget(target_time, budget)
    current = frozenset(targets)
    for n in range(1, target_time + 1):
        _tick(n, cancel)
        current = pre(g, 1, current, target_time - n, require_move=require_move)
        if stats is not None:
            stats.iterations += 1
    return current


@dataclass(frozen=True)
class PreSequenceTrace:
    """The iterated predecessor sequence ``B_0 = targets, B_1, ...`` with the
    first detected repetition.

    The successor of each set is a function of the set alone, so the
    first repeat closes a cycle: ``sets[first_repeat_index]`` equals the
    set that would follow ``sets[-1]``.  A repeat always occurs within
    ``2**|V|`` iterations by counting distinct subsets.
    """

    sets: tuple[frozenset, ...]
    first_repeat_index: int
    cycle_length: int


def pre_sequence_trace(g: StaticGameGraph, targets: frozenset,
                       *, budget: int = DEFAULT_ITERATION_BUDGET,
                       cancel: Callable[[], bool] | None = None) -> PreSequenceTrace:
    """Iterate the predecessor from ``targets`` until a set repeats."""
    first = frozenset(targets)
    seen = {first: 0}
    sets = [first]
    current = first
    for k in range(budget):
        _tick(k, cancel)
        current = pre(g, 1, current, require_move=True)
        if current in seen:
            return PreSequenceTrace(tuple(sets), seen[current], len(sets) - seen[current])
        seen[current] = len(sets)
        sets.append(current)
    raise BudgetExceeded(f"no repeat within the iteration budget {budget}", budget)


def solve_exists_target_time(g: StaticGameGraph, targets: frozenset, s0: Vertex,
                             *, budget: int = DEFAULT_ITERATION_BUDGET) -> int | None:
    """Least ``T`` such that Player 1 wins the punctual game at time ``T``,
    or None if no target time works.

    The predecessor sequence is eventually cyclic, so scanning it up to
    the first repeat decides existence for every ``T`` at once.
    """
    trace = pre_sequence_trace(g, targets, budget=budget)
    for t, layer in enumerate(trace.sets):
        if s0 in layer:
            return t
    return None


def solve_temporal_reachability(g: TemporalGame, targets: frozenset,
                                *, budget: int = DEFAULT_ITERATION_BUDGET,
                                cancel: Callable[[], bool] | None = None,
                                stats: SolveStats | None = None) -> frozenset:
    """Time-0 region from which Player 1 forces visiting a target on a
    finite-horizon game.

    After the horizon the edge set is frozen at its value one past the
    horizon (empty for well-formed finite instances), so the tail is the
    static attractor there; the horizon itself is handled by backward
    steps that absorb the targets at every layer.
    """
    from .monotone import stabilized_graph  # local import avoids a cycle

    horizon = g.class_hint.horizon
    _check_budget(horizon + 1, budget)
    targets = frozenset(targets)
    tail = stabilized_graph(g, horizon + 1)
    current = attractor(tail, 1, targets).winning1
    for t in range(horizon, -1, -1):
        _tick(t, cancel)
        current = targets | pre(g, 1, current, t, require_move=True)
        if stats is not None:
            stats.iterations += 1
    return current
