"""Independent brute-force machinery for cross-validation.

Everything here answers game questions by explicit construction: unroll
the temporal game into a layered static graph and run the classical
static solvers, or enumerate strategy choices outright.  These routines
exist to validate the clever solvers, not to scale; hard budgets keep
them honest about that role.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, CapExceeded
from .model import (
    FiniteHorizon,
    Parity,
    PeriodicClass,
    Punctual,
    Reachability,
    Static,
    StaticGameGraph,
    TemporalGame,
    UltimatelyPeriodic,
    Vertex,
    successors,
)
from .staticgames import attractor, solve_parity_with_deadlocks

EXPANSION_BUDGET = 10**6
SUMMARY_CAP_VERTICES = 4
SUMMARY_CAP_PERIOD = 3


@dataclass(frozen=True)
class ExpansionGraph:
    """Layered static graph over (vertex, timestamp) pairs.

    Layer ``i`` holds the position at time ``i``; an edge between layers
    ``i`` and ``i + 1`` exists iff the base edge is available at ``i``.
    With ``fold`` set, the last layer's edges wrap back ``fold`` layers
    (so layer arithmetic becomes periodic); with ``frozen_tail`` the
    last layer instead loops within itself using its own availability,
    modelling a graph that never changes again.
    """

    graph: StaticGameGraph
    layers: int
    fold: int | None = None

    def at(self, v: Vertex, t: int) -> tuple:
        return (v, t)


def build_expansion(g: TemporalGame, horizon: int, fold: int | None = None,
                    *, frozen_tail: bool = False,
                    budget: int = EXPANSION_BUDGET) -> ExpansionGraph:
    """Explicit expansion with timestamps ``0..horizon`` inclusive."""
    layers = horizon + 1
    size = layers * len(g.vertices)
    if size > budget:
        raise BudgetExceeded(
            f"expansion would need {size} vertices, over the budget {budget}", budget)
    vertices = tuple((v, t) for t in range(layers) for v in g.vertices)
    owner = {(v, t): g.owner[v] for v, t in vertices}
    colour = None
    if g.colour is not None:
        colour = {(v, t): g.colour[v] for v, t in vertices}
    edges = set()
    for t in range(horizon):
        for (u, w), ts in g.edges.items():
            if ts.contains(t):
                edges.add(((u, t), (w, t + 1)))
    if fold is not None and horizon - fold + 1 >= 0:
        back = horizon - fold + 1
        for (u, w), ts in g.edges.items():
            if ts.contains(horizon):
                edges.add(((u, horizon), (w, back)))
    elif frozen_tail:
        for (u, w), ts in g.edges.items():
            if ts.contains(horizon):
                edges.add(((u, horizon), (w, horizon)))
    targets = None
    if isinstance(g.objective, (Reachability, Punctual)):
        targets = frozenset((v, t) for v, t in vertices if v in g.objective.targets)
    sg = StaticGameGraph(vertices=vertices, owner=owner, edges=frozenset(edges),
                         colour=colour, targets=targets)
    return ExpansionGraph(sg, layers, fold)


@dataclass(frozen=True)
class OracleAnswer:
    """Time-0 winning region of Player 1 plus the winner from the initial."""

    region0: frozenset
    winner: int


def _layer0(region: frozenset, vertices) -> frozenset:
    return frozenset(v for v in vertices if (v, 0) in region)


def oracle_solve(g: TemporalGame, *, budget: int = EXPANSION_BUDGET) -> OracleAnswer:
    """Solve by explicit expansion, dispatching on objective and class."""
    obj = g.objective
    if isinstance(obj, Punctual):
        exp = build_expansion(g, obj.target_time, budget=budget)
        hits = frozenset((v, obj.target_time) for v in obj.targets)
        region = attractor(exp.graph, 1, hits).winning1
        region0 = _layer0(region, g.vertices)
    elif isinstance(obj, Reachability):
        exp = _reach_expansion(g, budget)
        hits = frozenset(p for p in exp.graph.vertices if p[0] in obj.targets)
        region = attractor(exp.graph, 1, hits).winning1
        region0 = _layer0(region, g.vertices)
    elif isinstance(obj, Parity):
        exp = _parity_expansion(g, budget)
        region = solve_parity_with_deadlocks(exp.graph).winning1
        region0 = _layer0(region, g.vertices)
    else:
        raise ValueError(f"unsupported objective {obj!r}")
    return OracleAnswer(region0, 1 if g.initial in region0 else 2)


def _settle_time(g: TemporalGame) -> int:
    from .monotone import _change_times
    changes = _change_times(g)
    return changes[-1] if changes else 0


def _reach_expansion(g: TemporalGame, budget: int) -> ExpansionGraph:
    hint = g.class_hint
    if isinstance(hint, FiniteHorizon):
        return build_expansion(g, hint.horizon + 1, budget=budget)
    if isinstance(hint, PeriodicClass):
        return build_expansion(g, hint.period - 1, fold=hint.period, budget=budget)
    if isinstance(hint, UltimatelyPeriodic):
        h = hint.prefix + 2 * hint.period - 1
        return build_expansion(g, h, fold=hint.period, budget=budget)
    if isinstance(hint, Static):
        return build_expansion(g, 0, frozen_tail=True, budget=budget)
    # threshold-defined availability: static once settled
    return build_expansion(g, _settle_time(g), frozen_tail=True, budget=budget)


def _parity_expansion(g: TemporalGame, budget: int) -> ExpansionGraph:
    hint = g.class_hint
    if isinstance(hint, PeriodicClass):
        return build_expansion(g, hint.period - 1, fold=hint.period, budget=budget)
    if isinstance(hint, UltimatelyPeriodic):
        h = hint.prefix + 3 * hint.period - 1
        return build_expansion(g, h, fold=hint.period, budget=budget)
    if isinstance(hint, FiniteHorizon):
        return build_expansion(g, hint.horizon + 1, budget=budget)
    if isinstance(hint, Static):
        return build_expansion(g, 0, frozen_tail=True, budget=budget)
    return build_expansion(g, _settle_time(g), frozen_tail=True, budget=budget)


def oracle_enumerate_summaries(g: TemporalGame, s: Vertex,
                               *, cap_vertices: int = SUMMARY_CAP_VERTICES,
                               cap_period: int = SUMMARY_CAP_PERIOD) -> set[frozenset]:
    """All (end vertex, dominant colour) relations achievable from ``s``
    over one period by Player 1 strategies that may condition on the
    dominant colour seen so far.

    Works over the directed acyclic state space (vertex, time, colour):
    at a Player 1 state the achievable relations are the union over the
    available moves, at a Player 2 state every move must be covered so
    the relations combine by unionwise products.  A state where the
    player to move is stuck admits no relation at all: a halted play
    never completes the period.
    """
    if not isinstance(g.class_hint, PeriodicClass):
        raise ValueError("summary enumeration needs a periodic game")
    period = g.class_hint.period
    if len(g.vertices) > cap_vertices or period > cap_period:
        raise CapExceeded(
            f"summary enumeration capped at {cap_vertices} vertices / period {cap_period}")
    col = g.colour or {}
    colours = sorted(set(col.values()))
    index = {(v, c): i for i, (v, c) in enumerate(
        (v, c) for v in g.vertices for c in colours)}
    memo: dict = {}

    def fam(v: Vertex, t: int, c: int) -> frozenset:
        if t == period:
            return frozenset([1 << index[(v, c)]])
        key = (v, t, c)
        if key in memo:
            return memo[key]
        succs = sorted(successors(g, v, t), key=str)
        if not succs:
            result: frozenset = frozenset()
        elif g.owner[v] == 1:
            acc: set[int] = set()
            for w in succs:
                acc |= fam(w, t + 1, max(c, col[w]))
            result = frozenset(acc)
        else:
            combined: set[int] | None = None
            for w in succs:
                branch = fam(w, t + 1, max(c, col[w]))
                if not branch:
                    combined = set()
                    break
                if combined is None:
                    combined = set(branch)
                else:
                    combined = {a | b for a in combined for b in branch}
            result = frozenset(combined or ())
        memo[key] = result
        return result

    rev = {i: pair for pair, i in index.items()}
    out = set()
    for mask in fam(s, 0, col[s]):
        out.add(frozenset(rev[i] for i in range(len(rev)) if mask >> i & 1))
    return out
