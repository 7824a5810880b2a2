"""Instance transformers connecting the game classes to each other.

Each reduction takes a punctual reachability instance (reach the target
at exactly a given time on a static graph) and produces a game in a more
restricted temporal class with the same winner, or, for ``dualize``, the
opposite winner.  Besides being interesting in their own right they make
good cross-validation fixtures: solving the output with one solver must
agree with solving the input with another.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TargetHasOutEdges, TargetNotP1
from .model import (
    Always,
    FiniteHorizon,
    Intervals,
    LE,
    GE,
    Parity,
    Periodic,
    PeriodicClass,
    Punctual,
    Reachability,
    Static,
    StaticGameGraph,
    TemporalGame,
    Threshold,
    UltimatelyPeriodic,
    Vertex,
    successors,
)


@dataclass(frozen=True)
class ReductionOutput:
    """The transformed game, the embedding of old vertices, and the
    preservation claim the construction promises."""

    game: TemporalGame
    vertex_map: dict
    claim: str


def _fresh(existing, base: str) -> str:
    name = base
    while name in existing:
        name += "_"
    return name


def reduce_exists_to_punctual(g: StaticGameGraph, targets: frozenset,
                              s0: Vertex) -> ReductionOutput:
    """Turn "some target time works" into a single punctual question.

    A new Player 1 initial vertex with a self-loop and an edge into the
    old initial lets Player 1 burn any number of steps before entering,
    so she wins at target time 2**|V| exactly when some smaller target
    time wins from the old initial (the least winning target time is
    always below 2**|V| because the predecessor sequence repeats).
    """
    start = _fresh(g.vertices, "_start")
    horizon = 2 ** len(g.vertices)
    edges = {e: Always() for e in g.edges}
    edges[(start, start)] = Always()
    edges[(start, s0)] = Always()
    game = TemporalGame(
        vertices=g.vertices + (start,),
        owner={**g.owner, start: 1},
        edges=edges,
        objective=Punctual(frozenset(targets), horizon),
        initial=start,
        class_hint=Static(),
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        f"player 1 wins at target time {horizon} from {start!r} iff some "
        f"target time at most {horizon} wins from {s0!r}")


def reduce_punctual_to_temporal(g: StaticGameGraph, targets: frozenset,
                                target_time: int, s0: Vertex) -> ReductionOutput:
    """Encode the exact arrival time with edge availability.

    A new goal vertex is reachable only from old targets and only by a
    move departing exactly at the target time.  Original edges allow
    departures strictly before then, so at the target time a token on an
    old target has no choice but to step to the goal, while a token
    anywhere else is stranded: reaching the goal ever means having been
    on a target at precisely the right moment.
    """
    goal = _fresh(g.vertices, "_goal")
    edges: dict = {e: Intervals.of([(0, target_time - 1)]) for e in g.edges}
    for v in sorted(targets, key=str):
        edges[(v, goal)] = Intervals.of([(target_time, target_time)])
    game = TemporalGame(
        vertices=g.vertices + (goal,),
        owner={**g.owner, goal: 1},
        edges=edges,
        objective=Reachability(frozenset([goal])),
        initial=s0,
        class_hint=FiniteHorizon(target_time),
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        f"player 1 reaches {goal!r} iff player 1 wins the punctual game "
        f"at time {target_time}")


def _require_sink(g: StaticGameGraph, v: Vertex) -> None:
    if g.succ(v):
        raise TargetHasOutEdges(f"target {v!r} has outgoing edges")


def reduce_punctual_to_decreasing(g: StaticGameGraph, target: Vertex,
                                  target_time: int, s0: Vertex) -> ReductionOutput:
    """Punctual reachability as a finite decreasing game.

    The old target is handed to Player 2 and given a timed escape to a
    losing sink that closes just before the target time; arriving
    exactly on time leaves Player 2 no choice but to step towards the
    winning sink, and everything disappears shortly after.
    """
    _require_sink(g, target)
    w = _fresh(g.vertices, "_w")
    top = _fresh(g.vertices + (w,), "_top")
    bot = _fresh(g.vertices + (w, top), "_bot")
    owner = {**g.owner, target: 2, w: 1, top: 2, bot: 2}
    edges: dict = {e: Threshold(LE, target_time + 1) for e in g.edges}
    if target_time >= 1:
        edges[(target, bot)] = Threshold(LE, target_time - 1)
    edges[(target, w)] = Threshold(LE, target_time + 1)
    edges[(w, top)] = Threshold(LE, target_time + 1)
    game = TemporalGame(
        vertices=g.vertices + (w, top, bot),
        owner=owner,
        edges=edges,
        objective=Reachability(frozenset([top])),
        initial=s0,
        class_hint=FiniteHorizon(target_time + 1),
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        f"player 1 reaches {top!r} iff player 1 wins the punctual game "
        f"at time {target_time}")


def reduce_punctual_to_increasing(g: StaticGameGraph, target: Vertex,
                                  target_time: int, s0: Vertex) -> ReductionOutput:
    """Mirror of the decreasing construction with appearing edges.

    Ownership of the two gadget vertices is switched: the old target
    becomes Player 1's with a permanently open losing escape and a door
    towards the goal that only opens at the target time, while Player
    2's relay gains its own escape two steps later.
    """
    _require_sink(g, target)
    w = _fresh(g.vertices, "_w")
    top = _fresh(g.vertices + (w,), "_top")
    bot = _fresh(g.vertices + (w, top), "_bot")
    owner = {**g.owner, target: 1, w: 2, top: 2, bot: 2}
    edges: dict = {e: Always() for e in g.edges}
    edges[(target, w)] = Threshold(GE, target_time)
    edges[(target, bot)] = Always()
    edges[(w, top)] = Always()
    edges[(w, bot)] = Threshold(GE, target_time + 2)
    game = TemporalGame(
        vertices=g.vertices + (w, top, bot),
        owner=owner,
        edges=edges,
        objective=Reachability(frozenset([top])),
        initial=s0,
        class_hint=UltimatelyPeriodic(target_time + 2, 1),
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        f"player 1 reaches {top!r} iff player 1 wins the punctual game "
        f"at time {target_time}")


def reduce_punctual_to_periodically_declining(g: StaticGameGraph, target: Vertex,
                                              target_time: int,
                                              s0: Vertex) -> ReductionOutput:
    """Punctual reachability as a declining game of period T + 1.

    Within a period Player 1's original moves die just before phase T
    while a losing escape stays open, Player 2 can always continue but
    gains a punishing escape at phase T, and the goal door sits behind
    the period boundary: it is open at phase 0 only, one step after the
    old target can be left.  The only winning play hits the old target
    exactly at phase T.
    """
    if g.owner.get(target) != 1:
        raise TargetNotP1(f"target {target!r} must belong to player 1")
    _require_sink(g, target)
    period = target_time + 1
    w = _fresh(g.vertices, "_w")
    top = _fresh(g.vertices + (w,), "_top")
    bot = _fresh(g.vertices + (w, top), "_bot")
    owner = {**g.owner, w: 1, top: 1, bot: 1}

    def phases(lo: int, hi: int) -> Periodic:
        return Periodic(0, period, frozenset(range(lo, hi + 1)))

    edges: dict = {}
    for (u, x) in g.edges:
        if g.owner[u] == 1:
            if target_time >= 1:
                edges[(u, x)] = phases(0, target_time - 1)
        else:
            edges[(u, x)] = Always()
    for u in g.vertices:
        if g.owner[u] == 1 and u != target:
            edges[(u, bot)] = Always()
        elif g.owner[u] == 2:
            edges[(u, bot)] = phases(target_time, target_time)
    edges[(target, w)] = Always()
    edges[(w, top)] = phases(0, 0)
    edges[(w, bot)] = Always()
    game = TemporalGame(
        vertices=g.vertices + (w, top, bot),
        owner=owner,
        edges=edges,
        objective=Reachability(frozenset([top])),
        initial=s0,
        class_hint=PeriodicClass(period),
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        f"player 1 reaches {top!r} iff player 1 wins the punctual game "
        f"at time {target_time}")


def dualize(g: TemporalGame) -> ReductionOutput:
    """Swap ownership and complement the target set of a punctual game.

    Player 1 wins the original iff Player 2 wins the dual; applying the
    construction twice gives back the original instance.
    """
    if not isinstance(g.objective, Punctual):
        raise ValueError("dualize expects a punctual objective")
    complement = frozenset(g.vertices) - g.objective.targets
    game = TemporalGame(
        vertices=g.vertices,
        owner={v: 3 - p for v, p in g.owner.items()},
        edges=dict(g.edges),
        objective=Punctual(complement, g.objective.target_time),
        initial=g.initial,
        class_hint=g.class_hint,
        colour=dict(g.colour) if g.colour is not None else None,
    )
    return ReductionOutput(
        game, {v: v for v in g.vertices},
        "player 1 wins the dual iff player 2 wins the original")


def reach_to_parity(g: TemporalGame, *, win_colour: int = 2,
                    lose_colour: int = 1) -> TemporalGame:
    """Encode a reachability objective as parity.

    Targets must be sinks: they get an always-available self-loop and
    the even colour, everything else the odd colour, so a play wins the
    parity condition exactly when it gets absorbed in a target.  Any
    vertex that can deadlock must belong to Player 1, otherwise the
    parity deadlock convention (a stuck player loses) would diverge from
    the reachability one (a halted play never reached the target).
    """
    if not isinstance(g.objective, Reachability):
        raise ValueError("reach_to_parity expects a reachability objective")
    targets = g.objective.targets
    for v in targets:
        if g.out_edges(v):
            raise ValueError(f"target {v!r} must be a sink to encode as parity")
    if isinstance(g.class_hint, PeriodicClass):
        horizon = g.class_hint.period
    elif isinstance(g.class_hint, FiniteHorizon):
        horizon = g.class_hint.horizon + 2
    else:
        horizon = 1
    for v in g.vertices:
        if g.owner[v] == 2 and v not in targets:
            for t in range(horizon):
                if not successors(g, v, t):
                    raise ValueError(
                        f"player 2 vertex {v!r} can deadlock at time {t}; "
                        "the parity encoding would change the winner")
    edges = dict(g.edges)
    for v in targets:
        edges[(v, v)] = Always()
    colour = {v: (win_colour if v in targets else lose_colour) for v in g.vertices}
    return TemporalGame(
        vertices=g.vertices,
        owner=dict(g.owner),
        edges=edges,
        objective=Parity(),
        initial=g.initial,
        class_hint=g.class_hint,
        colour=colour,
    )
