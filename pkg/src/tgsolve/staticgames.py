"""Classical solvers on static game graphs.

Both solvers are exact and produce positional strategies.  Attractor
computation is counter-based and linear; parity games are solved with
Zielonka's recursive algorithm, which is a perfectly good fit at desk
scale and doubles as the subroutine for the periodic expansion solver.

Successor choices are tie-broken towards the lowest vertex id so that
results are deterministic and suitable for golden tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import DeadlockVertex
from .model import StaticGameGraph, Vertex


@dataclass(frozen=True)
class SolveResult:
    """Winning regions for both players plus positional witness strategies.

    The regions partition the vertex set.  ``strategy1``/``strategy2``
    are partial maps defined on the respective winning region's own
    vertices (where a move exists).
    """

    winning1: frozenset
    winning2: frozenset
    strategy1: dict = field(default_factory=dict)
    strategy2: dict = field(default_factory=dict)

    def region(self, player: int) -> frozenset:
        return self.winning1 if player == 1 else self.winning2

    def strategy(self, player: int) -> dict:
        return self.strategy1 if player == 1 else self.strategy2


def _predecessors(vertices: set, out: dict) -> dict:
    pred: dict = {v: [] for v in vertices}
    for v in vertices:
        for w in out[v]:
            if w in pred:
                pred[w].append(v)
    return pred


def _attract(vertices: set, out: dict, owner: dict, player: int, base: set,
             require_move: bool = True) -> tuple[set, dict]:
    """Attractor of ``base`` for ``player`` within ``vertices``.

    Returns the attracted set and, for the player's own vertices outside
    ``base``, a witness move decreasing the distance to ``base``.  With
    ``require_move`` (the default) an opponent vertex without any
    successor is never attracted: a halted play does not count as
    reaching the target.  Without it the universal quantifier over the
    opponent's moves is read vacuously, so such vertices are attracted.
    """
    attr = set(base) & vertices
    strategy: dict = {}
    pred = _predecessors(vertices, out)
    remaining = {
        v: sum(1 for w in out[v] if w in vertices)
        for v in vertices if owner[v] != player
    }
    queue = deque(sorted(attr, key=str))
    if not require_move:
        for v in sorted(vertices, key=str):
            if owner[v] != player and remaining[v] == 0 and v not in attr:
                attr.add(v)
                queue.append(v)
    while queue:
        w = queue.popleft()
        for v in pred[w]:
            if v in attr:
                continue
            if owner[v] == player:
                attr.add(v)
                strategy[v] = w
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strategy


def attractor(g: StaticGameGraph, player: int, targets: set) -> SolveResult:
    """Region from which ``player`` forces reaching ``targets`` in >= 0 steps.

    The complement is the opponent's winning region for the avoidance
    game, together with a trap strategy that never enters the attractor.
    """
    vertices = set(g.vertices)
    targets = set(targets)
    out = {v: g.succ(v) for v in vertices}
    attr, strat = _attract(vertices, out, g.owner, player, targets)
    # Any move keeps a target vertex "already there"; pick one if it exists.
    for v in sorted(targets & vertices, key=str):
        if g.owner[v] == player and v not in strat and out[v]:
            strat[v] = out[v][0]
    opponent = 3 - player
    trap: dict = {}
    for v in sorted(vertices - attr, key=str):
        if g.owner[v] == opponent:
            stay = [w for w in out[v] if w not in attr]
            if stay:
                trap[v] = stay[0]
    win = frozenset(attr)
    lose = frozenset(vertices - attr)
    if player == 1:
        return SolveResult(win, lose, strat, trap)
    return SolveResult(lose, win, trap, strat)


def solve_static_parity(g: StaticGameGraph) -> SolveResult:
    """Solve a parity game with the max-colour-even winning convention.

    Every vertex must have a successor (infinite plays only); raises
    :class:`DeadlockVertex` otherwise.
    """
    colour = g.colour or {}
    out = {v: g.succ(v) for v in g.vertices}
    for v in g.vertices:
        if not out[v]:
            raise DeadlockVertex(f"vertex {v!r} has no successor")
        if v not in colour:
            raise DeadlockVertex(f"vertex {v!r} has no colour")
    w1, w2, s1, s2 = _zielonka(set(g.vertices), out, g.owner, colour)
    return SolveResult(frozenset(w1), frozenset(w2), s1, s2)


_SINK_P1 = "__sink_even__"
_SINK_P2 = "__sink_odd__"


def solve_parity_with_deadlocks(g: StaticGameGraph) -> SolveResult:
    """Parity solving on graphs that may contain deadlocked vertices.

    A player who cannot move loses, which is encoded by routing each
    deadlocked vertex to an absorbing sink of the opposite parity before
    calling the strict solver.  Regions and strategies are reported over
    the original vertices only.
    """
    dead = [v for v in g.vertices if not g.succ(v)]
    if not dead:
        return solve_static_parity(g)
    sink1, sink2 = _SINK_P1, _SINK_P2
    while sink1 in g.vertices or sink2 in g.vertices:
        sink1 += "_"
        sink2 += "_"
    colour = dict(g.colour or {})
    colour[sink1] = 0
    colour[sink2] = 1
    owner = dict(g.owner)
    owner[sink1] = 1
    owner[sink2] = 2
    edges = set(g.edges)
    edges.add((sink1, sink1))
    edges.add((sink2, sink2))
    for v in dead:
        edges.add((v, sink1 if g.owner[v] == 2 else sink2))
    augmented = StaticGameGraph(
        vertices=g.vertices + (sink1, sink2),
        owner=owner,
        edges=frozenset(edges),
        colour=colour,
    )
    res = solve_static_parity(augmented)
    original = set(g.vertices)
    return SolveResult(
        frozenset(res.winning1 & original),
        frozenset(res.winning2 & original),
        {v: w for v, w in res.strategy1.items() if v in original and w in original},
        {v: w for v, w in res.strategy2.items() if v in original and w in original},
    )


def _zielonka(vertices: set, out: dict, owner: dict, colour: dict):
    """Recursive region decomposition.

    Subgames obtained by removing an attractor stay deadlock-free, so
    the recursion never manufactures stuck vertices.
    """
    if not vertices:
        return set(), set(), {}, {}
    top = max(colour[v] for v in vertices)
    me = 1 if top % 2 == 0 else 2
    best = {v for v in vertices if colour[v] == top}
    attr, reach_best = _attract(vertices, out, owner, me, best)
    w1, w2, s1, s2 = _zielonka(vertices - attr, out, owner, colour)
    mine, theirs = (w1, w2) if me == 1 else (w2, w1)
    my_strat, their_strat = (s1, s2) if me == 1 else (s2, s1)
    if not theirs:
        strat = dict(my_strat)
        strat.update(reach_best)
        for v in sorted(best, key=str):
            if owner[v] == me and v not in strat:
                strat[v] = next(w for w in out[v] if w in vertices)
        if me == 1:
            return set(vertices), set(), strat, {}
        return set(), set(vertices), {}, strat
    opp = 3 - me
    escape, reach_theirs = _attract(vertices, out, owner, opp, theirs)
    r1, r2, t1, t2 = _zielonka(vertices - escape, out, owner, colour)
    opp_strat = dict(their_strat)
    opp_strat.update(reach_theirs)
    if me == 1:
        opp_strat.update(t2)
        return r1, r2 | escape, t1, opp_strat
    opp_strat.update(t1)
    return r1 | escape, r2, opp_strat, t2
