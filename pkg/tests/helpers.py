"""Shared fixtures and independent brute-force oracles for the tests.

The oracles here deliberately avoid the library's own algorithms: the
punctual oracle is a forward minimax over the play tree, the attractor
oracle a naive set-iteration fixpoint, the parity oracle an enumeration
of positional strategies, and the cycle oracle an explicit enumeration
of simple edge cycles.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from tgsolve.model import (
    Parity,
    Periodic,
    PeriodicClass,
    StaticGameGraph,
    TemporalGame,
)


def static_graph(owner: dict, edges, colour: dict | None = None,
                 targets=None) -> StaticGameGraph:
    return StaticGameGraph(
        vertices=tuple(sorted(owner)),
        owner=dict(owner),
        edges=frozenset(edges),
        colour=dict(colour) if colour else None,
        targets=frozenset(targets) if targets is not None else None,
    )


def phases(period: int, *residues: int) -> Periodic:
    return Periodic(0, period, frozenset(residues))


def phase_range(period: int, lo: int, hi: int) -> Periodic:
    return Periodic(0, period, frozenset(range(lo, hi + 1)))


def branching_two_phase_game() -> TemporalGame:
    """Period-2 parity game where Player 2's hub branches at phase 1.

    From s Player 1 either goes straight to t (dominant colour 1) or via
    the hub u, after which Player 2 decides between t and t2 but colour
    2 has been seen either way.
    """
    k = 2
    edges = {
        ("s", "t"): phases(k, 0),
        ("s", "u"): phases(k, 0),
        ("s", "s"): phases(k, 1),
        ("u", "t"): phases(k, 1),
        ("u", "t2"): phases(k, 1),
        ("u", "u"): phases(k, 0),
        ("t", "t"): phases(k, 1),
        ("t", "s"): phases(k, 0),
        ("t2", "t2"): phases(k, 1),
        ("t2", "s"): phases(k, 0),
    }
    return TemporalGame(
        vertices=("s", "u", "t", "t2"),
        owner={"s": 1, "u": 2, "t": 1, "t2": 1},
        edges=edges,
        objective=Parity(),
        initial="s",
        class_hint=PeriodicClass(k),
        colour={"s": 1, "u": 2, "t": 1, "t2": 1},
    )


def corridor_game() -> TemporalGame:
    """Period-15 parity game with timed corridors between period ends.

    From v the opponent's hub b delays until the last phase and then
    scatters to s, t or r; from s, t and r forced corridors bring the
    token to the opposite end of an s/t shuttle.  Player 1 wins from v:
    every long-run play alternates between s and t with dominant colour
    2 per period, after at most one costly period through r.
    """
    k = 15
    edges = {
        ("v", "b"): phases(k, 0),
        ("v", "v"): phase_range(k, 1, 14),
        ("b", "b"): phase_range(k, 0, 13),
        ("b", "s"): phases(k, 14),
        ("b", "t"): phases(k, 14),
        ("b", "r"): phases(k, 14),
        ("s", "c"): phases(k, 0),
        ("s", "s"): phase_range(k, 1, 14),
        ("t", "d"): phases(k, 0),
        ("t", "t"): phase_range(k, 1, 14),
        ("r", "d"): phases(k, 0),
        ("r", "r"): phase_range(k, 1, 14),
        ("c", "c"): phase_range(k, 0, 13),
        ("c", "t"): phases(k, 14),
        ("d", "d"): phase_range(k, 0, 13),
        ("d", "s"): phases(k, 14),
    }
    return TemporalGame(
        vertices=("v", "s", "t", "r", "b", "c", "d"),
        owner={"v": 1, "s": 1, "t": 1, "r": 1, "b": 2, "c": 1, "d": 1},
        edges=edges,
        objective=Parity(),
        initial="v",
        class_hint=PeriodicClass(k),
        colour={"v": 3, "s": 1, "t": 2, "r": 4, "b": 1, "c": 0, "d": 0},
    )


def corridor_strategy() -> dict:
    sigma = {("v", 0): "b", ("s", 0): "c", ("t", 0): "d", ("r", 0): "d"}
    for i in range(1, 14):
        sigma[("c", i)] = "c"
        sigma[("d", i)] = "d"
    sigma[("c", 14)] = "t"
    sigma[("d", 14)] = "s"
    return sigma


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def forward_minimax_punctual(sg: StaticGameGraph, targets, target_time: int) -> frozenset:
    """AND/OR evaluation over exactly-T-step plays; a position without a
    move loses for Player 1 regardless of its owner."""
    targets = frozenset(targets)

    @lru_cache(maxsize=None)
    def win(v, t) -> bool:
        if t == target_time:
            return v in targets
        succs = sg.succ(v)
        if not succs:
            return False
        if sg.owner[v] == 1:
            return any(win(w, t + 1) for w in succs)
        return all(win(w, t + 1) for w in succs)

    return frozenset(v for v in sg.vertices if win(v, 0))


def naive_attractor(sg: StaticGameGraph, player: int, targets) -> frozenset:
    """Fixpoint of the one-step operator by plain set iteration."""
    current = frozenset(targets)
    while True:
        grown = set(current)
        for v in sg.vertices:
            succs = sg.succ(v)
            if sg.owner[v] == player:
                if any(w in current for w in succs):
                    grown.add(v)
            elif succs and all(w in current for w in succs):
                grown.add(v)
        if frozenset(grown) == current:
            return current
        current = frozenset(grown)


def _kosaraju(vertices: list, succ: dict) -> dict:
    order: list = []
    seen: set = set()
    for root in vertices:
        if root in seen:
            continue
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                order.append(v)
                continue
            if v in seen:
                continue
            seen.add(v)
            stack.append((v, True))
            for w in succ.get(v, ()):
                if w not in seen:
                    stack.append((w, False))
    pred: dict = {v: [] for v in vertices}
    for v in vertices:
        for w in succ.get(v, ()):
            pred[w].append(v)
    comp: dict = {}
    label = 0
    for v in reversed(order):
        if v in comp:
            continue
        stack = [v]
        comp[v] = label
        while stack:
            x = stack.pop()
            for w in pred[x]:
                if w not in comp:
                    comp[w] = label
                    stack.append(w)
        label += 1
    return comp


def _odd_cycle_seeds(vertices: list, succ: dict, colour: dict) -> set:
    """Vertices lying on a cycle whose maximal vertex colour is odd."""
    seeds: set = set()
    for c in sorted({colour[v] for v in vertices if colour[v] % 2 == 1}):
        nodes = [v for v in vertices if colour[v] <= c]
        allowed = set(nodes)
        sub = {v: [w for w in succ.get(v, ()) if w in allowed] for v in nodes}
        comp = _kosaraju(nodes, sub)
        sizes: dict = {}
        for v in nodes:
            sizes[comp[v]] = sizes.get(comp[v], 0) + 1
        for v in nodes:
            if colour[v] != c:
                continue
            if sizes[comp[v]] > 1 or v in sub.get(v, ()):
                seeds.add(v)
    return seeds


def parity_region_by_strategy_enumeration(sg: StaticGameGraph) -> frozenset:
    """Player 1's region as a union over her positional strategies.

    Fixing a Player 1 strategy leaves a one-player graph in which Player
    2 wins exactly from the vertices that can reach a cycle with odd
    maximal colour.
    """
    colour = sg.colour or {}
    p1 = [v for v in sg.vertices if sg.owner[v] == 1]
    choices = [sg.succ(v) for v in p1]
    winning: set = set()
    for combo in itertools.product(*choices):
        succ = {}
        for v in sg.vertices:
            if sg.owner[v] == 1:
                succ[v] = [combo[p1.index(v)]]
            else:
                succ[v] = list(sg.succ(v))
        seeds = _odd_cycle_seeds(list(sg.vertices), succ, colour)
        bad = set(seeds)
        changed = True
        while changed:
            changed = False
            for v in sg.vertices:
                if v not in bad and any(w in bad for w in succ[v]):
                    bad.add(v)
                    changed = True
        winning |= set(sg.vertices) - bad
    return frozenset(winning)


def positional_strategies(sg: StaticGameGraph, player: int):
    """All positional strategies of a player, as dicts."""
    mine = [v for v in sg.vertices if sg.owner[v] == player]
    for combo in itertools.product(*[sg.succ(v) for v in mine]):
        yield dict(zip(mine, combo))


def eventual_cycle_max_colour(sg: StaticGameGraph, s1: dict, s2: dict, start) -> int:
    """Max colour on the cycle that the positional-vs-positional play enters."""
    colour = sg.colour or {}
    seen: dict = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = s1[v] if sg.owner[v] == 1 else s2[v]
    cycle = path[seen[v]:]
    return max(colour[w] for w in cycle)


def naive_monotone_reach(g: TemporalGame, targets) -> frozenset:
    """Backward induction layer by layer over the whole prefix, with no
    change-point acceleration: the ground truth the fast path must match."""
    from tgsolve.monotone import _change_times, stabilized_graph
    from tgsolve.punctual import pre
    from tgsolve.staticgames import attractor

    targets = frozenset(targets)
    changes = _change_times(g)
    settle = changes[-1] if changes else 0
    current = attractor(stabilized_graph(g, settle), 1, targets).winning1
    for t in range(settle - 1, -1, -1):
        current = targets | pre(g, 1, current, t, require_move=True)
    return current


def naive_monotone_parity(g: TemporalGame) -> frozenset:
    from tgsolve.monotone import _change_times, stabilized_graph
    from tgsolve.punctual import pre
    from tgsolve.staticgames import solve_parity_with_deadlocks

    changes = _change_times(g)
    settle = changes[-1] if changes else 0
    current = solve_parity_with_deadlocks(stabilized_graph(g, settle)).winning1
    for t in range(settle - 1, -1, -1):
        current = pre(g, 1, current, t, require_move=False)
    return current


def simple_cycle_maxima(edges) -> list[int]:
    """Maximal labels of all simple cycles of a labelled multigraph.

    Cycles are vertex-simple apart from returning to the start; each
    cycle is enumerated with its smallest vertex first.
    """
    vertices = sorted({u for (u, _, _) in edges} | {w for (_, _, w) in edges}, key=str)
    rank = {v: i for i, v in enumerate(vertices)}
    by_source: dict = {}
    for (u, c, w) in edges:
        by_source.setdefault(u, []).append((c, w))
    maxima: list[int] = []

    def extend(start, v, visited, label_max):
        for (c, w) in by_source.get(v, ()):
            if w == start:
                maxima.append(max(label_max, c))
            elif rank.get(w, -1) > rank[start] and w not in visited:
                extend(start, w, visited | {w}, max(label_max, c))

    for s in vertices:
        extend(s, s, {s}, min(c for (_, c, _) in edges))
    return maxima
