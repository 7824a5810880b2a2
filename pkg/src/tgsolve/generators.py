"""Seeded random instance generation, one profile per solver family.

Instances are deterministic functions of (profile, seed, size options),
validate cleanly, and are deadlock-free up to the horizon or period that
matters for their class, except for the optional dedicated dead target
vertex that the reduction gadgets require.
"""

from __future__ import annotations

import random

from .model import (
    Always,
    FiniteHorizon,
    GE,
    Intervals,
    LE,
    Parity,
    Periodic,
    PeriodicClass,
    Punctual,
    Reachability,
    Static,
    TemporalGame,
    Threshold,
    UltimatelyPeriodic,
)

PROFILES = ("static-punctual", "finite", "periodic-parity", "declining", "improving")


def generate(profile: str, seed: int, *, vertices: int | None = None,
             target_time: int | None = None, horizon: int | None = None,
             period: int | None = None, max_colour: int | None = None,
             max_bound: int | None = None, dead_target: bool = False) -> TemporalGame:
    rng = random.Random(seed)
    if profile == "static-punctual":
        return _static_punctual(rng, vertices, target_time, dead_target)
    if profile == "finite":
        return _finite(rng, vertices, horizon)
    if profile == "periodic-parity":
        return _periodic_parity(rng, vertices, period, max_colour)
    if profile == "declining":
        return _monotone(rng, vertices, max_bound, declining=True)
    if profile == "improving":
        return _monotone(rng, vertices, max_bound, declining=False)
    raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")


def _names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def _random_edges(rng: random.Random, ids: list[str], max_out: int = 3) -> list[tuple[str, str]]:
    edges = []
    for v in ids:
        out = rng.randint(1, min(max_out, len(ids)))
        for w in rng.sample(ids, out):
            edges.append((v, w))
    return edges


def _static_punctual(rng: random.Random, n: int | None, target_time: int | None,
                     dead_target: bool) -> TemporalGame:
    n = n if n is not None else rng.randint(3, 7)
    ids = _names(n)
    owner = {v: rng.choice((1, 2)) for v in ids}
    edges = {e: Always() for e in _random_edges(rng, ids)}
    if dead_target:
        goal = "goal"
        for v in rng.sample(ids, max(1, n // 2)):
            edges[(v, goal)] = Always()
        ids.append(goal)
        owner[goal] = 1
        targets = frozenset([goal])
    else:
        targets = frozenset(rng.sample(ids, rng.randint(1, min(2, len(ids)))))
    t = target_time if target_time is not None else rng.randint(0, 12)
    return TemporalGame(
        vertices=tuple(ids), owner=owner, edges=edges,
        objective=Punctual(targets, t), initial=ids[0], class_hint=Static())


def _finite(rng: random.Random, n: int | None, horizon: int | None) -> TemporalGame:
    n = n if n is not None else rng.randint(3, 6)
    h = horizon if horizon is not None else rng.randint(2, 10)
    ids = _names(n)
    owner = {v: rng.choice((1, 2)) for v in ids}
    edges: dict = {}
    for v in ids:
        edges[(v, rng.choice(ids))] = Intervals.of([(0, h)])
    for v, w in _random_edges(rng, ids, max_out=2):
        if (v, w) not in edges:
            a = rng.randint(0, h)
            b = rng.randint(a, h)
            edges[(v, w)] = Intervals.of([(a, b)])
    targets = frozenset(rng.sample(ids, rng.randint(1, min(2, len(ids)))))
    return TemporalGame(
        vertices=tuple(ids), owner=owner, edges=edges,
        objective=Reachability(targets), initial=ids[0],
        class_hint=FiniteHorizon(h))


def _periodic_parity(rng: random.Random, n: int | None, period: int | None,
                     max_colour: int | None) -> TemporalGame:
    n = n if n is not None else rng.randint(3, 6)
    k = period if period is not None else rng.randint(1, 6)
    top = max_colour if max_colour is not None else 2
    ids = _names(n)
    owner = {v: rng.choice((1, 2)) for v in ids}
    colour = {v: rng.randint(0, top) for v in ids}
    edges: dict = {}
    for v, w in _random_edges(rng, ids):
        if rng.random() < 0.3:
            edges[(v, w)] = Always()
        else:
            size = rng.randint(1, k)
            edges[(v, w)] = Periodic(0, k, frozenset(rng.sample(range(k), size)))
    for v in ids:  # ensure a move at every phase of the period
        for phase in range(k):
            if any(ts.contains(phase) for (u, _), ts in edges.items() if u == v):
                continue
            candidates = sorted(w for (u, w) in edges if u == v)
            w = rng.choice(candidates) if candidates else v
            ts = edges.get((v, w))
            if isinstance(ts, Periodic):
                edges[(v, w)] = Periodic(0, k, ts.residues | {phase})
            elif ts is None:
                edges[(v, w)] = Periodic(0, k, frozenset([phase]))
    return TemporalGame(
        vertices=tuple(ids), owner=owner, edges=edges,
        objective=Parity(), initial=ids[0],
        class_hint=PeriodicClass(k), colour=colour)


def _monotone(rng: random.Random, n: int | None, max_bound: int | None,
              declining: bool) -> TemporalGame:
    n = n if n is not None else rng.randint(3, 6)
    bound = max_bound if max_bound is not None else 10**4
    ids = _names(n)
    owner = {v: rng.choice((1, 2)) for v in ids}
    edges: dict = {}
    for v in ids:
        edges[(v, rng.choice(ids))] = Always()
    used = 0
    for v, w in _random_edges(rng, ids, max_out=2):
        if (v, w) in edges:
            continue
        b = rng.randint(0, bound)
        used = max(used, b)
        p1_edge = owner[v] == 1
        decreasing = p1_edge if declining else not p1_edge
        edges[(v, w)] = Threshold(LE, b) if decreasing else Threshold(GE, b)
    targets = frozenset(rng.sample(ids, rng.randint(1, min(2, len(ids)))))
    hint = UltimatelyPeriodic(used + 1, 1) if used or any(
        isinstance(ts, Threshold) for ts in edges.values()) else Static()
    return TemporalGame(
        vertices=tuple(ids), owner=owner, edges=edges,
        objective=Reachability(targets), initial=ids[0], class_hint=hint)
