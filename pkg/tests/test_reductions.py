"""The instance transformers preserve (or flip) winners as claimed."""

from __future__ import annotations

import random

import pytest

from tgsolve.errors import TargetHasOutEdges, TargetNotP1
from tgsolve.fileformat import serialise_game
from tgsolve.generators import generate
from tgsolve.model import Always, successors, validate
from tgsolve.monotone import MonotoneKind, classify_monotonicity
from tgsolve.oracle import oracle_solve
from tgsolve.periodic import solve_periodic_parity
from tgsolve.punctual import (
    solve_exists_target_time,
    solve_punctual,
    solve_temporal_reachability,
)
from tgsolve.reductions import (
    dualize,
    reach_to_parity,
    reduce_exists_to_punctual,
    reduce_punctual_to_decreasing,
    reduce_punctual_to_increasing,
    reduce_punctual_to_periodically_declining,
    reduce_punctual_to_temporal,
)

from helpers import naive_monotone_reach, static_graph


def _as_static(g):
    targets = g.objective.targets
    return static_graph(g.owner, [e for e, ts in g.edges.items()
                                  if isinstance(ts, Always)], targets=targets)


def _punctual_input(seed: int, dead_target: bool = False):
    rng = random.Random(seed ^ 0xBEEF)
    g = generate("static-punctual", seed, dead_target=dead_target,
                 target_time=rng.randint(0, 10), vertices=rng.randint(3, 6))
    return g, _as_static(g)


# ---------------------------------------------------------------------------
# exists-T to punctual
# ---------------------------------------------------------------------------

def test_exists_reduction_target_time_is_two_to_the_vertices():
    sg = static_graph({"a": 1, "b": 1, "c": 1}, [("a", "b"), ("b", "c")])
    out = reduce_exists_to_punctual(sg, frozenset({"c"}), "a")
    assert out.game.objective.target_time == 8
    assert out.game.initial == "_start"


def test_exists_reduction_unreachable_targets_lose():
    sg = static_graph({"a": 1, "b": 1, "f": 1},
                      [("a", "b"), ("b", "a"), ("f", "f")])
    out = reduce_exists_to_punctual(sg, frozenset({"f"}), "a")
    region = solve_punctual(_as_static(out.game), frozenset({"f"}),
                            out.game.objective.target_time)
    assert out.game.initial not in region


def test_exists_reduction_agrees_with_direct_search():
    for seed in range(200):
        rng = random.Random(seed)
        g = generate("static-punctual", seed, vertices=rng.randint(2, 4))
        sg = _as_static(g)
        targets = g.objective.targets
        out = reduce_exists_to_punctual(sg, targets, g.initial)
        assert validate(out.game) == []
        exists = solve_exists_target_time(sg, targets, g.initial)
        region = solve_punctual(_as_static(out.game), targets,
                                out.game.objective.target_time)
        assert (out.game.initial in region) == (exists is not None), seed


# ---------------------------------------------------------------------------
# punctual to finite temporal
# ---------------------------------------------------------------------------

def test_temporal_reduction_time_zero_on_target():
    sg = static_graph({"a": 1, "b": 1}, [("a", "b"), ("b", "a")])
    out = reduce_punctual_to_temporal(sg, frozenset({"a"}), 0, "a")
    goal = next(iter(out.game.objective.targets))
    assert "a" in solve_temporal_reachability(out.game, frozenset({goal}))


def test_temporal_reduction_empty_targets_lose():
    sg = static_graph({"a": 1, "b": 1}, [("a", "b"), ("b", "a")])
    out = reduce_punctual_to_temporal(sg, frozenset(), 3, "a")
    goal = next(iter(out.game.objective.targets))
    region = solve_temporal_reachability(out.game, frozenset({goal}))
    assert region == frozenset({goal})  # nothing but the goal itself


def test_temporal_reduction_preserves_winner_on_200_seeds():
    for seed in range(200):
        g, sg = _punctual_input(seed)
        targets, t = g.objective.targets, g.objective.target_time
        expected = g.initial in solve_punctual(sg, targets, t)
        out = reduce_punctual_to_temporal(sg, targets, t, g.initial)
        assert validate(out.game) == []
        goal = next(iter(out.game.objective.targets))
        got = g.initial in solve_temporal_reachability(out.game, frozenset({goal}))
        assert got == expected, seed
        assert (oracle_solve(out.game).winner == 1) == expected, seed


# ---------------------------------------------------------------------------
# punctual to decreasing / increasing
# ---------------------------------------------------------------------------

def test_decreasing_reduction_requires_sink_target():
    sg = static_graph({"a": 1, "goal": 1}, [("a", "goal"), ("goal", "a")])
    with pytest.raises(TargetHasOutEdges):
        reduce_punctual_to_decreasing(sg, "goal", 3, "a")


def test_decreasing_reduction_preserves_winner_on_200_seeds():
    for seed in range(200):
        g, sg = _punctual_input(seed, dead_target=True)
        t = g.objective.target_time
        expected = g.initial in solve_punctual(sg, frozenset({"goal"}), t)
        out = reduce_punctual_to_decreasing(sg, "goal", t, g.initial)
        assert validate(out.game) == []
        assert classify_monotonicity(out.game).kind is MonotoneKind.DECREASING
        targets = out.game.objective.targets
        got = g.initial in solve_temporal_reachability(out.game, targets)
        assert got == expected, seed
        assert (oracle_solve(out.game).winner == 1) == expected, seed


def test_increasing_reduction_preserves_winner_on_200_seeds():
    for seed in range(200):
        g, sg = _punctual_input(seed, dead_target=True)
        t = g.objective.target_time
        expected = g.initial in solve_punctual(sg, frozenset({"goal"}), t)
        out = reduce_punctual_to_increasing(sg, "goal", t, g.initial)
        assert validate(out.game) == []
        assert classify_monotonicity(out.game).kind is MonotoneKind.INCREASING
        targets = out.game.objective.targets
        got = g.initial in naive_monotone_reach(out.game, targets)
        assert got == expected, seed
        assert (oracle_solve(out.game).winner == 1) == expected, seed


def test_gadget_ownership_changes_are_limited_to_the_target():
    g, sg = _punctual_input(1, dead_target=True)
    out = reduce_punctual_to_decreasing(sg, "goal", 5, g.initial)
    for v in sg.vertices:
        if v != "goal":
            assert out.game.owner[v] == sg.owner[v]
    assert out.game.owner["goal"] == 2
    out2 = reduce_punctual_to_increasing(sg, "goal", 5, g.initial)
    assert out2.game.owner["goal"] == 1
    assert out2.game.owner["_w"] == 2


# ---------------------------------------------------------------------------
# punctual to periodically declining
# ---------------------------------------------------------------------------

def test_periodically_declining_reduction_period():
    sg = static_graph({"a": 1, "goal": 1}, [("a", "goal"), ("a", "a")])
    out = reduce_punctual_to_periodically_declining(sg, "goal", 5, "a")
    assert out.game.class_hint.period == 6
    assert validate(out.game) == []


def test_periodically_declining_requires_player_one_target():
    sg = static_graph({"a": 1, "goal": 2}, [("a", "goal"), ("a", "a")])
    with pytest.raises(TargetNotP1):
        reduce_punctual_to_periodically_declining(sg, "goal", 3, "a")


def test_periodically_declining_preserves_winner_on_200_seeds():
    for seed in range(200):
        rng = random.Random(seed * 13 + 5)
        g = generate("static-punctual", seed, dead_target=True,
                     target_time=rng.randint(0, 5), vertices=rng.randint(3, 5))
        sg = _as_static(g)
        t = g.objective.target_time
        expected = g.initial in solve_punctual(sg, frozenset({"goal"}), t)
        out = reduce_punctual_to_periodically_declining(sg, "goal", t, g.initial)
        assert validate(out.game) == []
        got_oracle = oracle_solve(out.game).winner == 1
        parity = reach_to_parity(out.game)
        got_parity = solve_periodic_parity(parity).winner == 1
        assert got_oracle == expected, seed
        assert got_parity == expected, seed


# ---------------------------------------------------------------------------
# dualize
# ---------------------------------------------------------------------------

def test_dualize_is_an_involution():
    g, _ = _punctual_input(4)
    twice = dualize(dualize(g).game).game
    assert serialise_game(twice) == serialise_game(g)


def test_dualize_full_targets_leave_empty_dual_targets():
    g, sg = _punctual_input(6)
    from tgsolve.model import Punctual, TemporalGame
    full = TemporalGame(g.vertices, g.owner, g.edges,
                        Punctual(frozenset(g.vertices), 3), g.initial, g.class_hint)
    dual = dualize(full).game
    assert dual.objective.targets == frozenset()
    assert solve_punctual(_as_static(dual), frozenset(), 3) == frozenset()


def test_dualize_flips_winner_on_200_seeds():
    for seed in range(200):
        g, sg = _punctual_input(seed)
        targets, t = g.objective.targets, g.objective.target_time
        primal = g.initial in solve_punctual(sg, targets, t)
        dual = dualize(g).game
        dual_win = g.initial in solve_punctual(
            _as_static(dual), dual.objective.targets, t)
        assert primal == (not dual_win), seed
