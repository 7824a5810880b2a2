"""Expansion construction and the brute-force solver plumbing."""

from __future__ import annotations

import random

import pytest

from tgsolve.errors import BudgetExceeded
from tgsolve.generators import generate
from tgsolve.model import Always, Parity, PeriodicClass, TemporalGame, timeset_contains
from tgsolve.oracle import build_expansion, oracle_solve

from helpers import branching_two_phase_game


def test_folded_expansion_of_period_two_game_has_eight_vertices():
    g = branching_two_phase_game()
    exp = build_expansion(g, 1, fold=2)
    assert len(exp.graph.vertices) == 8
    # folding wraps the last layer's moves back to phase zero
    assert (("t", 1), ("t", 0)) in exp.graph.edges


def test_zero_horizon_expansion_has_no_edges():
    g = branching_two_phase_game()
    exp = build_expansion(g, 0)
    assert len(exp.graph.vertices) == len(g.vertices)
    assert exp.graph.edges == frozenset()


def test_expansion_edge_count_matches_membership_tests():
    rng = random.Random(14)
    for seed in range(40):
        g = generate("periodic-parity", seed)
        horizon = rng.randint(0, 8)
        exp = build_expansion(g, horizon)
        expected = sum(
            1 for t in range(horizon)
            for ts in g.edges.values() if timeset_contains(ts, t))
        assert len(exp.graph.edges) == expected


def test_expansion_budget_refusal():
    g = branching_two_phase_game()
    with pytest.raises(BudgetExceeded):
        build_expansion(g, 10**7)


def test_oracle_even_self_loop():
    g = TemporalGame(("a",), {"a": 1}, {("a", "a"): Always()},
                     Parity(), "a", PeriodicClass(1), colour={"a": 2})
    answer = oracle_solve(g)
    assert answer.winner == 1 and answer.region0 == frozenset({"a"})


def test_oracle_deterministic():
    g = generate("periodic-parity", 8)
    assert oracle_solve(g) == oracle_solve(g)


def test_folded_and_unfolded_agree_on_periodic_reachability():
    from tgsolve.staticgames import attractor
    for seed in range(40):
        g = generate("periodic-parity", seed, period=3)
        k = g.class_hint.period
        targets = frozenset([sorted(g.vertices)[-1]])
        folded = build_expansion(g, k - 1, fold=k)
        hits_f = frozenset(p for p in folded.graph.vertices if p[0] in targets)
        region_f = attractor(folded.graph, 1, hits_f).winning1
        # long enough for a positional reach strategy, a multiple of the period
        horizon = (len(g.vertices) + 1) * k
        unfolded = build_expansion(g, horizon)
        hits_u = frozenset(p for p in unfolded.graph.vertices if p[0] in targets)
        region_u = attractor(unfolded.graph, 1, hits_u).winning1
        got_f = frozenset(v for v in g.vertices if (v, 0) in region_f)
        got_u = frozenset(v for v in g.vertices if (v, 0) in region_u)
        assert got_f == got_u, seed
