"""Mutable counters that solvers fill in when the caller asks for them."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SolveStats:
    """Execution statistics; pass an instance into a solver to collect them."""

    iterations: int = 0
    backward_steps: int = 0
    jumps: int = 0
    expansion_vertices: int = 0
    containment_checks: int = 0
