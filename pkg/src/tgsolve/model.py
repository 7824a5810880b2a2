"""Core data model: time sets, temporal games, static game graphs.

A temporal game is played by two players moving a shared token over a
directed graph whose edges are only traversable at certain integer
times.  A move departing vertex ``u`` at time ``t`` along edge
``(u, w)`` requires ``t`` to be in the edge's availability set and
arrives at ``w`` at time ``t + 1``.  The owner of the current vertex
chooses the move.

Time constants are plain Python integers and may be arbitrarily large;
iteration counters in the solvers are bounded by explicit budgets.

All model values are immutable after construction and every operation
in this module is a pure function, so instances can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator

from .errors import NonMonotoneInstance

# Vertex identifiers are strings in the file format, but the solvers
# only require hashability (internal product constructions use tuples).
Vertex = Hashable

LE = "<="
GE = ">="


# ---------------------------------------------------------------------------
# Time sets
# ---------------------------------------------------------------------------

class TimeSet:
    """A finitely represented set of non-negative integer times."""

    def contains(self, t: int) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Always(TimeSet):
    """Every time ``t >= 0``."""

    def contains(self, t: int) -> bool:
        return t >= 0


@dataclass(frozen=True)
class Never(TimeSet):
    """The empty set of times."""

    def contains(self, t: int) -> bool:
        return False


@dataclass(frozen=True)
class Intervals(TimeSet):
    """A finite union of closed integer intervals ``[a, b]``.

    Invariant: intervals are non-empty (``a <= b``), sorted and pairwise
    disjoint.  Use :meth:`of` to normalise arbitrary input.
    """

    intervals: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "Intervals | Never":
        """Build a normalised interval set, merging overlaps and dropping
        empty pieces; returns :class:`Never` when nothing remains."""
        cleaned = sorted((a, b) for a, b in pairs if a <= b)
        merged: list[tuple[int, int]] = []
        for a, b in cleaned:
            if merged and a <= merged[-1][1] + 1:
                merged[-1] = (merged[-1][0], max(merged[-1][1], b))
            else:
                merged.append((a, b))
        if not merged:
            return Never()
        return cls(tuple(merged))

    def contains(self, t: int) -> bool:
        if t < 0:
            return False
        for a, b in self.intervals:
            if a <= t <= b:
                return True
            if t < a:
                return False
        return False


@dataclass(frozen=True)
class Periodic(TimeSet):
    """Times ``t >= offset`` with ``(t - offset) mod period`` in ``residues``."""

    offset: int
    period: int
    residues: frozenset[int]

    def contains(self, t: int) -> bool:
        if t < 0 or t < self.offset or self.period <= 0:
            return False
        return (t - self.offset) % self.period in self.residues


@dataclass(frozen=True)
class Threshold(TimeSet):
    """``t <= bound`` (a decreasing edge) or ``t >= bound`` (an increasing one)."""

    op: str  # LE or GE
    bound: int

    def contains(self, t: int) -> bool:
        if t < 0:
            return False
        return t <= self.bound if self.op == LE else t >= self.bound


def timeset_contains(ts: TimeSet, t: int) -> bool:
    """Membership test; times below zero are never contained."""
    return ts.contains(t)


def shift_timeset(ts: TimeSet, delta: int) -> TimeSet:
    """The set ``{t : t + delta in ts}`` restricted to ``t >= 0``.

    Used to re-base a game at a later start time, e.g. when solving an
    ultimately periodic suffix.
    """
    if delta == 0 or isinstance(ts, (Always, Never)):
        return ts
    if isinstance(ts, Intervals):
        return Intervals.of((a - delta, b - delta) for a, b in ts.intervals if b >= delta)
    if isinstance(ts, Periodic):
        if delta <= ts.offset:
            return Periodic(ts.offset - delta, ts.period, ts.residues)
        rot = (delta - ts.offset) % ts.period
        return Periodic(0, ts.period, frozenset((r - rot) % ts.period for r in ts.residues))
    if isinstance(ts, Threshold):
        if ts.op == LE:
            return Threshold(LE, ts.bound - delta) if ts.bound >= delta else Never()
        return Threshold(GE, max(0, ts.bound - delta))
    raise TypeError(f"unknown time set {ts!r}")


# ---------------------------------------------------------------------------
# Objectives and game classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reachability:
    """Player 1 wins a play iff the token visits a target vertex."""

    targets: frozenset


@dataclass(frozen=True)
class Punctual:
    """Player 1 wins iff the token is on a target at exactly ``target_time``."""

    targets: frozenset
    target_time: int


@dataclass(frozen=True)
class Parity:
    """Player 1 wins an infinite play iff the maximum vertex colour seen
    infinitely often is even (colours live in ``game.colour``)."""


Objective = Reachability | Punctual | Parity


@dataclass(frozen=True)
class FiniteHorizon:
    """No edge is available at any time beyond ``horizon``."""

    horizon: int


@dataclass(frozen=True)
class PeriodicClass:
    """Availability repeats with the given period from time zero."""

    period: int


@dataclass(frozen=True)
class UltimatelyPeriodic:
    """Availability is arbitrary on ``[0, prefix)`` and periodic afterwards."""

    prefix: int
    period: int


@dataclass(frozen=True)
class Static:
    """Availability never changes (every edge always or never)."""


ClassHint = FiniteHorizon | PeriodicClass | UltimatelyPeriodic | Static


# ---------------------------------------------------------------------------
# Games
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TemporalGame:
    """A two-player zero-sum game on a temporal graph.

    ``owner`` maps every vertex to player 1 or 2, ``edges`` maps ordered
    vertex pairs to availability sets (at most one edge per pair since
    only availability matters), and ``class_hint`` declares which solver
    family the instance is meant for.  ``colour`` is required for parity
    objectives and optional otherwise.
    """

    vertices: tuple[Vertex, ...]
    owner: dict
    edges: dict
    objective: Objective
    initial: Vertex
    class_hint: ClassHint
    colour: dict | None = None
    _out: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        out: dict = {v: [] for v in self.vertices}
        for (u, w), ts in self.edges.items():
            if u in out:
                out[u].append((w, ts))
        for v in out:
            out[v].sort(key=lambda e: str(e[0]))
        object.__setattr__(self, "_out", out)

    def out_edges(self, v: Vertex) -> list[tuple[Vertex, TimeSet]]:
        return self._out.get(v, [])


def successors(g: TemporalGame, v: Vertex, t: int) -> set:
    """Vertices reachable from ``v`` by a move departing at time ``t``."""
    return {w for w, ts in g.out_edges(v) if ts.contains(t)}


@dataclass(frozen=True)
class StaticGameGraph:
    """An ordinary game graph, the codomain of expansion and stabilisation."""

    vertices: tuple[Vertex, ...]
    owner: dict
    edges: frozenset
    colour: dict | None = None
    targets: frozenset | None = None
    _out: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        out: dict = {v: [] for v in self.vertices}
        for u, w in self.edges:
            if u in out:
                out[u].append(w)
        for v in out:
            out[v].sort(key=str)
        object.__setattr__(self, "_out", out)

    def succ(self, v: Vertex) -> list:
        return self._out.get(v, [])


def static_to_temporal(sg: StaticGameGraph, objective: Objective, initial: Vertex) -> TemporalGame:
    """Embed a static graph as a temporal game with always-available edges."""
    return TemporalGame(
        vertices=sg.vertices,
        owner=dict(sg.owner),
        edges={e: Always() for e in sg.edges},
        objective=objective,
        initial=initial,
        class_hint=Static(),
        colour=dict(sg.colour) if sg.colour is not None else None,
    )


def edges_at(g: TemporalGame, t: int) -> frozenset:
    """The set of edges available for a move departing at time ``t``."""
    return frozenset(e for e, ts in g.edges.items() if ts.contains(t))


def change_points(g: TemporalGame) -> list[int]:
    """Sorted, deduplicated threshold bounds of a monotone instance.

    ``max`` of the result is the latest time any edge availability
    changes; beyond it the graph is eventually static.
    """
    bounds: set[int] = set()
    for (u, w), ts in g.edges.items():
        if isinstance(ts, (Always, Never)):
            continue
        if isinstance(ts, Threshold):
            bounds.add(ts.bound)
        else:
            raise NonMonotoneInstance(
                f"edge ({u!r}, {w!r}) has non-threshold availability {type(ts).__name__}"
            )
    return sorted(bounds)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """A broken invariant, reported as data rather than an exception."""

    rule: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.rule} [{self.subject}]: {self.message}"


def _check_timeset(ts: TimeSet, where: str) -> Iterator[Violation]:
    if isinstance(ts, Intervals):
        prev_end = None
        for a, b in ts.intervals:
            if a < 0 or a > b:
                yield Violation("interval-wellformed", where, f"bad interval [{a},{b}]")
            if prev_end is not None and a <= prev_end:
                yield Violation("interval-order", where, "intervals not sorted and disjoint")
            prev_end = b
        if not ts.intervals:
            yield Violation("interval-nonempty", where, "empty interval list")
    elif isinstance(ts, Periodic):
        if ts.period <= 0:
            yield Violation("period-positive", where, f"period {ts.period} not positive")
        elif not ts.residues:
            yield Violation("residues-nonempty", where, "empty residue set")
        elif any(r < 0 or r >= ts.period for r in ts.residues):
            yield Violation("residues-range", where, "residue outside [0, period)")
        if ts.offset < 0:
            yield Violation("offset-nonnegative", where, f"offset {ts.offset} negative")
    elif isinstance(ts, Threshold):
        if ts.op not in (LE, GE):
            yield Violation("threshold-op", where, f"unknown operator {ts.op!r}")
        if ts.bound < 0:
            yield Violation("threshold-bound", where, f"bound {ts.bound} negative")


def _latest_time(ts: TimeSet) -> int | None:
    """Largest contained time, None for an empty set, -1 for unbounded."""
    if isinstance(ts, Always):
        return -1
    if isinstance(ts, Never):
        return None
    if isinstance(ts, Periodic):
        return -1 if ts.residues else None
    if isinstance(ts, Intervals):
        return ts.intervals[-1][1] if ts.intervals else None
    if isinstance(ts, Threshold):
        return ts.bound if ts.op == LE else -1
    return -1


def _check_class_hint(g: TemporalGame) -> Iterator[Violation]:
    hint = g.class_hint
    for (u, w), ts in g.edges.items():
        where = f"{u!r}->{w!r}"
        if isinstance(hint, Static):
            if not isinstance(ts, (Always, Never)):
                yield Violation("static-edges", where, "static games allow only always/never edges")
        elif isinstance(hint, PeriodicClass):
            if isinstance(ts, (Always, Never)):
                continue
            if not isinstance(ts, Periodic):
                yield Violation("periodic-edges", where,
                                f"{type(ts).__name__} edge under periodic class hint")
            elif ts.offset != 0 or ts.period <= 0 or hint.period % ts.period != 0:
                yield Violation("periodic-divides", where,
                                f"needs offset 0 and period dividing {hint.period}")
        elif isinstance(hint, FiniteHorizon):
            latest = _latest_time(ts)
            if latest == -1 or (latest is not None and latest > hint.horizon):
                yield Violation("finite-horizon", where,
                                f"availability extends past horizon {hint.horizon}")
        elif isinstance(hint, UltimatelyPeriodic):
            t0, k = hint.prefix, hint.period
            ok = True
            if isinstance(ts, (Always, Never)):
                pass
            elif isinstance(ts, Periodic):
                ok = ts.offset <= t0 and ts.period > 0 and k % ts.period == 0
            elif isinstance(ts, Threshold):
                ok = ts.bound < t0 if ts.op == LE else ts.bound <= t0
            elif isinstance(ts, Intervals):
                ok = all(b < t0 for _, b in ts.intervals)
            if not ok:
                yield Violation("ultimately-periodic", where,
                                f"availability not {k}-periodic from time {t0}")


def validate(g: TemporalGame) -> list[Violation]:
    """Check all structural invariants; an empty list means well-formed.

    Solvers assume validated input; any instance this accepts will not
    trip invariant errors downstream.
    """
    out: list[Violation] = []
    vs = set(g.vertices)
    if len(vs) != len(g.vertices):
        out.append(Violation("vertices-unique", "game", "duplicate vertex ids"))
    for v in g.vertices:
        if g.owner.get(v) not in (1, 2):
            out.append(Violation("owner-total", repr(v), "owner must be 1 or 2"))
    if g.initial not in vs:
        out.append(Violation("initial-exists", repr(g.initial), "initial vertex unknown"))
    for (u, w), ts in g.edges.items():
        where = f"{u!r}->{w!r}"
        if u not in vs or w not in vs:
            out.append(Violation("edge-endpoints", where, "endpoint is not a vertex"))
        out.extend(_check_timeset(ts, where))
    out.extend(_check_class_hint(g))

    obj = g.objective
    if isinstance(obj, (Reachability, Punctual)):
        for v in obj.targets:
            if v not in vs:
                out.append(Violation("target-exists", repr(v), "target is not a vertex"))
        if isinstance(obj, Punctual) and obj.target_time < 0:
            out.append(Violation("target-time", "objective", "target time negative"))
    elif isinstance(obj, Parity):
        col = g.colour or {}
        for v in g.vertices:
            c = col.get(v)
            if c is None:
                out.append(Violation("colour-total", repr(v), "no colour under parity objective"))
            elif c < 0:
                out.append(Violation("colour-nonnegative", repr(v), f"colour {c} negative"))
    return out


def deadlock_warnings(g: TemporalGame) -> list[str]:
    """Warn about (vertex, time) pairs with no available move.

    For finite-horizon games times up to the horizon are checked, for
    periodic games one full period, for static games time 0, and for
    ultimately periodic games the prefix plus one period.  These are
    warnings, not violations: the solvers resolve deadlocks by a fixed
    convention, but curated instances are better off without them.
    """
    hint = g.class_hint
    if isinstance(hint, FiniteHorizon):
        horizon = hint.horizon + 1
    elif isinstance(hint, PeriodicClass):
        horizon = hint.period
    elif isinstance(hint, UltimatelyPeriodic):
        horizon = hint.prefix + hint.period
    else:
        horizon = 1
    if horizon > 4096:  # keep validation cheap on huge horizons
        horizon = 4096
    warnings = []
    for v in g.vertices:
        for t in range(horizon):
            if not successors(g, v, t):
                warnings.append(f"deadlock: vertex {v!r} has no move at time {t}")
                break
    return warnings
