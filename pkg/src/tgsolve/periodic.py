"""Parity games on periodic temporal graphs.

The period-K game is solved exactly on its mod-K expansion, but the
interesting machinery is the certificate layer built on *summaries*: the
relation of (end vertex, dominant colour) pairs a strategy guarantees
over one full period.  A certificate is a colour-labelled multigraph
whose per-vertex edge sets are realisable summaries and whose reachable
cycles all have even maximal colour; verifying one needs only
polynomially many punctual-reachability solves, no expansion.

Realisability of a relation B from s is decided by a punctual
reachability game on the colour-tracking product (vertices paired with
the dominant colour seen so far): Player 1 must hit B exactly at time K.
A strategy winning that game guarantees every completed period lands in
B, i.e. its summary is contained in B; containment is the semantics used
throughout (and the one certificate verification needs).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, NotWinning, StrategyUnavailableMove
from .model import (
    Parity,
    PeriodicClass,
    TemporalGame,
    UltimatelyPeriodic,
    Vertex,
    shift_timeset,
    successors,
)
from .model import Always, Threshold, GE
from .oracle import EXPANSION_BUDGET, build_expansion
from .punctual import DEFAULT_ITERATION_BUDGET, pre, punctual_layers
from .staticgames import solve_parity_with_deadlocks
from .stats import SolveStats

# A periodic strategy maps (vertex, time mod K) to the chosen successor,
# defined on Player 1 vertices; realisability witnesses live on the
# colour product, so their vertices are (vertex, colour) pairs.
PeriodicStrategy = dict


@dataclass(frozen=True)
class Summary:
    """Where one period of play can end and the dominant colour seen."""

    source: Vertex
    pairs: frozenset  # of (vertex, colour)


@dataclass(frozen=True)
class Certificate:
    """A witness that Player 1 wins: vertices with colour-labelled edges.

    Edges are (source, colour, target) triples.  ``post(s)`` collects
    the (target, colour) relation the certificate promises from ``s``.
    """

    vertices: frozenset
    edges: frozenset  # of (source, colour, target)
    initial: Vertex | None = None

    def post(self, s: Vertex) -> frozenset:
        return frozenset((t, c) for (u, c, t) in self.edges if u == s)

    def labels(self) -> frozenset:
        return frozenset(c for (_, c, _) in self.edges)


def _require_periodic(g: TemporalGame) -> int:
    if not isinstance(g.class_hint, PeriodicClass):
        raise ValueError("this solver needs a game declared periodic")
    return g.class_hint.period


def build_colour_product(g: TemporalGame) -> TemporalGame:
    """The game over (vertex, dominant colour so far) pairs.

    Moving from (v, c) to w yields (w, max(c, colour(w))); availability
    is inherited from the base edge, ownership and colour from the base
    vertex.
    """
    col = g.colour or {}
    colours = sorted(set(col.values()))
    vertices = tuple((v, c) for v in g.vertices for c in colours)
    owner = {(v, c): g.owner[v] for (v, c) in vertices}
    pcolour = {(v, c): col[v] for (v, c) in vertices}
    edges = {}
    for (u, w), ts in g.edges.items():
        for c in colours:
            edges[((u, c), (w, max(c, col[w])))] = ts
    return TemporalGame(
        vertices=vertices,
        owner=owner,
        edges=edges,
        objective=g.objective,
        initial=(g.initial, col.get(g.initial, colours[0] if colours else 0)),
        class_hint=g.class_hint,
        colour=pcolour,
    )


def compute_summary(g: TemporalGame, sigma: PeriodicStrategy, s: Vertex) -> Summary:
    """Forward exploration of all sigma-consistent plays of one period.

    Player 1 states follow ``sigma``, Player 2 states branch over every
    available move.  Plays on which Player 2 runs out of moves halt and
    contribute no pair.
    """
    period = _require_periodic(g)
    col = g.colour or {}
    states = {(s, col[s])}
    for t in range(period):
        nxt = set()
        for v, c in states:
            avail = successors(g, v, t)
            if g.owner[v] == 1:
                w = sigma.get((v, t))
                if w is None or w not in avail:
                    raise StrategyUnavailableMove(
                        f"strategy has no available move at ({v!r}, time {t})")
                nxt.add((w, max(c, col[w])))
            else:
                for w in avail:
                    nxt.add((w, max(c, col[w])))
        states = nxt
    return Summary(s, frozenset(states))


@dataclass(frozen=True)
class RealisabilityResult:
    ok: bool
    # witness maps ((vertex, colour), time) -> (vertex, colour) on the product
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_realisable(g: TemporalGame, s: Vertex, relation: frozenset) -> RealisabilityResult:
    """Can Player 1 guarantee that every completed period from ``s`` ends
    in the relation (as an (end vertex, dominant colour) pair)?

    Decided as a punctual reachability game on the colour product with
    target time K.  On success the witness strategy on the product is
    returned; following it, the play's product state always stays inside
    the backward winning layers, so its summary is contained in the
    relation.
    """
    period = _require_periodic(g)
    product = build_colour_product(g)
    targets = frozenset(p for p in relation if p in set(product.vertices))
    layers = punctual_layers(product, targets, period)
    col = g.colour or {}
    start = (s, col[s])
    if start not in layers[0]:
        return RealisabilityResult(False)
    witness: dict = {}
    for t in range(period):
        nxt = layers[t + 1]
        for p in sorted(layers[t], key=str):
            if product.owner[p] == 1:
                for q, ts in product.out_edges(p):
                    if ts.contains(t) and q in nxt:
                        witness[(p, t)] = q
                        break
    return RealisabilityResult(True, witness)


def _scc_ids(vertices: list, succ: dict) -> dict:
    """Iterative Tarjan; returns a component id per vertex."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    on_stack: set = set()
    stack: list = []
    counter = [0]
    comp_counter = [0]
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = comp_counter[0]
                    if w == v:
                        break
                comp_counter[0] += 1
    return comp


def check_cycle_condition(cert: Certificate, s0: Vertex) -> bool:
    """Does every cycle reachable from ``s0`` have an even maximal colour?

    For each odd label c: within the subgraph of edges labelled <= c, an
    edge labelled exactly c closing into its own strongly connected
    component witnesses a cycle whose maximum is c.
    """
    adj: dict = {}
    for (u, _, w) in cert.edges:
        adj.setdefault(u, set()).add(w)
    reach = set()
    todo = [s0]
    while todo:
        v = todo.pop()
        if v in reach:
            continue
        reach.add(v)
        todo.extend(adj.get(v, ()))
    edges = [(u, c, w) for (u, c, w) in cert.edges if u in reach]
    for c in sorted({c for (_, c, _) in edges if c % 2 == 1}):
        sub: dict = {}
        for u, lab, w in edges:
            if lab <= c:
                sub.setdefault(u, set()).add(w)
        nodes = sorted(reach, key=str)
        comp = _scc_ids(nodes, {v: sorted(sub.get(v, ()), key=str) for v in nodes})
        sizes: dict = {}
        for v in nodes:
            sizes[comp[v]] = sizes.get(comp[v], 0) + 1
        for u, lab, w in edges:
            if lab == c and comp[u] == comp[w] and (u == w or sizes[comp[u]] > 1):
                return False
    return True


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    diagnostics: tuple[str, ...] = ()
    # realisability witnesses keyed by certificate vertex
    witnesses: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(g: TemporalGame, cert: Certificate, s0: Vertex) -> CertificateCheck:
    """Check both certificate conditions and report what failed.

    Structure first (the initial vertex is covered, every vertex has an
    outgoing edge, labels are game colours), then per-vertex
    realisability, then the reachable-cycle colour condition.
    """
    col = g.colour or {}
    known = set(g.vertices)
    diagnostics: list[str] = []
    if s0 not in cert.vertices:
        diagnostics.append(f"initial vertex {s0!r} is not in the certificate")
    for v in sorted(cert.vertices, key=str):
        if v not in known:
            diagnostics.append(f"certificate vertex {v!r} is not a game vertex")
    for (u, c, w) in sorted(cert.edges, key=str):
        if u not in cert.vertices or w not in cert.vertices:
            diagnostics.append(f"edge ({u!r},{c},{w!r}) leaves the certificate vertex set")
        if c not in set(col.values()):
            diagnostics.append(f"edge label {c} is not a colour of the game")
    for v in sorted(cert.vertices, key=str):
        if not cert.post(v):
            diagnostics.append(f"vertex {v!r} has no outgoing certificate edge")
    if diagnostics:
        return CertificateCheck(False, tuple(diagnostics))
    witnesses: dict = {}
    for v in sorted(cert.vertices, key=str):
        result = check_realisable(g, v, cert.post(v))
        if not result.ok:
            diagnostics.append(
                f"promised relation at vertex {v!r} is not realisable")
            return CertificateCheck(False, tuple(diagnostics))
        witnesses[v] = result.witness
    if not check_cycle_condition(cert, s0):
        diagnostics.append("a cycle reachable from the initial vertex has odd maximal colour")
        return CertificateCheck(False, tuple(diagnostics), witnesses)
    return CertificateCheck(True, (), witnesses)


def extract_certificate(g: TemporalGame, sigma: PeriodicStrategy, s0: Vertex) -> Certificate:
    """Build the summary multigraph of a winning periodic strategy.

    Vertices are the period-boundary positions reachable from ``s0``
    under ``sigma``; the edge (s, c, t) records that some sigma play of
    one period from s ends in t with dominant colour c.
    """
    seen = {s0}
    todo = [s0]
    edges = set()
    while todo:
        s = todo.pop()
        summary = compute_summary(g, sigma, s)
        if not summary.pairs:
            raise NotWinning(
                f"every play of one period from {s!r} halts; no certificate edge")
        for (t, c) in summary.pairs:
            edges.add((s, c, t))
            if t not in seen:
                seen.add(t)
                todo.append(t)
    cert = Certificate(frozenset(seen), frozenset(edges), s0)
    if not check_cycle_condition(cert, s0):
        raise NotWinning("summary graph has a reachable cycle with odd maximal colour")
    return cert


@dataclass(frozen=True)
class PeriodicParityResult:
    winner: int
    certificate: Certificate | None
    strategy: PeriodicStrategy | None
    winning_phase0: frozenset


def solve_periodic_parity(g: TemporalGame, s0: Vertex | None = None,
                          *, budget: int = EXPANSION_BUDGET,
                          stats: SolveStats | None = None) -> PeriodicParityResult:
    """Solve a period-K parity game exactly on its mod-K expansion.

    On a Player 1 win the periodic strategy read off the expansion is
    turned into a certificate (when the summary graph is clean, which it
    always is on deadlock-free instances).
    """
    s0 = g.initial if s0 is None else s0
    period = _require_periodic(g)
    if period * len(g.vertices) > budget:
        raise BudgetExceeded(
            f"mod-{period} expansion needs {period * len(g.vertices)} vertices", budget)
    exp = build_expansion(g, period - 1, fold=period, budget=budget)
    if stats is not None:
        stats.expansion_vertices += len(exp.graph.vertices)
    res = solve_parity_with_deadlocks(exp.graph)
    phase0 = frozenset(v for v in g.vertices if (v, 0) in res.winning1)
    if s0 not in phase0:
        return PeriodicParityResult(2, None, None, phase0)
    sigma: PeriodicStrategy = {
        (v, t): w for ((v, t), (w, _)) in res.strategy1.items()}
    try:
        cert = extract_certificate(g, sigma, s0)
    except (NotWinning, StrategyUnavailableMove):
        cert = None
    return PeriodicParityResult(1, cert, sigma, phase0)


def _suffix_timeset(ts, prefix: int):
    shifted = shift_timeset(ts, prefix)
    if isinstance(shifted, Threshold) and shifted.op == GE and shifted.bound == 0:
        return Always()
    return shifted


def suffix_game(g: TemporalGame, prefix: int, period: int) -> TemporalGame:
    """The periodic game seen from time ``prefix`` onwards."""
    return TemporalGame(
        vertices=g.vertices,
        owner=dict(g.owner),
        edges={e: _suffix_timeset(ts, prefix) for e, ts in g.edges.items()},
        objective=g.objective,
        initial=g.initial,
        class_hint=PeriodicClass(period),
        colour=dict(g.colour) if g.colour is not None else None,
    )


def solve_ultimately_periodic_parity(g: TemporalGame, s0: Vertex | None = None,
                                     *, budget: int = EXPANSION_BUDGET,
                                     iteration_budget: int = DEFAULT_ITERATION_BUDGET,
                                     stats: SolveStats | None = None) -> int:
    """Winner of a parity game whose availability is periodic after a prefix.

    The periodic suffix is solved first (for every start vertex), giving
    the region Player 1 wins when standing there at exactly the prefix
    time; crossing the prefix is then a punctual reachability question
    towards that region.
    """
    s0 = g.initial if s0 is None else s0
    if not isinstance(g.class_hint, UltimatelyPeriodic):
        raise ValueError("this solver needs an ultimately periodic game")
    prefix, period = g.class_hint.prefix, g.class_hint.period
    if prefix > iteration_budget:
        raise BudgetExceeded(f"prefix {prefix} over the iteration budget", iteration_budget)
    tail = solve_periodic_parity(suffix_game(g, prefix, period),
                                 budget=budget, stats=stats)
    current = tail.winning_phase0
    for n in range(1, prefix + 1):
        # parity convention: a stuck opponent loses, so the universal
        # branch of the predecessor is read vacuously here
        current = pre(g, 1, current, prefix - n, require_move=False)
        if stats is not None:
            stats.iterations += 1
    return 1 if s0 in current else 2


def enumerate_certificates(g: TemporalGame, s0: Vertex | None = None,
                           *, cap_vertices: int = 4, cap_colours: int = 2,
                           cap_period: int = 3,
                           combo_budget: int = 10**6) -> Certificate | None:
    """Exhaustive certificate search for tiny games, as an independent
    check of the "no certificate means Player 2 wins" direction.

    Any certificate can be shrunk to one whose per-vertex relations are
    exact achievable summaries (shrinking preserves both conditions), so
    the search ranges over vertex subsets containing the initial vertex,
    in size then lexicographic order, and over achievable summaries per
    vertex in a fixed canonical order.  The first candidate passing full
    verification is returned.
    """
    from itertools import combinations, product as iproduct

    from .errors import CapExceeded
    from .oracle import oracle_enumerate_summaries

    s0 = g.initial if s0 is None else s0
    period = _require_periodic(g)
    colours = set((g.colour or {}).values())
    if len(g.vertices) > cap_vertices or len(colours) > cap_colours or period > cap_period:
        raise CapExceeded(
            f"certificate enumeration capped at |V|<={cap_vertices}, "
            f"|C|<={cap_colours}, K<={cap_period}")
    summaries = {
        v: sorted(oracle_enumerate_summaries(g, v, cap_vertices=cap_vertices,
                                             cap_period=cap_period),
                  key=lambda rel: (len(rel), sorted(rel, key=str)))
        for v in g.vertices
    }
    others = sorted((v for v in g.vertices if v != s0), key=str)
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            subset = frozenset((s0,) + extra)
            candidates = []
            feasible = True
            for v in sorted(subset, key=str):
                usable = [rel for rel in summaries[v]
                          if all(t in subset for (t, _) in rel)]
                if not usable:
                    feasible = False
                    break
                candidates.append((v, usable))
            if not feasible:
                continue
            total = 1
            for _, usable in candidates:
                total *= len(usable)
            if total > combo_budget:
                raise CapExceeded(f"certificate search space {total} too large")
            for choice in iproduct(*[usable for _, usable in candidates]):
                edges = frozenset(
                    (v, c, t)
                    for (v, _), rel in zip(candidates, choice)
                    for (t, c) in rel)
                cert = Certificate(subset, edges, s0)
                if not check_cycle_condition(cert, s0):
                    continue
                if verify_certificate(g, cert, s0).ok:
                    return cert
    return None
