"""Command-line front end.

Commands: ``validate``, ``solve``, ``verify-cert``, ``reduce``,
``generate``, ``oracle-check``.  Exit codes follow one convention
everywhere: 0 ok/true, 1 negative answer or violation, 2 parse or
instance error, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import fileformat, generators as gen, monotone, oracle, periodic, punctual, reductions
from .errors import BudgetExceeded, GameFormatError, SolverError
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
    deadlock_warnings,
    validate,
)
from .staticgames import attractor, solve_parity_with_deadlocks
from .stats import SolveStats

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _load_game(path: Path) -> TemporalGame:
    try:
        return fileformat.parse_game(path.read_text(encoding="utf-8"))
    except OSError as err:
        raise GameFormatError(f"cannot read {path}: {err}") from None


def _as_static(g: TemporalGame) -> StaticGameGraph:
    from .model import Always
    edges = frozenset(e for e, ts in g.edges.items() if isinstance(ts, Always))
    if len(edges) != sum(1 for ts in g.edges.values() if not _is_never(ts)):
        raise GameFormatError("this command needs a static game (always/never edges)")
    targets = None
    if isinstance(g.objective, (Reachability, Punctual)):
        targets = g.objective.targets
    return StaticGameGraph(g.vertices, dict(g.owner), edges,
                           dict(g.colour) if g.colour else None, targets)


def _is_never(ts) -> bool:
    from .model import Never
    return isinstance(ts, Never)


def solve_instance(g: TemporalGame, *, iteration_budget: int,
                   expansion_budget: int, stats: SolveStats) -> dict:
    """Dispatch on objective and class; returns a result dictionary."""
    obj = g.objective
    result: dict = {"initial": g.initial}
    certificate = None
    if isinstance(obj, Punctual):
        if isinstance(g.class_hint, Static):
            region = punctual.solve_punctual(
                _as_static(g), obj.targets, obj.target_time,
                budget=iteration_budget, stats=stats)
        else:
            region = punctual.solve_punctual_temporal(
                g, obj.targets, obj.target_time,
                budget=iteration_budget, stats=stats)
        result["winner"] = 1 if g.initial in region else 2
        result["region"] = sorted(map(str, region))
    elif isinstance(obj, Reachability):
        region = _solve_reach(g, iteration_budget, expansion_budget, stats)
        result["winner"] = 1 if g.initial in region else 2
        result["region"] = sorted(map(str, region))
    elif isinstance(obj, Parity):
        winner, certificate, region = _solve_parity(
            g, iteration_budget, expansion_budget, stats)
        result["winner"] = winner
        if region is not None:
            result["region"] = sorted(map(str, region))
    else:
        raise GameFormatError(f"unsupported objective {obj!r}")
    result["certificate"] = certificate
    return result


def _solve_reach(g: TemporalGame, iteration_budget: int, expansion_budget: int,
                 stats: SolveStats) -> frozenset:
    targets = g.objective.targets
    if monotone.is_declining(g):
        return monotone.solve_declining_reachability(g, targets, stats=stats)
    if monotone.is_improving(g):
        return monotone.solve_improving_reachability(g, targets, stats=stats)
    if isinstance(g.class_hint, Static):
        return attractor(_as_static(g), 1, targets).winning1
    if isinstance(g.class_hint, FiniteHorizon):
        return punctual.solve_temporal_reachability(
            g, targets, budget=iteration_budget, stats=stats)
    # periodic or ultimately periodic: reach-ever via the folded expansion
    answer = oracle.oracle_solve(g, budget=expansion_budget)
    return answer.region0


def _solve_parity(g: TemporalGame, iteration_budget: int, expansion_budget: int,
                  stats: SolveStats):
    if isinstance(g.class_hint, PeriodicClass):
        res = periodic.solve_periodic_parity(g, budget=expansion_budget, stats=stats)
        return res.winner, res.certificate, res.winning_phase0
    if monotone.is_declining(g) or monotone.is_improving(g):
        region = monotone.solve_declining_parity(g, stats=stats)
        return (1 if g.initial in region else 2), None, region
    if isinstance(g.class_hint, UltimatelyPeriodic):
        winner = periodic.solve_ultimately_periodic_parity(
            g, budget=expansion_budget, iteration_budget=iteration_budget,
            stats=stats)
        return winner, None, None
    if isinstance(g.class_hint, Static):
        res = solve_parity_with_deadlocks(_as_static(g))
        return (1 if g.initial in res.winning1 else 2), None, res.winning1
    answer = oracle.oracle_solve(g, budget=expansion_budget)
    return answer.winner, None, answer.region0


def _report(args, text: str, command: str, digest: str, result: dict,
            stats: SolveStats, started: float) -> None:
    payload = {
        "command": command,
        "digest": digest,
        "result": result,
        "statistics": {
            "iterations": stats.iterations,
            "backward_steps": stats.backward_steps,
            "jumps": stats.jumps,
            "expansion_vertices": stats.expansion_vertices,
            "wall_time_s": round(time.perf_counter() - started, 6),
        },
    }
    if args.report == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)
        s = payload["statistics"]
        print(f"iterations={s['iterations']} backward_steps={s['backward_steps']} "
              f"jumps={s['jumps']} expansion_vertices={s['expansion_vertices']} "
              f"wall_time_s={s['wall_time_s']}")


def cmd_validate(args) -> int:
    try:
        g = _load_game(Path(args.path))
    except GameFormatError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    violations = validate(g)
    for violation in violations:
        print(violation)
    for warning in deadlock_warnings(g):
        print(f"warning: {warning}")
    return EXIT_NEGATIVE if violations else EXIT_OK


def cmd_solve(args) -> int:
    started = time.perf_counter()
    path = Path(args.path)
    try:
        text = path.read_text(encoding="utf-8")
        g = fileformat.parse_game(text)
    except (OSError, GameFormatError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    violations = validate(g)
    if violations:
        for violation in violations:
            print(violation, file=sys.stderr)
        return EXIT_PARSE
    stats = SolveStats()
    try:
        result = solve_instance(
            g, iteration_budget=args.budget,
            expansion_budget=args.expansion_budget, stats=stats)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (SolverError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    cert = result.pop("certificate")
    cert_path = None
    if cert is not None:
        cert_path = Path(args.out) if args.out else path.with_name(path.stem + ".cert.json")
        cert_path.write_text(fileformat.serialise_certificate(cert), encoding="utf-8")
        result["certificatePath"] = str(cert_path)
    _report(args, f"winner: player {result['winner']}"
            + (f" (certificate written to {cert_path})" if cert_path else ""),
            "solve", fileformat.digest(fileformat.serialise_game(g)), result,
            stats, started)
    return EXIT_OK


def cmd_verify_cert(args) -> int:
    try:
        g = _load_game(Path(args.game))
        cert = fileformat.parse_certificate(Path(args.cert).read_text(encoding="utf-8"))
    except (OSError, GameFormatError) as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    unknown = [v for v in sorted(cert.vertices, key=str) if v not in set(g.vertices)]
    if unknown:
        print(f"parse error: certificate references unknown vertices {unknown}",
              file=sys.stderr)
        return EXIT_PARSE
    s0 = cert.initial if cert.initial is not None else g.initial
    check = periodic.verify_certificate(g, cert, s0)
    for line in check.diagnostics:
        print(line)
    print("certificate accepted" if check.ok else "certificate rejected")
    return EXIT_OK if check.ok else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    path = Path(args.path)
    try:
        g = _load_game(path)
    except GameFormatError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        output = _apply_reduction(args.kind, g)
    except GameFormatError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverError, ValueError) as err:
        print(f"reduction refused: {err}", file=sys.stderr)
        return EXIT_NEGATIVE
    out = Path(args.out) if args.out else path.with_name(f"{path.stem}.{args.kind}.json")
    out.write_text(fileformat.serialise_game(output.game), encoding="utf-8")
    sidecar = out.with_name(out.stem + ".map.json")
    sidecar.write_text(json.dumps(
        {"claim": output.claim,
         "vertexMap": {str(k): str(v) for k, v in sorted(output.vertex_map.items())}},
        sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} and {sidecar}")
    return EXIT_OK


def _apply_reduction(kind: str, g: TemporalGame) -> reductions.ReductionOutput:
    if kind == "dualize":
        return reductions.dualize(g)
    sg = _as_static(g)
    if kind == "exists-to-punctual":
        if not isinstance(g.objective, (Reachability, Punctual)):
            raise GameFormatError("input needs a reachability or punctual objective")
        return reductions.reduce_exists_to_punctual(sg, g.objective.targets, g.initial)
    if not isinstance(g.objective, Punctual):
        raise GameFormatError("input needs a punctual objective")
    targets, t = g.objective.targets, g.objective.target_time
    if kind == "punctual-to-temporal":
        return reductions.reduce_punctual_to_temporal(sg, targets, t, g.initial)
    if len(targets) != 1:
        raise GameFormatError("this reduction needs a single target vertex")
    (v,) = targets
    if kind == "punctual-to-decreasing":
        return reductions.reduce_punctual_to_decreasing(sg, v, t, g.initial)
    if kind == "punctual-to-increasing":
        return reductions.reduce_punctual_to_increasing(sg, v, t, g.initial)
    if kind == "punctual-to-periodically-declining":
        return reductions.reduce_punctual_to_periodically_declining(sg, v, t, g.initial)
    raise GameFormatError(f"unknown reduction kind {kind!r}")


def cmd_generate(args) -> int:
    g = gen.generate(
        args.profile, args.seed, vertices=args.vertices,
        target_time=args.target_time, horizon=args.horizon,
        period=args.period, max_colour=args.max_colour,
        max_bound=args.max_bound, dead_target=args.dead_target)
    out = Path(args.out) if args.out else Path(f"{args.profile}-{args.seed}.json")
    out.write_text(fileformat.serialise_game(g), encoding="utf-8")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    try:
        g = _load_game(Path(args.path))
    except GameFormatError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    stats = SolveStats()
    try:
        main_result = solve_instance(
            g, iteration_budget=args.budget,
            expansion_budget=args.expansion_budget, stats=stats)
        answer = oracle.oracle_solve(g, budget=args.expansion_budget)
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    if main_result["winner"] == answer.winner:
        print(f"agree: player {answer.winner} wins from {g.initial!r}")
        return EXIT_OK
    print("disagreement!")
    print(f"  solver: {json.dumps(main_result, sort_keys=True, default=str)}")
    print(f"  oracle: winner={answer.winner} "
          f"region0={sorted(map(str, answer.region0))}")
    return EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgsolve",
        description="solve reachability and parity games on temporal graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file against the format invariants")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="solve an instance and report the winner")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=punctual.DEFAULT_ITERATION_BUDGET,
                   help="iteration budget for backward solvers")
    p.add_argument("--expansion-budget", type=int, default=oracle.EXPANSION_BUDGET,
                   help="vertex budget for explicit expansions")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--out", help="where to write a certificate, if one is produced")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify-cert", help="verify an externally supplied certificate")
    p.add_argument("game")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("reduce", help="apply an instance transformation")
    p.add_argument("kind", choices=(
        "exists-to-punctual", "punctual-to-temporal", "punctual-to-decreasing",
        "punctual-to-increasing", "punctual-to-periodically-declining", "dualize"))
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("generate", help="generate a seeded random instance")
    p.add_argument("--profile", required=True, choices=gen.PROFILES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vertices", type=int)
    p.add_argument("--target-time", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--period", type=int)
    p.add_argument("--max-colour", type=int)
    p.add_argument("--max-bound", type=int)
    p.add_argument("--dead-target", action="store_true",
                   help="add a dedicated out-edge-free target vertex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle-check",
                       help="cross-check the solver against the brute-force oracle")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=punctual.DEFAULT_ITERATION_BUDGET)
    p.add_argument("--expansion-budget", type=int, default=oracle.EXPANSION_BUDGET)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
