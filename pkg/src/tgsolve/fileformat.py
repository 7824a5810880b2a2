"""JSON game and certificate files with canonical serialisation.

Serialisation is canonical so that content digests and golden files are
stable: object keys are sorted, lists are emitted in a fixed order, and
integers that fit a machine word are plain JSON numbers while larger
ones become decimal strings (parsed back bit-exactly).
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .errors import GameFormatError
from .model import (
    Always,
    ClassHint,
    FiniteHorizon,
    GE,
    Intervals,
    LE,
    Never,
    Parity,
    Periodic,
    PeriodicClass,
    Punctual,
    Reachability,
    Static,
    TemporalGame,
    Threshold,
    TimeSet,
    UltimatelyPeriodic,
)
from .periodic import Certificate

_WORD = 2**63


def _encode_int(x: int) -> int | str:
    return x if -_WORD < x < _WORD else str(x)


def _decode_int(value: Any, what: str) -> int:
    if isinstance(value, bool):
        raise GameFormatError(f"{what}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise GameFormatError(f"{what}: bad decimal string {value!r}") from None
    raise GameFormatError(f"{what}: expected an integer or decimal string")


def _encode_timeset(ts: TimeSet) -> Any:
    if isinstance(ts, Always):
        return "always"
    if isinstance(ts, Never):
        return "never"
    if isinstance(ts, Intervals):
        return {"intervals": [[_encode_int(a), _encode_int(b)] for a, b in ts.intervals]}
    if isinstance(ts, Periodic):
        return {"periodic": {"offset": _encode_int(ts.offset),
                             "period": _encode_int(ts.period),
                             "residues": sorted(ts.residues)}}
    if isinstance(ts, Threshold):
        return {"threshold": {"op": ts.op, "bound": _encode_int(ts.bound)}}
    raise GameFormatError(f"cannot serialise time set {ts!r}")


def _decode_timeset(value: Any, where: str) -> TimeSet:
    if value == "always":
        return Always()
    if value == "never":
        return Never()
    if not isinstance(value, dict) or len(value) != 1:
        raise GameFormatError(f"{where}: bad availability {value!r}")
    if "intervals" in value:
        pairs = value["intervals"]
        if not isinstance(pairs, list):
            raise GameFormatError(f"{where}: intervals must be a list")
        return Intervals(tuple(
            (_decode_int(p[0], where), _decode_int(p[1], where))
            for p in pairs))
    if "periodic" in value:
        spec = value["periodic"]
        return Periodic(
            _decode_int(spec.get("offset", 0), where),
            _decode_int(spec["period"], where),
            frozenset(_decode_int(r, where) for r in spec["residues"]))
    if "threshold" in value:
        spec = value["threshold"]
        op = spec.get("op")
        if op not in (LE, GE):
            raise GameFormatError(f"{where}: threshold op must be '<=' or '>='")
        return Threshold(op, _decode_int(spec["bound"], where))
    raise GameFormatError(f"{where}: unknown availability {value!r}")


def _encode_class(hint: ClassHint) -> dict:
    if isinstance(hint, FiniteHorizon):
        return {"kind": "finite", "horizon": _encode_int(hint.horizon)}
    if isinstance(hint, PeriodicClass):
        return {"kind": "periodic", "period": _encode_int(hint.period)}
    if isinstance(hint, UltimatelyPeriodic):
        return {"kind": "ultimately-periodic",
                "prefix": _encode_int(hint.prefix),
                "period": _encode_int(hint.period)}
    return {"kind": "static"}


def _decode_class(value: Any) -> ClassHint:
    if not isinstance(value, dict) or "kind" not in value:
        raise GameFormatError("class: expected an object with a 'kind'")
    kind = value["kind"]
    if kind == "finite":
        return FiniteHorizon(_decode_int(value["horizon"], "class.horizon"))
    if kind == "periodic":
        return PeriodicClass(_decode_int(value["period"], "class.period"))
    if kind == "ultimately-periodic":
        return UltimatelyPeriodic(_decode_int(value["prefix"], "class.prefix"),
                                  _decode_int(value["period"], "class.period"))
    if kind == "static":
        return Static()
    raise GameFormatError(f"class: unknown kind {kind!r}")


def game_to_dict(g: TemporalGame) -> dict:
    for v in g.vertices:
        if not isinstance(v, str):
            raise GameFormatError(f"only string vertex ids serialise; got {v!r}")
    vertices = []
    for v in sorted(g.vertices):
        entry: dict = {"id": v, "owner": g.owner[v]}
        if g.colour is not None and v in g.colour:
            entry["colour"] = _encode_int(g.colour[v])
        vertices.append(entry)
    edges = [
        {"from": u, "to": w, "avail": _encode_timeset(ts)}
        for (u, w), ts in sorted(g.edges.items())
    ]
    obj = g.objective
    if isinstance(obj, Reachability):
        objective: dict = {"type": "reach", "targets": sorted(obj.targets)}
    elif isinstance(obj, Punctual):
        objective = {"type": "punctual", "targets": sorted(obj.targets),
                     "targetTime": _encode_int(obj.target_time)}
    elif isinstance(obj, Parity):
        objective = {"type": "parity"}
    else:
        raise GameFormatError(f"cannot serialise objective {obj!r}")
    return {
        "vertices": vertices,
        "edges": edges,
        "objective": objective,
        "initial": g.initial,
        "class": _encode_class(g.class_hint),
    }


def game_from_dict(data: Any) -> TemporalGame:
    if not isinstance(data, dict):
        raise GameFormatError("top level must be an object")
    try:
        raw_vertices = data["vertices"]
        raw_edges = data["edges"]
        raw_objective = data["objective"]
        initial = data["initial"]
        raw_class = data["class"]
    except KeyError as missing:
        raise GameFormatError(f"missing top-level key {missing}") from None
    ids: list[str] = []
    owner: dict = {}
    colour: dict = {}
    for entry in raw_vertices:
        try:
            vid = entry["id"]
            own = entry["owner"]
        except (KeyError, TypeError):
            raise GameFormatError(f"bad vertex entry {entry!r}") from None
        if not isinstance(vid, str):
            raise GameFormatError(f"vertex id must be a string, got {vid!r}")
        ids.append(vid)
        owner[vid] = own
        if "colour" in entry:
            colour[vid] = _decode_int(entry["colour"], f"colour of {vid!r}")
    edges: dict = {}
    for entry in raw_edges:
        try:
            u, w = entry["from"], entry["to"]
            avail = entry["avail"]
        except (KeyError, TypeError):
            raise GameFormatError(f"bad edge entry {entry!r}") from None
        edges[(u, w)] = _decode_timeset(avail, f"edge {u!r}->{w!r}")
    if not isinstance(raw_objective, dict) or "type" not in raw_objective:
        raise GameFormatError("objective: expected an object with a 'type'")
    kind = raw_objective["type"]
    if kind == "reach":
        objective: Any = Reachability(frozenset(raw_objective.get("targets", ())))
    elif kind == "punctual":
        objective = Punctual(
            frozenset(raw_objective.get("targets", ())),
            _decode_int(raw_objective["targetTime"], "objective.targetTime"))
    elif kind == "parity":
        objective = Parity()
    else:
        raise GameFormatError(f"objective: unknown type {kind!r}")
    return TemporalGame(
        vertices=tuple(ids),
        owner=owner,
        edges=edges,
        objective=objective,
        initial=initial,
        class_hint=_decode_class(raw_class),
        colour=colour if colour else None,
    )


def _dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def serialise_game(g: TemporalGame) -> str:
    return _dump(game_to_dict(g))


def parse_game(text: str) -> TemporalGame:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise GameFormatError(f"invalid JSON: {err}") from None
    return game_from_dict(data)


def serialise_certificate(cert: Certificate) -> str:
    for v in cert.vertices:
        if not isinstance(v, str):
            raise GameFormatError(f"only string vertex ids serialise; got {v!r}")
    return _dump({
        "vertices": sorted(cert.vertices),
        "edges": [
            {"from": u, "colour": _encode_int(c), "to": w}
            for (u, c, w) in sorted(cert.edges)
        ],
        "initial": cert.initial,
    })


def parse_certificate(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise GameFormatError(f"invalid JSON: {err}") from None
    if not isinstance(data, dict):
        raise GameFormatError("top level must be an object")
    try:
        vertices = frozenset(data["vertices"])
        edges = frozenset(
            (e["from"], _decode_int(e["colour"], "edge colour"), e["to"])
            for e in data["edges"])
    except (KeyError, TypeError):
        raise GameFormatError("bad certificate structure") from None
    return Certificate(vertices, edges, data.get("initial"))


def digest(text: str) -> str:
    """Stable content hash of a canonical serialisation."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
