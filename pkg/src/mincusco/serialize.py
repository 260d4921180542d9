"""JSON documents for spaces, functions, cusco maps, regions, neighborhoods and transcripts.

Rationals are written as strings such as ``"-3/4"``; on input, integers and
``[numerator, denominator]`` pairs are accepted too. Unbounded endpoints are
``"inf"`` and ``"-inf"``.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .domain import Affine, ExtQ, PiecewiseFn, Q, SpaceX, ext, q
from .errors import AnalysisError
from .games import GameKind, Transcript
from .setvalued import CuscoMap
from .vietoris import Box, OpenRegion, Tube, VietorisNbhd


class ParseError(AnalysisError):
    """Malformed document; ``where`` is a line/column or a JSON path."""

    def __init__(self, message: str, where: str):
        super().__init__(f"{where}: {message}", where)
        self.where = where


# -- numbers -----------------------------------------------------------------


def dump_q(x: ExtQ) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    x = q(x)
    return (
        str(int(x.numerator))
        if x.denominator == 1
        else f"{x.numerator}/{x.denominator}"
    )


def _rat(doc, path: str) -> Q:
    try:
        if isinstance(doc, list) and len(doc) == 2:
            return q(doc[0]) / q(doc[1])
        if isinstance(doc, (int, str)) and not isinstance(doc, bool):
            return q(doc)
    except (ValueError, ZeroDivisionError, TypeError):
        pass
    raise ParseError(f"expected an exact rational, got {doc!r}", path)


def _ext(doc, path: str) -> ExtQ:
    if isinstance(doc, str) and doc.strip().lower() in ("inf", "+inf", "-inf"):
        return ext(doc)
    return _rat(doc, path)


def _field(doc, key: str, path: str):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", path)
    if key not in doc:
        raise ParseError(f"missing field {key!r}", path)
    return doc[key]


def _list(doc, path: str) -> list:
    if not isinstance(doc, list):
        raise ParseError("expected a list", path)
    return doc


def _check_type(doc, expected: str, path: str) -> None:
    kind = doc.get("type", expected) if isinstance(doc, dict) else None
    if kind != expected:
        raise ParseError(f"expected a {expected!r} document, got type {kind!r}", path)


def _build(factory, path: str, *args):
    try:
        return factory(*args)
    except AnalysisError as exc:
        raise ParseError(str(exc), path) from exc


# -- values ----------------------------------------------------------------------


def dump_space(sp: SpaceX) -> dict:
    return {
        "a": dump_q(sp.a),
        "b": dump_q(sp.b),
        "punctures": [dump_q(p) for p in sp.punctures],
    }


def load_space(doc, path: str = "$") -> SpaceX:
    a = _rat(_field(doc, "a", path), f"{path}.a")
    b = _rat(_field(doc, "b", path), f"{path}.b")
    pts = doc.get("punctures", [])
    pts = [
        _rat(p, f"{path}.punctures[{i}]")
        for i, p in enumerate(_list(pts, f"{path}.punctures"))
    ]
    return _build(SpaceX, path, a, b, tuple(pts))


def dump_fn(f: PiecewiseFn) -> dict:
    return {
        "type": "piecewise",
        "space": dump_space(f.space),
        "breakpoints": [dump_q(x) for x in f.breakpoints],
        "laws": [[dump_q(law.slope), dump_q(law.intercept)] for law in f.laws],
        "values": [None if v is None else dump_q(v) for v in f.values],
    }


def load_fn(doc, path: str = "$") -> PiecewiseFn:
    _check_type(doc, "piecewise", path)
    sp = load_space(_field(doc, "space", path), f"{path}.space")
    if "vertices" in doc:
        pts = []
        for i, pair in enumerate(_list(doc["vertices"], f"{path}.vertices")):
            p = f"{path}.vertices[{i}]"
            pair = _list(pair, p)
            if len(pair) != 2:
                raise ParseError("expected [x, y]", p)
            pts.append((_rat(pair[0], p), _rat(pair[1], p)))
        return _build(PiecewiseFn.from_vertices, path, sp, pts)
    bps = _list(_field(doc, "breakpoints", path), f"{path}.breakpoints")
    bps = [_rat(x, f"{path}.breakpoints[{i}]") for i, x in enumerate(bps)]
    laws = []
    for i, law in enumerate(_list(_field(doc, "laws", path), f"{path}.laws")):
        p = f"{path}.laws[{i}]"
        law = _list(law, p)
        if len(law) != 2:
            raise ParseError("expected [slope, intercept]", p)
        laws.append(Affine(_rat(law[0], p), _rat(law[1], p)))
    vals = []
    for i, v in enumerate(_list(_field(doc, "values", path), f"{path}.values")):
        vals.append(None if v is None else _rat(v, f"{path}.values[{i}]"))
    return _build(PiecewiseFn, path, sp, tuple(bps), tuple(laws), tuple(vals))


def dump_cusco(F: CuscoMap) -> dict:
    return {"type": "cusco", "lower": dump_fn(F.lower), "upper": dump_fn(F.upper)}


def load_cusco(doc, path: str = "$") -> CuscoMap:
    """A cusco document, or a piecewise document read as a single-valued map."""
    if isinstance(doc, dict) and doc.get("type") == "piecewise":
        f = load_fn(doc, path)
        return _build(CuscoMap, path, f, f)
    _check_type(doc, "cusco", path)
    lower = load_fn(_field(doc, "lower", path), f"{path}.lower")
    upper = load_fn(_field(doc, "upper", path), f"{path}.upper")
    return _build(CuscoMap, path, lower, upper)


def dump_region(W: OpenRegion | Tube) -> dict:
    if isinstance(W, Tube):
        return {"type": "tube", "f": dump_fn(W.f), "g": dump_fn(W.g)}
    return {
        "type": "region",
        "boxes": [
            [dump_q(b.x_lo), dump_q(b.x_hi), dump_q(b.y_lo), dump_q(b.y_hi)]
            for b in W.boxes
        ],
    }


def load_region(doc, path: str = "$") -> OpenRegion | Tube:
    if isinstance(doc, dict) and doc.get("type") == "tube":
        f = load_fn(_field(doc, "f", path), f"{path}.f")
        g = load_fn(_field(doc, "g", path), f"{path}.g")
        return _build(Tube, path, f, g)
    _check_type(doc, "region", path)
    boxes = []
    for i, box in enumerate(_list(_field(doc, "boxes", path), f"{path}.boxes")):
        p = f"{path}.boxes[{i}]"
        box = _list(box, p)
        if len(box) != 4:
            raise ParseError("expected [x_lo, x_hi, y_lo, y_hi]", p)
        boxes.append(_build(Box, p, *(_ext(t, p) for t in box)))
    return OpenRegion(tuple(boxes))


def dump_nbhd(N: VietorisNbhd) -> dict:
    return {
        "type": "nbhd",
        "upper": dump_region(N.upper),
        "lowers": [dump_region(W) for W in N.lowers],
    }


def load_nbhd(doc, path: str = "$") -> VietorisNbhd:
    """A neighborhood document, or a bare region/tube read as an upper-only neighborhood."""
    if isinstance(doc, dict) and doc.get("type") in ("region", "tube"):
        return VietorisNbhd(load_region(doc, path))
    _check_type(doc, "nbhd", path)
    upper = load_region(_field(doc, "upper", path), f"{path}.upper")
    lowers = _list(doc.get("lowers", []), f"{path}.lowers")
    lows = []
    for i, W in enumerate(lowers):
        R = load_region(W, f"{path}.lowers[{i}]")
        if isinstance(R, Tube):
            raise ParseError("lower regions must be box unions", f"{path}.lowers[{i}]")
        lows.append(R)
    return VietorisNbhd(upper, tuple(lows))


LOADERS = {
    "piecewise": load_fn,
    "cusco": load_cusco,
    "region": load_region,
    "tube": load_region,
    "nbhd": load_nbhd,
}


def load_any(doc, path: str = "$") -> Any:
    kind = _field(doc, "type", path)
    if kind not in LOADERS:
        raise ParseError(f"unknown document type {kind!r}", path)
    return LOADERS[kind](doc, path)


def dump_any(obj) -> dict:
    if isinstance(obj, PiecewiseFn):
        return dump_fn(obj)
    if isinstance(obj, CuscoMap):
        return dump_cusco(obj)
    if isinstance(obj, (OpenRegion, Tube)):
        return dump_region(obj)
    if isinstance(obj, VietorisNbhd):
        return dump_nbhd(obj)
    if isinstance(obj, SpaceX):
        return dump_space(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- text ---------------------------------------------------------------------


def parse_text(text: str, source: str = "<input>") -> Any:
    """Decode JSON text, reporting syntax errors with line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from exc


def read_document(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, path)


def to_text(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- games ----------------------------------------------------------------------


def dump_transcript(t: Transcript, space: SpaceX) -> dict:
    rounds = []
    for one, two in zip(t.moves[::2], t.moves[1::2]):
        reply = {"tube": dump_region(two.tube)}
        if two.approximant is not None:
            reply["approximant"] = dump_fn(two.approximant)
        if two.pinched is not None:
            reply["pinches"] = [
                {
                    "lower": p.lower_index,
                    "x": [dump_q(p.x_lo), dump_q(p.x_hi)],
                    "y": [dump_q(p.y_lo), dump_q(p.y_hi)],
                }
                for p in two.pinched.pinches
            ]
        rounds.append(
            {
                "round": one.round,
                "player1": {
                    "point": None if one.point is None else dump_cusco(one.point),
                    "nbhd": dump_nbhd(one.nbhd),
                },
                "player2": reply,
            }
        )
    return {
        "type": "transcript",
        "kind": t.kind.value,
        "space": dump_space(space),
        "rounds": rounds,
        "limit": dump_cusco(t.limit),
        "point": dump_cusco(t.point),
        "certificates": [
            {"round": c.round, "player": c.player, "holds": c.holds}
            for c in t.certificates
        ],
        "all_hold": t.all_hold,
    }


def load_game_script(doc, path: str = "$") -> tuple[GameKind, SpaceX, list]:
    """(kind, space, [(point or None, nbhd), ...]) from a game script or a transcript."""
    kind_doc = _field(doc, "kind", path)
    try:
        kind = GameKind(kind_doc)
    except ValueError as exc:
        raise ParseError(f"unknown game kind {kind_doc!r}", f"{path}.kind") from exc
    sp = load_space(_field(doc, "space", path), f"{path}.space")
    if doc.get("type") == "transcript":
        raw = [
            r.get("player1")
            for r in _list(_field(doc, "rounds", path), f"{path}.rounds")
        ]
        where = f"{path}.rounds[%d].player1"
    else:
        _check_type(doc, "game-script", path)
        raw = _list(_field(doc, "moves", path), f"{path}.moves")
        where = f"{path}.moves[%d]"
    moves = []
    for i, m in enumerate(raw):
        p = where % i
        pt = _field(m, "point", p) if isinstance(m, dict) and "point" in m else None
        F = None if pt is None else load_cusco(pt, f"{p}.point")
        moves.append((F, load_nbhd(_field(m, "nbhd", p), f"{p}.nbhd")))
    return kind, sp, moves


def dump_game_script(kind: GameKind, space: SpaceX, moves) -> dict:
    return {
        "type": "game-script",
        "kind": GameKind(kind).value,
        "space": dump_space(space),
        "moves": [
            {"point": None if F is None else dump_cusco(F), "nbhd": dump_nbhd(U)}
            for F, U in moves
        ],
    }
