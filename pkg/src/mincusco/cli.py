"""Command-line front end.

Every subcommand reads JSON documents (see :mod:`mincusco.serialize`) and writes a
JSON document, or CSV with ``--format csv`` where there is tabular output.
Exit status: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from collections.abc import Sequence

from . import generators
from .adversaries import ADVERSARIES, play
from .approximation import approx_upper, approx_vietoris
from .domain import SpaceX, is_quasicontinuous
from .errors import AnalysisError, GameError
from .examples import EXAMPLES, run_example
from .games import GameKind, finish, new_game, player1_move, respond, widths
from .serialize import (
    ParseError,
    dump_cusco,
    dump_fn,
    dump_game_script,
    dump_q,
    dump_region,
    dump_transcript,
    load_cusco,
    load_fn,
    load_game_script,
    load_nbhd,
    load_region,
    read_document,
    to_text,
)
from .setvalued import CuscoMap, add_mc, envelope, is_minimal
from .vietoris import (
    L_distance,
    ball_radius_upper,
    contains_map,
    lower_ball,
    meets,
    member_nbhd,
    separate,
)

OK, CHECK_FAILED, BAD_INPUT = 0, 1, 2


def _plain(x):
    """JSON-friendly rendering of report cells."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    return dump_q(x)


def _emit(out, doc) -> None:
    out.write(to_text(doc))


def _table(out, columns, rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])


def _csv_cell(v):
    p = _plain(v)
    return " ".join(map(str, p)) if isinstance(p, list) else p


# -- subcommands ---------------------------------------------------------------


def cmd_envelope(args, out) -> int:
    f = load_fn(read_document(args.function))
    qc = is_quasicontinuous(f)
    if not qc:
        _emit(
            out,
            {"quasicontinuous": False, "failures": _plain(qc.witness)},
        )
        print("mincusco: input is not quasicontinuous", file=sys.stderr)
        return BAD_INPUT
    _emit(out, {"quasicontinuous": True, "envelope": dump_cusco(envelope(f))})
    return OK


def cmd_minimal(args, out) -> int:
    F = load_cusco(read_document(args.cusco))
    v = is_minimal(F)
    doc = {"minimal": bool(v)}
    if not v:
        doc["smaller"] = dump_cusco(v.witness)
    _emit(out, doc)
    return OK if v else CHECK_FAILED


def cmd_add(args, out) -> int:
    F = load_cusco(read_document(args.first))
    G = load_cusco(read_document(args.second))
    _emit(out, {"sum": dump_cusco(add_mc(F, G))})
    return OK


def cmd_member(args, out) -> int:
    F = load_cusco(read_document(args.cusco))
    N = load_nbhd(read_document(args.nbhd))
    v = member_nbhd(F, N)
    _emit(out, {"member": bool(v), "witness": _plain(v.witness)})
    return OK if v else CHECK_FAILED


def cmd_approx_upper(args, out) -> int:
    F = load_cusco(read_document(args.cusco))
    W = load_region(read_document(args.region))
    g = approx_upper(F, W)
    ok = bool(contains_map(CuscoMap.single(g), W))
    _emit(out, {"approximant": dump_fn(g), "inside": ok})
    return OK if ok else CHECK_FAILED


def cmd_approx_vietoris(args, out) -> int:
    F = load_cusco(read_document(args.cusco))
    N = load_nbhd(read_document(args.nbhd))
    g = approx_vietoris(F, N)
    ok = bool(member_nbhd(CuscoMap.single(g), N))
    _emit(out, {"approximant": dump_fn(g), "member": ok})
    return OK if ok else CHECK_FAILED


def cmd_distance(args, out) -> int:
    F = load_cusco(read_document(args.first))
    G = load_cusco(read_document(args.second))
    _emit(out, {"L": dump_q(L_distance(F, G))})
    return OK


def cmd_ball(args, out) -> int:
    """Certified radius, plus a seeded randomized check of the guarantee."""
    F = load_cusco(read_document(args.cusco))
    W = load_region(read_document(args.region))
    rng = random.Random(args.seed)
    if args.lower:
        eps, point = lower_ball(F, W)
        holds = [
            bool(meets(generators.perturbed(rng, F, eps), W))
            for _ in range(args.samples)
        ]
        doc = {"epsilon": dump_q(eps), "witness": _plain(point)}
    else:
        eps = ball_radius_upper(F, W)
        holds = [
            bool(contains_map(generators.perturbed(rng, F, eps), W))
            for _ in range(args.samples)
        ]
        doc = {"epsilon": dump_q(eps)}
    doc.update(samples=len(holds), samples_passed=sum(holds), seed=args.seed)
    _emit(out, doc)
    return OK if all(holds) else CHECK_FAILED


def cmd_separate(args, out) -> int:
    F = load_cusco(read_document(args.first))
    G = load_cusco(read_document(args.second))
    sep = separate(F, G)
    _emit(
        out,
        {
            "x": dump_q(sep.x),
            "U": _plain(sep.around_f),
            "V": _plain(sep.around_g),
            "U0": dump_region(sep.region_f),
            "V0": dump_region(sep.region_g),
        },
    )
    return OK


def cmd_game(args, out) -> int:
    rounds = args.rounds
    if rounds is not None and rounds < 1:
        raise GameError("at least one round is required", round_index=0)
    if args.script:
        kind, space, moves = load_game_script(read_document(args.script))
        if rounds is not None:
            moves = moves[:rounds]
        if not moves:
            raise GameError("the script has no moves", round_index=0)
        s = new_game(kind, space)
        for F, U in moves:
            s = respond(player1_move(s, F, U))
    else:
        space = (
            generators.space(random.Random(args.seed))
            if args.random_space
            else SpaceX(-1, 1)
        )
        s = play(args.kind, space, ADVERSARIES[args.adversary], rounds or 16)
    t = finish(s)
    if args.widths:
        with open(args.widths, "w", encoding="utf-8", newline="") as fh:
            _width_table(fh, s)
    if args.format == "csv":
        _width_table(out, s)
    else:
        doc = dump_transcript(t, s.space)
        if args.save_script:
            moves = [(m.point, m.nbhd) for m in t.moves[::2]]
            with open(args.save_script, "w", encoding="utf-8") as fh:
                fh.write(to_text(dump_game_script(t.kind, s.space, moves)))
        _emit(out, doc)
    return OK if t.all_hold else CHECK_FAILED


def _width_table(out, s) -> None:
    _table(
        out,
        ("round", "min_width", "max_width", "min_width_exact", "max_width_exact"),
        [(k, float(lo), float(hi), lo, hi) for k, lo, hi in widths(s)],
    )


def cmd_examples(args, out) -> int:
    names = list(EXAMPLES) if args.name == "all" else [args.name]
    status = OK
    docs = []
    for name in names:
        rep = run_example(name, args.truncate)
        if not rep.passed:
            status = CHECK_FAILED
        if args.format == "csv":
            out.write(f"# {rep.name}: {'pass' if rep.passed else 'FAIL'}\n")
            _table(out, rep.columns, rep.rows)
        else:
            docs.append(
                {
                    "example": rep.name,
                    "passed": rep.passed,
                    "columns": list(rep.columns),
                    "rows": [_plain(list(r)) for r in rep.rows],
                    "notes": rep.notes,
                }
            )
    if args.format != "csv":
        _emit(out, docs[0] if len(docs) == 1 else docs)
    return status


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mincusco", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, *files):
        sp = sub.add_parser(name, help=help)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(func=func)
        return sp

    add(
        "envelope",
        cmd_envelope,
        "minimal cusco map generated by a function",
        "function",
    )
    add("minimal", cmd_minimal, "is a cusco map minimal?", "cusco")
    add("add", cmd_add, "sum of two minimal cusco maps", "first", "second")
    add("member", cmd_member, "Vietoris neighborhood membership", "cusco", "nbhd")
    add(
        "approx-upper",
        cmd_approx_upper,
        "continuous function inside a region",
        "cusco",
        "region",
    )
    add(
        "approx-vietoris",
        cmd_approx_vietoris,
        "continuous function in a Vietoris neighborhood",
        "cusco",
        "nbhd",
    )
    add("distance", cmd_distance, "the metric L", "first", "second")
    ball = add(
        "ball",
        cmd_ball,
        "certified L-ball radius inside W+ (or W- with --lower)",
        "cusco",
        "region",
    )
    ball.add_argument("--lower", action="store_true")
    ball.add_argument("--samples", type=int, default=100)
    add(
        "separate",
        cmd_separate,
        "disjoint neighborhoods of two minimal maps",
        "first",
        "second",
    )
    game = add("game", cmd_game, "play a scripted game against Player II's tactic")
    game.add_argument("script", nargs="?", help="game-script or transcript document")
    game.add_argument(
        "--kind", choices=[k.value for k in GameKind], default="strong_choquet_upper"
    )
    game.add_argument(
        "--adversary", choices=sorted(ADVERSARIES), default="geometric-shrink"
    )
    game.add_argument("--rounds", type=int, default=None)
    game.add_argument("--random-space", action="store_true", help="draw X from --seed")
    game.add_argument("--widths", metavar="PATH", help="also write the tube-width CSV")
    game.add_argument(
        "--save-script", metavar="PATH", help="also write Player I's moves"
    )
    ex = add("examples", cmd_examples, "reproduce a worked example")
    ex.add_argument("name", choices=sorted(EXAMPLES) + ["all"])
    ex.add_argument("--truncate", type=int, default=20)
    for sp in (game, ex):
        sp.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args, out)
    except GameError as exc:
        where = f"round {exc.round_index}: " if exc.round_index else ""
        print(f"mincusco: invalid move: {where}{exc}", file=sys.stderr)
        return BAD_INPUT
    except ParseError as exc:
        print(f"mincusco: parse error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except AnalysisError as exc:
        print(f"mincusco: {exc}", file=sys.stderr)
        return BAD_INPUT
    except OSError as exc:
        print(f"mincusco: {exc}", file=sys.stderr)
        return BAD_INPUT


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    raise SystemExit(main())
