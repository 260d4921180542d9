"""Finite-horizon Choquet and strong Choquet games with Player II's tube tactics."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .approximation import (
    PinchedTube,
    approx_vietoris,
    strictly_inside,
    tube_with_pinches,
)
from .domain import PiecewiseFn, Q, SpaceX, bounds
from .errors import GameError, PreconditionError
from .setvalued import CuscoMap, is_minimal, minimal_inside
from .vietoris import (
    Tube,
    VietorisNbhd,
    contains_map,
    member_nbhd,
    region_within_tube,
    regular_refine,
)

HALF = Q(1, 2)


class GameKind(str, enum.Enum):
    CHOQUET_UPPER = "choquet_upper"
    STRONG_CHOQUET_UPPER = "strong_choquet_upper"
    CHOQUET_VIETORIS = "choquet_vietoris"

    @property
    def upper_only(self) -> bool:
        return self is not GameKind.CHOQUET_VIETORIS


@dataclass(frozen=True)
class PlayerOneMove:
    """Rounds are numbered from 1."""

    round: int
    nbhd: VietorisNbhd
    point: CuscoMap | None


@dataclass(frozen=True)
class PlayerTwoMove:
    round: int
    tube: Tube
    pinched: PinchedTube | None = None
    approximant: PiecewiseFn | None = None


@dataclass(frozen=True)
class GameState:
    kind: GameKind
    space: SpaceX
    history: tuple = ()

    @property
    def round(self) -> int:
        """Number of completed rounds."""
        return len(self.history) // 2

    @property
    def tubes(self) -> tuple[Tube, ...]:
        return tuple(m.tube for m in self.history if isinstance(m, PlayerTwoMove))

    @property
    def player_one_to_move(self) -> bool:
        return len(self.history) % 2 == 0


def new_game(kind, space: SpaceX) -> GameState:
    kind = GameKind(kind)
    if not space.compact:
        raise PreconditionError("games are played on a compact X (no punctures)")
    return GameState(kind, space)


def player1_move(s: GameState, F: CuscoMap | None, U: VietorisNbhd) -> GameState:
    """Validate and record Player I's move (F is the named point, when there is one)."""
    k = s.round + 1
    if not s.player_one_to_move:
        raise GameError("it is Player II's turn", round_index=k)
    if s.kind.upper_only and U.lowers:
        raise GameError("upper-Vietoris games take no lower constraints", round_index=k)
    if F is None and s.kind is not GameKind.CHOQUET_UPPER:
        raise GameError(
            f"{s.kind.value} needs Player I to name a point of U", round_index=k
        )
    if F is None and not isinstance(U.upper, Tube):
        raise GameError("a point of U is needed when U is not a tube", round_index=k)
    if s.tubes:
        inside = region_within_tube(U.upper, s.tubes[-1])
        if not inside:
            raise GameError(
                f"U is not inside Player II's previous tube (fails at {inside.witness})",
                inside.witness,
                round_index=k,
            )
    if F is not None:
        if F.space != s.space:
            raise GameError("the named point lives on another space", round_index=k)
        if not is_minimal(F):
            raise GameError("the named point is not a minimal cusco map", round_index=k)
        hit = member_nbhd(F, U)
        if not hit:
            raise GameError(
                f"the named point is not in U ({hit.witness})",
                hit.witness,
                round_index=k,
            )
    return replace(s, history=s.history + (PlayerOneMove(k, U, F),))


def _last_request(s: GameState, kinds: tuple[GameKind, ...]) -> PlayerOneMove:
    if s.kind not in kinds:
        raise GameError(
            f"this tactic does not apply to {s.kind.value}", round_index=s.round + 1
        )
    if s.player_one_to_move:
        raise GameError("it is Player I's turn", round_index=s.round + 1)
    return s.history[-1]


def _check_nesting(s: GameState, tube: Tube) -> None:
    if s.tubes and not strictly_inside(tube, s.tubes[-1]):
        raise AssertionError("tactic tubes are not strictly nested")


def _upper_response(s: GameState, move: PlayerOneMove) -> PlayerTwoMove:
    F = move.point
    if F is None:
        T = move.nbhd.upper
        F = CuscoMap.single((T.f + T.g).scale(HALF))
    tube = regular_refine(F, move.nbhd.upper).tube
    _check_nesting(s, tube)
    return PlayerTwoMove(move.round, tube)


def tactic_strong(s: GameState) -> Tube:
    """Regular refinement around Player I's named point."""
    move = _last_request(s, (GameKind.STRONG_CHOQUET_UPPER,))
    return _upper_response(s, move).tube


def tactic_choquet(s: GameState) -> Tube:
    move = _last_request(s, (GameKind.CHOQUET_UPPER,))
    return _upper_response(s, move).tube


def _vietoris_response(s: GameState, move: PlayerOneMove) -> PlayerTwoMove:
    h = approx_vietoris(move.point, move.nbhd)
    pinched = tube_with_pinches(h, move.nbhd)
    _check_nesting(s, pinched.tube)
    return PlayerTwoMove(move.round, pinched.tube, pinched, h)


def tactic_vietoris(s: GameState) -> Tube:
    """Continuous approximant of the witness, then a pinched tube around it."""
    move = _last_request(s, (GameKind.CHOQUET_VIETORIS,))
    return _vietoris_response(s, move).tube


def respond(s: GameState) -> GameState:
    """Play Player II's tactic and record the response."""
    move = _last_request(s, tuple(GameKind))
    if s.kind is GameKind.CHOQUET_VIETORIS:
        reply = _vietoris_response(s, move)
    else:
        reply = _upper_response(s, move)
    return replace(s, history=s.history + (reply,))


@dataclass(frozen=True)
class Certificate:
    round: int
    player: int
    holds: bool


@dataclass(frozen=True)
class Transcript:
    kind: GameKind
    moves: tuple
    limit: CuscoMap
    point: CuscoMap
    certificates: tuple[Certificate, ...] = field(default=())

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.certificates)


def finish(s: GameState) -> Transcript:
    """Intersection of the closed tubes so far, a minimal map inside it, and its
    membership in every recorded neighborhood."""
    if s.round == 0:
        raise GameError("no completed rounds", round_index=0)
    history = s.history[: 2 * s.round]
    last = history[-1].tube
    F = CuscoMap(last.f, last.g)
    point = minimal_inside(CuscoMap.single((last.f + last.g).scale(HALF)))
    if not F.contains(point):
        raise AssertionError("extracted point escapes the limit map")
    certs = []
    for m in history:
        if isinstance(m, PlayerOneMove):
            certs.append(Certificate(m.round, 1, bool(member_nbhd(point, m.nbhd))))
        else:
            certs.append(Certificate(m.round, 2, bool(contains_map(point, m.tube))))
    return Transcript(s.kind, history, F, point, tuple(certs))


def widths(s: GameState) -> list[tuple[int, object, object]]:
    """(round, min width, max width) of each tactic tube."""
    return [(k, *bounds(t.g - t.f)) for k, t in enumerate(s.tubes, start=1)]
