"""Scripted Player-I strategies used to exercise Player II's tactics."""

from __future__ import annotations

from collections.abc import Callable

from .domain import INF, PiecewiseFn, Q, SpaceX, bounds
from .games import GameKind, GameState, PlayerOneMove, new_game, player1_move, respond
from .setvalued import CuscoMap, envelope
from .vietoris import Box, OpenRegion, Tube, VietorisNbhd

Adversary = Callable[[GameState], tuple[CuscoMap, VietorisNbhd]]


def _mix(f: PiecewiseFn, g: PiecewiseFn, wf: int, wg: int) -> PiecewiseFn:
    """(wf·f + wg·g) / (wf + wg)."""
    return (f.scale(wf) + g.scale(wg)).scale(Q(1, wf + wg))


def _centre(space: SpaceX) -> Q:
    return (space.a + space.b) / 2


def _lower_box(s: GameState, F: CuscoMap, height) -> tuple[OpenRegion, ...]:
    if s.kind is not GameKind.CHOQUET_VIETORIS:
        return ()
    sp = s.space
    k = s.round
    x = sp.a + (sp.b - sp.a) / (k + 3)
    y = F.lower(x)
    dx = (sp.b - sp.a) / (4 * (k + 3) ** 2)
    return (OpenRegion((Box(x - dx, x + dx, y - height, y + height),)),)


def _previous(s: GameState) -> tuple[Tube, PlayerOneMove]:
    return s.history[-1].tube, s.history[-2]


def opening(s: GameState) -> tuple[CuscoMap, VietorisNbhd]:
    """Step map inside X × (-5, 5)."""
    F = envelope(PiecewiseFn.step(s.space, _centre(s.space), 0, 1, 1))
    return F, VietorisNbhd(OpenRegion.band(-5, 5), _lower_box(s, F, 1))


def geometric_shrink(s: GameState) -> tuple[CuscoMap, VietorisNbhd]:
    """Middle half of the last tube, around its midline plus a small step."""
    if s.round == 0:
        return opening(s)
    T, _ = _previous(s)
    w = bounds(T.g - T.f)[0]
    mid = _mix(T.f, T.g, 1, 1)
    step = PiecewiseFn.step(s.space, _centre(s.space), 0, w / 8, w / 8)
    F = envelope(mid + step)
    U = Tube(_mix(T.f, T.g, 3, 1), _mix(T.f, T.g, 1, 3))
    return F, VietorisNbhd(U, _lower_box(s, F, w / 8))


def _staircase(T: Tube, mid: PiecewiseFn, max_boxes: int = 32) -> OpenRegion | None:
    """Horizontal boxes inside the middle half of T covering ``mid``; None if more than
    ``max_boxes`` would be needed."""
    sp = T.space
    inner, outer = _mix(T.f, T.g, 3, 1), _mix(T.f, T.g, 1, 3)
    n = 2
    while n <= max_boxes:
        h = (sp.b - sp.a) / n
        boxes = []
        for i in range(n):
            lo, hi = sp.a + i * h - h / 4, sp.a + (i + 1) * h + h / 4
            y_lo, y_hi = bounds(inner, lo, hi)[1], bounds(outer, lo, hi)[0]
            m_lo, m_hi = bounds(mid, lo, hi)
            if not (y_lo < m_lo and m_hi < y_hi):
                break
            boxes.append(
                Box(-INF if i == 0 else lo, INF if i == n - 1 else hi, y_lo, y_hi)
            )
        else:
            return OpenRegion(tuple(boxes))
        n *= 2
    return None


def alternating_pinch(s: GameState) -> tuple[CuscoMap, VietorisNbhd]:
    """Box staircases on odd rounds (while the tube is flat enough for a short one);
    otherwise lower and upper half tubes in turn."""
    if s.round == 0:
        return opening(s)
    T, _ = _previous(s)
    w = bounds(T.g - T.f)[0]
    k = s.round
    mid = _mix(T.f, T.g, 1, 1)
    stairs = _staircase(T, mid) if k % 2 == 1 else None
    if stairs is not None:
        F, U = CuscoMap.single(mid), stairs
    elif k % 4 in (1, 2):
        F = CuscoMap.single(_mix(T.f, T.g, 5, 3))
        U = Tube(_mix(T.f, T.g, 7, 1), _mix(T.f, T.g, 3, 5))
    else:
        F = CuscoMap.single(_mix(T.f, T.g, 3, 5))
        U = Tube(_mix(T.f, T.g, 5, 3), _mix(T.f, T.g, 1, 7))
    return F, VietorisNbhd(U, _lower_box(s, F, w / 16))


def stagnation(s: GameState) -> tuple[CuscoMap, VietorisNbhd]:
    """Replays Player II's last tube and the previous point (in the Vietoris game the
    previous point may lie outside that tube, so Player II's own approximant is used)."""
    if s.round == 0:
        return opening(s)
    T, last = _previous(s)
    h = s.history[-1].approximant
    F = last.point if h is None else CuscoMap.single(h)
    w = bounds(T.g - T.f)[0]
    return F, VietorisNbhd(T, _lower_box(s, F, w / 8))


ADVERSARIES: dict[str, Adversary] = {
    "geometric-shrink": geometric_shrink,
    "alternating-pinch": alternating_pinch,
    "stagnation": stagnation,
}


def play(kind, space: SpaceX, adversary: Adversary, rounds: int) -> GameState:
    """Run ``rounds`` rounds of Player I's script against Player II's tactic."""
    s = new_game(kind, space)
    for _ in range(rounds):
        F, U = adversary(s)
        s = respond(player1_move(s, F, U))
    return s
