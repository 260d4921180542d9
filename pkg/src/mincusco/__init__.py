"""Exact set-valued analysis of cusco and minimal cusco maps on intervals of the line."""

from .approximation import approx_upper, approx_vietoris, tube_with_pinches
from .domain import Affine, PiecewiseFn, Q, SpaceX, insert_continuous, q
from .errors import AnalysisError, DomainError, GameError, PreconditionError
from .games import GameKind, finish, new_game, player1_move, respond
from .setvalued import (
    C_of,
    CofiniteSet,
    CuscoMap,
    S_of,
    add_mc,
    canonical_selection,
    envelope,
    is_minimal,
    minimal_inside,
)
from .vietoris import (
    Box,
    L_distance,
    OpenRegion,
    Tube,
    VietorisNbhd,
    ball_radius_lower,
    ball_radius_upper,
    contains_map,
    meets,
    member_nbhd,
    regular_refine,
    separate,
    tube_base_refine,
)

__all__ = [
    "Affine",
    "AnalysisError",
    "Box",
    "C_of",
    "CofiniteSet",
    "CuscoMap",
    "DomainError",
    "GameError",
    "GameKind",
    "L_distance",
    "OpenRegion",
    "PiecewiseFn",
    "PreconditionError",
    "Q",
    "S_of",
    "SpaceX",
    "Tube",
    "VietorisNbhd",
    "add_mc",
    "approx_upper",
    "approx_vietoris",
    "ball_radius_lower",
    "ball_radius_upper",
    "canonical_selection",
    "contains_map",
    "envelope",
    "finish",
    "insert_continuous",
    "is_minimal",
    "meets",
    "member_nbhd",
    "minimal_inside",
    "new_game",
    "player1_move",
    "q",
    "regular_refine",
    "respond",
    "separate",
    "tube_base_refine",
    "tube_with_pinches",
]
