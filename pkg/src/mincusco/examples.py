"""Reproductions of the worked examples: exact checks, one row per case."""

from __future__ import annotations

from dataclasses import dataclass, field

from .domain import PiecewiseFn, Q, SpaceX
from .setvalued import C_of, CuscoMap, S_of, add_mc, canonical_selection, envelope
from .vietoris import (
    L_distance,
    OpenRegion,
    Tube,
    VietorisNbhd,
    contains_map,
    meets,
    member_nbhd,
    separate,
    tube_base_refine,
)


@dataclass
class Report:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row[-1] for row in self.rows)


def step_map(space: SpaceX, top=1) -> CuscoMap:
    """{0} left of 0, [0, top] (or [top, 0]) at 0, {top} right of 0."""
    return envelope(PiecewiseFn.step(space, 0, 0, top, top))


def upper_not_lower(truncate: int = 20) -> Report:
    """f_n (a jump at the removed point 1/n) converges to the step map in the upper
    Vietoris topology but never enters the lower neighborhood (X × (0, 1))⁻."""
    X = SpaceX(-2, 2, tuple(Q(1, k) for k in range(1, truncate + 1)))
    F = envelope(PiecewiseFn.step(X, 0, 0, 1, 1))
    W = OpenRegion.band(0, 1)
    M = tube_base_refine(F, OpenRegion.band(-1, 2))
    rep = Report(
        "upper-not-lower",
        ("n", "F in W-", "f_n in M_n+", "f_n in W-", "ok"),
        notes=[f"X = {X}", "M_n = tube_base_refine(F, X×(-1,2)) widened by 1/n"],
    )
    F_in = bool(meets(F, W))
    for n in range(1, truncate + 1):
        fn = PiecewiseFn.step(X, Q(1, n), 0, 1)
        Mn = Tube(M.f - Q(1, n), M.g + Q(1, n))
        in_upper = bool(contains_map(CuscoMap.single(fn), Mn)) and bool(
            contains_map(F, Mn)
        )
        in_lower = bool(meets(CuscoMap.single(fn), W))
        rep.rows.append(
            (n, F_in, in_upper, in_lower, F_in and in_upper and not in_lower)
        )
    return rep


def addition_sequences(X: SpaceX, n: int) -> tuple[PiecewiseFn, PiecewiseFn]:
    """f_n rises linearly from 0 to 1 on [-1/n, 0]; g_n falls from 0 to -1 on [0, 1/n]."""
    f = PiecewiseFn.from_vertices(X, [(Q(-1, n), 0), (0, 1)])
    g = PiecewiseFn.from_vertices(X, [(0, 0), (Q(1, n), -1)])
    return f, g


def addition_not_continuous(truncate: int = 20) -> Report:
    """F + G = 0 while L(f_n + g_n, 0) = 1 for every n."""
    X = SpaceX(-2, 2)
    F, G = step_map(X, 1), step_map(X, -1)
    zero = CuscoMap.zero(X)
    total = add_mc(F, G)
    band = VietorisNbhd(OpenRegion.band(Q(-1, 2), Q(1, 2)))
    rep = Report(
        "addition-not-continuous",
        ("n", "L(f_n, F)", "L(g_n, G)", "L(f_n+g_n, 0)", "f_n+g_n in band+", "ok"),
        notes=[
            f"F + G = 0: {total == zero}",
            "band = X × (-1/2, 1/2), a neighborhood of F + G",
        ],
    )
    for n in range(1, truncate + 1):
        f, g = addition_sequences(X, n)
        s = CuscoMap.single(f + g)
        dist = L_distance(s, zero)
        inside = bool(member_nbhd(s, band))
        dF = L_distance(CuscoMap.single(f), F)
        dG = L_distance(CuscoMap.single(g), G)
        rep.rows.append(
            (n, dF, dG, dist, inside, total == zero and dist == 1 and not inside)
        )
    return rep


def hausdorff_separation() -> Report:
    """Disjoint upper-Vietoris neighborhoods of the step map and the zero map."""
    X = SpaceX(-1, 1)
    F, G = step_map(X), CuscoMap.zero(X)
    sep = separate(F, G)
    rep = Report(
        "hausdorff-separation",
        ("x", "U", "V", "F in U0+", "G in V0+", "ok"),
        notes=[f"U0 = {sep.region_f}", f"V0 = {sep.region_g}"],
    )
    f_in = bool(contains_map(F, sep.region_f))
    g_in = bool(contains_map(G, sep.region_g))
    rep.rows.append((sep.x, sep.around_f, sep.around_g, f_in, g_in, f_in and g_in))
    return rep


def s_equals_c() -> Report:
    """For the step map F and its generating selection f, S(F) = C(f) = X minus {0}."""
    X = SpaceX(-1, 1)
    F = step_map(X)
    f = canonical_selection(F)
    S, C = S_of(F), C_of(f)
    rep = Report("s-equals-c", ("S(F) exceptions", "C(f) exceptions", "ok"))
    rep.rows.append(
        (
            S.sorted_exceptions(),
            C.sorted_exceptions(),
            S == C and S.sorted_exceptions() == [0],
        )
    )
    return rep


EXAMPLES = {
    "upper-not-lower": upper_not_lower,
    "addition-not-continuous": addition_not_continuous,
    "hausdorff-separation": hausdorff_separation,
    "s-equals-c": s_equals_c,
}


def run_example(name: str, truncate: int = 20) -> Report:
    if name not in EXAMPLES:
        raise KeyError(name)
    fn = EXAMPLES[name]
    if name in ("upper-not-lower", "addition-not-continuous"):
        return fn(truncate)
    return fn()
