"""Continuous functions inside upper-Vietoris and Vietoris neighborhoods of cusco maps."""

from __future__ import annotations

from dataclasses import dataclass

from .domain import (
    INF,
    Affine,
    PiecewiseFn,
    Q,
    bounds,
    first_violation,
    fmax,
    fmin,
    insert_continuous,
    is_continuous,
)
from .errors import PreconditionError
from .setvalued import CuscoMap
from .vietoris import (
    Box,
    OpenRegion,
    Region,
    Tube,
    VietorisNbhd,
    _require_inside,
    band_profile,
    cells,
    clamp_band,
    connectedize,
    contains_map,
    meets,
    member_nbhd,
    positive_interval,
    regular_refine,
)

HALF = Q(1, 2)


@dataclass(frozen=True)
class ClampedRegion:
    original: OpenRegion
    clamped: OpenRegion
    band_lo: Q
    band_hi: Q


def clamp_bounds(F: CuscoMap, W: OpenRegion) -> ClampedRegion:
    """W ∩ X×(min lower_F - 1, max upper_F + 1)."""
    _require_inside(F, W)
    lo, hi = clamp_band(F)
    return ClampedRegion(W, W.clip_y(lo, hi), lo, hi)


@dataclass(frozen=True)
class Sandwich:
    """f1 < g1 <= h1 <= f2 <= g2 < h2, and g = (g1 + g2) / 2."""

    f1: PiecewiseFn
    g1: PiecewiseFn
    h1: PiecewiseFn
    f2: PiecewiseFn
    g2: PiecewiseFn
    h2: PiecewiseFn
    g: PiecewiseFn


def approx_upper_detailed(F: CuscoMap, W: Region) -> Sandwich:
    p, r = band_profile(F, W)
    g1 = insert_continuous(p, F.lower, strict=True)
    g2 = insert_continuous(F.upper, r, strict=True)
    g = (g1 + g2).scale(HALF)
    if not contains_map(CuscoMap.single(g), W):
        raise AssertionError("approximant escapes W")
    return Sandwich(p, g1, F.lower, F.upper, g2, r, g)


def approx_upper(F: CuscoMap, W: Region) -> PiecewiseFn:
    """Continuous g whose graph lies in W, for F ⊆ W."""
    return approx_upper_detailed(F, W).g


@dataclass(frozen=True)
class Bump:
    """Tent on (x - radius, x + radius) moving the base function to t at x."""

    lower_index: int
    x: Q
    t: Q
    radius: Q


@dataclass(frozen=True)
class VietorisApprox:
    g: PiecewiseFn
    base: PiecewiseFn
    bumps: tuple[Bump, ...]


def _pick_point(p, r, W: OpenRegion, grid, taken: set) -> tuple[Q, Q]:
    """(x, t) with p(x) < t < r(x) and t ∈ W(x), x off ``grid`` and not in ``taken``."""
    space = p.space
    cuts = list(grid) + W.x_cuts()
    for u, v in cells(space, cuts):
        if v is None:
            continue
        pl, rl = p.law_at(u), r.law_at(u)
        for b in W.boxes:
            if not b.covers(u, v):
                continue
            laws = [rl.minus(pl)]
            if b.y_lo != -INF:
                laws.append(rl.shifted(-b.y_lo))
            if b.y_hi != INF:
                laws.append(Affine(-pl.slope, b.y_hi - pl.intercept))
            iv = positive_interval(laws, u, v)
            if iv is None:
                continue
            lo, hi = iv
            x = (lo + hi) / 2
            while x in taken:
                x = (lo + x) / 2
            ylo, yhi = max(pl(x), b.y_lo), min(rl(x), b.y_hi)
            return x, (ylo + yhi) / 2
    raise PreconditionError("lower region does not meet the upper region")


def approx_vietoris_detailed(F: CuscoMap, N: VietorisNbhd) -> VietorisApprox:
    ok = member_nbhd(F, N)
    if not ok:
        raise PreconditionError(
            f"F is not in the neighborhood ({ok.witness})", ok.witness
        )
    space = F.space
    W0 = connectedize(N.upper, F)
    base = approx_upper(F, W0)
    if not N.lowers:
        return VietorisApprox(base, base, ())
    p, r = band_profile(F, W0)
    grid = sorted(set(base.breakpoints) | set(p.breakpoints) | set(r.breakpoints))
    taken: set = set()
    picks = []
    for k, Wk in enumerate(N.lowers):
        x, t = _pick_point(p, r, Wk, grid, taken)
        taken.add(x)
        picks.append((k, x, t))
    xs = sorted(taken)
    bumps = []
    for k, x, t in picks:
        gaps = [abs(x - y) for y in xs if y != x] + [abs(x - y) for y in grid]
        rad = min(gaps) / 2
        bumps.append([k, x, t, rad])
    for _ in range(64):
        g = base
        for k, x, t, rad in bumps:
            tent = PiecewiseFn.from_vertices(
                space, [(x - rad, 0), (x, t - base(x)), (x + rad, 0)]
            )
            g = g + tent
        if member_nbhd(CuscoMap.single(g), N):
            return VietorisApprox(
                g, base, tuple(Bump(k, x, t, rad) for k, x, t, rad in bumps)
            )
        for bump in bumps:
            bump[3] /= 2
    raise AssertionError("bump radius did not converge")


def approx_vietoris(F: CuscoMap, N: VietorisNbhd) -> PiecewiseFn:
    """Continuous g with g ∈ N, for F ∈ N."""
    return approx_vietoris_detailed(F, N).g


@dataclass(frozen=True)
class Pinch:
    """Over the closed interval [x_lo, x_hi] the closed tube lies in (y_lo, y_hi) ⊆ box."""

    lower_index: int
    x_lo: Q
    x_hi: Q
    y_lo: Q
    y_hi: Q
    box: Box


@dataclass(frozen=True)
class PinchedTube:
    tube: Tube
    outer: Tube
    pinches: tuple[Pinch, ...]

    def certify(self, N: VietorisNbhd) -> bool:
        """Closed tube inside N.upper, and inside every pinch box over its interval."""
        if not contains_map(self.tube.closed(), N.upper):
            return False
        for pin in self.pinches:
            if pin.box not in N.lowers[pin.lower_index].boxes:
                return False
            f_lo = bounds(self.tube.f, pin.x_lo, pin.x_hi)[0]
            g_hi = bounds(self.tube.g, pin.x_lo, pin.x_hi)[1]
            if not (pin.box.y_lo < f_lo and g_hi < pin.box.y_hi):
                return False
            if not (pin.box.x_lo < pin.x_lo and pin.x_hi < pin.box.x_hi):
                return False
        return True


def tube_with_pinches(h: PiecewiseFn, N: VietorisNbhd) -> PinchedTube:
    """Tube M around h with cl M ⊆ N.upper and, for each lower region, a closed x-interval
    over which cl M lies inside that region; so M⁺ ⊆ N."""
    if not is_continuous(h):
        raise PreconditionError("h must be continuous")
    H = CuscoMap.single(h)
    ok = member_nbhd(H, N)
    if not ok:
        raise PreconditionError(
            f"h is not in the neighborhood ({ok.witness})", ok.witness
        )
    ref = regular_refine(H, N.upper)
    f, g = ref.tube.f, ref.tube.g
    low, high = bounds(f)[0] - 1, bounds(g)[1] + 1
    space = h.space
    pinches = []
    for k, Wk in enumerate(N.lowers):
        x0, y0 = meets(H, Wk).witness
        box = next(b for b in Wk.boxes if b.active(x0) and b.y_lo < y0 < b.y_hi)
        R = min(x0 - box.x_lo, box.x_hi - x0, space.b - space.a)
        while True:
            h_lo, h_hi = bounds(h, x0 - R, x0 + R)
            if box.y_lo < h_lo and h_hi < box.y_hi:
                break
            R /= 2
        rad = R / 2
        c = (box.y_lo + h_lo) / 2 if box.y_lo != -INF else h_lo - 1
        d = (box.y_hi + h_hi) / 2 if box.y_hi != INF else h_hi + 1
        shape = [(x0 - R, 0), (x0 - rad, 1), (x0 + rad, 1), (x0 + R, 0)]
        tent = PiecewiseFn.from_vertices(space, shape)
        f = fmax(f, tent.scale(c - low) + low)
        g = fmin(g, tent.scale(d - high) + high)
        pinches.append(Pinch(k, x0 - rad, x0 + rad, c, d, box))
    out = PinchedTube(Tube(f, g), ref.outer, tuple(pinches))
    if not out.certify(N):
        raise AssertionError("pinched tube fails its certificate")
    return out


def strictly_inside(inner: Tube, outer: Tube) -> bool:
    """outer.f < inner.f and inner.g < outer.g everywhere."""
    return (
        first_violation(outer.f, inner.f, strict=True) is None
        and first_violation(inner.g, outer.g, strict=True) is None
    )
