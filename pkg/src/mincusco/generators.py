"""Seeded random instances for property tests and the acceptance suite.

Every generator takes a ``random.Random`` so runs are reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random

from .domain import INF, Affine, PiecewiseFn, Q, SpaceX, bounds, q
from .setvalued import CuscoMap, envelope
from .vietoris import Box, OpenRegion, Tube, VietorisNbhd

DENOMS = (1, 2, 3, 4, 8)


def rat(rng: random.Random, lo, hi, denoms=DENOMS) -> Q:
    """Random rational in [lo, hi] with a small denominator."""
    d = rng.choice(denoms)
    lo_n, hi_n = -((-q(lo) * d) // 1), (q(hi) * d) // 1
    return Q(rng.randint(int(lo_n), int(hi_n)), d)


def open_rat(rng: random.Random, lo, hi) -> Q:
    """Random rational strictly between lo < hi."""
    lo, hi = q(lo), q(hi)
    t = Q(rng.randint(1, 15), 16)
    return lo + t * (hi - lo)


def space(rng: random.Random, punctures: int = 0) -> SpaceX:
    a = Q(rng.randint(-3, 0))
    b = a + rng.randint(1, 4)
    pts = sorted({open_rat(rng, a, b) for _ in range(punctures)})
    return SpaceX(a, b, tuple(pts))


def _grid(rng: random.Random, sp: SpaceX, pieces: int) -> list[Q]:
    inner = {open_rat(rng, sp.a, sp.b) for _ in range(pieces - 1)}
    return sorted({sp.a, sp.b, *sp.punctures} | inner)


def piecewise(
    rng: random.Random, sp: SpaceX, pieces: int = 4, jumps: bool = True
) -> PiecewiseFn:
    """Random piecewise-affine function; continuous when ``jumps`` is false."""
    grid = _grid(rng, sp, pieces)
    if not jumps:
        return PiecewiseFn.from_vertices(sp, [(x, rat(rng, -3, 3)) for x in grid])
    laws = []
    for u, v in itertools.pairwise(grid):
        laws.append(Affine.through(u, rat(rng, -3, 3), v, rat(rng, -3, 3)))
    vals = []
    for i, x in enumerate(grid):
        if sp.is_puncture(x):
            vals.append(None)
            continue
        near = [law(x) for law in laws[max(i - 1, 0) : i + 1]]
        vals.append(rng.choice(near + [rat(rng, -3, 3)]))
    return PiecewiseFn(sp, tuple(grid), tuple(laws), tuple(vals))


def _with_values(f: PiecewiseFn, pick) -> PiecewiseFn:
    vals = []
    for x, v in zip(f.breakpoints, f.values):
        if v is None:
            vals.append(None)
        else:
            vals.append(pick(x, [t for t in f.limits(x) if t is not None]))
    return PiecewiseFn(f.space, f.breakpoints, f.laws, tuple(vals))


def lsc(rng: random.Random, sp: SpaceX, pieces: int = 4) -> PiecewiseFn:
    """Lower semicontinuous: at each breakpoint a value at or below both limits."""
    f = piecewise(rng, sp, pieces)
    return _with_values(f, lambda x, lims: min(lims) - rng.choice((0, 0, Q(1, 2))))


def usc(rng: random.Random, sp: SpaceX, pieces: int = 4) -> PiecewiseFn:
    f = piecewise(rng, sp, pieces)
    return _with_values(f, lambda x, lims: max(lims) + rng.choice((0, 0, Q(1, 2))))


def usc_lsc_pair(
    rng: random.Random, sp: SpaceX, strict: bool = False
) -> tuple[PiecewiseFn, PiecewiseFn]:
    """usc f and lsc h with f <= h (f < h when strict); otherwise they touch half the time."""
    f = usc(rng, sp)
    h = lsc(rng, sp)
    h = h - bounds(h - f)[0]
    if strict or rng.random() < 0.5:
        h = h + Q(rng.randint(1, 4), 4)
    return f, h


def quasicontinuous(rng: random.Random, sp: SpaceX, pieces: int = 4) -> PiecewiseFn:
    f = piecewise(rng, sp, pieces)
    return _with_values(f, lambda x, lims: rng.choice(lims))


def minimal_cusco(rng: random.Random, sp: SpaceX, pieces: int = 4) -> CuscoMap:
    """Envelope of a random quasicontinuous function."""
    return envelope(quasicontinuous(rng, sp, pieces))


def cusco(rng: random.Random, sp: SpaceX, pieces: int = 4) -> CuscoMap:
    """Random cusco map, usually not minimal."""
    lower = lsc(rng, sp, pieces)
    upper = usc(rng, sp, pieces)
    upper = upper - bounds(upper - lower)[0] + rng.choice((0, Q(1, 4), 1))
    return CuscoMap(lower, upper)


def covering_region(rng: random.Random, F: CuscoMap, boxes: int = 4) -> OpenRegion:
    """Union of overlapping boxes containing F, plus a stray box."""
    sp = F.space
    cuts = sorted({sp.a, sp.b} | {open_rat(rng, sp.a, sp.b) for _ in range(boxes - 1)})
    out = []
    for i, (u, v) in enumerate(itertools.pairwise(cuts)):
        pad = (v - u) / rng.choice((4, 8))
        lo, hi = u - pad, v + pad
        y_lo = bounds(F.lower, lo, hi)[0] - Q(rng.randint(1, 8), 8)
        y_hi = bounds(F.upper, lo, hi)[1] + Q(rng.randint(1, 8), 8)
        xl = -INF if i == 0 else lo
        xh = INF if i == len(cuts) - 2 else hi
        out.append(Box(xl, xh, y_lo, y_hi))
    top = bounds(F.upper)[1]
    x0 = open_rat(rng, sp.a, sp.b)
    out.append(Box(x0 - 1, x0 + 1, top + 2, top + 3))
    rng.shuffle(out)
    return OpenRegion(tuple(out))


def dilated_tube(rng: random.Random, F: CuscoMap) -> Tube:
    """Tube around F built from continuous bounds at a random distance."""
    lo, hi = bounds(F.lower)[0], bounds(F.upper)[1]
    f = PiecewiseFn.constant(F.space, lo - Q(rng.randint(1, 8), 8))
    g = PiecewiseFn.constant(F.space, hi + Q(rng.randint(1, 8), 8))
    return Tube(f, g)


def graph_point(rng: random.Random, F: CuscoMap) -> tuple[Q, Q]:
    sp = F.space
    while True:
        x = (
            open_rat(rng, sp.a, sp.b)
            if rng.random() < 0.7
            else rng.choice(F.breakpoints())
        )
        if x in sp:
            break
    lo, hi = F.fiber(x)
    return x, lo + (hi - lo) * Q(rng.randint(0, 4), 4)


def lower_box(rng: random.Random, F: CuscoMap) -> OpenRegion:
    """A small box meeting F's graph."""
    x, y = graph_point(rng, F)
    dx, dy = Q(1, rng.choice((4, 8, 16))), Q(1, rng.choice((2, 4, 8)))
    return OpenRegion((Box(x - dx, x + dx, y - dy, y + dy),))


def neighborhood(rng: random.Random, F: CuscoMap, lowers: int = 2) -> VietorisNbhd:
    upper = covering_region(rng, F) if rng.random() < 0.7 else dilated_tube(rng, F)
    return VietorisNbhd(upper, tuple(lower_box(rng, F) for _ in range(lowers)))


def cusco_in_tube(rng: random.Random, T: Tube, extra: int = 3) -> CuscoMap:
    """Random cusco map inside the open tube T."""
    sp = T.space
    grid = sorted(
        set(T.f.breakpoints)
        | set(T.g.breakpoints)
        | {open_rat(rng, sp.a, sp.b) for _ in range(extra)}
    )

    def inside(x, t):
        return T.f(x) + (T.g(x) - T.f(x)) * t

    lo_laws, hi_laws = [], []
    for u, v in itertools.pairwise(grid):
        tu = sorted(Q(rng.randint(1, 15), 16) for _ in range(2))
        tv = sorted(Q(rng.randint(1, 15), 16) for _ in range(2))
        lo_laws.append(Affine.through(u, inside(u, tu[0]), v, inside(v, tv[0])))
        hi_laws.append(Affine.through(u, inside(u, tu[1]), v, inside(v, tv[1])))
    lo_vals, hi_vals = [], []
    for i, x in enumerate(grid):
        side = range(max(i - 1, 0), min(i + 1, len(lo_laws)))
        lo_vals.append(min(lo_laws[j](x) for j in side))
        hi_vals.append(max(hi_laws[j](x) for j in side))
    lower = PiecewiseFn(sp, tuple(grid), tuple(lo_laws), tuple(lo_vals))
    upper = PiecewiseFn(sp, tuple(grid), tuple(hi_laws), tuple(hi_vals))
    return CuscoMap(lower, upper)


def perturbed(rng: random.Random, F: CuscoMap, eps) -> CuscoMap:
    """Random cusco G with L(F, G) < eps."""
    eps = q(eps)
    sp = F.space

    def wiggle(lo, hi):
        pts = [(x, open_rat(rng, lo, hi)) for x in _grid(rng, sp, 4)]
        return PiecewiseFn.from_vertices(sp, pts)

    shift = wiggle(-eps / 2, eps / 2)
    down = wiggle(0, eps / 2)
    up = wiggle(0, eps / 2)
    return CuscoMap(F.lower + shift - down, F.upper + shift + up)
