"""Open regions of X × R, Vietoris neighborhoods, tubes and the metric L."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .domain import (
    INF,
    Affine,
    ExtQ,
    PiecewiseFn,
    Q,
    SpaceX,
    Verdict,
    _bad_point,
    bounds,
    closure_values,
    ext,
    first_violation,
    insert_continuous,
    is_continuous,
    monotone_approx,
    q,
    sup_distance,
)
from .errors import DomainError, PreconditionError
from .setvalued import CuscoMap, S_of, is_minimal

Interval = tuple[ExtQ, ExtQ]


@dataclass(frozen=True)
class Box:
    """Open box (x_lo, x_hi) × (y_lo, y_hi); the x-part is read relative to X."""

    x_lo: ExtQ
    x_hi: ExtQ
    y_lo: ExtQ
    y_hi: ExtQ

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, ext(getattr(self, name)))
        if not self.x_lo < self.x_hi or not self.y_lo < self.y_hi:
            raise DomainError(f"empty box {self}")

    def active(self, x: Q) -> bool:
        return self.x_lo < x < self.x_hi

    def covers(self, u: Q, v: Q) -> bool:
        return self.x_lo <= u and v <= self.x_hi

    @property
    def y(self) -> Interval:
        return self.y_lo, self.y_hi

    def meet(self, other: Box) -> Box | None:
        xl, xh = max(self.x_lo, other.x_lo), min(self.x_hi, other.x_hi)
        yl, yh = max(self.y_lo, other.y_lo), min(self.y_hi, other.y_hi)
        if xl < xh and yl < yh:
            return Box(xl, xh, yl, yh)
        return None

    def __str__(self) -> str:
        return f"({self.x_lo}, {self.x_hi})x({self.y_lo}, {self.y_hi})"


def merge_intervals(ivs: Sequence[Interval]) -> list[Interval]:
    """Connected components of a union of open intervals."""
    out: list[list] = []
    for lo, hi in sorted(ivs):
        if out and lo < out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def _component(comps: Sequence[Interval], lo, hi) -> Interval | None:
    for c, d in comps:
        if c < lo and hi < d:
            return c, d
    return None


@dataclass(frozen=True)
class OpenRegion:
    """Finite union of open boxes in X × R."""

    boxes: tuple[Box, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))

    @classmethod
    def of(cls, *boxes) -> OpenRegion:
        return cls(tuple(b if isinstance(b, Box) else Box(*b) for b in boxes))

    @classmethod
    def band(cls, lo, hi) -> OpenRegion:
        """X × (lo, hi)."""
        return cls((Box(-INF, INF, lo, hi),))

    def fiber(self, x) -> list[Interval]:
        x = q(x)
        return merge_intervals([b.y for b in self.boxes if b.active(x)])

    def cell_fiber(self, u: Q, v: Q) -> list[Interval]:
        return merge_intervals([b.y for b in self.boxes if b.covers(u, v)])

    def x_cuts(self) -> list:
        return [t for b in self.boxes for t in (b.x_lo, b.x_hi) if not math.isinf(t)]

    def clip_y(self, lo, hi) -> OpenRegion:
        out = []
        for b in self.boxes:
            yl, yh = max(b.y_lo, lo), min(b.y_hi, hi)
            if yl < yh:
                out.append(Box(b.x_lo, b.x_hi, yl, yh))
        return OpenRegion(tuple(out))

    def bound_y(self, lo, hi) -> OpenRegion:
        """Replace infinite y-ends by ``lo`` and ``hi``; finite ends are kept."""
        out = []
        for b in self.boxes:
            yl = min(lo, b.y_hi - 1) if math.isinf(b.y_lo) else b.y_lo
            yh = max(hi, b.y_lo + 1) if math.isinf(b.y_hi) else b.y_hi
            out.append(Box(b.x_lo, b.x_hi, yl, yh))
        return OpenRegion(tuple(out))

    def __or__(self, other: OpenRegion) -> OpenRegion:
        return OpenRegion(self.boxes + other.boxes)

    def __and__(self, other: OpenRegion) -> OpenRegion:
        out = []
        for b in self.boxes:
            for c in other.boxes:
                m = b.meet(c)
                if m is not None:
                    out.append(m)
        return OpenRegion(tuple(out))

    def normalized(self, space: SpaceX) -> OpenRegion:
        """Unbounded x-ends past X, then overlapping boxes with equal y-parts merged."""
        rows: dict = {}
        for b in self.boxes:
            xl = -INF if b.x_lo < space.a else b.x_lo
            xh = INF if b.x_hi > space.b else b.x_hi
            if xl >= space.b or xh <= space.a:
                continue
            rows.setdefault(b.y, []).append((xl, xh))
        out = []
        for (yl, yh), xs in rows.items():
            for xl, xh in merge_intervals(xs):
                out.append(Box(xl, xh, yl, yh))
        out.sort(key=lambda b: (b.x_lo, b.y_lo, b.x_hi, b.y_hi))
        return OpenRegion(tuple(out))

    def __str__(self) -> str:
        return " ∪ ".join(str(b) for b in self.boxes) or "∅"


@dataclass(frozen=True)
class Tube:
    """M_{f,g} = {(x, y): f(x) < y < g(x)} for continuous f < g."""

    f: PiecewiseFn
    g: PiecewiseFn

    def __post_init__(self):
        for name, h in (("f", self.f), ("g", self.g)):
            if not is_continuous(h):
                raise PreconditionError(f"tube bound {name} is not continuous")
        x = first_violation(self.f, self.g, strict=True)
        if x is not None:
            raise PreconditionError(f"tube needs f < g; fails at {x}", x)

    @property
    def space(self) -> SpaceX:
        return self.f.space

    def fiber(self, x) -> list[Interval]:
        return [(self.f(x), self.g(x))]

    def closed(self) -> CuscoMap:
        """The closed tube [f, g] as a cusco map."""
        return CuscoMap(self.f, self.g)

    def width_range(self) -> tuple[Q, Q]:
        return bounds(self.g - self.f)

    def x_cuts(self) -> list:
        return []


Region = OpenRegion | Tube


@dataclass(frozen=True)
class VietorisNbhd:
    """upper⁺ ∩ lowers[0]⁻ ∩ ... ∩ lowers[n-1]⁻."""

    upper: Region
    lowers: tuple[OpenRegion, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lowers", tuple(self.lowers))


# -- cell decomposition ----------------------------------------------------


def cells(space: SpaceX, cuts) -> Iterator[tuple]:
    """Points of X and open cells between consecutive cut points, left to right.

    Yields ``(x, None)`` for points and ``(u, v)`` for cells.
    """
    pts = sorted(
        {space.a, space.b, *space.punctures}
        | {q(t) for t in cuts if not math.isinf(t) and space.a < t < space.b}
    )
    for i, x in enumerate(pts):
        if not space.is_puncture(x):
            yield x, None
        if i + 1 < len(pts):
            yield x, pts[i + 1]


def _cuts(F: CuscoMap, W) -> list:
    return F.breakpoints() + W.x_cuts()


def positive_interval(laws: Sequence[Affine], u, v) -> tuple[Q, Q] | None:
    """Sub-interval of (u, v) where every law is strictly positive."""
    lo, hi = u, v
    for law in laws:
        if law.slope == 0:
            if law.intercept <= 0:
                return None
        elif law.slope > 0:
            lo = max(lo, law.root())
        else:
            hi = min(hi, law.root())
    return (lo, hi) if lo < hi else None


def _pick(lo, hi, c, d) -> Q:
    a, b = max(lo, c), min(hi, d)
    return (a + b) / 2 if a < b else lo


# -- membership ------------------------------------------------------------


def _same_domain(F: CuscoMap, W) -> None:
    if isinstance(W, Tube) and W.space != F.space:
        raise DomainError("map and tube live on different spaces")


def contains_map(F: CuscoMap, W: Region) -> Verdict:
    """F ⊆ W fiberwise; the witness on failure is a point of X."""
    _same_domain(F, W)
    if isinstance(W, Tube):
        x = first_violation(W.f, F.lower, strict=True)
        if x is None:
            x = first_violation(F.upper, W.g, strict=True)
        return Verdict(x is None, x)
    for u, v in cells(F.space, _cuts(F, W)):
        if v is None:
            lo, hi = F.fiber(u)
            if _component(W.fiber(u), lo, hi) is None:
                return Verdict(False, u)
            continue
        ll, lu = F.lower.law_at(u), F.upper.law_at(u)
        mid = (u + v) / 2
        comp = _component(W.cell_fiber(u, v), ll(mid), lu(mid))
        if comp is None:
            return Verdict(False, mid)
        c, d = comp
        if not math.isinf(c):
            w = _bad_point(ll.shifted(-c), u, v, strict=True)
            if w is not None:
                return Verdict(False, w)
        if not math.isinf(d):
            w = _bad_point(Affine(-lu.slope, d - lu.intercept), u, v, strict=True)
            if w is not None:
                return Verdict(False, w)
    return Verdict(True, None)


def meets(F: CuscoMap, W: OpenRegion) -> Verdict:
    """F ∩ W ≠ ∅; the witness on success is a point (x, y) of the intersection."""
    for u, v in cells(F.space, _cuts(F, W)):
        if v is None:
            lo, hi = F.fiber(u)
            for b in W.boxes:
                if b.active(u) and b.y_lo < hi and lo < b.y_hi:
                    return Verdict(True, (u, _pick(lo, hi, b.y_lo, b.y_hi)))
            continue
        ll, lu = F.lower.law_at(u), F.upper.law_at(u)
        for b in W.boxes:
            if not b.covers(u, v):
                continue
            cons = []
            if not math.isinf(b.y_lo):
                cons.append(lu.shifted(-b.y_lo))
            if not math.isinf(b.y_hi):
                cons.append(Affine(-ll.slope, b.y_hi - ll.intercept))
            iv = positive_interval(cons, u, v)
            if iv is not None:
                x = (iv[0] + iv[1]) / 2
                return Verdict(True, (x, _pick(ll(x), lu(x), b.y_lo, b.y_hi)))
    return Verdict(False, None)


def member_nbhd(F: CuscoMap, N: VietorisNbhd) -> Verdict:
    """Witness on failure: ``("upper", x)`` or ``("lower", i)``."""
    inside = contains_map(F, N.upper)
    if not inside:
        return Verdict(False, ("upper", inside.witness))
    for i, W in enumerate(N.lowers):
        if not meets(F, W):
            return Verdict(False, ("lower", i))
    return Verdict(True, None)


def empty_fiber_point(W: OpenRegion, space: SpaceX) -> Q | None:
    """A point of X over which W has an empty fiber (so no cusco map fits in W)."""
    for u, v in cells(space, W.x_cuts()):
        if v is None:
            if not W.fiber(u):
                return u
        elif not W.cell_fiber(u, v):
            return (u + v) / 2
    return None


def region_within_tube(W: Region, T: Tube) -> Verdict:
    """Open inclusion W ⊆ M_{f,g}, decided box by box."""
    if isinstance(W, Tube):
        x = first_violation(T.f, W.f) or first_violation(W.g, T.g)
        return Verdict(x is None, x)
    sp = T.space
    for b in W.boxes:
        lo, hi = max(b.x_lo, sp.a), min(b.x_hi, sp.b)
        if lo >= hi:
            continue
        if math.isinf(b.y_lo) or math.isinf(b.y_hi):
            return Verdict(False, b)
        f_vals = closure_values(T.f, lo, hi, closed=False)
        g_vals = closure_values(T.g, lo, hi, closed=False)
        for x, inside in ((sp.a, b.x_lo < sp.a), (sp.b, b.x_hi > sp.b)):
            if inside and x in sp:
                f_vals.append(T.f(x))
                g_vals.append(T.g(x))
        if max(f_vals) > b.y_lo or min(g_vals) < b.y_hi:
            return Verdict(False, b)
    return Verdict(True, None)


# -- Lemma-style constructions ----------------------------------------------


def _require_inside(F: CuscoMap, W: Region) -> None:
    inside = contains_map(F, W)
    if not inside:
        raise PreconditionError(
            f"F is not contained in W (fails at x = {inside.witness})", inside.witness
        )


def connectedize(W: Region, F: CuscoMap) -> Region:
    """Open G with one-interval fibers and F ⊆ G ⊆ W."""
    _require_inside(F, W)
    if isinstance(W, Tube):
        return W
    space = F.space
    items = list(cells(space, _cuts(F, W)))
    boxes, width = [], {}
    for u, v in items:
        if v is None:
            continue
        mid = (u + v) / 2
        c, d = _component(
            W.cell_fiber(u, v), F.lower.law_at(u)(mid), F.upper.law_at(u)(mid)
        )
        boxes.append(Box(u, v, c, d))
        width[u] = min(width.get(u, v - u), v - u)
        width[v] = min(width.get(v, v - u), v - u)
    for u, v in items:
        if v is not None:
            continue
        lo, hi = F.fiber(u)
        c, d = _component(W.fiber(u), lo, hi)
        r = width[u] / 2
        xl = -INF if u == space.a else u - r
        xh = INF if u == space.b else u + r
        boxes.append(Box(xl, xh, c, d))
    return OpenRegion(tuple(boxes)).normalized(space)


def clamp_band(F: CuscoMap) -> tuple[Q, Q]:
    """Horizontal band (min lower - 1, max upper + 1) around F."""
    return bounds(F.lower)[0] - 1, bounds(F.upper)[1] + 1


def fiber_profile(G: OpenRegion, space: SpaceX) -> tuple[PiecewiseFn, PiecewiseFn]:
    """(inf, sup) of the fibers of a bounded region with one-interval fibers."""
    bps, lo_laws, hi_laws, lo_vals, hi_vals = [], [], [], [], []
    for u, v in cells(space, G.x_cuts()):
        if v is None:
            ((c, d),) = G.fiber(u)
            bps.append(u)
            lo_vals.append(c)
            hi_vals.append(d)
            continue
        if space.is_puncture(u):
            bps.append(u)
            lo_vals.append(None)
            hi_vals.append(None)
        ((c, d),) = G.cell_fiber(u, v)
        lo_laws.append(Affine.const(c))
        hi_laws.append(Affine.const(d))
    if bps[-1] != space.b:
        bps.append(space.b)
        lo_vals.append(None)
        hi_vals.append(None)
    p = PiecewiseFn(space, tuple(bps), tuple(lo_laws), tuple(lo_vals))
    r = PiecewiseFn(space, tuple(bps), tuple(hi_laws), tuple(hi_vals))
    return p, r


def band_profile(F: CuscoMap, W: Region) -> tuple[PiecewiseFn, PiecewiseFn]:
    """usc p and lsc r, both bounded, with p < lower_F <= upper_F < r and (p, r) ⊆ W."""
    _require_inside(F, W)
    if isinstance(W, Tube):
        return W.f, W.g
    G = connectedize(W, F).bound_y(*clamp_band(F))
    return fiber_profile(G, F.space)


def tube_base_refine(F: CuscoMap, W: Region) -> Tube:
    """Tube M with F ∈ M⁺ and M inside the connected part of W around F."""
    p, r = band_profile(F, W)
    g = insert_continuous(F.upper, r, strict=True)
    f = insert_continuous(p, F.lower, strict=True)
    return Tube(f, g)


@dataclass(frozen=True)
class Refinement:
    """Inner tube M (the answer) and the open tube W₀ with cl M ⊆ W₀ ⊆ W."""

    tube: Tube
    outer: Tube

    @property
    def closed(self) -> CuscoMap:
        return self.tube.closed()


def regular_refine(F: CuscoMap, W: Region) -> Refinement:
    outer = tube_base_refine(F, W)
    f = insert_continuous(outer.f, F.lower, strict=True)
    g = insert_continuous(F.upper, outer.g, strict=True)
    out = Refinement(Tube(f, g), outer)
    check = contains_map(out.closed, W)
    if not check:
        raise AssertionError(f"closed tube escapes W at {check.witness}")
    return out


# -- metric L ------------------------------------------------------------


def hausdorff_fiber(I: Interval, J: Interval) -> Q:
    (p, r), (s, t) = (tuple(map(q, I)), tuple(map(q, J)))
    if p > r or s > t:
        raise PreconditionError("intervals must be nonempty")
    return max(abs(p - s), abs(r - t))


def L_distance(F: CuscoMap, G: CuscoMap) -> Q:
    """sup over X of the Hausdorff distance between the fibers."""
    return max(sup_distance(F.lower, G.lower), sup_distance(F.upper, G.upper))


def ball_radius_upper(F: CuscoMap, W: Region) -> Q:
    """ε > 0 with L(F, G) < ε ⇒ G ⊆ W."""
    if not F.space.compact:
        raise PreconditionError("X must be compact (no punctures)")
    M = tube_base_refine(F, W)
    return min(bounds(F.lower - M.f)[0], bounds(M.g - F.upper)[0])


def lower_ball(F: CuscoMap, W: OpenRegion) -> tuple[Q, tuple]:
    hit = meets(F, W)
    if not hit:
        raise PreconditionError("F does not meet W")
    x, y = hit.witness
    ((c, d),) = [cd for cd in W.fiber(x) if cd[0] < y < cd[1]]
    eps = min(y - c, d - y)
    return (Q(1) if math.isinf(eps) else eps), (x, y)


def ball_radius_lower(F: CuscoMap, W: OpenRegion) -> Q:
    """ε > 0 with L(F, G) < ε ⇒ G meets W."""
    return lower_ball(F, W)[0]


# -- separation -----------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    x: Q
    around_f: Interval
    around_g: Interval
    region_f: OpenRegion
    region_g: OpenRegion


def _split_region(x: Q, lo, hi) -> OpenRegion:
    return OpenRegion.of((-INF, x, -INF, INF), (x, INF, -INF, INF), (-INF, INF, lo, hi))


def separate(F: CuscoMap, G: CuscoMap) -> Separation:
    """Disjoint τ_V⁺-neighborhoods of two distinct minimal maps."""
    if F == G:
        raise PreconditionError("F and G are equal")
    for H in (F, G):
        if not is_minimal(H):
            raise PreconditionError("separate needs minimal cusco maps")
    common = S_of(F) & S_of(G)
    x = None
    grid = sorted(set(F.breakpoints()) | set(G.breakpoints()))
    for u, v in itertools.pairwise(grid):
        lf, lg = F.lower.law_at(u), G.lower.law_at(u)
        if lf != lg:
            mid = (u + v) / 2
            x = mid if lf(mid) != lg(mid) else (u + mid) / 2
            break
    if x is None or x not in common:
        raise PreconditionError("F and G agree on a dense set, so they are equal")
    yf, yg = F.lower(x), G.lower(x)
    r = abs(yf - yg) / 4
    U, V = (yf - r, yf + r), (yg - r, yg + r)
    out = Separation(x, U, V, _split_region(x, *U), _split_region(x, *V))
    if not contains_map(F, out.region_f) or not contains_map(G, out.region_g):
        raise AssertionError("separating regions miss their maps")
    if empty_fiber_point(out.region_f & out.region_g, F.space) is None:
        raise AssertionError("separating regions admit a common map")
    return out


# -- topology comparison witnesses ----------------------------------------------


@dataclass(frozen=True)
class UpperWitness:
    """G = (U × J) ∪ ((X \\ cl U') × R) with h(cl U') ⊂ J and U × J ⊆ W."""

    region: OpenRegion
    x: Q
    box: Box
    closed_radius: Q


def upper_witness_for_lower(h: PiecewiseFn, W: OpenRegion) -> UpperWitness:
    """An upper-Vietoris region around h all of whose continuous members meet W."""
    if not is_continuous(h):
        raise PreconditionError("h must be continuous")
    H = CuscoMap.single(h)
    hit = meets(H, W)
    if not hit:
        raise PreconditionError("h does not meet W")
    x0, y0 = hit.witness
    box = next(b for b in W.boxes if b.active(x0) and b.y_lo < y0 < b.y_hi)
    sp = h.space
    span = sp.b - sp.a
    reach = min(x0 - box.x_lo, box.x_hi - x0, 2 * span)
    r = reach / 2 if not math.isinf(reach) else span
    while True:
        lo, hi = bounds(h, x0 - r, x0 + r)
        if box.y_lo < lo and hi < box.y_hi:
            break
        r /= 2
    u_lo = -INF if box.x_lo < sp.a else box.x_lo
    u_hi = INF if box.x_hi > sp.b else box.x_hi
    parts = [Box(u_lo, u_hi, box.y_lo, box.y_hi)]
    if x0 - r > sp.a:
        parts.append(Box(-INF, x0 - r, -INF, INF))
    if x0 + r < sp.b:
        parts.append(Box(x0 + r, INF, -INF, INF))
    region = OpenRegion(tuple(parts))
    if not contains_map(H, region):
        raise AssertionError("h escapes its own witness region")
    return UpperWitness(region, x0, parts[0], r)


def local_base_tube(F: CuscoMap, n: int, margin=0) -> Tube:
    """n-th member of a decreasing tube base at F (cl V_{n+1} ⊆ V_n)."""
    if not F.space.compact:
        raise PreconditionError("X must be compact (no punctures)")
    m = q(margin)
    return Tube(
        monotone_approx(F.lower, n, "up") - m, monotone_approx(F.upper, n, "down") + m
    )
