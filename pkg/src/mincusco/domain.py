"""Exact piecewise-affine functions on a punctured compact interval.

Everything here works over exact rationals (``gmpy2.mpq``, aliased ``Q``); ``math.inf``
is the only float that ever appears, and only as an unbounded endpoint.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from gmpy2 import mpq

from .errors import DomainError, PreconditionError

Q = mpq
ExtQ = Q | float
INF = math.inf


def q(value) -> Q:
    """Coerce ints, Fractions, strings like ``"-3/4"`` and finite floats to an exact rational."""
    if type(value) is Q:
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"{value!r} is not a finite rational")
    if isinstance(value, Fraction):
        return Q(value.numerator, value.denominator)
    if isinstance(value, str):
        return Q(Fraction(value.strip()))
    return Q(value)


def ext(value) -> ExtQ:
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "-inf"):
        return -INF if value.strip().startswith("-") else INF
    if isinstance(value, float) and math.isinf(value):
        return value
    return q(value)


def ext_add(x: ExtQ, y: ExtQ) -> ExtQ:
    if math.isinf(x) and math.isinf(y) and (x > 0) != (y > 0):
        raise DomainError("inf - inf is undefined")
    return x + y


class Affine(NamedTuple):
    slope: Q
    intercept: Q

    def __call__(self, x: Q) -> Q:
        return self.slope * x + self.intercept

    @classmethod
    def const(cls, c) -> Affine:
        return cls(Q(0), q(c))

    @classmethod
    def through(cls, x0: Q, y0: Q, x1: Q, y1: Q) -> Affine:
        s = (y1 - y0) / (x1 - x0)
        return cls(s, y0 - s * x0)

    def plus(self, other: Affine) -> Affine:
        return Affine(self.slope + other.slope, self.intercept + other.intercept)

    def minus(self, other: Affine) -> Affine:
        return Affine(self.slope - other.slope, self.intercept - other.intercept)

    def scaled(self, c: Q) -> Affine:
        return Affine(self.slope * c, self.intercept * c)

    def shifted(self, c: Q) -> Affine:
        return Affine(self.slope, self.intercept + c)

    def root(self) -> Q | None:
        if self.slope == 0:
            return None
        return -self.intercept / self.slope


@dataclass(frozen=True)
class SpaceX:
    """X = [a, b] minus finitely many interior punctures."""

    a: Q
    b: Q
    punctures: tuple[Q, ...] = ()
    _holes: frozenset = field(
        default=frozenset(), init=False, repr=False, compare=False
    )

    def __post_init__(self):
        a, b = q(self.a), q(self.b)
        if not a < b:
            raise DomainError(f"need a < b, got [{a}, {b}]")
        ps = tuple(sorted({q(p) for p in self.punctures}))
        if len(ps) != len(tuple(self.punctures)):
            raise DomainError("punctures must be pairwise distinct")
        for p in ps:
            if not a < p < b:
                raise DomainError(f"puncture {p} is not interior to [{a}, {b}]", p)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "punctures", ps)
        object.__setattr__(self, "_holes", frozenset(ps))

    @property
    def compact(self) -> bool:
        return not self.punctures

    def __contains__(self, x) -> bool:
        x = q(x)
        return self.a <= x <= self.b and x not in self._holes

    def is_puncture(self, x: Q) -> bool:
        return x in self._holes

    def with_punctures(self, extra: Iterable) -> SpaceX:
        extra = {q(p) for p in extra} - self._holes
        return SpaceX(self.a, self.b, tuple(sorted(self._holes | extra)))

    def filled(self) -> SpaceX:
        return SpaceX(self.a, self.b)

    def __str__(self) -> str:
        holes = "".join(f" \\ {{{p}}}" for p in self.punctures)
        return f"[{self.a}, {self.b}]{holes}"


def _canonical(space: SpaceX, bps: list, laws: list, values: list):
    """Drop interior breakpoints that carry no information."""
    out_b, out_l, out_v = [bps[0]], [], [values[0]]
    cur = laws[0]
    for i in range(1, len(bps) - 1):
        x, nxt = bps[i], laws[i]
        if not space.is_puncture(x) and nxt == cur and values[i] == cur(x):
            continue
        out_l.append(cur)
        out_b.append(x)
        out_v.append(values[i])
        cur = nxt
    out_l.append(cur)
    out_b.append(bps[-1])
    out_v.append(values[-1])
    return tuple(out_b), tuple(out_l), tuple(out_v)


@dataclass(frozen=True)
class PiecewiseFn:
    """Piecewise-affine real function on ``space``.

    ``laws[i]`` holds on the open piece ``(breakpoints[i], breakpoints[i+1])``;
    ``values[i]`` is the value at ``breakpoints[i]`` (``None`` exactly at punctures).
    Instances are kept in a canonical form, so ``==`` is functional equality.
    """

    space: SpaceX
    breakpoints: tuple[Q, ...]
    laws: tuple[Affine, ...]
    values: tuple[Q | None, ...]

    def __post_init__(self):
        sp = self.space
        bps = [q(x) for x in self.breakpoints]
        laws = [Affine(q(s), q(c)) for s, c in self.laws]
        vals = [None if v is None else q(v) for v in self.values]
        if len(bps) < 2 or len(laws) != len(bps) - 1 or len(vals) != len(bps):
            raise DomainError(
                "malformed piecewise data: need m+1 breakpoints, m laws, m+1 values"
            )
        if bps[0] != sp.a or bps[-1] != sp.b:
            raise DomainError("breakpoints must start at a and end at b")
        if any(x >= y for x, y in itertools.pairwise(bps)):
            raise DomainError("breakpoints must be strictly increasing")
        present = set(bps)
        for p in sp.punctures:
            if p not in present:
                raise DomainError(f"puncture {p} must be a breakpoint", p)
        for x, v in zip(bps, vals):
            if sp.is_puncture(x) != (v is None):
                raise DomainError(f"value at {x} must be given iff {x} is in X", x)
        b, l, v = _canonical(sp, bps, laws, vals)
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "laws", l)
        object.__setattr__(self, "values", v)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, space: SpaceX, c) -> PiecewiseFn:
        return cls.affine(space, 0, c)

    @classmethod
    def affine(cls, space: SpaceX, slope, intercept) -> PiecewiseFn:
        law = Affine(q(slope), q(intercept))
        bps = (space.a, *space.punctures, space.b)
        vals = tuple(None if space.is_puncture(x) else law(x) for x in bps)
        return cls(space, bps, (law,) * (len(bps) - 1), vals)

    @classmethod
    def step(cls, space: SpaceX, at, left, right, value=None) -> PiecewiseFn:
        """Constant ``left`` below ``at``, ``right`` above; ``value`` at ``at`` itself."""
        at = q(at)
        if not space.a < at < space.b:
            raise DomainError(f"jump point {at} must be interior", at)
        bps = sorted({space.a, space.b, at, *space.punctures})
        laws, vals = [], []
        for x, y in itertools.pairwise(bps):
            laws.append(Affine.const(left if y <= at else right))
        for x in bps:
            if space.is_puncture(x):
                vals.append(None)
            elif x == at:
                if value is None:
                    raise DomainError("value at the jump point is required", at)
                vals.append(q(value))
            else:
                vals.append(q(left) if x < at else q(right))
        return cls(space, tuple(bps), tuple(laws), tuple(vals))

    @classmethod
    def from_vertices(cls, space: SpaceX, points: Sequence[tuple]) -> PiecewiseFn:
        """Continuous piecewise-linear interpolation, extended constantly past the ends."""
        pts = sorted((q(x), q(y)) for x, y in points)
        if not pts:
            raise DomainError("at least one vertex is required")
        if any(p[0] == r[0] for p, r in itertools.pairwise(pts)):
            raise DomainError("vertex abscissae must be distinct")
        inner = [x for x, _ in pts if space.a < x < space.b]
        bps = sorted({space.a, space.b, *space.punctures, *inner})
        laws = []
        for u, v in itertools.pairwise(bps):
            mid = (u + v) / 2
            laws.append(_interp_law(pts, mid))
        vals = [None if space.is_puncture(x) else _interp_law(pts, x)(x) for x in bps]
        return cls(space, tuple(bps), tuple(laws), tuple(vals))

    # -- evaluation -------------------------------------------------------

    def _bp_index(self, x: Q) -> int | None:
        i = bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return i
        return None

    def law_at(self, x: Q) -> Affine:
        """Law of the piece containing x (the piece to the right when x is a breakpoint)."""
        i = bisect_right(self.breakpoints, x) - 1
        return self.laws[min(max(i, 0), len(self.laws) - 1)]

    def __call__(self, x) -> Q:
        x = q(x)
        if x not in self.space:
            raise DomainError(f"{x} is not in X = {self.space}", x)
        i = self._bp_index(x)
        if i is not None:
            return self.values[i]
        return self.law_at(x)(x)

    def value_or_none(self, x: Q) -> Q | None:
        return self(x) if x in self.space else None

    def limits(self, x) -> tuple[Q | None, Q | None]:
        """Left and right limits at x; ``None`` where the side does not exist."""
        x = q(x)
        if not self.space.a <= x <= self.space.b:
            raise DomainError(f"{x} is outside [{self.space.a}, {self.space.b}]", x)
        i = self._bp_index(x)
        if i is None:
            v = self.law_at(x)(x)
            return v, v
        left = self.laws[i - 1](x) if i > 0 else None
        right = self.laws[i](x) if i < len(self.laws) else None
        return left, right

    def is_continuous_at(self, x: Q) -> bool:
        if self.space.is_puncture(x):
            return True
        v = self(x)
        return all(lim is None or lim == v for lim in self.limits(x))

    def pieces(self):
        for i, law in enumerate(self.laws):
            yield self.breakpoints[i], self.breakpoints[i + 1], law

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PiecewiseFn):
            return pointwise(lambda u, v: u.plus(v), lambda u, v: u + v, self, other)
        c = q(other)
        return _map(self, lambda law: law.shifted(c), lambda v: v + c)

    __radd__ = __add__

    def __neg__(self):
        return _map(self, lambda law: law.scaled(Q(-1)), lambda v: -v)

    def __sub__(self, other):
        if isinstance(other, PiecewiseFn):
            return pointwise(lambda u, v: u.minus(v), lambda u, v: u - v, self, other)
        return self + (-q(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> PiecewiseFn:
        c = q(c)
        return _map(self, lambda law: law.scaled(c), lambda v: v * c)

    def punctured(self, points: Iterable) -> PiecewiseFn:
        """Restriction to X minus ``points`` (the cofinite subsets used for selections)."""
        pts = {q(p) for p in points if self.space.a < q(p) < self.space.b}
        space = self.space.with_punctures(pts)
        grid = sorted(set(self.breakpoints) | pts)
        laws = [self.law_at(u) for u in grid[:-1]]
        vals = [None if space.is_puncture(x) else self(x) for x in grid]
        return PiecewiseFn(space, tuple(grid), tuple(laws), tuple(vals))

    def on_space(self, space: SpaceX, fill: dict | None = None) -> PiecewiseFn:
        """Re-home onto a space with fewer punctures, giving values at the filled holes."""
        fill = fill or {}
        if (space.a, space.b) != (self.space.a, self.space.b) or not set(
            space.punctures
        ) <= set(self.space.punctures):
            raise DomainError("target space must fill a subset of the punctures")
        vals = []
        for x, v in zip(self.breakpoints, self.values):
            if v is None and not space.is_puncture(x):
                if x not in fill:
                    raise DomainError(f"no value supplied for filled point {x}", x)
                v = q(fill[x])
            vals.append(v)
        return PiecewiseFn(space, self.breakpoints, self.laws, tuple(vals))

    def __str__(self) -> str:
        parts = []
        for (u, v, law), val in zip(self.pieces(), self.values):
            parts.append(f"{u}:{val}")
            parts.append(f"({law.slope}x+{law.intercept})")
        parts.append(f"{self.space.b}:{self.values[-1]}")
        return " ".join(parts)


def _interp_law(pts, x: Q) -> Affine:
    if x <= pts[0][0]:
        return Affine.const(pts[0][1])
    if x >= pts[-1][0]:
        return Affine.const(pts[-1][1])
    i = bisect_right([p[0] for p in pts], x)
    (x0, y0), (x1, y1) = pts[i - 1], pts[i]
    return Affine.through(x0, y0, x1, y1)


def _map(f: PiecewiseFn, law_op, val_op) -> PiecewiseFn:
    return PiecewiseFn(
        f.space,
        f.breakpoints,
        tuple(law_op(law) for law in f.laws),
        tuple(None if v is None else val_op(v) for v in f.values),
    )


def same_space(*fns) -> SpaceX:
    space = fns[0].space
    for f in fns[1:]:
        if f.space != space:
            raise DomainError(f"domain mismatch: {space} vs {f.space}")
    return space


def grid_of(*fns: PiecewiseFn, extra: Iterable = ()) -> list[Q]:
    """Common subdivision of [a, b]: all breakpoints plus interior extra points."""
    space = same_space(*fns)
    pts = set()
    for f in fns:
        pts.update(f.breakpoints)
    pts.update(x for x in extra if space.a < x < space.b)
    return sorted(pts)


def pointwise(law_op, val_op, *fns: PiecewiseFn) -> PiecewiseFn:
    space = same_space(*fns)
    grid = grid_of(*fns)
    laws = [law_op(*(f.law_at(u) for f in fns)) for u in grid[:-1]]
    vals = [
        None if space.is_puncture(x) else val_op(*(f(x) for f in fns)) for x in grid
    ]
    return PiecewiseFn(space, tuple(grid), tuple(laws), tuple(vals))


def _crossings(fns: Sequence[PiecewiseFn], grid: list) -> list[Q]:
    out = set()
    for u, v in itertools.pairwise(grid):
        laws = [f.law_at(u) for f in fns]
        for i in range(len(laws)):
            for j in range(i + 1, len(laws)):
                r = laws[i].minus(laws[j]).root()
                if r is not None and u < r < v:
                    out.add(r)
    return sorted(out)


def _extremum(fns: Sequence[PiecewiseFn], pick) -> PiecewiseFn:
    space = same_space(*fns)
    base = grid_of(*fns)
    grid = grid_of(*fns, extra=_crossings(fns, base))
    laws = []
    for u, v in itertools.pairwise(grid):
        mid = (u + v) / 2
        cands = [f.law_at(u) for f in fns]
        laws.append(pick(cands, key=lambda law: law(mid)))
    vals = [None if space.is_puncture(x) else pick(f(x) for f in fns) for x in grid]
    return PiecewiseFn(space, tuple(grid), tuple(laws), tuple(vals))


def fmax(*fns: PiecewiseFn) -> PiecewiseFn:
    return _extremum(fns, max)


def fmin(*fns: PiecewiseFn) -> PiecewiseFn:
    return _extremum(fns, min)


# -- order and extrema ----------------------------------------------------


def _bad_point(law: Affine, u: Q, v: Q, strict: bool) -> Q | None:
    """A point of (u, v) where ``law`` is negative (or non-positive when strict)."""
    lu, lv = law(u), law(v)
    if strict:
        ok = lu >= 0 and lv >= 0 and (lu > 0 or lv > 0)
    else:
        ok = lu >= 0 and lv >= 0
    if ok:
        return None
    mid = (u + v) / 2
    if law(mid) < 0 or (strict and law(mid) == 0):
        return mid
    r = law.root()
    # law(mid) > 0 here, so the failing side ends at the root
    if lu < 0 or (strict and lu == 0):
        return (u + r) / 2 if r is not None and u < r else u + (v - u) / 4
    return (r + v) / 2 if r is not None and r < v else v - (v - u) / 4


def first_violation(f: PiecewiseFn, g, strict: bool = False) -> Q | None:
    """First x in X with not f(x) <= g(x) (``<`` when strict); ``None`` if the order holds.

    Either argument may be a scalar.
    """
    if not isinstance(f, PiecewiseFn):
        f = PiecewiseFn.constant(g.space, f)
    if not isinstance(g, PiecewiseFn):
        g = PiecewiseFn.constant(f.space, g)
    space = same_space(f, g)
    grid = grid_of(f, g)
    for i, x in enumerate(grid):
        if not space.is_puncture(x):
            fx, gx = f(x), g(x)
            if fx > gx or (strict and fx == gx):
                return x
        if i + 1 < len(grid):
            diff = g.law_at(x).minus(f.law_at(x))
            w = _bad_point(diff, x, grid[i + 1], strict)
            if w is not None:
                return w
    return None


def le(f, g, strict: bool = False) -> bool:
    return first_violation(f, g, strict) is None


def closure_values(f: PiecewiseFn, lo=None, hi=None, closed: bool = True):
    """Values whose min/max are the inf/sup of f over X meet (lo, hi) or [lo, hi]."""
    sp = f.space
    lo = sp.a if lo is None else max(q(lo), sp.a)
    hi = sp.b if hi is None else min(q(hi), sp.b)
    if lo > hi:
        return []
    out = []
    if lo == hi:
        if closed and lo in sp:
            out.append(f(lo))
        return out
    for x in (lo, hi):
        if closed and x in sp:
            out.append(f(x))
    _, r = f.limits(lo)
    out.append(r)
    left, _ = f.limits(hi)
    out.append(left)
    i = bisect_right(f.breakpoints, lo)
    while i < len(f.breakpoints) and f.breakpoints[i] < hi:
        x = f.breakpoints[i]
        left, right = f.limits(x)
        out.extend((left, right))
        if f.values[i] is not None:
            out.append(f.values[i])
        i += 1
    return out


def bounds(f: PiecewiseFn, lo=None, hi=None, closed: bool = True) -> tuple[Q, Q]:
    """(inf, sup) of f over X restricted to [lo, hi] (or (lo, hi) when not closed)."""
    vals = closure_values(f, lo, hi, closed)
    if not vals:
        raise DomainError("empty range")
    return min(vals), max(vals)


# -- classification -------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome plus the evidence behind it."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class SemicontinuityClass:
    kind: str  # "continuous" | "lsc-only" | "usc-only" | "neither"
    lsc_failures: tuple[Q, ...] = ()
    usc_failures: tuple[Q, ...] = ()

    @property
    def lsc(self) -> bool:
        return not self.lsc_failures

    @property
    def usc(self) -> bool:
        return not self.usc_failures

    @property
    def witnesses(self) -> tuple[Q, ...]:
        return tuple(sorted(set(self.lsc_failures) | set(self.usc_failures)))


def eval(f: PiecewiseFn, x) -> Q:
    return f(x)


def one_sided_limits(f: PiecewiseFn, x) -> tuple[Q | None, Q | None]:
    return f.limits(x)


def _existing(lims):
    return [v for v in lims if v is not None]


def semicontinuity_class(f: PiecewiseFn) -> SemicontinuityClass:
    lsc_bad, usc_bad = [], []
    for x, v in zip(f.breakpoints, f.values):
        if v is None:
            continue
        lims = _existing(f.limits(x))
        if v > min(lims):
            lsc_bad.append(x)
        if v < max(lims):
            usc_bad.append(x)
    if not lsc_bad and not usc_bad:
        kind = "continuous"
    elif not lsc_bad:
        kind = "lsc-only"
    elif not usc_bad:
        kind = "usc-only"
    else:
        kind = "neither"
    return SemicontinuityClass(kind, tuple(lsc_bad), tuple(usc_bad))


def is_continuous(f: PiecewiseFn) -> bool:
    return semicontinuity_class(f).kind == "continuous"


def is_lsc(f: PiecewiseFn) -> bool:
    return semicontinuity_class(f).lsc


def is_usc(f: PiecewiseFn) -> bool:
    return semicontinuity_class(f).usc


def is_quasicontinuous(f: PiecewiseFn) -> Verdict:
    """Exact test: at each point of X the value must equal some one-sided limit."""
    bad = tuple(
        x
        for x, v in zip(f.breakpoints, f.values)
        if v is not None and v not in _existing(f.limits(x))
    )
    return Verdict(not bad, bad)


def is_subcontinuous(f: PiecewiseFn, space: SpaceX | None = None) -> Verdict:
    """Finitely many affine pieces on a bounded interval: the witness is a bound on |f|."""
    if space is not None and (space.a, space.b) != (f.space.a, f.space.b):
        raise DomainError("f must be densely defined on the given space")
    if not f.laws:
        raise PreconditionError("empty piece list")
    lo, hi = bounds(f)
    return Verdict(True, max(abs(lo), abs(hi)))


def sup_distance(f: PiecewiseFn, g: PiecewiseFn) -> Q:
    """sup over X of |f - g|, exact."""
    d = f - g
    lo, hi = bounds(d)
    return max(abs(lo), abs(hi))


# -- insertion and approximation ------------------------------------------


def _splice(space: SpaceX, grid, mids, gvals, delta) -> PiecewiseFn:
    bps, laws, vals = [], [], []
    for i, (u, v) in enumerate(itertools.pairwise(grid)):
        mid = mids[i]
        gu, gv = gvals[i], gvals[i + 1]
        left_cut = gu is not None and mid(u) != gu
        right_cut = gv is not None and mid(v) != gv
        pts = [(u, gu if left_cut else mid(u))]
        if left_cut:
            pts.append((u + delta, mid(u + delta)))
        if right_cut and v - delta > pts[-1][0]:
            pts.append((v - delta, mid(v - delta)))
        pts.append((v, gv if right_cut else mid(v)))
        bps.append(u)
        vals.append(gu)
        for (x0, y0), (x1, y1) in itertools.pairwise(pts):
            if x0 != u:
                bps.append(x0)
                vals.append(y0)
            laws.append(Affine.through(x0, y0, x1, y1))
    bps.append(grid[-1])
    vals.append(gvals[-1])
    return PiecewiseFn(space, tuple(bps), tuple(laws), tuple(vals))


def insert_continuous(
    f: PiecewiseFn, h: PiecewiseFn, strict: bool = False
) -> PiecewiseFn:
    """Continuous g with f <= g <= h for usc f <= lsc h (strict inequalities when asked).

    Midline of f and h on every piece; at each breakpoint the midpoint of f(b) and
    h(b), joined to the midlines by linear splices of radius delta.
    """
    space = same_space(f, h)
    cf, ch = semicontinuity_class(f), semicontinuity_class(h)
    if not cf.usc:
        raise PreconditionError(
            "lower function is not upper semicontinuous", cf.usc_failures
        )
    if not ch.lsc:
        raise PreconditionError(
            "upper function is not lower semicontinuous", ch.lsc_failures
        )
    bad = first_violation(f, h, strict)
    if bad is not None:
        what = "f < h" if strict else "f <= h"
        raise PreconditionError(f"{what} violated at x = {bad}", bad)
    grid = grid_of(f, h)
    half = Q(1, 2)
    mids = [f.law_at(u).plus(h.law_at(u)).scaled(half) for u in grid[:-1]]
    gvals = [None if space.is_puncture(x) else (f(x) + h(x)) * half for x in grid]
    delta = min(v - u for u, v in itertools.pairwise(grid)) * half
    for _ in range(64):
        g = _splice(space, grid, mids, gvals, delta)
        if le(f, g, strict) and le(g, h, strict):
            return g
        delta *= half
    raise AssertionError(
        "splice radius did not converge"
    )  # unreachable for usc <= lsc input


def monotone_approx(f: PiecewiseFn, n: int, direction: str = "up") -> PiecewiseFn:
    """n-th continuous approximant: increasing to lsc f (``up``) or decreasing to usc f (``down``)."""
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    if direction == "down":
        if not is_usc(f):
            raise PreconditionError(
                "direction=down needs an upper semicontinuous function"
            )
        return -monotone_approx(-f, n, "up")
    if direction != "up":
        raise PreconditionError(f"unknown direction {direction!r}")
    cls = semicontinuity_class(f)
    if not cls.lsc:
        raise PreconditionError(
            "direction=up needs a lower semicontinuous function", cls.lsc_failures
        )
    space, shave = f.space, Q(1, n)
    bps = f.breakpoints
    drop_left, drop_right, extra = {}, {}, set()
    for i, (x, v) in enumerate(zip(bps, f.values)):
        if v is None:
            continue
        left, right = f.limits(x)
        if left is not None and left > v:
            w = min(shave, (x - bps[i - 1]) / 2)
            drop_left[x] = left - v
            extra.add(x - w)
        if right is not None and right > v:
            w = min(shave, (bps[i + 1] - x) / 2)
            drop_right[x] = right - v
            extra.add(x + w)
    grid = sorted(set(bps) | extra)
    laws = []
    for u, v in itertools.pairwise(grid):
        law = f.law_at(u)
        yu = law(u) - shave - drop_right.get(u, 0)
        yv = law(v) - shave - drop_left.get(v, 0)
        laws.append(Affine.through(u, yu, v, yv))
    vals = []
    for x in grid:
        if space.is_puncture(x):
            vals.append(None)
        elif x in f.breakpoints:
            vals.append(f(x) - shave)
        else:
            vals.append(f.law_at(x)(x) - shave)
    return PiecewiseFn(space, tuple(grid), tuple(laws), tuple(vals))
