"""Interval-valued cusco maps, envelopes of quasicontinuous selections, and MC(X) addition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .domain import (
    PiecewiseFn,
    Q,
    SpaceX,
    Verdict,
    first_violation,
    grid_of,
    is_quasicontinuous,
    q,
    same_space,
    semicontinuity_class,
)
from .errors import DomainError, PreconditionError


def _check_cusco(lower: PiecewiseFn, upper: PiecewiseFn) -> None:
    same_space(lower, upper)
    lo = semicontinuity_class(lower)
    if not lo.lsc:
        x = lo.lsc_failures[0]
        raise PreconditionError(f"lower profile is not lsc at {x}", x)
    up = semicontinuity_class(upper)
    if not up.usc:
        x = up.usc_failures[0]
        raise PreconditionError(f"upper profile is not usc at {x}", x)
    x = first_violation(lower, upper)
    if x is not None:
        raise PreconditionError(f"lower > upper at {x}", x)


@dataclass(frozen=True)
class CuscoMap:
    """F(x) = [lower(x), upper(x)] with lower lsc, upper usc and lower <= upper."""

    lower: PiecewiseFn
    upper: PiecewiseFn

    def __post_init__(self):
        _check_cusco(self.lower, self.upper)

    @classmethod
    def single(cls, f: PiecewiseFn) -> CuscoMap:
        """The graph of a continuous function, as a cusco map."""
        return cls(f, f)

    @classmethod
    def zero(cls, space: SpaceX) -> CuscoMap:
        z = PiecewiseFn.constant(space, 0)
        return cls(z, z)

    @property
    def space(self) -> SpaceX:
        return self.lower.space

    def fiber(self, x) -> tuple[Q, Q]:
        return self.lower(x), self.upper(x)

    def __neg__(self) -> CuscoMap:
        return CuscoMap(-self.upper, -self.lower)

    def shifted(self, c) -> CuscoMap:
        return CuscoMap(self.lower + q(c), self.upper + q(c))

    def widened(self, c) -> CuscoMap:
        return CuscoMap(self.lower - q(c), self.upper + q(c))

    def breakpoints(self) -> list[Q]:
        return grid_of(self.lower, self.upper)

    def contains(self, other: CuscoMap) -> bool:
        """Fiberwise inclusion other(x) ⊆ self(x)."""
        return (
            first_violation(self.lower, other.lower) is None
            and first_violation(other.upper, self.upper) is None
        )


def validate_cusco(lower: PiecewiseFn, upper: PiecewiseFn) -> CuscoMap:
    return CuscoMap(lower, upper)


@dataclass(frozen=True)
class CofiniteSet:
    """X minus a finite exception set."""

    space: SpaceX
    exceptions: frozenset

    def __post_init__(self):
        exc = frozenset(q(x) for x in self.exceptions)
        for x in exc:
            if x not in self.space:
                raise DomainError(f"exception {x} is not a point of X", x)
        object.__setattr__(self, "exceptions", exc)

    def __contains__(self, x) -> bool:
        return x in self.space and q(x) not in self.exceptions

    def __and__(self, other: CofiniteSet) -> CofiniteSet:
        if other.space != self.space:
            raise DomainError("cofinite sets on different spaces")
        return CofiniteSet(self.space, self.exceptions | other.exceptions)

    def sorted_exceptions(self) -> list[Q]:
        return sorted(self.exceptions)


def _target_space(f: PiecewiseFn, space: SpaceX | None) -> SpaceX:
    if space is None:
        return f.space
    if (space.a, space.b) != (f.space.a, f.space.b) or not set(space.punctures) <= set(
        f.space.punctures
    ):
        raise DomainError("f's domain must be a dense subset of the target space")
    return space


def cluster_set(f: PiecewiseFn, x, space: SpaceX | None = None) -> frozenset:
    """Values at x of the closure of f's graph: f(x) when defined, plus one-sided limits."""
    _target_space(f, space)
    x = q(x)
    out = {v for v in f.limits(x) if v is not None}
    if x in f.space:
        out.add(f(x))
    return frozenset(out)


def envelope(f: PiecewiseFn, space: SpaceX | None = None) -> CuscoMap:
    """Minimal cusco map generated by a quasicontinuous f defined on a dense subset of ``space``."""
    target = _target_space(f, space)
    qc = is_quasicontinuous(f)
    if not qc:
        raise PreconditionError(
            f"f is not quasicontinuous at {list(qc.witness)}", qc.witness
        )
    lo_vals, hi_vals = [], []
    for x in f.breakpoints:
        if target.is_puncture(x):
            lo_vals.append(None)
            hi_vals.append(None)
            continue
        cs = cluster_set(f, x)
        lo_vals.append(min(cs))
        hi_vals.append(max(cs))
    lower = PiecewiseFn(target, f.breakpoints, f.laws, tuple(lo_vals))
    upper = PiecewiseFn(target, f.breakpoints, f.laws, tuple(hi_vals))
    return CuscoMap(lower, upper)


def S_of(F: CuscoMap) -> CofiniteSet:
    """Points where F is single-valued."""
    grid = F.breakpoints()
    for u, v in itertools.pairwise(grid):
        if F.lower.law_at(u) != F.upper.law_at(u):
            raise PreconditionError(
                f"F is not singleton on a cofinite set (interval fibers on ({u}, {v}))",
                (u + v) / 2,
            )
    exc = [x for x in grid if x in F.space and F.lower(x) < F.upper(x)]
    return CofiniteSet(F.space, frozenset(exc))


def C_of(f: PiecewiseFn) -> CofiniteSet:
    """Continuity points of f."""
    exc = [x for x in f.breakpoints if x in f.space and not f.is_continuous_at(x)]
    return CofiniteSet(f.space, frozenset(exc))


def canonical_selection(F: CuscoMap) -> PiecewiseFn:
    """Quasicontinuous selection of F: lower, except at its jumps, where the right
    one-sided limit is taken (the left one at b)."""
    lower = F.lower
    vals = []
    for x, v in zip(lower.breakpoints, lower.values):
        if v is not None and not lower.is_continuous_at(x):
            left, right = lower.limits(x)
            v = right if right is not None else left
        vals.append(v)
    return PiecewiseFn(lower.space, lower.breakpoints, lower.laws, tuple(vals))


def is_minimal(F: CuscoMap) -> Verdict:
    """True iff F is the envelope of its canonical selection; otherwise the witness is
    that envelope, a strictly smaller cusco map inside F."""
    inner = envelope(canonical_selection(F))
    if inner == F:
        return Verdict(True, None)
    return Verdict(False, inner)


def minimal_inside(F: CuscoMap) -> CuscoMap:
    return envelope(canonical_selection(F))


def add_mc(F: CuscoMap, G: CuscoMap) -> CuscoMap:
    """F + G on MC(X): add the single-valued parts on S(F) ∩ S(G) and take the envelope."""
    space = same_space(F.lower, G.lower)
    for name, H in (("F", F), ("G", G)):
        if not is_minimal(H):
            raise PreconditionError(f"{name} is not a minimal cusco map")
    common = S_of(F) & S_of(G)
    f = canonical_selection(F).punctured(common.exceptions)
    g = canonical_selection(G).punctured(common.exceptions)
    return envelope(f + g, space)
