import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import (
    contains_oracle,
    is_continuous_oracle,
    le_oracle,
    raw_eval,
    sample_points,
)

from mincusco import generators as gen
from mincusco.approximation import (
    approx_upper,
    approx_upper_detailed,
    approx_vietoris,
    approx_vietoris_detailed,
    clamp_bounds,
    tube_with_pinches,
)
from mincusco.domain import INF, PiecewiseFn, Q
from mincusco.errors import PreconditionError
from mincusco.setvalued import CuscoMap
from mincusco.vietoris import OpenRegion, VietorisNbhd, member_nbhd, regular_refine

seeds = st.integers(0, 10**6)
band = OpenRegion.band


def staircase():
    return OpenRegion.of(
        (-INF, Q(1, 5), Q(-3, 5), Q(3, 5)),
        (Q(-1, 5), INF, Q(-3, 5), Q(8, 5)),
    )


class TestClamp:
    def test_whole_plane(self, step):
        c = clamp_bounds(step, OpenRegion.of((-INF, INF, -INF, INF)))
        assert (c.band_lo, c.band_hi) == (-1, 2)
        assert c.clamped.fiber(0) == [(-1, 2)]

    def test_bounded_region(self, step):
        W = band(Q(-1, 2), 5)
        c = clamp_bounds(step, W)
        assert c.original == W and c.clamped.fiber(0) == [(Q(-1, 2), 2)]
        assert contains_oracle(step, c.clamped)

    def test_not_inside(self, step):
        with pytest.raises(PreconditionError):
            clamp_bounds(step, band(0, 1))


class TestApproxUpper:
    def test_staircase(self, X, step):
        W = staircase()
        g = approx_upper(step, W)
        assert is_continuous_oracle(g)
        assert contains_oracle(CuscoMap.single(g), W)
        for x in sample_points(X, g):
            if x <= Q(-1, 5):
                assert Q(-3, 5) < raw_eval(g, x) < Q(3, 5)

    def test_continuous_map(self, X):
        h = PiecewiseFn.from_vertices(X, [(-1, 0), (1, 1)])
        W = band(-1, 2)
        assert contains_oracle(CuscoMap.single(approx_upper(CuscoMap.single(h), W)), W)

    def test_not_inside(self, step):
        with pytest.raises(PreconditionError):
            approx_upper(step, band(0, 1))

    @given(seeds)
    def test_sandwich_chain(self, seed):
        rng = random.Random(seed)
        F = gen.cusco(rng, gen.space(rng))
        W = (
            gen.covering_region(rng, F)
            if rng.random() < 0.7
            else gen.dilated_tube(rng, F)
        )
        s = approx_upper_detailed(F, W)
        assert le_oracle(s.f1, s.g1, strict=True) and le_oracle(s.g1, s.h1)
        assert le_oracle(s.h1, s.f2) and le_oracle(s.f2, s.g2)
        assert le_oracle(s.g2, s.h2, strict=True)
        assert is_continuous_oracle(s.g)
        assert contains_oracle(CuscoMap.single(s.g), W)


class TestApproxVietoris:
    def test_step(self, step):
        N = VietorisNbhd(band(-1, 2), (band(0, 1),))
        g = approx_vietoris(step, N)
        G = CuscoMap.single(g)
        assert is_continuous_oracle(g) and member_nbhd(G, N)
        assert any(0 < raw_eval(g, x) < 1 for x in sample_points(step.space, g))

    def test_upper_only(self, step):
        W = staircase()
        assert approx_vietoris(step, VietorisNbhd(W)) == approx_upper(step, W)

    def test_not_member(self, step):
        with pytest.raises(PreconditionError):
            approx_vietoris(step, VietorisNbhd(band(-1, 2), (band(5, 6),)))

    @given(seeds)
    def test_random(self, seed):
        rng = random.Random(seed)
        F = gen.cusco(rng, gen.space(rng))
        N = gen.neighborhood(rng, F, rng.randint(1, 3))
        a = approx_vietoris_detailed(F, N)
        assert is_continuous_oracle(a.g)
        assert member_nbhd(CuscoMap.single(a.g), N)
        assert contains_oracle(CuscoMap.single(a.g), N.upper)
        supports = sorted((b.x - b.radius, b.x + b.radius) for b in a.bumps)
        for (_, hi), (lo, _) in itertools.pairwise(supports):
            assert hi <= lo
        for x in sample_points(F.space, a.g, a.base):
            if all(abs(x - b.x) >= b.radius for b in a.bumps):
                assert raw_eval(a.g, x) == raw_eval(a.base, x)


class TestPinches:
    def test_constant_half(self, X):
        h = PiecewiseFn.constant(X, Q(1, 2))
        low = OpenRegion.of((Q(-1, 4), Q(1, 4), Q(1, 4), Q(3, 4)))
        N = VietorisNbhd(band(0, 1), (low,))
        P = tube_with_pinches(h, N)
        (p,) = P.pinches
        assert Q(-1, 4) < p.x_lo < p.x_hi < Q(1, 4)
        assert Q(1, 4) <= p.y_lo and p.y_hi <= Q(3, 4)
        for x in sample_points(X, P.tube, extra=(p.x_lo, p.x_hi)):
            if p.x_lo <= x <= p.x_hi:
                assert (
                    p.y_lo <= raw_eval(P.tube.f, x) and raw_eval(P.tube.g, x) <= p.y_hi
                )
        assert P.certify(N)

    def test_upper_only(self, X):
        h = PiecewiseFn.constant(X, Q(1, 2))
        P = tube_with_pinches(h, VietorisNbhd(band(0, 1)))
        assert P.tube == regular_refine(CuscoMap.single(h), band(0, 1)).tube
        assert P.pinches == ()

    def test_not_member(self, X):
        h = PiecewiseFn.constant(X, Q(1, 2))
        with pytest.raises(PreconditionError):
            tube_with_pinches(h, VietorisNbhd(band(0, 1), (band(2, 3),)))

    @given(seeds)
    def test_random_inner_maps(self, seed):
        rng = random.Random(seed)
        F = gen.cusco(rng, gen.space(rng))
        N = gen.neighborhood(rng, F, rng.randint(1, 2))
        h = approx_vietoris(F, N)
        P = tube_with_pinches(h, N)
        assert contains_oracle(CuscoMap.single(h), P.tube)
        assert contains_oracle(P.tube.closed(), N.upper)
        for _ in range(10):
            assert member_nbhd(gen.cusco_in_tube(rng, P.tube), N)
