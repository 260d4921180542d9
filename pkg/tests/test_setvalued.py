import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import is_continuous_oracle, raw_eval

from mincusco import generators as gen
from mincusco.domain import Affine, PiecewiseFn, Q, SpaceX, is_quasicontinuous
from mincusco.errors import PreconditionError
from mincusco.setvalued import (
    C_of,
    CuscoMap,
    S_of,
    add_mc,
    canonical_selection,
    cluster_set,
    envelope,
    is_minimal,
    minimal_inside,
    validate_cusco,
)

seeds = st.integers(0, 10**6)


def lsc_step(X):
    return PiecewiseFn.step(X, 0, 0, 1, 0)


def usc_step(X):
    return PiecewiseFn.step(X, 0, 0, 1, 1)


def spike_map(X):
    """[0, 1] at 0, {0} elsewhere: a cusco map that is not minimal."""
    return CuscoMap(PiecewiseFn.constant(X, 0), PiecewiseFn.step(X, 0, 0, 0, 1))


class TestValidation:
    def test_step_map(self, X, step):
        F = validate_cusco(lsc_step(X), usc_step(X))
        assert F == step
        assert (
            F.fiber(0) == (0, 1)
            and F.fiber(Q(-1, 2)) == (0, 0)
            and F.fiber(Q(1, 2)) == (1, 1)
        )

    def test_lower_not_lsc(self, X, heaviside):
        with pytest.raises(PreconditionError, match="lower"):
            validate_cusco(heaviside, heaviside)

    def test_order(self, X):
        with pytest.raises(PreconditionError) as err:
            validate_cusco(PiecewiseFn.constant(X, 1), PiecewiseFn.constant(X, 0))
        assert err.value.witness is not None

    def test_upper_not_usc(self, X):
        with pytest.raises(PreconditionError, match="upper"):
            validate_cusco(PiecewiseFn.constant(X, -1), lsc_step(X))


class TestEnvelope:
    def test_cluster_sets(self, X, heaviside):
        assert cluster_set(heaviside, 0) == {0, 1}
        assert cluster_set(PiecewiseFn.affine(X, 1, 0), Q(1, 3)) == {Q(1, 3)}

    def test_cluster_set_at_puncture(self):
        Xp = SpaceX(-1, 1, (0,))
        f = PiecewiseFn.step(Xp, 0, 0, 1)
        assert cluster_set(f, 0) == {0, 1}

    def test_heaviside(self, X, heaviside, step):
        F = envelope(heaviside)
        assert F.lower == lsc_step(X) and F.upper == usc_step(X)
        assert is_minimal(F)

    def test_densely_defined_selection(self, X):
        Xp = SpaceX(-1, 1, (0,))
        F = envelope(PiecewiseFn.step(Xp, 0, 0, 1), X)
        assert F.space == X and F.fiber(0) == (0, 1)

    def test_continuous(self, X):
        f = PiecewiseFn.from_vertices(X, [(-1, 2), (0, -1), (1, 0)])
        F = envelope(f)
        assert F.lower == f == F.upper

    def test_not_quasicontinuous(self, X):
        with pytest.raises(PreconditionError) as err:
            envelope(PiecewiseFn.step(X, 0, -1, 1, Q(1, 2)))
        assert tuple(err.value.witness) == (0,)

    @given(seeds)
    def test_random_envelopes_are_minimal_cuscos(self, seed):
        rng = random.Random(seed)
        f = gen.quasicontinuous(rng, gen.space(rng))
        F = envelope(f)
        validate_cusco(F.lower, F.upper)
        assert is_minimal(F)
        for x, v in zip(f.breakpoints, f.values):
            lo, hi = F.fiber(x)
            assert lo <= v <= hi
            assert {lo, hi} <= {v} | {t for t in f.limits(x) if t is not None}


class TestSingletonSets:
    def test_step(self, X, step, heaviside):
        assert S_of(step).sorted_exceptions() == [0]
        assert C_of(heaviside).sorted_exceptions() == [0]

    def test_continuous(self, X):
        f = PiecewiseFn.affine(X, 1, 1)
        assert S_of(CuscoMap.single(f)).sorted_exceptions() == []
        assert C_of(f).sorted_exceptions() == []

    def test_two_jumps(self, X):
        bps = (-1, Q(-1, 2), Q(1, 2), 1)
        laws = (Affine.const(0), Affine.const(1), Affine.const(0))
        f = PiecewiseFn(X, bps, laws, (0, 1, 1, 0))
        assert C_of(f).sorted_exceptions() == [Q(-1, 2), Q(1, 2)]

    def test_interval_fibers_on_a_piece(self, X):
        with pytest.raises(PreconditionError, match="cofinite"):
            S_of(CuscoMap(PiecewiseFn.constant(X, 0), PiecewiseFn.constant(X, 1)))


class TestSelectionAndMinimality:
    def test_canonical_selection_of_step(self, step, heaviside):
        s = canonical_selection(step)
        assert s == heaviside
        assert is_quasicontinuous(s)

    def test_selection_of_continuous_map(self, X):
        f = PiecewiseFn.affine(X, -2, 1)
        assert canonical_selection(CuscoMap.single(f)) == f

    def test_selection_of_constant_band(self, X):
        F = CuscoMap(PiecewiseFn.constant(X, 0), PiecewiseFn.constant(X, 1))
        assert canonical_selection(F) == PiecewiseFn.constant(X, 0)

    def test_step_is_minimal(self, step):
        assert is_minimal(step)

    def test_spike_is_not_minimal(self, X, zero):
        v = is_minimal(spike_map(X))
        assert not v and v.witness == zero

    def test_continuous_is_minimal(self, X):
        assert is_minimal(CuscoMap.single(PiecewiseFn.affine(X, 3, -1)))

    def test_minimal_inside_band(self, X, zero):
        F = CuscoMap(PiecewiseFn.constant(X, 0), PiecewiseFn.constant(X, 1))
        assert minimal_inside(F) == zero

    def test_minimal_inside_is_idempotent_on_minimal(self, step):
        assert minimal_inside(step) == step

    def test_minimal_inside_widened_step(self, step):
        wide = step.widened(1)
        M = minimal_inside(wide)
        assert is_minimal(M) and wide.contains(M) and contains_oracle_closed(M, wide)

    @given(seeds)
    def test_random_minimal_inside(self, seed):
        rng = random.Random(seed)
        F = gen.cusco(rng, gen.space(rng))
        M = minimal_inside(F)
        assert is_minimal(M)
        assert contains_oracle_closed(M, F)

    @given(seeds)
    def test_selection_round_trip(self, seed):
        rng = random.Random(seed)
        F = gen.minimal_cusco(rng, gen.space(rng, rng.randint(0, 1)))
        s = canonical_selection(F)
        assert envelope(s) == F
        assert S_of(F) == C_of(s)
        for x in s.breakpoints:
            if x in F.space:
                lo, hi = F.fiber(x)
                assert lo <= s(x) <= hi


def contains_oracle_closed(inner: CuscoMap, outer: CuscoMap) -> bool:
    """inner(x) ⊆ outer(x) at breakpoints and sample points."""
    from oracles import sample_points

    for x in sample_points(outer.space, inner, outer):
        if not (
            raw_eval(outer.lower, x) <= raw_eval(inner.lower, x)
            and raw_eval(inner.upper, x) <= raw_eval(outer.upper, x)
        ):
            return False
    return True


class TestAddition:
    def test_steps_cancel(self, X, step, zero):
        down = envelope(PiecewiseFn.step(X, 0, 0, -1, -1))
        assert add_mc(step, down) == zero

    def test_negation(self, step, zero):
        assert add_mc(step, -step) == zero

    def test_continuous(self, X):
        f, g = (
            PiecewiseFn.affine(X, 1, 0),
            PiecewiseFn.from_vertices(X, [(0, 1), (1, 0)]),
        )
        S = add_mc(CuscoMap.single(f), CuscoMap.single(g))
        assert S == CuscoMap.single(f + g)
        assert is_continuous_oracle(S.lower)

    def test_rejects_non_minimal(self, X, step):
        with pytest.raises(PreconditionError):
            add_mc(step, spike_map(X))

    @given(seeds)
    def test_commutative_with_identity(self, seed):
        rng = random.Random(seed)
        sp = gen.space(rng)
        F, G = gen.minimal_cusco(rng, sp), gen.minimal_cusco(rng, sp)
        assert add_mc(F, G) == add_mc(G, F)
        assert add_mc(F, CuscoMap.zero(sp)) == F
        assert is_minimal(add_mc(F, G))
