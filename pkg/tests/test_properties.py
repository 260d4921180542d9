"""Properties over hypothesis-generated rationals (not seeded instance generators)."""

import itertools
from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st
from oracles import covered, raw_eval

from mincusco.domain import PiecewiseFn, Q, SpaceX, q, sup_distance
from mincusco.serialize import _rat, dump_q
from mincusco.vietoris import hausdorff_fiber, merge_intervals

rats = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@given(rats)
def test_rational_text_round_trip(x):
    assert _rat(dump_q(q(x)), "$") == x


@given(rats, rats, rats, rats)
def test_hausdorff_matches_brute_force(a, b, c, d):
    (p, r), (s, t) = sorted((a, b)), sorted((c, d))

    # sup over I of dist to J and vice versa; for intervals the extremes sit at endpoints
    def dist(y, lo, hi):
        return max(lo - y, y - hi, 0)

    brute = max(dist(p, s, t), dist(r, s, t), dist(s, p, r), dist(t, p, r))
    h = hausdorff_fiber((p, r), (s, t))
    assert h >= brute
    assert h == max(abs(p - s), abs(r - t))


@given(
    st.lists(st.tuples(rats, rats).filter(lambda t: t[0] < t[1]), max_size=6),
    rats,
    rats,
)
def test_merged_intervals_cover_the_same_closed_intervals(ivs, lo, hi):
    assume(lo <= hi)
    merged = merge_intervals(ivs)
    assert all(a < b for a, b in merged)
    assert all(b1 <= a2 for (_, b1), (a2, _) in itertools.pairwise(merged))
    assert covered(ivs, lo, hi) == any(a < lo and hi < b for a, b in merged)


@given(
    st.lists(st.tuples(rats, rats), min_size=1, max_size=6, unique_by=lambda t: t[0])
)
def test_interpolation_hits_vertices(points):
    X = SpaceX(-20, 20)
    f = PiecewiseFn.from_vertices(X, points)
    for x, y in points:
        assert raw_eval(f, x) == y
    left = min(points)
    assert raw_eval(f, Fraction(-20)) == left[1]


@given(rats, rats)
def test_sup_distance_of_constants(a, b):
    X = SpaceX(0, 1)
    assert sup_distance(PiecewiseFn.constant(X, a), PiecewiseFn.constant(X, b)) == abs(
        Q(a) - Q(b)
    )
