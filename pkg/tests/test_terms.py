"""Term membership, finite enumeration, and intersection tests."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from scatterlab.errors import ValidationError
from scatterlab.setcore import enumerate_term, meets, member
from scatterlab.terms import (
    Affine, Cantor, Interval, Ladder, Point, Union, bounds, canonical,
)
from scatterlab.families import build_Kn

from oracles import cantor_member_stagewise, k1_points, ladder_member_power
from strategies import rats, ratios, terms


# --- membership -----------------------------------------------------------

def test_member_interval_interior():
    assert member(Interval(F(0), F(1)), F(1, 2))


def test_member_cantor_quarter():
    # stage-interval oracle agrees: 1/4 cycles left/right without ever
    # landing in a removed middle third
    assert cantor_member_stagewise(F(1, 4), 0, 1)
    assert member(Cantor(F(0), F(1)), F(1, 4))


def test_member_ladder_rungs():
    lad = Ladder(F(1), F(1), F(1, 2), True)
    assert ladder_member_power(F(3, 4), 1, 1, F(1, 2), True)
    assert not ladder_member_power(F(2, 3), 1, 1, F(1, 2), True)
    assert member(lad, F(3, 4))
    assert not member(lad, F(2, 3))


def test_member_cantor_oracle_sample():
    # cross-check the two independent decision procedures on a dense grid
    c = Cantor(F(0), F(1))
    for num in range(0, 82):
        x = F(num, 81)
        assert member(c, x) == cantor_member_stagewise(x, 0, 1), x


def test_member_ladder_oracle_sample():
    lad = Ladder(F(2), F(3, 2), F(2, 3), False)
    for num in range(-10, 40):
        x = F(num, 12)
        assert member(lad, x) == ladder_member_power(
            x, 2, F(3, 2), F(2, 3), False), x


# --- enumeration ----------------------------------------------------------

def test_enumerate_point():
    ap = enumerate_term(Point(F(3)), 5)
    assert list(ap.points) == [F(3)]
    assert ap.tolerance < F(1, 10)


def test_enumerate_ladder_depth3():
    ap = enumerate_term(Ladder(F(1), F(1), F(1, 2), True), 3)
    assert set(ap.points) == {F(0), F(1, 2), F(3, 4), F(1)}
    # unlisted rungs lie in [7/8, 1), within 1/8 of the listed target
    assert ap.tolerance == F(1, 8)


def test_enumerate_k1_against_formula():
    ap = enumerate_term(build_Kn(1), 4)
    assert len(ap.points) == 5
    assert max(ap.points) == 6
    assert sorted(ap.points) == k1_points(4)


def test_enumerate_cantor_stages():
    ap = enumerate_term(Cantor(F(0), F(1)), 2)
    assert len(ap.intervals) == 4
    assert len(ap.points) == 8
    assert ap.tolerance == F(1, 9)
    assert (F(2, 9), F(1, 3)) in ap.intervals


# --- meets ----------------------------------------------------------------

def test_meets_shared_endpoint():
    assert meets(Interval(F(0), F(1)), Interval(F(1), F(2)))


def test_meets_tower_touches_shifted_cantor():
    # max of the second tower is 11, which the shifted Cantor set contains
    shifted = Affine(F(1), F(11), Cantor(F(0), F(1)))
    assert member(shifted, F(11))
    assert meets(build_Kn(2), shifted)


def test_meets_excluded_target():
    assert not meets(Ladder(F(1), F(1), F(1, 2), False), Point(F(1)))


# --- construction validation ----------------------------------------------

def test_validation_rejects_bad_data():
    with pytest.raises(ValidationError):
        Interval(F(1), F(0))
    with pytest.raises(ValidationError):
        Ladder(F(1), F(0), F(1, 2), True)
    with pytest.raises(ValidationError):
        Ladder(F(1), F(1), F(3, 2), True)
    with pytest.raises(ValidationError):
        Affine(F(0), F(1), Point(F(0)))


def test_canonical_merges_overlapping_intervals():
    t = canonical(Union((Interval(F(0), F(2)), Interval(F(1), F(3)),
                         Point(F(5, 2)))))
    assert t == Interval(F(0), F(3))


def test_canonical_drops_covered_points():
    t = canonical(Union((Point(F(1, 2)), Interval(F(0), F(1)))))
    assert t == Interval(F(0), F(1))


# --- algebra-wide properties ----------------------------------------------

@settings(max_examples=120, deadline=None)
@given(terms)
def test_canonical_idempotent(t):
    c = canonical(t)
    assert canonical(c) == c


@settings(max_examples=80, deadline=None)
@given(terms, st.integers(min_value=1, max_value=5))
def test_enumerated_points_are_members(t, depth):
    ap = enumerate_term(t, depth)
    for p in ap.points:
        assert member(t, p)


@settings(max_examples=80, deadline=None)
@given(terms, st.integers(min_value=1, max_value=4))
def test_refinement_is_monotone(t, depth):
    ap1 = enumerate_term(t, depth)
    ap2 = enumerate_term(t, depth + 1)
    assert ap2.tolerance <= ap1.tolerance
    assert set(ap1.points) <= set(ap2.points)


@settings(max_examples=80, deadline=None)
@given(terms, st.integers(min_value=1, max_value=4))
def test_enumerated_points_stay_in_bounds(t, depth):
    b = bounds(canonical(t))
    ap = enumerate_term(t, depth)
    if b is None:
        assert not ap.points and not ap.intervals
        return
    lo, hi = b
    for p in ap.points:
        assert lo <= p <= hi
    for a, c in ap.intervals:
        assert lo <= a <= c <= hi


@settings(max_examples=60, deadline=None)
@given(terms, st.integers(min_value=1, max_value=3))
def test_deeper_points_covered_within_tolerance(t, depth):
    # every member found two levels deeper sits within the coarse
    # approximation's tolerance of something it listed
    coarse = enumerate_term(t, depth)
    fine = enumerate_term(t, depth + 2)
    for x in fine.points:
        near_pt = any(abs(p - x) <= coarse.tolerance for p in coarse.points)
        near_iv = any(max(lo - x, x - hi, F(0)) <= coarse.tolerance
                      for lo, hi in coarse.intervals)
        assert near_pt or near_iv


@settings(max_examples=60, deadline=None)
@given(rats, ratios(), st.booleans(), st.integers(min_value=0, max_value=40))
def test_ladder_membership_matches_power_oracle(target, ratio, include, num):
    x = target - F(num, 16)
    got = member(Ladder(target, F(1), ratio, include), x)
    assert got == ladder_member_power(x, target, 1, ratio, include)
