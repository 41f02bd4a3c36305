"""Limit-point rewriting, iterated profiles, kernel splitting, and the
contact signature."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from scatterlab.derive import cb_profile, derive, kernel_split, signature
from scatterlab.errors import HorizonExceededError
from scatterlab.families import build_Kn, build_YS_td, discrete_approximant
from scatterlab.linear import closure
from scatterlab.setcore import enumerate_term, member
from scatterlab.terms import (
    Cantor, EMPTY, Interval, Ladder, Point, Union, canonical,
)
from scatterlab.verify import probe_equal

from strategies import terms


# --- derive ---------------------------------------------------------------

def test_derive_point_vanishes():
    assert derive(Point(F(0))) == EMPTY


def test_second_derivative_of_second_tower():
    assert derive(derive(build_Kn(2))) == Point(F(11))


def test_cantor_is_a_fixed_point():
    c = canonical(Cantor(F(0), F(1)))
    assert derive(c) == c


def test_derive_ladder_regardless_of_target():
    for inc in (True, False):
        assert derive(Ladder(F(1), F(1), F(1, 2), inc)) == Point(F(1))


# --- cb_profile -----------------------------------------------------------

def test_profile_third_tower_vanishes_at_four():
    assert cb_profile(build_Kn(3), 10).vanishing_index == 4


def test_profile_interval_never_vanishes():
    prof = cb_profile(Interval(F(0), F(1)), 5)
    assert prof.vanishing_index is None
    assert prof.stabilizes_at == 0


def test_profile_ladder_vanishes_at_two():
    assert cb_profile(Ladder(F(1), F(1), F(1, 2), True), 5).vanishing_index == 2


def test_profile_iterates_chain():
    prof = cb_profile(build_Kn(2), 10)
    for a, b in zip(prof.steps, prof.steps[1:]):
        assert derive(a) == b


# --- kernel_split ---------------------------------------------------------

def test_split_cantor_plus_point():
    k, s = kernel_split(Union((Cantor(F(0), F(1)), Point(F(2)))))
    assert k == canonical(Cantor(F(0), F(1)))
    assert s == Point(F(2))


def test_split_block_two_scaffold():
    k, _ = kernel_split(build_YS_td({2}))
    assert member(k, F(1))          # top point rides with the dense part
    assert member(k, F(11, 20)) and member(k, F(3, 5))


def test_split_countable_term_is_all_scattered():
    k, s = kernel_split(build_Kn(4))
    assert k == EMPTY
    assert s == canonical(build_Kn(4))


def test_kernel_is_a_fixed_point_of_derive():
    for t in (build_YS_td({1, 3}), Union((Cantor(F(0), F(1)), Point(F(2)))),
              Interval(F(0), F(1))):
        k, _ = kernel_split(t)
        assert derive(k) == canonical(k)


# --- signature ------------------------------------------------------------

def test_signature_reads_back_the_chosen_set():
    assert signature(build_YS_td({1, 3}), 6) == frozenset({1, 3})
    assert signature(build_YS_td({1, 4})) == frozenset({1, 4})


def test_signature_of_perfect_set_is_empty():
    assert signature(Cantor(F(0), F(1)), 3) == frozenset()


def test_signature_survives_closure_of_discrete_stand_in():
    y = build_YS_td({2, 5})
    z = discrete_approximant(y)
    assert signature(closure(Union((z, y))), 8) == frozenset({2, 5})


def test_signature_of_scattered_term_is_empty():
    for t in (build_Kn(2), Point(F(3)), Ladder(F(0), F(1), F(1, 3), True)):
        assert signature(t) == frozenset()


def test_signature_horizon_error():
    # scattered part needs max(S)+1 derivative steps; k_max=2 cannot finish
    with pytest.raises(HorizonExceededError):
        signature(build_YS_td({4}), 2)


# --- module-wide properties -----------------------------------------------

def test_derivative_distributes_over_union():
    parts = [
        (build_Kn(1), Point(F(9))),
        (Ladder(F(1), F(1), F(1, 2), True), Cantor(F(2), F(3))),
        (Interval(F(0), F(1)), Ladder(F(5), F(2), F(1, 3), False)),
    ]
    for a, b in parts:
        assert probe_equal(derive(Union((a, b))),
                           Union((derive(a), derive(b))), depth=6)


def test_iterates_shrink_on_closed_scattered_terms():
    for t in (build_Kn(1), build_Kn(2),
              Ladder(F(1), F(1), F(1, 2), True)):
        prof = cb_profile(t, 10)
        for cur, nxt in zip(prof.steps, prof.steps[1:]):
            for x in enumerate_term(nxt, 6).points:
                assert member(cur, x)


@settings(max_examples=60, deadline=None)
@given(terms)
def test_split_parts_cover_and_classify(t):
    k, s = kernel_split(t)
    kc, sc = canonical(k), canonical(s)
    for x in enumerate_term(t, 4).points:
        assert member(kc, x) or member(sc, x)
    # dense in itself: no kernel point gets lost under derive (open
    # kernels may gain boundary, never shrink)
    dk = derive(kc)
    for x in enumerate_term(kc, 4).points:
        assert member(dk, x)
