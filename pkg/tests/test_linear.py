"""Boundary extraction, component listings, and the two recovery maps."""

from fractions import Fraction as F
from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scatterlab.derive import derive
from scatterlab.errors import (NotIntervalUnionError, NotSupportedError,
                               ProfileMismatchError)
from scatterlab.families import build_Kn, build_Ug, build_XS
from scatterlab.linear import (bits_profile, boundary, closure,
                               components_upto, compress, recover_S_linear)
from scatterlab.setcore import enumerate_term
from scatterlab.terms import (Cantor, Interval, Ladder, Mirror, Point,
                              Thicken, Union, canonical)
from scatterlab.verify import probe_equal


# --- boundary ---------------------------------------------------------------

def test_boundary_interval():
    b = boundary(Interval(F(0), F(1), True))
    assert b == canonical(Union((Point(F(0)), Point(F(1)))))


def test_boundary_xs_block_derivative():
    # block 2 of XS is the 1/20-scaled mirrored K2; taking endpoints of the
    # thickened intervals must not change the derivative
    x2 = build_XS({2})
    scale = compress(2, F(1)) - compress(2, F(0))
    shift = compress(2, F(0))
    from scatterlab.terms import Affine
    kblock = Affine(scale, shift, Mirror(F(12), build_Kn(2)))
    assert probe_equal(derive(boundary(x2)), derive(kblock), depth=8)


def test_boundary_thicken_ladder_count():
    th = Thicken(Ladder(F(1), F(1), F(1, 2), True), F(1, 4))
    ap = enumerate_term(boundary(th), 5)
    assert len(ap.points) == 10


def test_boundary_thicken_ladder_derivative():
    lad = Ladder(F(1), F(1), F(1, 2), True)
    th = Thicken(lad, F(1, 4))
    assert probe_equal(derive(boundary(th)), derive(lad), depth=8)


def test_boundary_rejects_non_interval_union():
    with pytest.raises(NotIntervalUnionError):
        boundary(Cantor(F(0), F(1)))
    with pytest.raises(NotIntervalUnionError):
        boundary(Point(F(1)))


# --- components_upto --------------------------------------------------------

def test_components_two_intervals():
    cl = components_upto(
        Union((Interval(F(0), F(1), True), Interval(F(2), F(3), True))), 1)
    assert len(cl.entries) == 2
    assert cl.complete


def test_components_xs1_has_glued_interval():
    # the mirror glue welds two thickened blocks into one nondegenerate
    # component; everything else at this scale is much narrower
    cl = components_upto(build_XS({1}), 6)
    widths = [e.hi - e.lo for e in cl.entries if e.kind == "interval"]
    assert any(w >= F(1, 100) for w in widths)


def test_components_ug_runs():
    # between z-blocks n and n+1 the run holds 2+g(n) isolated components
    u = build_Ug((1, 0, 1))
    cl = components_upto(u, 6)
    run1 = [e for e in cl.entries if F(8) <= e.lo and e.hi <= F(13)]
    run2 = [e for e in cl.entries if F(14) <= e.lo and e.hi <= F(19)]
    assert len(run1) == 3
    assert len(run2) == 2
    assert all(not e.closed for e in run1)


def test_components_closure_closes_entries():
    u = build_Ug((1, 0, 1))
    cl = components_upto(closure(u), 6)
    run1 = [e for e in cl.entries if F(8) <= e.lo and e.hi <= F(13)]
    assert len(run1) == 3
    assert all(e.closed for e in run1)


def test_components_rejects_cantor():
    with pytest.raises(NotSupportedError):
        components_upto(Cantor(F(0), F(1)), 3)


def test_components_strictly_ordered():
    for t in (build_XS({1, 2}), build_Ug((1, 1, 0)), build_XS({3})):
        cl = components_upto(t, 6)
        assert all(a.hi < b.lo for a, b in zip(cl.entries, cl.entries[1:]))


def test_components_stable_under_refinement():
    # deeper listings may add entries but never split or merge earlier ones
    for t in (build_XS({1, 2}), build_Ug((0, 1, 1))):
        shallow = components_upto(t, 4).entries
        deep = {(e.kind, e.lo, e.hi) for e in components_upto(t, 5).entries}
        assert all((e.kind, e.lo, e.hi) in deep for e in shallow)


# --- recover_S_linear -------------------------------------------------------

def test_recover_examples():
    assert recover_S_linear(build_XS({2, 4}), 6).S == frozenset({2, 4})
    assert recover_S_linear(build_XS({1}), 3).S == frozenset({1})


def test_recover_no_two_sided_components():
    single = Thicken(Ladder(F(1), F(1), F(1, 2), True), F(1, 4))
    assert recover_S_linear(single, 4).S == frozenset()


def test_recover_round_trip_all_subsets():
    universe = (1, 2, 3, 4, 5)
    subsets = chain.from_iterable(
        combinations(universe, r) for r in range(1, 6))
    for s in subsets:
        assert recover_S_linear(build_XS(set(s)), 6).S == frozenset(s)


# --- bits_profile -----------------------------------------------------------

def test_bits_examples():
    assert bits_profile(build_Ug((1, 1, 0)), 3) == (1, 1, 0)
    assert bits_profile(closure(build_Ug((0, 1, 1))), 3) == (0, 1, 1)
    assert bits_profile(build_Ug((0, 0, 0)), 3) == (0, 0, 0)


def test_bits_rejects_foreign_structure():
    with pytest.raises(ProfileMismatchError):
        bits_profile(Interval(F(0), F(1)), 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=12))
def test_bits_round_trip(bits):
    g = tuple(bits)
    assert bits_profile(build_Ug(g), len(g)) == g
