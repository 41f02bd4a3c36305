"""Hypothesis strategies for random terms with small rational data."""

from fractions import Fraction

from hypothesis import strategies as st

from scatterlab.terms import (
    Affine, Cantor, Empty, FWrap, Interval, Ladder, Mirror, Point, Union,
    bounds, canonical,
)

rats = st.builds(Fraction,
                 st.integers(min_value=-24, max_value=24),
                 st.integers(min_value=1, max_value=8))
pos_rats = st.builds(Fraction,
                     st.integers(min_value=1, max_value=12),
                     st.integers(min_value=1, max_value=6))
scales = st.sampled_from([Fraction(1), Fraction(-1), Fraction(2),
                          Fraction(1, 2), Fraction(-1, 3), Fraction(3)])


@st.composite
def ratios(draw):
    q = draw(st.integers(min_value=2, max_value=9))
    p = draw(st.integers(min_value=1, max_value=q - 1))
    return Fraction(p, q)


@st.composite
def leaf_terms(draw):
    which = draw(st.integers(min_value=0, max_value=4))
    if which == 0:
        return Empty()
    if which == 1:
        return Point(draw(rats))
    if which == 2:
        a = draw(rats)
        return Interval(a, a + draw(pos_rats), closed=draw(st.booleans()))
    if which == 3:
        return Ladder(draw(rats), draw(pos_rats), draw(ratios()),
                      draw(st.booleans()))
    a = draw(rats)
    return Cantor(a, a + draw(pos_rats))


def _unit_wrap(t, include_top):
    """Squeeze an arbitrary term into [1/4, 3/4] so FWrap accepts it."""
    b = bounds(canonical(t))
    if b is None:
        return FWrap(Empty(), include_top)
    lo, hi = b
    if hi == lo:
        return FWrap(Affine(Fraction(1), Fraction(1, 2) - lo, t), include_top)
    scale = Fraction(1, 2) / (hi - lo)
    return FWrap(Affine(scale, Fraction(1, 4) - scale * lo, t), include_top)


def _extend(kids):
    return st.one_of(
        st.tuples(kids, kids).map(lambda ab: Union(ab)),
        st.tuples(scales, rats, kids).map(lambda t: Affine(*t)),
        st.tuples(rats, kids).map(lambda t: Mirror(*t)),
        st.tuples(kids, st.booleans()).map(lambda t: _unit_wrap(*t)),
    )


terms = st.recursive(leaf_terms(), _extend, max_leaves=4)
