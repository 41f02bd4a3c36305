"""Derivatives, kernel splitting and accumulation signatures.

The derivative operator removes isolated points; on this algebra it is a
total term rewrite.  All unions here are finite, so the derivative of a
union is the union of the derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    HorizonExceededError, NotSupportedError, UnsupportedSplitError,
    ValidationError,
)
from .setcore import intersect_points, true_max, true_min
from .terms import (
    EMPTY, Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder,
    Mirror, Point, PtSetTerm, Thicken, Union, bounds, canonical,
)


def derive(t: PtSetTerm) -> PtSetTerm:
    """One Cantor-Bendixson step: the set of limit points, as a term."""
    return canonical(_derive(canonical(t)))


def _derive(t: PtSetTerm) -> PtSetTerm:
    if isinstance(t, (Empty, Point)):
        return EMPTY
    if isinstance(t, Interval):
        return Interval(t.a, t.b, closed=True)
    if isinstance(t, Cantor):
        return t
    if isinstance(t, Ladder):
        return Point(t.target)
    if isinstance(t, FWrap):
        # window copies of inner limits, plus 1 as limit of the windows
        return FWrap(derive(t.inner), include_top=True)
    if isinstance(t, Affine):
        return Affine(t.scale, t.shift, _derive(t.inner))
    if isinstance(t, Union):
        return Union(tuple(_derive(p) for p in t.parts))
    if isinstance(t, Thicken):
        # closed pieces are their own limit sets; inner limits already lie
        # inside lower pieces
        return t
    if isinstance(t, Mirror):
        return Mirror(t.center, _derive(t.inner))
    if isinstance(t, EndpointSet):
        return _derive(canonical(scaffold(t.of)))
    raise TypeError(f"unknown term {t!r}")


def scaffold(t: PtSetTerm) -> PtSetTerm:
    """Replace an interval-union term by a point term with the same limit
    structure as its component-endpoint set.

    Closed intervals become endpoint pairs; thickened sets keep their spine
    (the upper piece ends converge exactly where the spine does).
    """
    t = canonical(t)
    if isinstance(t, Empty):
        return EMPTY
    if isinstance(t, Interval) and t.closed:
        return Union((Point(t.a), Point(t.b)))
    if isinstance(t, Thicken):
        return t.inner
    if isinstance(t, Mirror):
        return Mirror(t.center, scaffold(t.inner))
    if isinstance(t, Affine):
        return Affine(t.scale, t.shift, scaffold(t.inner))
    if isinstance(t, Union):
        bs = sorted(bounds(p) for p in t.parts if bounds(p) is not None)
        for i in range(len(bs) - 1):
            if bs[i][1] >= bs[i + 1][0]:
                raise NotSupportedError(
                    "union parts touch; component endpoints would cancel")
        return Union(tuple(scaffold(p) for p in t.parts))
    if isinstance(t, FWrap):
        if t.include_top:
            raise NotSupportedError("wrapped set with top point is not an "
                                    "interval union")
        if true_min(t.inner) == 0 and true_max(t.inner) == 1:
            raise NotSupportedError(
                "components merge across window junctions")
        return FWrap(scaffold(t.inner), include_top=False)
    raise ValidationError(f"not an interval-union shape: {t.kind}")


# --------------------------------------------------------------------------
# derivative profiles
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CBProfile:
    """Iterated derivatives until the sequence vanishes or stabilises."""

    steps: tuple
    vanishing_index: int | None
    stabilizes_at: int | None

    @property
    def final(self) -> PtSetTerm:
        return self.steps[-1]


def cb_profile(t: PtSetTerm, max_steps: int = 32) -> CBProfile:
    cur = canonical(t)
    steps = [cur]
    for k in range(1, max_steps + 1):
        nxt = derive(cur)
        steps.append(nxt)
        if isinstance(nxt, Empty):
            return CBProfile(tuple(steps), k, None)
        if nxt == cur:
            return CBProfile(tuple(steps), None, k - 1)
        cur = nxt
    raise HorizonExceededError(
        f"derivative sequence did not settle within {max_steps} steps")


# --------------------------------------------------------------------------
# kernel split
# --------------------------------------------------------------------------

def kernel_split(t: PtSetTerm) -> tuple[PtSetTerm, PtSetTerm]:
    """Split into (dense-in-itself kernel, scattered remainder).

    Exact on the whole algebra: scattered sets are closed under finite
    unions, so the split distributes over every constructor here.
    """
    t = canonical(t)
    k, s = _split(t)
    return canonical(k), canonical(s)


def _split(t: PtSetTerm) -> tuple[PtSetTerm, PtSetTerm]:
    if isinstance(t, Empty):
        return EMPTY, EMPTY
    if isinstance(t, (Interval, Cantor, Thicken)):
        return t, EMPTY
    if isinstance(t, (Point, Ladder, EndpointSet)):
        return EMPTY, t
    if isinstance(t, FWrap):
        ki, si = _split(t.inner)
        if isinstance(canonical(ki), Empty):
            return EMPTY, t
        kern = FWrap(ki, include_top=t.include_top)
        scat = EMPTY if isinstance(canonical(si), Empty) \
            else FWrap(si, include_top=False)
        return kern, scat
    if isinstance(t, Affine):
        ki, si = _split(t.inner)
        return Affine(t.scale, t.shift, ki), Affine(t.scale, t.shift, si)
    if isinstance(t, Mirror):
        ki, si = _split(t.inner)
        return Mirror(t.center, ki), Mirror(t.center, si)
    if isinstance(t, Union):
        ks, ss = zip(*(_split(p) for p in t.parts))
        return Union(ks), Union(ss)
    raise UnsupportedSplitError(f"cannot split {t.kind}")


# --------------------------------------------------------------------------
# accumulation signature
# --------------------------------------------------------------------------

def signature(t: PtSetTerm, k_max: int = 24) -> frozenset:
    """Which derivative layers of the scattered part touch the kernel.

    Returns the set of ranks k >= 1 whose layer (k-th derivative of the
    scattered part minus the next one) meets the kernel.  Empty set for
    purely scattered or purely kernel inputs.

    Union members that are provably discrete (every point isolated in the
    whole set) are split off first and their limit points checked against
    the rest; this makes the reading stable under taking closures of
    discrete approximants, whose dust would otherwise mask the contact
    pattern.
    """
    t = canonical(t)
    if isinstance(t, Union):
        ladders, points, rest = [], [], []
        for p in t.parts:
            if isinstance(p, Point):
                points.append(p)
            elif _structurally_discrete(p):
                ladders.append(p)
            else:
                rest.append(p)
        if ladders or points:
            from .setcore import _member
            body = canonical(Union(tuple(rest))) if rest else EMPTY
            # point members already covered by the body are redundant
            kept = [p for p in points if not _member(body, p.a)]
            rest_t = canonical(Union(tuple(rest + kept)))
            for p in ladders:
                lims = _discrete_limits(p)
                ok = (all(_member(rest_t, x) for x in lims)
                      if lims is not None
                      else _limits_inside(derive(p), rest_t))
                if not ok:
                    raise NotSupportedError(
                        "discrete member has limit points outside the rest")
            return _signature(rest_t, k_max)
    return _signature(t, k_max)


def _signature(t: PtSetTerm, k_max: int) -> frozenset:
    kern, scat = kernel_split(t)
    if isinstance(kern, Empty) or isinstance(scat, Empty):
        return frozenset()
    parts = kern.parts if isinstance(kern, Union) else (kern,)

    touch = []  # touch[k] = sorted tuple of contact points of D^k with kernel
    cur = scat
    k = 0
    while not isinstance(cur, Empty):
        k += 1
        if k > k_max:
            raise HorizonExceededError(
                f"scattered part still nonempty after {k_max} derivatives")
        cur = derive(cur)
        pts = set()
        for p in parts:
            pts.update(intersect_points(cur, p))
        touch.append(frozenset(pts))
    touch.append(frozenset())  # one past vanishing
    out = {i + 1 for i in range(len(touch) - 1) if touch[i] - touch[i + 1]}
    return frozenset(out)


def _structurally_discrete(t: PtSetTerm) -> bool:
    if isinstance(t, Point):
        return True
    if isinstance(t, Ladder):
        return not t.include_target
    if isinstance(t, (Affine, Mirror)):
        return _structurally_discrete(t.inner)
    return False


def _discrete_limits(t: PtSetTerm):
    """Accumulation points of a structurally discrete part; None when the
    shape is not recognized."""
    if isinstance(t, Point):
        return []
    if isinstance(t, Ladder):
        return None if t.include_target else [t.target]
    if isinstance(t, Affine):
        inner = _discrete_limits(t.inner)
        return None if inner is None else [t.apply(x) for x in inner]
    if isinstance(t, Mirror):
        inner = _discrete_limits(t.inner)
        if inner is None:
            return None
        return inner + [2 * t.center - x for x in inner]
    return None


def _limits_inside(lim: PtSetTerm, host: PtSetTerm) -> bool:
    from .setcore import collect_points, member
    try:
        pts = collect_points(lim)
    except ValidationError:
        return False
    return all(member(host, p) for p in pts)
