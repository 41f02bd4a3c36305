"""Exact semantic operations on point-set terms.

Everything here is decided in exact rational arithmetic.  `member` is total
over the algebra; `meets` is decided on a documented fragment of term pairs
and raises UndecidablePairError outside it rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UndecidablePairError, ValidationError
from .rat import Rat, pow2
from .terms import (
    Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder, Mirror,
    Point, PtSetTerm, Thicken, Union, bounds, canonical, window, window_map,
    window_unmap,
)

#: sentinel returned by points_in when the range holds infinitely many points
INFINITE = object()

_ES_DEPTH_CAP = 40


# --------------------------------------------------------------------------
# membership
# --------------------------------------------------------------------------

def in_unit_cantor(y: Rat) -> bool:
    """Exact membership of a rational in the classical Cantor set on [0, 1].

    Runs the greedy ternary expansion with cycle detection; a digit 1 is
    acceptable only as the last nonzero digit (then the lower expansion
    ...0222... avoids 1).
    """
    if y < 0 or y > 1:
        return False
    if y == 1:
        return True
    seen = set()
    while True:
        if y == 0:
            return True
        if y in seen:
            return True
        seen.add(y)
        y3 = 3 * y
        digit = int(y3)
        rem = y3 - digit
        if digit == 1:
            return rem == 0
        y = rem


def _locate_windows(x: Rat) -> list[int]:
    """Indexes k with x in W_k; two entries at shared window endpoints."""
    if x < 0 or x >= 1:
        return []
    k = 1
    while Fraction(1) - pow2(-k) < x:
        k += 1
    if x == Fraction(1) - pow2(-k):
        return [k, k + 1]
    return [k]


def member(t: PtSetTerm, x: Rat) -> bool:
    return _member(canonical(t), Fraction(x))


def _member(t: PtSetTerm, x: Rat) -> bool:
    if isinstance(t, Empty):
        return False
    if isinstance(t, Point):
        return t.a == x
    if isinstance(t, Interval):
        return (t.a <= x <= t.b) if t.closed else (t.a < x < t.b)
    if isinstance(t, Cantor):
        return in_unit_cantor((x - t.a) / (t.b - t.a))
    if isinstance(t, Ladder):
        if x == t.target:
            return t.include_target
        if x > t.target or x < t.target - t.offset0:
            return False
        k = 0
        while True:
            p = t.point(k)
            if p == x:
                return True
            if p > x:
                return False
            k += 1
    if isinstance(t, FWrap):
        if x == 1:
            return t.include_top
        return any(_member(t.inner, window_unmap(k, x)) for k in _locate_windows(x))
    if isinstance(t, Affine):
        return _member(t.inner, t.unapply(x))
    if isinstance(t, Union):
        return any(_member(p, x) for p in t.parts)
    if isinstance(t, Thicken):
        a = wo_floor(t.inner, x)
        if a is None:
            return False
        return x <= a + thicken_eps(t, a)
    if isinstance(t, Mirror):
        return _member(t.inner, x) or _member(t.inner, 2 * t.center - x)
    if isinstance(t, EndpointSet):
        return _endpoint_query(t.of, lambda pts: x in pts, x, x)
    raise TypeError(f"unknown term {t!r}")


# --------------------------------------------------------------------------
# well-ordered helpers (Thicken inner grammar)
# --------------------------------------------------------------------------

def wo_min(t: PtSetTerm) -> Rat:
    if isinstance(t, Point):
        return t.a
    if isinstance(t, Ladder):
        return t.target - t.offset0
    if isinstance(t, FWrap):
        return window_map(1, wo_min(t.inner))
    if isinstance(t, Affine):
        return t.apply(wo_min(t.inner))
    if isinstance(t, Union):
        return min(wo_min(p) for p in t.parts)
    raise ValidationError(f"not a well-ordered shape: {t.kind}")


def wo_max(t: PtSetTerm) -> Rat:
    if isinstance(t, Point):
        return t.a
    if isinstance(t, Ladder):
        return t.target
    if isinstance(t, FWrap):
        return Fraction(1)
    if isinstance(t, Affine):
        return t.apply(wo_max(t.inner))
    if isinstance(t, Union):
        return max(wo_max(p) for p in t.parts)
    raise ValidationError(f"not a well-ordered shape: {t.kind}")


def wo_succ(t: PtSetTerm, a: Rat) -> Rat | None:
    """Immediate successor of a within the well-ordered set; None at the max."""
    if isinstance(t, Point):
        return None
    if isinstance(t, Ladder):
        if a == t.target:
            return None
        k = 0
        while True:
            p = t.point(k)
            if p == a:
                nxt = t.point(k + 1)
                return nxt if nxt < t.target else t.target
            if p > a:
                raise ValidationError(f"{a} is not a ladder point")
            k += 1
    if isinstance(t, FWrap):
        if a == 1:
            return None
        cands = []
        for k in _locate_windows(a):
            b = window_unmap(k, a)
            if not (0 <= b <= 1) or not _member(t.inner, b):
                continue
            s = wo_succ(t.inner, b)
            if s is not None:
                cands.append(window_map(k, s))
            else:
                m = wo_min(t.inner)
                nxt = window_map(k + 1, m)
                if nxt == a:
                    s2 = wo_succ(t.inner, m)
                    nxt = (window_map(k + 1, s2) if s2 is not None
                           else window_map(k + 2, m))
                cands.append(nxt)
        cands = [c for c in cands if c > a]
        if not cands:
            raise ValidationError(f"{a} is not in the wrapped set")
        return min(cands)
    if isinstance(t, Affine):
        s = wo_succ(t.inner, t.unapply(a))
        return None if s is None else t.apply(s)
    if isinstance(t, Union):
        parts = sorted(t.parts, key=lambda p: wo_min(p))
        for i, p in enumerate(parts):
            if wo_min(p) <= a <= wo_max(p) and _member(p, a):
                s = wo_succ(p, a)
                if s is not None:
                    return s
                return wo_min(parts[i + 1]) if i + 1 < len(parts) else None
        raise ValidationError(f"{a} is not in the union")
    raise ValidationError(f"not a well-ordered shape: {t.kind}")


def wo_floor(t: PtSetTerm, x: Rat) -> Rat | None:
    """Largest element of the well-ordered set that is <= x, None if below min."""
    if isinstance(t, Point):
        return t.a if t.a <= x else None
    if isinstance(t, Ladder):
        if x >= t.target:
            return t.target
        if x < t.target - t.offset0:
            return None
        best = None
        k = 0
        while True:
            p = t.point(k)
            if p > x:
                return best
            best = p
            k += 1
    if isinstance(t, FWrap):
        if x >= 1:
            return Fraction(1)
        lo1 = window_map(1, wo_min(t.inner))
        if x < lo1:
            return None
        k = _locate_windows(x)[0]
        fl = wo_floor(t.inner, window_unmap(k, x))
        if fl is not None:
            return window_map(k, fl)
        return window_map(k - 1, wo_max(t.inner)) if k > 1 else None
    if isinstance(t, Affine):
        fl = wo_floor(t.inner, t.unapply(x))
        return None if fl is None else t.apply(fl)
    if isinstance(t, Union):
        best = None
        for p in t.parts:
            if wo_min(p) <= x:
                fl = wo_floor(p, x)
                if fl is not None and (best is None or fl > best):
                    best = fl
        return best
    raise ValidationError(f"not a well-ordered shape: {t.kind}")


def thicken_eps(t: Thicken, a: Rat) -> Rat:
    """The exact interval length attached to inner point a."""
    s = wo_succ(t.inner, a)
    if s is None:
        return t.cap
    return min(t.cap, (s - a) / 2)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Approximation:
    """Finite sound view of a denotation at a given depth.

    Every listed point and interval is contained in the true set; every true
    point is within `tolerance` of a listed point or interval.
    """

    depth: int
    points: tuple
    intervals: tuple
    tolerance: Rat


def _floor_tol(depth: int) -> Rat:
    return pow2(-(depth + 4))


def enumerate_term(t: PtSetTerm, depth: int) -> Approximation:
    if depth < 1:
        raise ValidationError("enumeration depth must be >= 1")
    pts, ivs, tol = _enum(canonical(t), depth)
    return Approximation(depth, tuple(sorted(set(pts))),
                         tuple(sorted(set(ivs))), tol)


def _enum(t: PtSetTerm, depth: int):
    if isinstance(t, Empty):
        return [], [], _floor_tol(depth)
    if isinstance(t, Point):
        return [t.a], [], _floor_tol(depth)
    if isinstance(t, Interval):
        if t.closed:
            return [t.a, t.b], [(t.a, t.b)], _floor_tol(depth)
        inset = min((t.b - t.a) / 4, pow2(-depth))
        return ([(t.a + t.b) / 2], [(t.a + inset, t.b - inset)], inset)
    if isinstance(t, Ladder):
        pts = [t.point(k) for k in range(depth)]
        if t.include_target:
            # unlisted tail sits within offset0*ratio^depth of the target
            pts.append(t.target)
            return pts, [], t.offset0 * t.ratio ** depth
        # no listed target, so the last step must cover the tail itself
        return pts, [], t.offset0 * t.ratio ** (depth - 1)
    if isinstance(t, Cantor):
        span = t.b - t.a
        stage = [(Fraction(0), Fraction(1))]
        for _ in range(depth):
            nxt = []
            for lo, hi in stage:
                w = (hi - lo) / 3
                nxt.append((lo, lo + w))
                nxt.append((hi - w, hi))
            stage = nxt
        pts = sorted({t.a + span * e for iv in stage for e in iv})
        ivs = [(t.a + span * lo, t.a + span * hi) for lo, hi in stage]
        return pts, ivs, span * Fraction(1, 3**depth)
    if isinstance(t, FWrap):
        ipts, iivs, itol = _enum(t.inner, depth)
        pts, ivs = [], []
        for k in range(1, depth + 1):
            pts.extend(window_map(k, p) for p in ipts)
            ivs.extend((window_map(k, lo), window_map(k, hi)) for lo, hi in iivs)
        if t.include_top:
            pts.append(Fraction(1))
        # unresolved windows live above the last listed one; cover them
        # with one interval so the tolerance can stay at window scale
        ivs.append((Fraction(1) - pow2(-depth), Fraction(1)))
        return pts, ivs, itol / 2
    if isinstance(t, Affine):
        ipts, iivs, itol = _enum(t.inner, depth)
        pts = [t.apply(p) for p in ipts]
        ivs = [tuple(sorted((t.apply(lo), t.apply(hi)))) for lo, hi in iivs]
        return pts, ivs, itol * abs(t.scale)
    if isinstance(t, Union):
        pts, ivs, tol = [], [], _floor_tol(depth)
        for p in t.parts:
            pp, ii, tt = _enum(p, depth)
            pts.extend(pp)
            ivs.extend(ii)
            tol = max(tol, tt)
        return pts, ivs, tol
    if isinstance(t, Thicken):
        ipts, _, itol = _enum(t.inner, depth)
        pts, ivs = [], []
        for a in ipts:
            e = thicken_eps(t, a)
            pts.extend((a, a + e))
            ivs.append((a, a + e))
        return pts, ivs, itol
    if isinstance(t, Mirror):
        ipts, iivs, itol = _enum(t.inner, depth)
        c2 = 2 * t.center
        pts = list(ipts) + [c2 - p for p in ipts]
        ivs = list(iivs) + [(c2 - hi, c2 - lo) for lo, hi in iivs]
        return pts, ivs, itol
    if isinstance(t, EndpointSet):
        _, iivs, itol = _enum(t.of, depth)
        comps = merge_touching(sorted(iivs))
        # pieces seated on an accumulation site stay crowded by unlisted
        # neighbours at every finite depth; their pairs are omitted
        sites = set(_accumulation_sites(t.of, depth))
        pts = [e for lo, hi in comps for e in (lo, hi)
               if lo not in sites and hi not in sites]
        return pts, [], itol
    raise TypeError(f"unknown term {t!r}")


def _accumulation_sites(t: PtSetTerm, depth: int) -> list:
    """Accumulation points of the piece pattern of an interval-union term,
    truncated to the windows visible at the given depth."""
    if isinstance(t, (Empty, Point, Interval)):
        return []
    if isinstance(t, Ladder):
        return [t.target]
    if isinstance(t, Thicken):
        return _accumulation_sites(t.inner, depth)
    if isinstance(t, FWrap):
        inner = _accumulation_sites(t.inner, depth)
        out = [Fraction(1)]
        for k in range(1, depth + 1):
            out.extend(window_map(k, s) for s in inner)
        return out
    if isinstance(t, Affine):
        return [t.apply(s) for s in _accumulation_sites(t.inner, depth)]
    if isinstance(t, Mirror):
        inner = _accumulation_sites(t.inner, depth)
        return inner + [2 * t.center - s for s in inner]
    if isinstance(t, Union):
        return [s for p in t.parts for s in _accumulation_sites(p, depth)]
    return []


def merge_touching(ivs: list[tuple]) -> list[tuple]:
    """Merge a sorted list of closed intervals whose union is connected."""
    out: list[tuple] = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def resolved_frontier(t: PtSetTerm, depth: int) -> Rat | None:
    """Position below which the depth-d enumeration is guaranteed complete.

    None means the enumeration is complete everywhere.  Conservative for
    mirrored or negatively scaled structures.
    """
    t = canonical(t)
    return _frontier(t, depth)


def _frontier(t: PtSetTerm, depth: int) -> Rat | None:
    if isinstance(t, (Empty, Point, Interval)):
        return None
    if isinstance(t, Cantor):
        return t.a
    if isinstance(t, Ladder):
        return t.point(depth)
    if isinstance(t, FWrap):
        fi = _frontier(t.inner, depth)
        tail = Fraction(1) - pow2(-depth)
        return tail if fi is None else min(window_map(1, fi), tail)
    if isinstance(t, Affine):
        fi = _frontier(t.inner, depth)
        if fi is None:
            return None
        if t.scale > 0:
            return t.apply(fi)
        bb = bounds(t)
        return bb[0] if bb is not None else None
    if isinstance(t, Union):
        fs = [_frontier(p, depth) for p in t.parts]
        fs = [f for f in fs if f is not None]
        return min(fs) if fs else None
    if isinstance(t, Thicken):
        return _frontier(t.inner, depth)
    if isinstance(t, Mirror):
        fi = _frontier(t.inner, depth)
        if fi is None:
            return None
        bb = bounds(t.inner)
        return min(fi, 2 * t.center - bb[1])
    if isinstance(t, EndpointSet):
        return _frontier(t.of, depth)
    raise TypeError(f"unknown term {t!r}")


def true_min(t: PtSetTerm) -> Rat | None:
    """Attained minimum of the denotation, None when missing or unattained."""
    t = canonical(t)
    return _true_extreme(t, low=True)


def true_max(t: PtSetTerm) -> Rat | None:
    t = canonical(t)
    return _true_extreme(t, low=False)


def _true_extreme(t: PtSetTerm, low: bool) -> Rat | None:
    if isinstance(t, Empty):
        return None
    if isinstance(t, Point):
        return t.a
    if isinstance(t, Interval):
        if not t.closed:
            return None
        return t.a if low else t.b
    if isinstance(t, Cantor):
        return t.a if low else t.b
    if isinstance(t, Ladder):
        if low:
            return t.target - t.offset0
        return t.target if t.include_target else None
    if isinstance(t, FWrap):
        if low:
            m = _true_extreme(t.inner, True)
            return None if m is None else window_map(1, m)
        return Fraction(1) if t.include_top else None
    if isinstance(t, Affine):
        m = _true_extreme(t.inner, low if t.scale > 0 else not low)
        return None if m is None else t.apply(m)
    if isinstance(t, Union):
        picked = None
        for p in t.parts:
            bb = bounds(p)
            if bb is None:
                continue
            key = bb[0] if low else bb[1]
            if picked is None or (key < picked[0] if low else key > picked[0]):
                picked = (key, p)
        if picked is None:
            return None
        cand = _true_extreme(picked[1], low)
        # another part could attain the same bound even if this one does not
        if cand is None:
            others = [_true_extreme(p, low) for p in t.parts if p is not picked[1]]
            others = [o for o in others if o is not None]
            if others:
                return min(others) if low else max(others)
        return cand
    if isinstance(t, Thicken):
        if low:
            return _true_extreme(t.inner, True)
        m = _true_extreme(t.inner, False)
        return None if m is None else m + t.cap
    if isinstance(t, Mirror):
        mi_lo = _true_extreme(t.inner, True)
        mi_hi = _true_extreme(t.inner, False)
        if low:
            cands = [x for x in (mi_lo, None if mi_hi is None else 2 * t.center - mi_hi)
                     if x is not None]
            return min(cands) if cands else None
        cands = [x for x in (mi_hi, None if mi_lo is None else 2 * t.center - mi_lo)
                 if x is not None]
        return max(cands) if cands else None
    if isinstance(t, EndpointSet):
        return _true_extreme(t.of, low)
    raise TypeError(f"unknown term {t!r}")


# --------------------------------------------------------------------------
# points_in: exact finite point extraction over scattered shapes
# --------------------------------------------------------------------------

def points_in(t: PtSetTerm, lo: Rat, hi: Rat):
    """All points of a scattered-shaped term inside [lo, hi].

    Returns a set of Fractions, or the INFINITE sentinel when the closed
    range contains infinitely many points (an accumulation target inside).
    Raises on interval-bearing shapes; those are not point-enumerable.
    """
    return _points_in(canonical(t), Fraction(lo), Fraction(hi))


def _points_in(t: PtSetTerm, lo: Rat, hi: Rat):
    if lo > hi:
        return set()
    if isinstance(t, Empty):
        return set()
    if isinstance(t, Point):
        return {t.a} if lo <= t.a <= hi else set()
    if isinstance(t, Ladder):
        if t.target <= lo:
            return {t.target} if t.include_target and t.target == lo else set()
        if t.target <= hi:
            return INFINITE
        out = set()
        k = 0
        while True:
            p = t.point(k)
            if p > hi:
                return out
            if p >= lo:
                out.add(p)
            k += 1
    if isinstance(t, FWrap):
        if lo < 1 <= hi:
            return INFINITE
        out = set()
        if t.include_top and lo <= 1 <= hi:
            out.add(Fraction(1))
        if lo >= 1:
            return out
        k = 1
        while True:
            wlo, whi = window(k)
            if wlo > hi or wlo >= 1:
                return out
            if whi >= lo:
                sub = _points_in(t.inner, window_unmap(k, max(lo, wlo)),
                                 window_unmap(k, min(hi, whi)))
                if sub is INFINITE:
                    return INFINITE
                out.update(window_map(k, p) for p in sub)
            k += 1
    if isinstance(t, Affine):
        x, y = t.unapply(lo), t.unapply(hi)
        sub = _points_in(t.inner, min(x, y), max(x, y))
        if sub is INFINITE:
            return INFINITE
        return {t.apply(p) for p in sub}
    if isinstance(t, Union):
        out = set()
        for p in t.parts:
            sub = _points_in(p, lo, hi)
            if sub is INFINITE:
                return INFINITE
            out.update(sub)
        return out
    if isinstance(t, Mirror):
        a = _points_in(t.inner, lo, hi)
        if a is INFINITE:
            return INFINITE
        b = _points_in(t.inner, 2 * t.center - hi, 2 * t.center - lo)
        if b is INFINITE:
            return INFINITE
        return a | {2 * t.center - p for p in b}
    raise UndecidablePairError(
        f"points_in needs a scattered shape, got {t.kind}")


def intersect_points(a: PtSetTerm, b: PtSetTerm) -> tuple:
    """Exact common points of a scattered term a with an arbitrary term b."""
    a, b = canonical(a), canonical(b)
    ba, bb = bounds(a), bounds(b)
    if ba is None or bb is None:
        return ()
    lo, hi = max(ba[0], bb[0]), min(ba[1], bb[1])
    if lo > hi:
        return ()
    pts = _points_in(a, lo, hi)
    if pts is INFINITE:
        got = _intersect_by_pieces(a, b, hi)
        if got is not None:
            return got
        raise UndecidablePairError(
            "infinitely many candidate points in the overlap")
    return tuple(sorted(p for p in pts if _member(b, p)))


def _intersect_by_pieces(a: PtSetTerm, b: PtSetTerm, hi: Rat):
    """Split a wide b into window copies whose hulls are narrow enough for
    the point scan on a to stay finite; None when b has no decomposition."""
    if isinstance(b, FWrap):
        out = set()
        if b.include_top and _member(a, Fraction(1)):
            out.add(Fraction(1))
        for k in range(1, 97):
            wlo, _ = window(k)
            if wlo > hi:
                break
            piece = canonical(Affine(pow2(-k), wlo, b.inner))
            out.update(intersect_points(a, piece))
        else:
            return None
        return tuple(sorted(out))
    if isinstance(b, Union):
        out = set()
        for p in b.parts:
            out.update(intersect_points(a, p))
        return tuple(sorted(out))
    return None


def collect_points(t: PtSetTerm) -> list:
    """All points of a finite point-only term, sorted."""
    t = canonical(t)
    bb = bounds(t)
    if bb is None:
        return []
    pts = _points_in(t, bb[0], bb[1])
    if pts is INFINITE:
        raise ValidationError("term has infinitely many points")
    return sorted(pts)


# --------------------------------------------------------------------------
# meets
# --------------------------------------------------------------------------

def meets(a: PtSetTerm, b: PtSetTerm) -> bool:
    """Exact nonempty-intersection test on the decidable fragment."""
    return _meets(canonical(a), canonical(b))


def _boxes_apart(a: PtSetTerm, b: PtSetTerm) -> bool:
    ba, bb = bounds(a), bounds(b)
    if ba is None or bb is None:
        return True
    return ba[1] < bb[0] or bb[1] < ba[0]


def _meets(a: PtSetTerm, b: PtSetTerm) -> bool:
    if isinstance(a, Empty) or isinstance(b, Empty):
        return False
    if _boxes_apart(a, b):
        return False
    if isinstance(a, Point):
        return _member(b, a.a)
    if isinstance(b, Point):
        return _member(a, b.a)
    if isinstance(a, Union):
        return any(_meets(p, b) for p in a.parts)
    if isinstance(b, Union):
        return any(_meets(a, p) for p in b.parts)
    if isinstance(a, Affine):
        nb = canonical(Affine(1 / a.scale, -a.shift / a.scale, b))
        if not isinstance(nb, Affine):
            return _meets(a.inner, nb)
    if isinstance(b, Affine):
        na = canonical(Affine(1 / b.scale, -b.shift / b.scale, a))
        if not isinstance(na, Affine):
            return _meets(b.inner, na)
    if isinstance(a, Mirror):
        return (_meets(a.inner, b)
                or _meets(canonical(Affine(Fraction(-1), 2 * a.center, a.inner)), b))
    if isinstance(b, Mirror):
        return _meets(b, a)

    if isinstance(a, Interval) and a.closed:
        return _meets_closed_interval(b, a.a, a.b)
    if isinstance(b, Interval) and b.closed:
        return _meets_closed_interval(a, b.a, b.b)
    if isinstance(a, Interval) and isinstance(b, Interval):
        lo, hi = max(a.a, b.a), min(a.b, b.b)
        return lo < hi  # both open here
    if isinstance(a, Interval):
        a, b = b, a
    if isinstance(b, Interval):  # open interval vs structured term
        if isinstance(a, Ladder):
            return _ladder_meets_open(a, b.a, b.b)
        raise UndecidablePairError(f"open interval vs {a.kind}")

    # both structured: cheap attained-extreme probes first
    for p in (true_min(a), true_max(a)):
        if p is not None and _member(b, p):
            return True
    for p in (true_min(b), true_max(b)):
        if p is not None and _member(a, p):
            return True

    ba, bb = bounds(a), bounds(b)
    lo, hi = max(ba[0], bb[0]), min(ba[1], bb[1])
    if lo == hi:
        return _member(a, lo) and _member(b, lo)
    for x, y in ((a, b), (b, a)):
        try:
            pts = _points_in(x, lo, hi)
        except UndecidablePairError:
            continue
        if pts is not INFINITE:
            return any(_member(y, p) for p in pts)
    if isinstance(a, Cantor) and isinstance(b, Cantor):
        if (a.a, a.b) == (b.a, b.b):
            return True
    raise UndecidablePairError(f"meets undecided for {a.kind} vs {b.kind}")


def _meets_closed_interval(t: PtSetTerm, lo: Rat, hi: Rat) -> bool:
    """Does t intersect the closed interval [lo, hi]?  t is canonical."""
    if isinstance(t, Empty):
        return False
    bb = bounds(t)
    if bb is None or bb[1] < lo or hi < bb[0]:
        return False
    if isinstance(t, Point):
        return lo <= t.a <= hi
    if isinstance(t, Interval):
        if t.closed:
            return max(t.a, lo) <= min(t.b, hi)
        return max(t.a, lo) < min(t.b, hi) or (lo > t.a and lo < t.b) \
            or (hi > t.a and hi < t.b)
    if isinstance(t, Union):
        return any(_meets_closed_interval(p, lo, hi) for p in t.parts)
    if isinstance(t, Affine):
        x, y = t.unapply(lo), t.unapply(hi)
        return _meets_closed_interval(t.inner, min(x, y), max(x, y))
    if isinstance(t, Mirror):
        return (_meets_closed_interval(t.inner, lo, hi)
                or _meets_closed_interval(
                    t.inner, 2 * t.center - hi, 2 * t.center - lo))
    if isinstance(t, Ladder):
        pts = _points_in(t, lo, hi)
        return True if pts is INFINITE else bool(pts)
    if isinstance(t, FWrap):
        pts = _points_in(t, lo, hi)
        return True if pts is INFINITE else bool(pts)
    if isinstance(t, Cantor):
        u_lo = (lo - t.a) / (t.b - t.a)
        u_hi = (hi - t.a) / (t.b - t.a)
        return _unit_cantor_meets(max(u_lo, Fraction(0)), min(u_hi, Fraction(1)))
    if isinstance(t, Thicken):
        a = wo_floor(t.inner, hi)
        if a is None:
            return False
        return a + thicken_eps(t, a) >= lo
    if isinstance(t, EndpointSet):
        return _endpoint_query(
            t.of, lambda pts: any(lo <= p <= hi for p in pts), lo, hi)
    raise UndecidablePairError(f"interval vs {t.kind}")


def _unit_cantor_meets(lo: Rat, hi: Rat) -> bool:
    """Does the unit Cantor set intersect [lo, hi] (subset of [0, 1])?"""
    while True:
        if lo > hi:
            return False
        if lo == hi:
            return in_unit_cantor(lo)
        if lo <= 0 or hi >= 1:
            return True
        third1, third2 = Fraction(1, 3), Fraction(2, 3)
        if lo <= third1 <= hi or lo <= third2 <= hi:
            return True
        if hi < third1:
            lo, hi = 3 * lo, 3 * hi
        elif lo > third2:
            lo, hi = 3 * lo - 2, 3 * hi - 2
        else:
            return False  # strictly inside the middle gap


def _ladder_meets_open(t: Ladder, lo: Rat, hi: Rat) -> bool:
    pts = _points_in(t, lo, hi)
    if pts is INFINITE:
        return True  # infinitely many distinct points cannot all be endpoints
    return any(lo < p < hi for p in pts)


def _endpoint_query(of: PtSetTerm, pred, lo: Rat, hi: Rat) -> bool:
    """Adaptively resolve component endpoints of `of` until pred is settled.

    pred receives the endpoint set known at the current depth; returns True
    as soon as pred holds, False once the frontier has passed hi.
    """
    depth = 2
    while depth <= _ES_DEPTH_CAP:
        _, ivs, _ = _enum(canonical(of), depth)
        comps = merge_touching(sorted(ivs))
        pts = {e for c in comps for e in c}
        if pred(pts):
            return True
        fr = resolved_frontier(of, depth)
        if fr is None or fr > hi:
            return False
        depth += 4
    raise UndecidablePairError("endpoint query did not stabilise")
