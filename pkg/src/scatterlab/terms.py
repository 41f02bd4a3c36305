"""Symbolic terms for point sets on the line.

A term denotes a subset of the rationals' completion (i.e. of R), built from
eleven constructors.  Denotations:

  Empty                          {}
  Point(a)                       {a}
  Interval(a, b[, closed])       [a, b]  (or ]a, b[ when closed=False)
  Ladder(t, o, r, inc)           {t - o*r^k : k >= 0}, plus {t} when inc
  Cantor(a, b)                   the middle-thirds Cantor set scaled to [a, b]
  FWrap(inner, top)              union over k >= 1 of copy_k(inner), plus {1}
                                 when top, where copy_k maps [0, 1] affinely
                                 onto the window W_k = [1 - 2^(1-k), 1 - 2^-k]
  Affine(s, h, inner)            {s*x + h : x in inner}, s != 0
  Union(parts)                   set union
  Thicken(inner, cap)            union of [a, a + eps(a)] over a in inner,
                                 eps(a) = min(cap, (succ(a) - a)/2), and
                                 eps(max) = cap; inner must be compact
                                 well-ordered (checked structurally)
  Mirror(c, inner)               inner together with its reflection 2c - x
  EndpointSet(of)                the component endpoints of an interval-union
                                 shaped term

Ladders accumulate at their target from below; FWrap windows accumulate at 1.
Terms may denote non-closed sets (a Ladder without its target, for instance).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from fractions import Fraction

from .errors import ValidationError
from .rat import Rat, pow2, rat

__all__ = [
    "PtSetTerm", "Empty", "Point", "Interval", "Ladder", "Cantor", "FWrap",
    "Affine", "Union", "Thicken", "Mirror", "EndpointSet",
    "bounds", "canonical", "struct_key", "window", "window_map", "window_unmap",
    "EMPTY",
]


class PtSetTerm:
    """Common base class; concrete terms are frozen dataclasses."""

    __slots__ = ()

    @property
    def kind(self) -> str:
        return type(self).__name__.lower()


def _coerce(obj, *names) -> None:
    for name in names:
        object.__setattr__(obj, name, rat(getattr(obj, name)))


@dataclass(frozen=True)
class Empty(PtSetTerm):
    pass


EMPTY = Empty()


@dataclass(frozen=True)
class Point(PtSetTerm):
    a: Rat

    def __post_init__(self):
        _coerce(self, "a")


@dataclass(frozen=True)
class Interval(PtSetTerm):
    a: Rat
    b: Rat
    closed: bool = True

    def __post_init__(self):
        _coerce(self, "a", "b")
        if not self.a < self.b:
            raise ValidationError(f"Interval needs a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class Ladder(PtSetTerm):
    """Geometric ladder {target - offset0 * ratio^k : k >= 0} climbing to target."""

    target: Rat
    offset0: Rat
    ratio: Rat
    include_target: bool = True

    def __post_init__(self):
        _coerce(self, "target", "offset0", "ratio")
        if not self.offset0 > 0:
            raise ValidationError("Ladder offset0 must be positive")
        if not (0 < self.ratio < 1):
            raise ValidationError("Ladder ratio must lie strictly between 0 and 1")

    def point(self, k: int) -> Rat:
        return self.target - self.offset0 * self.ratio**k


@dataclass(frozen=True)
class Cantor(PtSetTerm):
    a: Rat
    b: Rat

    def __post_init__(self):
        _coerce(self, "a", "b")
        if not self.a < self.b:
            raise ValidationError(f"Cantor needs a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class FWrap(PtSetTerm):
    inner: PtSetTerm
    include_top: bool = True

    def __post_init__(self):
        if not isinstance(self.inner, PtSetTerm):
            raise ValidationError("FWrap inner must be a term")
        bb = bounds(self.inner)
        if bb is not None and not (0 <= bb[0] and bb[1] <= 1):
            raise ValidationError(f"FWrap inner must live inside [0, 1], bounds {bb}")


@dataclass(frozen=True)
class Affine(PtSetTerm):
    scale: Rat
    shift: Rat
    inner: PtSetTerm

    def __post_init__(self):
        _coerce(self, "scale", "shift")
        if self.scale == 0:
            raise ValidationError("Affine scale must be nonzero")

    def apply(self, x: Rat) -> Rat:
        return self.scale * x + self.shift

    def unapply(self, y: Rat) -> Rat:
        return (y - self.shift) / self.scale


@dataclass(frozen=True)
class Union(PtSetTerm):
    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        for p in self.parts:
            if not isinstance(p, PtSetTerm):
                raise ValidationError("Union parts must be terms")


@dataclass(frozen=True)
class Thicken(PtSetTerm):
    inner: PtSetTerm
    cap: Rat

    def __post_init__(self):
        _coerce(self, "cap")
        if not self.cap > 0:
            raise ValidationError("Thicken cap must be positive")
        if not isinstance(self.inner, Empty) and not _well_ordered_shape(self.inner):
            raise ValidationError(
                "Thicken inner must be compact well-ordered: Point, Ladder with "
                "target, FWrap with top, positive Affine or separated Union of such")


@dataclass(frozen=True)
class Mirror(PtSetTerm):
    center: Rat
    inner: PtSetTerm

    def __post_init__(self):
        _coerce(self, "center")


@dataclass(frozen=True)
class EndpointSet(PtSetTerm):
    of: PtSetTerm

    def __post_init__(self):
        if not isinstance(self.of, Empty) and not _interval_union_shape(self.of):
            raise ValidationError(
                "EndpointSet applies to interval-union shaped terms "
                "(Interval/Thicken/Mirror/Affine/Union, FWrap without top)")


# --- structural shape predicates -------------------------------------------

def _well_ordered_shape(t: PtSetTerm) -> bool:
    """Compact well-ordered grammar accepted as Thicken inner."""
    if isinstance(t, Point):
        return True
    if isinstance(t, Ladder):
        return t.include_target
    if isinstance(t, FWrap):
        return t.include_top and _well_ordered_shape(t.inner)
    if isinstance(t, Affine):
        return t.scale > 0 and _well_ordered_shape(t.inner)
    if isinstance(t, Union):
        if not all(_well_ordered_shape(p) for p in t.parts):
            return False
        bs = [bounds(p) for p in t.parts]
        if any(b is None for b in bs):
            return False
        bs.sort()
        return all(bs[i][1] < bs[i + 1][0] for i in range(len(bs) - 1))
    return False


def _interval_union_shape(t: PtSetTerm) -> bool:
    if isinstance(t, Interval):
        return t.closed
    if isinstance(t, Thicken):
        return True
    if isinstance(t, Mirror):
        return _interval_union_shape(t.inner)
    if isinstance(t, Affine):
        return _interval_union_shape(t.inner)
    if isinstance(t, FWrap):
        return (not t.include_top) and _interval_union_shape(t.inner)
    if isinstance(t, Union):
        return len(t.parts) > 0 and all(_interval_union_shape(p) for p in t.parts)
    return False


# --- windows of the wrap compressor ----------------------------------------

def window(k: int) -> tuple[Rat, Rat]:
    """W_k = [1 - 2^(1-k), 1 - 2^-k], the k-th wrap window (k >= 1)."""
    return Fraction(1) - pow2(1 - k), Fraction(1) - pow2(-k)


def window_map(k: int, x: Rat) -> Rat:
    lo, _ = window(k)
    return lo + pow2(-k) * x


def window_unmap(k: int, y: Rat) -> Rat:
    lo, _ = window(k)
    return (y - lo) * pow2(k)


# --- bounding intervals ----------------------------------------------------

def bounds(t: PtSetTerm) -> tuple[Rat, Rat] | None:
    """Smallest closed interval containing the denotation, None for Empty.

    The bounding endpoints need not belong to the set (open intervals,
    ladders without target).
    """
    if isinstance(t, Empty):
        return None
    if isinstance(t, Point):
        return t.a, t.a
    if isinstance(t, (Interval, Cantor)):
        return t.a, t.b
    if isinstance(t, Ladder):
        return t.target - t.offset0, t.target
    if isinstance(t, FWrap):
        bb = bounds(t.inner)
        if bb is None:
            return (Fraction(1), Fraction(1)) if t.include_top else None
        return window_map(1, bb[0]), Fraction(1)
    if isinstance(t, Affine):
        bb = bounds(t.inner)
        if bb is None:
            return None
        x, y = t.apply(bb[0]), t.apply(bb[1])
        return (x, y) if x <= y else (y, x)
    if isinstance(t, Union):
        bs = [bounds(p) for p in t.parts]
        bs = [b for b in bs if b is not None]
        if not bs:
            return None
        return min(b[0] for b in bs), max(b[1] for b in bs)
    if isinstance(t, Thicken):
        bb = bounds(t.inner)
        if bb is None:
            return None
        return bb[0], bb[1] + t.cap
    if isinstance(t, Mirror):
        bb = bounds(t.inner)
        if bb is None:
            return None
        ref = (2 * t.center - bb[1], 2 * t.center - bb[0])
        return min(bb[0], ref[0]), max(bb[1], ref[1])
    if isinstance(t, EndpointSet):
        return bounds(t.of)
    raise TypeError(f"unknown term {t!r}")


# --- canonical form --------------------------------------------------------

_KIND_RANK = {
    "empty": 0, "point": 1, "interval": 2, "ladder": 3, "cantor": 4,
    "fwrap": 5, "affine": 6, "union": 7, "thicken": 8, "mirror": 9,
    "endpointset": 10,
}


def struct_key(t: PtSetTerm):
    """Deterministic total order on terms (used for sorting Union parts)."""
    vals = []
    for f in fields(t):
        v = getattr(t, f.name)
        if isinstance(v, PtSetTerm):
            vals.append(struct_key(v))
        elif isinstance(v, tuple):
            vals.append(tuple(struct_key(p) for p in v))
        elif isinstance(v, bool):
            vals.append((Fraction(int(v)),))
        elif isinstance(v, Fraction):
            vals.append((v,))
        else:
            vals.append((Fraction(0),))
    return (_KIND_RANK[t.kind],) + tuple(vals)


def _sort_key(t: PtSetTerm):
    bb = bounds(t)
    lo, hi = bb if bb is not None else (Fraction(0), Fraction(0))
    return (lo, hi, struct_key(t))


def _merge_interval_pair(x: Interval, y: Interval) -> Interval | None:
    """Merge two sorted intervals when their union is again an interval."""
    if y.a > x.b:
        return None
    if x.closed and y.closed:
        if y.a <= x.b:
            return x if y.b <= x.b else Interval(x.a, max(x.b, y.b))
        return None
    if not x.closed and not y.closed:
        if y.a < x.b:
            return x if y.b <= x.b else Interval(x.a, max(x.b, y.b), closed=False)
        return None
    # mixed openness: only absorb a subset
    if x.closed and not y.closed and x.a <= y.a and y.b <= x.b:
        return x
    if not x.closed and y.closed and x.a < y.a and y.b < x.b:
        return x
    if y.closed and y.a <= x.a and x.b <= y.b:
        return y
    return None


def _canonical_union(parts: list[PtSetTerm]) -> PtSetTerm:
    flat: list[PtSetTerm] = []
    for p in parts:
        if isinstance(p, Union):
            flat.extend(p.parts)
        elif not isinstance(p, Empty):
            flat.append(p)
    flat.sort(key=_sort_key)

    # drop exact duplicates
    dedup: list[PtSetTerm] = []
    for p in flat:
        if not dedup or struct_key(dedup[-1]) != struct_key(p):
            dedup.append(p)

    # merge intervals, absorb covered points; parts arrive sorted by lower
    # endpoint, so running maxima of interval right ends decide coverage
    merged: list[PtSetTerm] = []
    closed_hi = open_hi = None
    for p in dedup:
        if merged and isinstance(merged[-1], Interval) and isinstance(p, Interval):
            m = _merge_interval_pair(merged[-1], p)
            if m is not None:
                merged[-1] = m
                if m.closed:
                    closed_hi = m.b if closed_hi is None else max(closed_hi, m.b)
                else:
                    open_hi = m.b if open_hi is None else max(open_hi, m.b)
                continue
        if isinstance(p, Point):
            if closed_hi is not None and p.a <= closed_hi:
                continue
            if open_hi is not None and p.a < open_hi:
                continue
        if isinstance(p, Interval):
            if p.closed:
                closed_hi = p.b if closed_hi is None else max(closed_hi, p.b)
            else:
                open_hi = p.b if open_hi is None else max(open_hi, p.b)
        merged.append(p)

    if not merged:
        return EMPTY
    if len(merged) == 1:
        return merged[0]
    return Union(tuple(merged))


def canonical(t: PtSetTerm) -> PtSetTerm:
    """Rewrite to the canonical form used for structural equality.

    Affine maps are pushed through Points, Intervals, Cantors, Ladders,
    Unions, Mirrors and (for positive scale) Thickens and composed with
    nested Affines; Unions are flattened, sorted by bounding interval and
    overlap-merged; degenerate wrappers collapse.
    """
    if isinstance(t, (Empty, Point, Interval, Cantor, Ladder)):
        return t

    if isinstance(t, Union):
        return _canonical_union([canonical(p) for p in t.parts])

    if isinstance(t, FWrap):
        inner = canonical(t.inner)
        if isinstance(inner, Empty):
            return Point(Fraction(1)) if t.include_top else EMPTY
        return FWrap(inner, t.include_top)

    if isinstance(t, Mirror):
        inner = canonical(t.inner)
        if isinstance(inner, Empty):
            return EMPTY
        return Mirror(t.center, inner)

    if isinstance(t, Thicken):
        inner = canonical(t.inner)
        if isinstance(inner, Empty):
            return EMPTY
        return Thicken(inner, t.cap)

    if isinstance(t, EndpointSet):
        inner = canonical(t.of)
        if isinstance(inner, Empty):
            return EMPTY
        # finitely many pieces resolve to their endpoint points outright
        if isinstance(inner, Interval):
            return _canonical_union([Point(inner.a), Point(inner.b)])
        if (isinstance(inner, Union)
                and all(isinstance(p, Interval) for p in inner.parts)):
            return _canonical_union(
                [Point(e) for p in inner.parts for e in (p.a, p.b)])
        return EndpointSet(inner)

    if isinstance(t, Affine):
        s, h = t.scale, t.shift
        inner = canonical(t.inner)
        if isinstance(inner, Empty):
            return EMPTY
        if s == 1 and h == 0:
            return inner
        if isinstance(inner, Affine):
            return canonical(Affine(s * inner.scale, s * inner.shift + h, inner.inner))
        if isinstance(inner, Point):
            return Point(s * inner.a + h)
        if isinstance(inner, Interval):
            x, y = s * inner.a + h, s * inner.b + h
            return Interval(min(x, y), max(x, y), inner.closed)
        if isinstance(inner, Cantor):
            x, y = s * inner.a + h, s * inner.b + h
            return Cantor(min(x, y), max(x, y))
        if isinstance(inner, Ladder):
            if s > 0:
                return Ladder(s * inner.target + h, s * inner.offset0,
                              inner.ratio, inner.include_target)
            return Affine(Fraction(-1), Fraction(0),
                          Ladder(-(s * inner.target + h), -s * inner.offset0,
                                 inner.ratio, inner.include_target))
        if isinstance(inner, Union):
            return _canonical_union(
                [canonical(Affine(s, h, p)) for p in inner.parts])
        if isinstance(inner, Mirror):
            return canonical(Mirror(s * inner.center + h, Affine(s, h, inner.inner)))
        if isinstance(inner, Thicken) and s > 0:
            return Thicken(canonical(Affine(s, h, inner.inner)), s * inner.cap)
        return Affine(s, h, inner)

    raise TypeError(f"unknown term {t!r}")
