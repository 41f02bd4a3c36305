"""Finite-scale constructors for every point-set family in the catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cubes import Box, BoxUnion, FrameRegion, ProductFamily
from .errors import NotSupportedError, NotTotallyDisconnectedError, ValidationError
from .linear import components_upto
from .rat import Rat, pow2, rat
from .terms import (
    EMPTY, Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder,
    Mirror, Point, PtSetTerm, Thicken, Union, canonical,
)

KN_MAX = 8
XS_RANGE = range(1, 6)
YS_TD_RANGE = range(1, 7)
PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_DEPTH = 6


def _check_set(S, allowed, what: str, nonempty: bool = True) -> tuple:
    S = tuple(sorted(set(int(x) for x in S)))
    if nonempty and not S:
        raise ValidationError(f"{what}: set must be nonempty")
    bad = [x for x in S if x not in allowed]
    if bad:
        raise ValidationError(f"{what}: {bad} outside {sorted(allowed)}")
    return S


# --------------------------------------------------------------------------
# accumulation towers
# --------------------------------------------------------------------------

def build_An(n: int) -> PtSetTerm:
    """n-fold accumulation tower in [0, 1] with maximum 1."""
    if not 1 <= n <= KN_MAX:
        raise ValidationError(f"tower index must be in 1..{KN_MAX}")
    t: PtSetTerm = Ladder(Fraction(1), Fraction(1), Fraction(1, 2),
                          include_target=True)
    for _ in range(n - 1):
        t = FWrap(t, include_top=True)
    return t


def build_Kn(n: int) -> PtSetTerm:
    """The tower shifted into [5n, 5n+1]; max 5n+1, vanishes after n+1
    derivative steps."""
    return canonical(Affine(Fraction(1), Fraction(5 * n), build_An(n)))


# --------------------------------------------------------------------------
# slot compression: block n of the model line [5n, 5n+5] is mapped into
# the n-th dyadic slot [1-2^(1-n), 1-2^(-n)]
# --------------------------------------------------------------------------

def slot_map(n: int) -> tuple:
    scale = pow2(-n) / 5
    shift = (Fraction(1) - pow2(1 - n)) - 5 * n * scale
    return scale, shift


def _compress_block(n: int, block: PtSetTerm) -> PtSetTerm:
    scale, shift = slot_map(n)
    return canonical(Affine(scale, shift, block))


# --------------------------------------------------------------------------
# glued interval families on the line
# --------------------------------------------------------------------------

def build_XS(S, two_sided: bool = True) -> PtSetTerm:
    """Union of thickened towers with glue zones, one block per n in S,
    compressed into dyadic slots, plus the top interval [1, 2]."""
    S = _check_set(S, XS_RANGE, "interval family")
    parts = []
    for n in S:
        glue = Thicken(build_Kn(n), Fraction(1))
        block = Mirror(Fraction(5 * n + 2), glue) if two_sided else glue
        parts.append(_compress_block(n, block))
    parts.append(Interval(Fraction(1), Fraction(2), closed=True))
    return canonical(Union(tuple(parts)))


def lift_cubes(t: PtSetTerm, n: int, depth: int = DEFAULT_DEPTH) -> ProductFamily:
    """Cross a linear family with unit fibres; records the component cubes
    resolved at the working depth, labelled by their linear data."""
    if n not in (1, 2, 3):
        raise ValidationError("lift dimension must be 1, 2 or 3")
    cl = components_upto(t, depth)
    boxes, labels = [], []
    for e in cl.entries:
        if e.kind != "interval":
            raise ValidationError("lift needs nondegenerate components")
        boxes.append(Box((e.lo,) * n, e.hi - e.lo, closed=e.closed))
        labels.append(f"[{e.lo},{e.hi}]")
    return ProductFamily(t, n, BoxUnion(tuple(boxes)), tuple(labels))


# --------------------------------------------------------------------------
# punched-frame family
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FramesFamily:
    base: Box
    frames: tuple


def build_frames(S, integer_scaled: bool = False) -> FramesFamily:
    """Base square [-1,0]^2 plus one punched frame per even m in S, each
    frame sitting in its dyadic square [2^-m, 2^-m+1]^2."""
    from .cubes import frame_region
    S = _check_set(S, range(2, 21), "frame family")
    if any(m % 2 for m in S):
        raise ValidationError("frame indexes must be even")
    frames = []
    for m in S:
        cells = frame_region(m, corner=(pow2(-m), pow2(-m)))
        if integer_scaled:
            t = 4**m * (2 * m + 1)
            sb = []
            for b in cells.boxes:
                c = tuple(t * x for x in b.corner)
                e = t * b.edge
                if any(x.denominator != 1 for x in c) or e.denominator != 1:
                    raise ValidationError("scaling did not clear denominators")
                sb.append(Box(c, e))
            cells = BoxUnion(tuple(sb))
        frames.append(FrameRegion(m, cells, scaled=integer_scaled))
    return FramesFamily(Box((Fraction(-1), Fraction(-1)), Fraction(1)),
                        tuple(frames))


# --------------------------------------------------------------------------
# open grid family
# --------------------------------------------------------------------------

def build_YS_prop3(S, n: int, depth: int = DEFAULT_DEPTH) -> BoxUnion:
    """Base open cube plus one open window cube per index m; window m is
    split into (m+1)^n open grid cells exactly when m is in S."""
    S = _check_set(S, (1, 2, 3), "grid family", nonempty=False)
    if n not in (1, 2, 3):
        raise ValidationError("dimension must be 1, 2 or 3")
    if not 1 <= depth <= 6:
        raise ValidationError("window depth must be in 1..6")
    if S and max(S) > depth:
        raise ValidationError("window depth too small for the index set")
    boxes = [Box((Fraction(-1),) * n, Fraction(1), closed=False)]
    for m in range(1, depth + 1):
        w = pow2(-2 * m)
        if m in S:
            k = m + 1
            cell = w / k
            from itertools import product
            for idx in product(range(k), repeat=n):
                corner = tuple(w + i * cell for i in idx)
                boxes.append(Box(corner, cell, closed=False))
        else:
            boxes.append(Box((w,) * n, w, closed=False))
    return BoxUnion(tuple(boxes))


# --------------------------------------------------------------------------
# bit-coded open interval family
# --------------------------------------------------------------------------

def build_Zn(n: int, depth: int = DEFAULT_DEPTH) -> PtSetTerm:
    """Open intervals accumulating down to 6n+1 and up to 6n+2: component
    order is that of the integers."""
    parts = []
    for k in range(1, depth + 1):
        lo = Fraction(6 * n + 1) + Fraction(1, 3 ** (2 * k))
        hi = Fraction(6 * n + 1) + Fraction(1, 3 ** (2 * k - 1))
        parts.append(Interval(lo, hi, closed=False))
        parts.append(Interval(Fraction(6 * n + 2) - (hi - 6 * n - 1),
                              Fraction(6 * n + 2) - (lo - 6 * n - 1),
                              closed=False))
    return canonical(Union(tuple(parts)))


def build_Ug(bits, depth: int = DEFAULT_DEPTH) -> PtSetTerm:
    """Per window n: a unit component, an integer-type cluster, a unit
    component, and an extra unit exactly when bit n is set."""
    bits = tuple(int(b) for b in bits)
    if len(bits) > 12 or any(b not in (0, 1) for b in bits):
        raise ValidationError("bits must be 0/1 with length <= 12")
    parts = []
    for i, b in enumerate(bits):
        n = i + 1
        parts.append(Interval(Fraction(6 * n), Fraction(6 * n + 1),
                              closed=False))
        parts.append(build_Zn(n, depth))
        parts.append(Interval(Fraction(6 * n + 2), Fraction(6 * n + 3),
                              closed=False))
        if b:
            parts.append(Interval(Fraction(6 * n + 4), Fraction(6 * n + 5),
                                  closed=False))
    return canonical(Union(tuple(parts)))


def representative_points(t: PtSetTerm, depth: int = DEFAULT_DEPTH) -> PtSetTerm:
    """One midpoint per resolved component; preserves the component order."""
    cl = components_upto(t, depth)
    pts = [Point((e.lo + e.hi) / 2) for e in cl.entries]
    return canonical(Union(tuple(pts)))


# --------------------------------------------------------------------------
# totally disconnected family with prescribed signature
# --------------------------------------------------------------------------

def build_YS_td(S) -> PtSetTerm:
    """Per n in S a tower block compressed into the n-th slot, glued onto
    a strip that puts one Cantor block in every slot and carries the top
    point 1.

    The strip plus top is the kernel; the derivative layers of the towers
    touch it exactly at the ranks listed in S.
    """
    S = _check_set(S, YS_TD_RANGE, "signature family")
    parts = [_compress_block(n, Affine(Fraction(1), Fraction(5 * n),
                                       build_An(n)))
             for n in S]
    parts.append(FWrap(Cantor(Fraction(1, 5), Fraction(2, 5)),
                       include_top=True))
    return canonical(Union(tuple(parts)))


# --------------------------------------------------------------------------
# gaps and discrete approximants
# --------------------------------------------------------------------------

def true_gaps(t: PtSetTerm, depth: int = DEFAULT_DEPTH) -> list:
    """Resolved complementary gaps of a compact totally disconnected term
    within its hull, exact at the stated depth."""
    gaps, _, _ = _gaps(canonical(t), depth)
    return sorted(gaps)


def _gaps(t: PtSetTerm, depth: int):
    if isinstance(t, Empty):
        raise ValidationError("gap analysis needs a nonempty set")
    if isinstance(t, (Interval, Thicken)):
        raise NotTotallyDisconnectedError(
            f"{t.kind} contains a nondegenerate interval")
    if isinstance(t, Point):
        return [], t.a, t.a
    if isinstance(t, Ladder):
        if not t.include_target:
            raise NotSupportedError("gap analysis needs a compact set")
        pts = [t.point(k) for k in range(depth)]
        gaps = list(zip(pts, pts[1:]))
        return gaps, pts[0], t.target
    if isinstance(t, Cantor):
        gaps = []
        span = t.b - t.a
        stack = [(Fraction(0), Fraction(1), 0)]
        while stack:
            lo, hi, d = stack.pop()
            if d >= depth:
                continue
            w = (hi - lo) / 3
            gaps.append((t.a + span * (lo + w), t.a + span * (hi - w)))
            stack.append((lo, lo + w, d + 1))
            stack.append((hi - w, hi, d + 1))
        return gaps, t.a, t.b
    if isinstance(t, FWrap):
        if not t.include_top:
            raise NotSupportedError("gap analysis needs a compact set")
        from .terms import window_map
        ig, ilo, ihi = _gaps(t.inner, depth)
        gaps = []
        for k in range(1, depth + 1):
            gaps.extend((window_map(k, a), window_map(k, b)) for a, b in ig)
            nxt_lo = window_map(k + 1, ilo)
            cur_hi = window_map(k, ihi)
            if k < depth and cur_hi < nxt_lo:
                gaps.append((cur_hi, nxt_lo))
        return gaps, window_map(1, ilo), Fraction(1)
    if isinstance(t, Affine):
        ig, ilo, ihi = _gaps(t.inner, depth)
        if t.scale > 0:
            return ([(t.apply(a), t.apply(b)) for a, b in ig],
                    t.apply(ilo), t.apply(ihi))
        return ([(t.apply(b), t.apply(a)) for a, b in ig],
                t.apply(ihi), t.apply(ilo))
    if isinstance(t, Mirror):
        return _gaps(canonical(Union((
            t.inner, Affine(Fraction(-1), 2 * t.center, t.inner)))), depth)
    if isinstance(t, Union):
        subs = [_gaps(p, depth) for p in t.parts]
        lo = min(s[1] for s in subs)
        hi = max(s[2] for s in subs)
        free = None
        for g, plo, phi in subs:
            # free space of one part within the union hull; unresolved
            # regions beyond the depth count as occupied
            comp = [(a, b) for a, b in
                    [(lo, plo)] + sorted(g) + [(phi, hi)] if a < b]
            free = comp if free is None else _intersect_gaps(free, comp)
        return free, lo, hi
    raise NotSupportedError(f"gap analysis undefined for {t.kind}")


def _intersect_gaps(xs: list, ys: list) -> list:
    """Intersection of two sorted disjoint open-interval lists."""
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        a = max(xs[i][0], ys[j][0])
        b = min(xs[i][1], ys[j][1])
        if a < b:
            out.append((a, b))
        if xs[i][1] <= ys[j][1]:
            i += 1
        else:
            j += 1
    return out


def discrete_approximant(a: PtSetTerm, depth: int = DEFAULT_DEPTH) -> PtSetTerm:
    """A discrete set inside the gaps of a, disjoint from a, whose limit
    points are exactly the resolved gap endpoints.

    Per gap ]x,y[ two geometric ladders converge to x and y from inside;
    neither ladder contains its target.
    """
    a = canonical(a)
    gaps = true_gaps(a, depth)
    if not gaps:
        raise NotSupportedError("no resolved gaps to build inside")
    parts = []
    for x, y in gaps:
        off = (y - x) / 2
        parts.append(Ladder(y, off, Fraction(1, 2), include_target=False))
        parts.append(Affine(Fraction(-1), Fraction(0),
                            Ladder(-x, off, Fraction(1, 2),
                                   include_target=False)))
    return canonical(Union(tuple(parts)))


# --------------------------------------------------------------------------
# prime cluster family and width family
# --------------------------------------------------------------------------

def g_group(p: int, n: int) -> PtSetTerm:
    """p points packed in an interval of length < p^-n just above p^n."""
    if p not in PRIMES:
        raise ValidationError(f"{p} is not a supported prime")
    pts = [Point(Fraction(p**n) + Fraction(1, k) * Fraction(1, p**n))
           for k in range(1, p + 1)]
    return canonical(Union(tuple(pts)))


def build_AS(S, N: int) -> PtSetTerm:
    S = _check_set(S, PRIMES, "prime family")
    if not 1 <= N <= 8:
        raise ValidationError("window bound must be in 1..8")
    parts = [g_group(p, n) for p in S for n in range(1, N + 1)]
    return canonical(Union(tuple(parts)))


def build_Xu(u, N: int, open_variant: bool = False) -> PtSetTerm:
    """N intervals of widths u^1..u^N separated by gaps of exactly 1."""
    u = rat(u)
    if u < 2:
        raise ValidationError("width base must be >= 2")
    if not 1 <= N <= 12:
        raise ValidationError("prefix length must be in 1..12")
    parts = []
    a = Fraction(1)
    for k in range(1, N + 1):
        b = a + u**k
        parts.append(Interval(a, b, closed=not open_variant))
        a = b + 1
    return canonical(Union(tuple(parts)))


# --------------------------------------------------------------------------
# catalog plumbing
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict, hash=False)
    label: str = ""


FAMILY_IDS = ("kn", "xs", "xs_cubes", "frames_zs", "ys_prop3", "ug",
              "ys_td", "discrete", "as_primes", "xu")


def build_family(spec: FamilySpec):
    f, p = spec.family, spec.params
    if f == "kn":
        return build_Kn(int(p["n"]))
    if f == "xs":
        return build_XS(p["S"], p.get("two_sided", True))
    if f == "xs_cubes":
        return lift_cubes(build_XS(p["S"]), int(p.get("dimension", 2)),
                          int(p.get("depth", DEFAULT_DEPTH)))
    if f == "frames_zs":
        if "m" in p:
            from .cubes import frame_region
            return frame_region(int(p["m"]))
        return build_frames(p["S"], bool(p.get("integer_scaled", False)))
    if f == "ys_prop3":
        return build_YS_prop3(p.get("S", ()), int(p.get("dimension", 2)),
                              int(p.get("depth", DEFAULT_DEPTH)))
    if f == "ug":
        return build_Ug(p["bits"], int(p.get("depth", DEFAULT_DEPTH)))
    if f == "ys_td":
        return build_YS_td(p["S"])
    if f == "discrete":
        return discrete_approximant(build_YS_td(p["S"]),
                                    int(p.get("depth", DEFAULT_DEPTH)))
    if f == "as_primes":
        return build_AS(p["S"], int(p.get("N", 6)))
    if f == "xu":
        return build_Xu(p["u"], int(p.get("N", 4)),
                        bool(p.get("open_variant", False)))
    raise ValidationError(f"unknown family {f!r}")
