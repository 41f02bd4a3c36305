"""Connected components, boundaries and block recovery on the line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .derive import derive
from .errors import (
    HorizonExceededError, NotIntervalUnionError, NotSupportedError,
    ProfileMismatchError, ValidationError,
)
from .rat import Rat, pow2
from .setcore import INFINITE, meets, points_in, thicken_eps
from .terms import (
    Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder, Mirror,
    Point, PtSetTerm, Thicken, Union, bounds, canonical, window_map,
)


@dataclass(frozen=True)
class ComponentEntry:
    kind: str  # "point" | "interval"
    lo: Rat
    hi: Rat
    closed: bool
    tag: str = ""


@dataclass(frozen=True)
class ComponentList:
    entries: tuple
    depth: int
    complete_below: Rat | None  # None: nothing was truncated

    @property
    def complete(self) -> bool:
        return self.complete_below is None


def components_upto(t: PtSetTerm, depth: int = 6) -> ComponentList:
    """Connected components resolved to a finite depth.

    Entries below `complete_below` are exact; above it deeper structure may
    still be unresolved.  Totally disconnected kernels are refused.
    """
    pieces, markers = _pieces(canonical(t), depth)
    merged = _merge_pieces(pieces)
    entries = tuple(
        ComponentEntry("point" if lo == hi else "interval", lo, hi,
                       (not loo) and (not hio))
        for lo, loo, hi, hio in merged)
    below = min(markers) if markers else None
    return ComponentList(entries, depth, below)


def _pieces(t: PtSetTerm, depth: int):
    if isinstance(t, Empty):
        return [], []
    if isinstance(t, Point):
        return [(t.a, False, t.a, False)], []
    if isinstance(t, Interval):
        op = not t.closed
        return [(t.a, op, t.b, op)], []
    if isinstance(t, Cantor):
        raise NotSupportedError(
            "component structure is not finitely resolvable here")
    if isinstance(t, Ladder):
        pcs = [(t.point(k), False, t.point(k), False) for k in range(depth)]
        if t.include_target:
            pcs.append((t.target, False, t.target, False))
        return pcs, [t.point(depth)]
    if isinstance(t, FWrap):
        ipcs, imks = _pieces(t.inner, depth)
        pcs, mks = [], [Fraction(1) - pow2(-depth)]
        for k in range(1, depth + 1):
            pcs.extend((window_map(k, lo), loo, window_map(k, hi), hio)
                       for lo, loo, hi, hio in ipcs)
            mks.extend(window_map(k, m) for m in imks)
        if t.include_top:
            pcs.append((Fraction(1), False, Fraction(1), False))
        return pcs, mks
    if isinstance(t, Affine):
        ipcs, imks = _pieces(t.inner, depth)
        if t.scale > 0:
            pcs = [(t.apply(lo), loo, t.apply(hi), hio)
                   for lo, loo, hi, hio in ipcs]
            mks = [t.apply(m) for m in imks]
        else:
            pcs = [(t.apply(hi), hio, t.apply(lo), loo)
                   for lo, loo, hi, hio in ipcs]
            bb = bounds(t)
            mks = [bb[0]] if imks and bb is not None else []
        return pcs, mks
    if isinstance(t, Mirror):
        ipcs, imks = _pieces(t.inner, depth)
        c2 = 2 * t.center
        pcs = list(ipcs) + [(c2 - hi, hio, c2 - lo, loo)
                            for lo, loo, hi, hio in ipcs]
        mks = list(imks)
        if imks:
            bb = bounds(t.inner)
            if bb is not None:
                mks.append(c2 - bb[1])
        return pcs, mks
    if isinstance(t, Union):
        pcs, mks = [], []
        for p in t.parts:
            pp, mm = _pieces(p, depth)
            pcs.extend(pp)
            mks.extend(mm)
        return pcs, mks
    if isinstance(t, Thicken):
        ipcs, imks = _pieces(t.inner, depth)
        pcs = []
        for lo, _, hi, _ in ipcs:
            if lo != hi:
                raise NotSupportedError("thicken spine must be points")
            pcs.append((lo, False, lo + thicken_eps(t, lo), False))
        return pcs, imks
    if isinstance(t, EndpointSet):
        ipcs, imks = _pieces(t.of, depth)
        comps = _merge_pieces(ipcs)
        pcs = []
        for lo, _, hi, _ in comps:
            pcs.append((lo, False, lo, False))
            if hi != lo:
                pcs.append((hi, False, hi, False))
        return pcs, imks
    raise TypeError(f"unknown term {t!r}")


def _merge_pieces(pieces):
    """Merge pieces into components; a shared endpoint joins two pieces only
    when at least one side actually contains it."""
    out = []
    for p in sorted(pieces):
        if out:
            lo1, lo1o, hi1, hi1o = out[-1]
            lo2, lo2o, hi2, hi2o = p
            joins = lo2 < hi1 or (lo2 == hi1 and (not lo2o or not hi1o))
            if joins:
                if hi2 > hi1:
                    nh, nho = hi2, hi2o
                elif hi2 == hi1:
                    nh, nho = hi1, hi1o and hi2o
                else:
                    nh, nho = hi1, hi1o
                nlo = lo1o and lo2o if lo1 == lo2 else lo1o
                out[-1] = (lo1, nlo, nh, nho)
                continue
        out.append(p)
    return out


def boundary(t: PtSetTerm) -> PtSetTerm:
    """The set of component endpoints, as a term.

    Only defined when the input denotes a disjoint union of closed
    intervals; anything else raises NotIntervalUnionError.
    """
    tc = canonical(t)
    if isinstance(tc, Empty):
        return tc
    try:
        return canonical(EndpointSet(tc))
    except NotIntervalUnionError:
        raise
    except ValidationError as e:
        raise NotIntervalUnionError(str(e)) from e


def closure(t: PtSetTerm) -> PtSetTerm:
    """Topological closure: the set together with its limit points."""
    return canonical(Union((canonical(t), derive(t))))


# --------------------------------------------------------------------------
# block recovery along the line
# --------------------------------------------------------------------------

def compress(n: int, x: Rat) -> Rat:
    """Map block-n model coordinates [5n, 5n+5] into its slot near 1."""
    return (Fraction(1) - pow2(1 - n)) + pow2(-n) * (Fraction(x) - 5 * n) / 5


@dataclass(frozen=True)
class LinearRecovery:
    S: frozenset
    depths: dict = field(hash=False)
    sides: dict = field(hash=False)


def recover_S_linear(t: PtSetTerm, n_max: int = 8,
                     horizon: int = 14) -> LinearRecovery:
    """Read off which blocks are present, their glue sidedness, and the
    derivative depth at which each glue zone empties out.

    The reading uses only closure-invariant probes: derivatives of the
    boundary set against each block's glue interval.
    """
    b = boundary(t)
    ds = [derive(b)]

    def dk(i: int) -> PtSetTerm:
        while len(ds) <= i:
            ds.append(derive(ds[-1]))
        return ds[i]

    found, depths, sides = set(), {}, {}
    for n in range(1, n_max + 1):
        lo, hi = compress(n, 5 * n + 1), compress(n, 5 * n + 3)
        pts = points_in(ds[0], lo, hi)
        if pts is INFINITE:
            raise NotSupportedError("glue zone holds infinitely many "
                                    "boundary limits")
        if not pts:
            continue
        found.add(n)
        sides[n] = "two" if len(pts) == 2 else "one"
        probe = Interval(lo, hi, closed=True)
        m = 0
        while meets(dk(m), probe):
            m += 1
            if m > horizon:
                raise HorizonExceededError(
                    f"glue zone for block {n} never empties")
        depths[n] = m
    return LinearRecovery(frozenset(found), depths, sides)


# --------------------------------------------------------------------------
# bit profiles of open-interval families
# --------------------------------------------------------------------------

def bits_profile(t: PtSetTerm, depth: int = 6) -> tuple:
    """Extract the bit vector encoded by unit-versus-cluster component runs.

    Expects alternating runs: one leading unit component, then per bit a
    cluster of short components followed by 2+bit unit components (1+bit
    after the final cluster).
    """
    cl = components_upto(t, depth)
    if not cl.complete:
        raise ProfileMismatchError("component list is truncated")
    labels = []
    for e in cl.entries:
        width = e.hi - e.lo
        if e.kind != "interval" or width <= 0:
            raise ProfileMismatchError("unexpected degenerate component")
        if width == 1:
            labels.append("U")
        elif width < 1:
            labels.append("C")
        else:
            raise ProfileMismatchError(f"component width {width} out of range")
    runs = []
    for lab in labels:
        if runs and runs[-1][0] == lab:
            runs[-1][1] += 1
        else:
            runs.append([lab, 1])
    if len(runs) < 3 or runs[0][0] != "U" or runs[-1][0] != "U":
        raise ProfileMismatchError("run pattern must start and end with units")
    if runs[0][1] != 1:
        raise ProfileMismatchError("must open with exactly one unit")
    unit_runs = [r for r in runs if r[0] == "U"]
    cluster_runs = [r for r in runs if r[0] == "C"]
    if len(unit_runs) != len(cluster_runs) + 1:
        raise ProfileMismatchError("runs must alternate")
    bits = []
    for i, run in enumerate(unit_runs[1:]):
        base = 1 if i == len(cluster_runs) - 1 else 2
        bit = run[1] - base
        if bit not in (0, 1):
            raise ProfileMismatchError(
                f"unit run of {run[1]} does not decode")
        bits.append(bit)
    return tuple(bits)
