"""Independent numeric oracles, obstruction checkers, and the pairwise
distinguishability driver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derive import derive
from .errors import HorizonExceededError, ValidationError
from .rat import Rat, format_rat, pow2, rat
from .setcore import collect_points, enumerate_term, member
from .terms import PtSetTerm


# --------------------------------------------------------------------------
# numeric limit-point detection
# --------------------------------------------------------------------------

def _detected(x: Rat, approx, r: Rat) -> bool:
    for p in approx.points:
        if p != x and abs(p - x) <= r:
            return True
    for lo, hi in approx.intervals:
        if lo < hi and max(lo - x, x - hi, Fraction(0)) <= r:
            return True
    return False


def probe_points(t: PtSetTerm, probe_depth: int = 3) -> tuple:
    """Fixed probe set: shallow enumeration points plus covering-interval
    endpoints."""
    ap = enumerate_term(t, probe_depth)
    pts = set(ap.points)
    for lo, hi in ap.intervals:
        pts.update((lo, hi))
    return tuple(sorted(pts))


def numeric_limit_points(t: PtSetTerm, depth: int,
                         probe_depth: int = 3) -> list:
    """Brute-force limit-point scan: a probe counts as detected when the
    depth-d enumeration holds another point (or an interval) within the
    detection radius of the depth.

    The radius is the previous depth's tolerance: the scale at which the
    depth-d structure was just resolved.  A genuine limit point keeps a
    neighbour inside that radius at every depth, while an isolated point
    sheds its neighbours once the radius drops below its local gap.  The
    probe set is fixed at a shallow depth so verdicts can stabilize as
    the scan depth grows.
    """
    approx = enumerate_term(t, depth)
    r = enumerate_term(t, depth - 1).tolerance if depth > 1 else approx.tolerance
    return [(x, _detected(x, approx, r)) for x in probe_points(t, probe_depth)]


# --------------------------------------------------------------------------
# probe equality and discreteness certificates
# --------------------------------------------------------------------------

def _uncovered(xs, approx, r) -> list:
    out = []
    for x in xs:
        if any(abs(p - x) <= r for p in approx.points):
            continue
        if any(max(lo - x, x - hi, Fraction(0)) <= r
               for lo, hi in approx.intervals):
            continue
        out.append(x)
    return out


def probe_gap_witnesses(a: PtSetTerm, b: PtSetTerm, depth: int = 8) -> list:
    """Points listed for one side with nothing of the other side within the
    comparison radius; empty means the sides probe-agree."""
    aa = enumerate_term(a, depth)
    bb = enumerate_term(b, depth)
    r = max(aa.tolerance, bb.tolerance, pow2(1 - depth))
    return sorted(_uncovered(aa.points, bb, r) + _uncovered(bb.points, aa, r))


def probe_equal(a: PtSetTerm, b: PtSetTerm, depth: int = 8) -> bool:
    return not probe_gap_witnesses(a, b, depth)


@dataclass(frozen=True)
class DiscreteCertificate:
    separation: Rat
    limit_points_outside: bool

    @property
    def ok(self) -> bool:
        return self.separation > 0 and self.limit_points_outside


def discrete_certificate(t: PtSetTerm, depth: int = 6) -> DiscreteCertificate:
    """Certifies discreteness: listed points pairwise separated, and no
    limit point of t belongs to t (checked exactly on derive(t))."""
    pts = enumerate_term(t, depth).points
    sep = min((q - p for p, q in zip(pts, pts[1:])), default=Fraction(1))
    outside = all(not member(t, p) for p in collect_points(derive(t)))
    return DiscreteCertificate(sep, outside)


# --------------------------------------------------------------------------
# finite lemma checkers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaVerdict:
    kind: str
    ok: bool
    witness: tuple
    detail: str


def _check_lemma1(payload) -> LemmaVerdict:
    g = tuple(int(x) for x in payload)
    if not g:
        raise ValidationError("need at least one value")
    if any(x < 1 for x in g):
        raise ValidationError("values must be positive")
    if len(set(g)) != len(g):
        raise ValidationError("values must be distinct")
    hits = tuple(n for n, gn in enumerate(g, start=1) if n <= gn)
    return LemmaVerdict("lemma1", bool(hits), hits,
                        f"{len(hits)} indexes satisfy n <= g(n)")


def _check_lemma2(payload) -> LemmaVerdict:
    (a, b), family = payload
    a, b = rat(a), rat(b)
    if a >= b:
        raise ValidationError("need a nondegenerate base interval")
    pieces = sorted((rat(lo), rat(hi)) for lo, hi in family)
    if any(lo > hi for lo, hi in pieces):
        raise ValidationError("piece with reversed endpoints")
    if pieces == [(a, b)]:
        return LemmaVerdict("lemma2", True, (), "trivial cover")
    for lo, hi in pieces:
        if lo == hi:
            return LemmaVerdict("lemma2", False, (lo,),
                                f"degenerate piece at {format_rat(lo)}")
        if lo < a or hi > b:
            return LemmaVerdict("lemma2", False, (lo, hi),
                                "piece leaves the base interval")
    if pieces[0][0] > a:
        return LemmaVerdict("lemma2", False, (a,),
                            f"gap at {format_rat(a)}")
    cur = pieces[0][1]
    if len(pieces) > 1:
        lo = pieces[1][0]
        if lo <= cur:
            return LemmaVerdict("lemma2", False, (lo,),
                                f"shared point {format_rat(lo)}")
        mid = (cur + lo) / 2
        return LemmaVerdict("lemma2", False, (mid,),
                            f"gap at {format_rat(mid)}")
    return LemmaVerdict("lemma2", False, ((cur + b) / 2,),
                        f"gap at {format_rat((cur + b) / 2)}")


def lemma_checks(kind: str, payload) -> LemmaVerdict:
    if kind == "lemma1":
        return _check_lemma1(payload)
    if kind == "lemma2":
        return _check_lemma2(payload)
    raise ValidationError(f"unknown lemma kind {kind!r}")


# --------------------------------------------------------------------------
# width incompatibility index
# --------------------------------------------------------------------------

def prop1_index(v, w, delta) -> int:
    """Least n with w**n - 1 > v**n / delta; the depth at which unequal
    width bases force a counting clash."""
    v, w, delta = rat(v), rat(w), rat(delta)
    if v < 2:
        raise ValidationError("smaller base must be >= 2")
    if w <= v:
        raise ValidationError("bases must satisfy v < w")
    if not 0 < delta <= 1:
        raise ValidationError("modulus bound must be in (0, 1]")
    n = 1
    while w**n - 1 <= v**n / delta:
        n += 1
        if n > 10_000:
            raise HorizonExceededError("index search runaway")
    return n


# --------------------------------------------------------------------------
# prime cluster profiles
# --------------------------------------------------------------------------

def cluster_profile(t: PtSetTerm, delta) -> tuple:
    """Greedy gap clustering of a finite point term; keeps only clusters
    whose window is finer than delta and returns their sorted sizes."""
    delta = rat(delta)
    if not 0 < delta < 1:
        raise ValidationError("cluster threshold must be in (0, 1)")
    pts = collect_points(t)
    clusters = []
    for x in pts:
        if clusters and x - clusters[-1][-1] < delta:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    sizes = []
    for c in clusters:
        anchor = Fraction(int(c[0]))  # window floor p**n
        if Fraction(1) / anchor < delta:
            sizes.append(len(c))
    return tuple(sorted(sizes))


# --------------------------------------------------------------------------
# distinguishability matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DistinguishReport:
    family: str
    labels: tuple
    invariant: str
    matrix: tuple
    witnesses: tuple = ()
    errors: tuple = ()

    @property
    def all_distinct(self) -> bool:
        return all(v == "distinct"
                   for i, row in enumerate(self.matrix)
                   for j, v in enumerate(row) if i != j)

    def __post_init__(self):
        for i, row in enumerate(self.matrix):
            if row[i] != "equal":
                raise ValidationError("diagonal must read equal")
            for j, v in enumerate(row):
                if v != self.matrix[j][i]:
                    raise ValidationError("matrix must be symmetric")


def render_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(render_value(x) for x in sorted(v)) + "}"
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(render_value(x) for x in v) + ")"
    return str(v)


def _selector(name: str, delta):
    from .cubes import chain_sizes, frame_holes, recover_S_cubes
    from .derive import signature
    from .linear import bits_profile, recover_S_linear
    if name == "signature":
        return signature
    if name == "recover_S_linear":
        return lambda t: recover_S_linear(t).S
    if name == "recover_S_cubes":
        return lambda pf: recover_S_cubes(pf).S
    if name == "chain_sizes":
        return lambda bu: tuple(sorted(
            (len(c.indexes), c.longest) for c in chain_sizes(bu)))
    if name == "bits_profile":
        return bits_profile
    if name == "cluster_profile":
        return lambda t: cluster_profile(t, delta)
    if name == "holes":
        return lambda ff: tuple(sorted(
            frame_holes(fr.cells) for fr in ff.frames))
    raise ValidationError(f"unknown invariant {name!r}")


def distinguish_matrix(family: str, members, invariant: str,
                       func=None, delta=Fraction(1, 10)) -> DistinguishReport:
    """Pairwise comparison of an invariant across family members.

    Evaluation failures downgrade the affected verdicts to "unknown";
    a "distinct" verdict always carries the two differing values.
    """
    if func is None:
        func = _selector(invariant, delta)
    labels = tuple(str(lbl) for lbl, _ in members)
    if len(set(labels)) != len(labels):
        raise ValidationError("member labels must be distinct")
    values, errors = {}, []
    for lbl, obj in members:
        try:
            values[lbl] = func(obj)
        except Exception as e:  # noqa: BLE001 -- downgraded to "unknown"
            errors.append((lbl, f"{type(e).__name__}: {e}"))
    n = len(labels)
    matrix = [["equal"] * n for _ in range(n)]
    witnesses = []
    for i in range(n):
        for j in range(i + 1, n):
            li, lj = labels[i], labels[j]
            if li not in values or lj not in values:
                v = "unknown"
            elif values[li] == values[lj]:
                v = "equal"
            else:
                v = "distinct"
                witnesses.append((li, lj, render_value(values[li]),
                                  render_value(values[lj])))
            matrix[i][j] = matrix[j][i] = v
    return DistinguishReport(family, labels, invariant,
                             tuple(tuple(r) for r in matrix),
                             tuple(witnesses), tuple(sorted(errors)))
