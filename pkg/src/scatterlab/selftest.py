"""Acceptance self-test: one check per shipped guarantee.

Each criterion function returns a (status, detail) pair with status one of
"pass", "fail", "xfail".  Reports carry no timing, so two runs of the same
build produce identical bytes.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .cubes import (
    chain_sizes, frame_holes, frame_region, frame_unit_decomposition,
    recover_S_cubes,
)
from .derive import cb_profile, derive, signature
from .families import (
    build_AS, build_Kn, build_Ug, build_XS, build_YS_prop3, build_YS_td,
    build_family, discrete_approximant, lift_cubes, FamilySpec,
)
from .linear import bits_profile, closure, recover_S_linear
from .ordertype import ORD_ONE, omega_pow, ord_add, scattered_order_type
from .setcore import enumerate_term, member
from .terms import (
    Affine, Cantor, Interval, Ladder, Mirror, Point, Thicken, Union,
    canonical, FWrap,
)
from .verify import (
    cluster_profile, discrete_certificate, distinguish_matrix,
    numeric_limit_points, probe_equal, probe_points, prop1_index,
)

_SEED = 93


def _subsets(vals):
    vals = tuple(vals)
    for r in range(1, len(vals) + 1):
        for c in combinations(vals, r):
            yield frozenset(c)


# --------------------------------------------------------------------------
# the twenty-term scan corpus for the numeric oracle
# --------------------------------------------------------------------------

def scan_corpus() -> list:
    h = Fraction(1, 2)
    return [
        ("ladder_up", Ladder(Fraction(1), Fraction(1), h, True)),
        ("ladder_down", Ladder(Fraction(0), Fraction(1), Fraction(2, 3),
                               False)),
        ("ladder_fine", Ladder(Fraction(2), h, Fraction(1, 3), True)),
        ("ladder_mirrored", Affine(Fraction(-1), Fraction(0),
                                   Ladder(Fraction(1), Fraction(1), h,
                                          True))),
        ("k1", build_Kn(1)),
        ("k2", build_Kn(2)),
        ("k3", build_Kn(3)),
        ("wrap_ladder", FWrap(Ladder(Fraction(1), Fraction(1), h, True),
                              True)),
        ("wrap_open_ladder", FWrap(Ladder(Fraction(1), Fraction(1), h,
                                          False), True)),
        ("wrap_point", FWrap(Point(Fraction(1)), True)),
        ("cantor_unit", Cantor(Fraction(0), Fraction(1))),
        ("cantor_narrow", Cantor(Fraction(3), Fraction(7, 2))),
        ("thick_ladder", Thicken(Ladder(Fraction(1), Fraction(1), h, True),
                                 Fraction(1, 8))),
        ("thick_k1", Thicken(build_Kn(1), Fraction(1))),
        ("two_sided_cluster", Mirror(Fraction(2),
                                     Ladder(Fraction(2), Fraction(1), h,
                                            False))),
        ("point_plus_ladder", Union((Point(Fraction(0)),
                                     Ladder(Fraction(1), h, h, True)))),
        ("closed_interval", Interval(Fraction(0), Fraction(1), True)),
        ("open_interval", Interval(Fraction(0), Fraction(1), False)),
        ("mixed_union", Union((Interval(Fraction(0), Fraction(1), False),
                               Point(Fraction(2)),
                               Ladder(Fraction(3), h, h, False)))),
        ("scaled_cantor", Affine(h, Fraction(3), Cantor(Fraction(0),
                                                        Fraction(1)))),
    ]


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------

def c01_signature_recovery():
    n = 0
    for S in _subsets(range(1, 7)):
        if signature(build_YS_td(S)) != S:
            return "fail", f"signature mismatch for S={sorted(S)}"
        n += 1
    return "pass", f"{n}/63 subsets exact"


def c02_linear_recovery():
    members = []
    for S in _subsets(range(1, 6)):
        t = build_XS(S)
        got = recover_S_linear(t).S
        if got != S:
            return "fail", f"recovered {sorted(got)} for S={sorted(S)}"
        members.append((f"S={sorted(S)}", t))
    rep = distinguish_matrix("xs", members, "recover_S_linear")
    if not rep.all_distinct:
        return "fail", "matrix has non-distinct off-diagonal entries"
    return "pass", "31/31 subsets recovered, matrix all-distinct"


def c03_cube_recovery():
    n_checks = 0
    for S in _subsets(range(1, 4)):
        base = build_XS(S)
        lin = recover_S_linear(base).S
        for dim in (2, 3):
            got = recover_S_cubes(lift_cubes(base, dim)).S
            if got != S or got != lin:
                return "fail", f"S={sorted(S)} dim={dim}: got {sorted(got)}"
            n_checks += 1
    return "pass", f"{n_checks}/14 lifted recoveries agree with linear"


def c04_tower_profiles():
    for n in range(1, 8):
        t = build_Kn(n)
        prof = cb_profile(t)
        if prof.vanishing_index != n + 1:
            return "fail", f"K_{n}: vanishing index {prof.vanishing_index}"
        it = t
        for _ in range(n):
            it = derive(it)
        if it != Point(Fraction(5 * n + 1)):
            return "fail", f"K_{n}: n-fold derivative is {it.kind}"
        want = ord_add(omega_pow(n, 1), ORD_ONE)
        if scattered_order_type(t) != want:
            return "fail", f"K_{n}: order type mismatch"
    return "pass", "n=1..7: vanishing n+1, n-fold derivative Point(5n+1), type w^n+1"


def c05_grid_components():
    checks = 0
    for S in [frozenset()] + list(_subsets(range(1, 4))):
        for n in (1, 2, 3):
            bu = build_YS_prop3(S, n)
            comps = chain_sizes(bu)
            big = [c for c in comps if len(c.indexes) > 1]
            want = {(s + 1) ** n for s in S}
            if {len(c.indexes) for c in big} != want:
                return "fail", f"S={sorted(S)} n={n}: component sizes off"
            if {c.longest for c in big} != want:
                return "fail", f"S={sorted(S)} n={n}: chain lengths off"
            for c in big:
                if len(c.witness) != c.longest:
                    return "fail", f"S={sorted(S)} n={n}: bad witness"
            checks += 1
    return "pass", f"{checks}/24 grid cases: sizes and chain lengths match"


def c06_frames():
    for m in range(1, 21):
        if frame_holes(frame_region(m)) != m:
            return "fail", f"m={m}: hole count off"
    for m in range(1, 7):
        cells = frame_unit_decomposition(m)
        if len(cells.boxes) != (2 * m + 1) ** 2 - m:
            return "fail", f"m={m}: decomposition count off"
        for b in cells.boxes:
            if any(c.denominator != 1 for c in b.corner):
                return "fail", f"m={m}: non-integer corner after scaling"
            if b.edge != 2**m:
                return "fail", f"m={m}: scaled cell edge is not 2^m"
    return "pass", "m=1..20 hole counts, m=1..6 integer decompositions"


def c07_numeric_oracle():
    worst = 6
    for name, t in scan_corpus():
        dt = derive(t)
        probes = probe_points(t)
        truth = {x: member(dt, x) for x in probes}
        verdicts = {d: dict(numeric_limit_points(t, d)) for d in range(6, 11)}
        stab = None
        for d in range(6, 11):
            if all(verdicts[e] == truth for e in range(d, 11)):
                stab = d
                break
        if stab is None:
            bad = [x for x in probes if verdicts[10][x] != truth[x]]
            return "fail", f"{name}: disagreement at depth 10, e.g. x={bad[0]}"
        worst = max(worst, stab)
    return "pass", f"20/20 terms stabilize by depth {worst}"


def c08_width_index():
    if prop1_index(2, 3, Fraction(1, 10)) != 6:
        return "fail", "index(2,3,1/10) != 6"
    if not (3**6 - 1 > Fraction(2**6) / Fraction(1, 10)):
        return "fail", "index 6 fails its own inequality"
    if 3**5 - 1 > Fraction(2**5) / Fraction(1, 10):
        return "fail", "index 5 already satisfies the inequality"
    rng = random.Random(_SEED)
    grid = [Fraction(k, 4) for k in range(8, 21)]  # 2..5 step 1/4
    for _ in range(50):
        v, w = sorted(rng.sample(grid, 2))
        delta = Fraction(1, rng.randint(2, 50))
        n = prop1_index(v, w, delta)
        if not (w**n - 1 > v**n / delta):
            return "fail", f"index {n} at ({v},{w},{delta}) not strict"
        if n > 1 and (w**(n - 1) - 1 > v**(n - 1) / delta):
            return "fail", f"index {n} at ({v},{w},{delta}) not least"
    return "pass", "fixed case and 50 random cases: least strict index"


def c09_bit_codes():
    rng = random.Random(_SEED)
    seen = set()
    while len(seen) < 100:
        seen.add(tuple(rng.randint(0, 1) for _ in range(12)))
    members = []
    types = {}
    from .ordertype import render_lin, ug_order_type
    for bits in sorted(seen):
        t = build_Ug(bits)
        if bits_profile(t, len(bits)) != bits:
            return "fail", f"profile mismatch for bits={''.join(map(str, bits))}"
        types[bits] = render_lin(ug_order_type(bits))
        members.append(("".join(map(str, bits)), t))
    if len(set(types.values())) != len(types):
        return "fail", "order types collide"
    rep = distinguish_matrix("ug", members, "bits_profile")
    if not rep.all_distinct:
        return "fail", "bit-profile matrix not all-distinct"
    return "pass", "100/100 profiles exact, order types injective, matrix all-distinct"


def c10_discrete_approximants():
    targets = [
        ("two_points", Union((Point(Fraction(0)), Point(Fraction(1))))),
        ("shifted_tower", canonical(Affine(Fraction(1), Fraction(-10),
                                           build_Kn(2)))),
        ("cantor", Cantor(Fraction(0), Fraction(1))),
    ]
    for name, a in targets:
        z = discrete_approximant(a)
        for x in enumerate_term(z, 8).points:
            if member(a, x):
                return "fail", f"{name}: approximant touches the target at {x}"
        cert = discrete_certificate(z)
        if not cert.ok:
            return "fail", f"{name}: discreteness certificate failed"
        if not probe_equal(derive(z), a, depth=6):
            return "fail", f"{name}: limit set does not probe-match"
    for S in _subsets(range(1, 5)):
        y = build_YS_td(S)
        z = discrete_approximant(y)
        sig = signature(closure(Union((z, y))))
        if sig != S:
            return "fail", f"scaffold S={sorted(S)}: got {sorted(sig)}"
    return "pass", "3 approximants verified; 15/15 scaffold signatures reproduced"


def c11_prime_clusters():
    literal_ok = True
    for S in _subsets((2, 3, 5, 7)):
        prof = cluster_profile(build_AS(S, 6), Fraction(1, 1000))
        if set(prof) != S:
            literal_ok = False
            break
    companion, profiles = True, {}
    for S in _subsets((2, 3, 5, 7)):
        prof = cluster_profile(build_AS(S, 6), Fraction(1, 10))
        profiles[S] = prof
        if set(prof) != S:
            companion = False
    distinct = len(set(profiles.values())) == len(profiles)
    if literal_ok:
        return "pass", "15/15 subsets at delta=1/1000"
    if companion and distinct:
        return ("xfail",
                "delta=1/1000 leaves windows of 2 and 3 below threshold at "
                "N=6 (needs n>=10 resp. 7); companion delta=1/10 recovers "
                "15/15 with distinct profiles")
    return "fail", "companion threshold delta=1/10 also fails"


def _catalog():
    return [
        ("kn1", FamilySpec("kn", {"n": 1})),
        ("kn3", FamilySpec("kn", {"n": 3})),
        ("xs_13", FamilySpec("xs", {"S": [1, 3]})),
        ("xs_all", FamilySpec("xs", {"S": [1, 2, 3, 4, 5]})),
        ("xs_cubes", FamilySpec("xs_cubes", {"S": [1, 2], "dimension": 2})),
        ("frames", FamilySpec("frames_zs", {"S": [2, 4]})),
        ("frames_scaled", FamilySpec("frames_zs", {"S": [2, 4],
                                                   "integer_scaled": True})),
        ("grid", FamilySpec("ys_prop3", {"S": [1, 3], "dimension": 2})),
        ("ug", FamilySpec("ug", {"bits": [1, 0, 1, 1]})),
        ("ys_td", FamilySpec("ys_td", {"S": [2, 6]})),
        ("discrete", FamilySpec("discrete", {"S": [1, 2]})),
        ("as_primes", FamilySpec("as_primes", {"S": [3, 5], "N": 6})),
        ("xu", FamilySpec("xu", {"u": 2, "N": 4})),
        ("xu_open", FamilySpec("xu", {"u": 3, "N": 4,
                                      "open_variant": True})),
    ]


def c12_io_determinism():
    from . import jsonio
    n = 0
    for label, spec in _catalog():
        obj = build_family(spec)
        s1 = jsonio.dumps(obj)
        s2 = jsonio.dumps(build_family(spec))
        if s1 != s2:
            return "fail", f"{label}: rebuild changed bytes"
        back = jsonio.loads(s1)
        if back != obj:
            return "fail", f"{label}: parse round-trip drifted"
        if jsonio.dumps(back) != s1:
            return "fail", f"{label}: re-serialization drifted"
        n += 1
    return "pass", f"catalog round-trip {n}/{n}, rebuilds byte-identical"


CRITERIA = [
    (1, "signature recovery over all subsets of 1..6", c01_signature_recovery),
    (2, "linear block recovery and distinguishability", c02_linear_recovery),
    (3, "cube recovery agrees with linear recovery", c03_cube_recovery),
    (4, "tower derivative profiles and order types", c04_tower_profiles),
    (5, "grid component sizes and chain lengths", c05_grid_components),
    (6, "punched frames: holes and integer decompositions", c06_frames),
    (7, "numeric limit-point oracle stabilizes", c07_numeric_oracle),
    (8, "width incompatibility index", c08_width_index),
    (9, "bit-code profiles and order types", c09_bit_codes),
    (10, "discrete approximants and scaffold signatures",
     c10_discrete_approximants),
    (11, "prime cluster recovery", c11_prime_clusters),
    (12, "serialization determinism and round-trip", c12_io_determinism),
]


def run_criteria(only=None) -> list:
    out = []
    for cid, title, fn in CRITERIA:
        if only is not None and cid not in only:
            continue
        try:
            status, detail = fn()
        except Exception as e:  # noqa: BLE001 -- surfaced as a failure line
            status, detail = "fail", f"{type(e).__name__}: {e}"
        out.append((cid, title, status, detail))
    return out


def render_report(results) -> str:
    lines = ["scatterlab selftest"]
    for cid, title, status, detail in results:
        lines.append(f"criterion {cid:02d} {status:5s} {title}: {detail}")
    npass = sum(1 for r in results if r[2] == "pass")
    nfail = sum(1 for r in results if r[2] == "fail")
    nx = sum(1 for r in results if r[2] == "xfail")
    verdict = "pass" if nfail == 0 else "fail"
    lines.append(f"result: {verdict} ({npass} pass, {nfail} fail, {nx} xfail)")
    return "\n".join(lines) + "\n"


def report_obj(results) -> dict:
    return {
        "kind": "selftest_report",
        "criteria": [{"id": cid, "title": title, "status": status,
                      "detail": detail}
                     for cid, title, status, detail in results],
        "result": "fail" if any(r[2] == "fail" for r in results) else "pass",
    }
