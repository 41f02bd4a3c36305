"""Command-line surface: build, invariant, distinguish, render, selftest.

Exit codes: 0 success, 1 verification failure, 2 usage or validation
error.  Errors are reported as one-line JSON diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import jsonio
from .cubes import BoxUnion, FrameRegion, ProductFamily, frame_holes
from .errors import ScatterlabError
from .families import FamilySpec, FAMILY_IDS, build_family
from .rat import parse_rat
from .selftest import report_obj, run_criteria
from .svg import render_artifact
from .terms import PtSetTerm
from .verify import distinguish_matrix, render_value

_DEFAULT_INVARIANT = {
    "kn": "signature", "xs": "recover_S_linear",
    "xs_cubes": "recover_S_cubes", "frames_zs": "holes",
    "ys_prop3": "chain_sizes", "ug": "bits_profile", "ys_td": "signature",
    "as_primes": "cluster_profile", "xu": "recover_S_linear",
    "discrete": "signature",
}


def _depth_default() -> int:
    raw = os.environ.get("SCATTERLAB_DEPTH_DEFAULT", "")
    if raw:
        try:
            d = int(raw)
        except ValueError as e:
            raise UsageError(f"SCATTERLAB_DEPTH_DEFAULT must be an integer, "
                             f"got {raw!r}") from e
        if d < 1:
            raise UsageError("SCATTERLAB_DEPTH_DEFAULT must be >= 1")
        return d
    return 6


class UsageError(Exception):
    pass


def _parse_int_list(s: str) -> list:
    try:
        return [int(x) for x in s.split(",") if x != ""]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from e


def _parse_bits(s: str) -> list:
    if set(s) - {"0", "1"}:
        raise UsageError(f"expected a 0/1 string, got {s!r}")
    return [int(c) for c in s]


def _parse_range(s: str) -> range:
    try:
        a, b = s.split("..")
        return range(int(a), int(b) + 1)
    except ValueError as e:
        raise UsageError(f"expected a..b, got {s!r}") from e


def _read_input(args):
    if getattr(args, "input", None):
        raw = args.input
        if not raw.lstrip().startswith(("{", "[")):
            raise UsageError("inline input must be JSON")
        return json.loads(raw)
    path = getattr(args, "infile", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    return None


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_spec_from_args(args) -> FamilySpec:
    obj = _read_input(args)
    if obj is not None:
        if not isinstance(obj, dict) or "family" not in obj:
            raise UsageError("build input must be a family spec object")
        return FamilySpec(obj["family"], dict(obj.get("params", {})))
    if not args.family:
        raise UsageError("build needs --family or a family spec input")
    if args.family not in FAMILY_IDS:
        raise UsageError(f"unknown family {args.family!r}; "
                         f"choose from {', '.join(FAMILY_IDS)}")
    params = {}
    if args.set is not None:
        vals = _parse_int_list(args.set)
        if args.family == "kn":
            if len(vals) != 1:
                raise UsageError("kn takes a single index")
            params["n"] = vals[0]
        elif args.family == "xu":
            if len(vals) != 1:
                raise UsageError("xu takes a single width base via --set")
            params["u"] = vals[0]
        else:
            params["S"] = vals
    if args.bits is not None:
        params["bits"] = _parse_bits(args.bits)
    if args.dimension is not None:
        params["dimension"] = args.dimension
    if args.depth is not None:
        params["depth"] = args.depth
    return FamilySpec(args.family, params)


def _cmd_build(args) -> int:
    spec = _family_spec_from_args(args)
    obj = build_family(spec)
    if args.format == "svg":
        _emit(args, render_artifact(obj, args.depth or _depth_default()))
    else:
        _emit(args, jsonio.dumps(obj))
    return 0


def _invariant_value(name: str, obj, args):
    from .derive import cb_profile, signature
    from .linear import bits_profile, recover_S_linear
    from .cubes import chain_sizes, recover_S_cubes
    from .verify import cluster_profile
    delta = parse_rat(args.delta) if args.delta else Fraction(1, 10)
    if name == "holes":
        if isinstance(obj, FrameRegion):
            return frame_holes(obj.cells)
        if isinstance(obj, BoxUnion):
            return frame_holes(obj)
        from .families import FramesFamily
        if isinstance(obj, FramesFamily):
            return tuple(sorted(frame_holes(fr.cells) for fr in obj.frames))
        raise UsageError("holes needs a frame artifact")
    if name == "chain_sizes":
        if not isinstance(obj, BoxUnion):
            raise UsageError("chain_sizes needs a box union")
        return tuple(sorted((len(c.indexes), c.longest)
                            for c in chain_sizes(obj)))
    if name == "recover_S_cubes":
        if not isinstance(obj, ProductFamily):
            raise UsageError("recover_S_cubes needs a product family")
        return recover_S_cubes(obj).S
    if not isinstance(obj, PtSetTerm):
        raise UsageError(f"{name} needs a term input")
    if name == "signature":
        return signature(obj, k_max=args.k_max or 24)
    if name == "recover_S_linear":
        return recover_S_linear(obj).S
    if name == "bits_profile":
        return bits_profile(obj, args.depth or _depth_default())
    if name == "cluster_profile":
        return cluster_profile(obj, delta)
    if name == "vanishing_index":
        return cb_profile(obj).vanishing_index
    raise UsageError(f"unknown invariant {name!r}")


def _cmd_invariant(args) -> int:
    obj = _read_input(args)
    if obj is None:
        raise UsageError("invariant needs a term input (--in or inline)")
    value = _invariant_value(args.invariant, jsonio.from_obj(obj), args)
    _emit(args, jsonio.dumps_obj({"invariant": args.invariant,
                                  "value": render_value(value)}))
    return 0


def _cmd_distinguish(args) -> int:
    if not args.family:
        raise UsageError("distinguish needs --family")
    if args.all_subsets is None:
        raise UsageError("distinguish needs --all-subsets a..b")
    base = list(_parse_range(args.all_subsets))
    from itertools import combinations
    members = []
    for r in range(1, len(base) + 1):
        for c in combinations(base, r):
            params = {"S": list(c)}
            if args.dimension is not None:
                params["dimension"] = args.dimension
            label = "S=" + ",".join(str(x) for x in c)
            members.append((label, build_family(FamilySpec(args.family,
                                                           params))))
    name = args.invariant or _DEFAULT_INVARIANT.get(args.family, "signature")
    delta = parse_rat(args.delta) if args.delta else Fraction(1, 10)
    rep = distinguish_matrix(args.family, members, name, delta=delta)
    _emit(args, jsonio.dumps(rep))
    return 0 if rep.all_distinct else 1


def _cmd_render(args) -> int:
    obj = _read_input(args)
    if obj is None:
        raise UsageError("render needs an artifact input (--in or inline)")
    _emit(args, render_artifact(jsonio.from_obj(obj),
                                args.depth or _depth_default()))
    return 0


def _cmd_selftest(args) -> int:
    if args.format == "svg":
        raise UsageError("selftest reports are JSON only")
    only = set(_parse_int_list(args.criteria)) if args.criteria else None
    results = run_criteria(only)
    _emit(args, jsonio.dumps_obj(report_obj(results)))
    return 0 if all(r[2] != "fail" for r in results) else 1


def _add_common(p):
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--k-max", dest="k_max", type=int, default=None)
    p.add_argument("--delta", default=None)
    p.add_argument("--dimension", type=int, default=None)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("input", nargs="?", default=None,
                   help="inline JSON input")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="scatterlab",
        description="finite-depth derivative calculus on exact point sets")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("build", help="build a catalog member as JSON")
    b.add_argument("--family", default=None)
    b.add_argument("--set", default=None)
    b.add_argument("--bits", default=None)
    _add_common(b)

    iv = sub.add_parser("invariant", help="compute a named invariant")
    iv.add_argument("--invariant", "--name", dest="invariant", required=True)
    _add_common(iv)

    d = sub.add_parser("distinguish", help="pairwise invariant matrix")
    d.add_argument("--family", default=None)
    d.add_argument("--all-subsets", dest="all_subsets", default=None)
    d.add_argument("--invariant", default=None)
    _add_common(d)

    r = sub.add_parser("render", help="render an artifact as SVG")
    _add_common(r)

    st = sub.add_parser("selftest", help="run the acceptance criteria")
    st.add_argument("--criteria", default=None,
                    help="comma-separated criterion ids")
    _add_common(st)
    return ap


_HANDLERS = {"build": _cmd_build, "invariant": _cmd_invariant,
             "distinguish": _cmd_distinguish, "render": _cmd_render,
             "selftest": _cmd_selftest}


def main(argv=None) -> int:
    ap = make_parser()
    try:
        try:
            args = ap.parse_args(argv)
        except SystemExit as e:  # -h/--help
            return 0 if e.code in (0, None) else 2
        return _HANDLERS[args.cmd](args)
    except (UsageError, ScatterlabError, json.JSONDecodeError, OSError,
            TypeError) as e:
        diag = {"error": type(e).__name__, "message": str(e)}
        sys.stderr.write(json.dumps(diag, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
