"""Byte-stable JSON for terms, box artifacts, and reports.

Every rational is rendered "p/q"; keys are emitted sorted, so equal values
always serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cubes import Box, BoxUnion, FrameRegion, ProductFamily
from .errors import ValidationError
from .rat import format_rat, parse_rat
from .terms import (
    EMPTY, Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder,
    Mirror, Point, Thicken, Union,
)
from .verify import DistinguishReport


def to_obj(x):
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, Empty):
        return {"kind": "empty"}
    if isinstance(x, Point):
        return {"kind": "point", "a": to_obj(x.a)}
    if isinstance(x, Interval):
        return {"kind": "interval", "a": to_obj(x.a), "b": to_obj(x.b),
                "closed": x.closed}
    if isinstance(x, Ladder):
        return {"kind": "ladder", "target": to_obj(x.target),
                "offset0": to_obj(x.offset0), "ratio": to_obj(x.ratio),
                "include_target": x.include_target}
    if isinstance(x, Cantor):
        return {"kind": "cantor", "a": to_obj(x.a), "b": to_obj(x.b)}
    if isinstance(x, FWrap):
        return {"kind": "fwrap", "inner": to_obj(x.inner),
                "include_top": x.include_top}
    if isinstance(x, Affine):
        return {"kind": "affine", "scale": to_obj(x.scale),
                "shift": to_obj(x.shift), "inner": to_obj(x.inner)}
    if isinstance(x, Union):
        return {"kind": "union", "parts": [to_obj(p) for p in x.parts]}
    if isinstance(x, Thicken):
        return {"kind": "thicken", "inner": to_obj(x.inner),
                "cap": to_obj(x.cap)}
    if isinstance(x, Mirror):
        return {"kind": "mirror", "center": to_obj(x.center),
                "inner": to_obj(x.inner)}
    if isinstance(x, EndpointSet):
        return {"kind": "endpoints", "of": to_obj(x.of)}
    if isinstance(x, Box):
        return {"kind": "box", "corner": [to_obj(c) for c in x.corner],
                "edge": to_obj(x.edge), "closed": x.closed}
    if isinstance(x, BoxUnion):
        return {"kind": "box_union", "boxes": [to_obj(b) for b in x.boxes]}
    if isinstance(x, FrameRegion):
        return {"kind": "frame_region", "m": x.m, "cells": to_obj(x.cells),
                "scaled": x.scaled}
    if isinstance(x, ProductFamily):
        return {"kind": "product_family", "base": to_obj(x.base),
                "dimension": x.dimension,
                "boxes": None if x.boxes is None else to_obj(x.boxes),
                "labels": list(x.labels)}
    if isinstance(x, DistinguishReport):
        return {"kind": "distinguish_report", "family": x.family,
                "labels": list(x.labels), "invariant": x.invariant,
                "matrix": [list(r) for r in x.matrix],
                "witnesses": [list(w) for w in x.witnesses],
                "errors": [list(e) for e in x.errors],
                "all_distinct": x.all_distinct}
    from .families import FramesFamily
    if isinstance(x, FramesFamily):
        return {"kind": "frames_family", "base": to_obj(x.base),
                "frames": [to_obj(f) for f in x.frames]}
    raise ValidationError(f"no JSON form for {type(x).__name__}")


def from_obj(o):
    if isinstance(o, str):
        return parse_rat(o)
    if not isinstance(o, dict) or "kind" not in o:
        raise ValidationError("expected an object with a 'kind' field")
    k = o["kind"]
    try:
        if k == "empty":
            return EMPTY
        if k == "point":
            return Point(from_obj(o["a"]))
        if k == "interval":
            return Interval(from_obj(o["a"]), from_obj(o["b"]),
                            closed=bool(o["closed"]))
        if k == "ladder":
            return Ladder(from_obj(o["target"]), from_obj(o["offset0"]),
                          from_obj(o["ratio"]),
                          include_target=bool(o["include_target"]))
        if k == "cantor":
            return Cantor(from_obj(o["a"]), from_obj(o["b"]))
        if k == "fwrap":
            return FWrap(from_obj(o["inner"]),
                         include_top=bool(o["include_top"]))
        if k == "affine":
            return Affine(from_obj(o["scale"]), from_obj(o["shift"]),
                          from_obj(o["inner"]))
        if k == "union":
            return Union(tuple(from_obj(p) for p in o["parts"]))
        if k == "thicken":
            return Thicken(from_obj(o["inner"]), from_obj(o["cap"]))
        if k == "mirror":
            return Mirror(from_obj(o["center"]), from_obj(o["inner"]))
        if k == "endpoints":
            return EndpointSet(from_obj(o["of"]))
        if k == "box":
            return Box(tuple(from_obj(c) for c in o["corner"]),
                       from_obj(o["edge"]), closed=bool(o["closed"]))
        if k == "box_union":
            return BoxUnion(tuple(from_obj(b) for b in o["boxes"]))
        if k == "frame_region":
            return FrameRegion(int(o["m"]), from_obj(o["cells"]),
                               scaled=bool(o["scaled"]))
        if k == "product_family":
            return ProductFamily(
                from_obj(o["base"]), int(o["dimension"]),
                None if o["boxes"] is None else from_obj(o["boxes"]),
                tuple(o["labels"]))
        if k == "frames_family":
            from .families import FramesFamily
            return FramesFamily(from_obj(o["base"]),
                                tuple(from_obj(f) for f in o["frames"]))
    except KeyError as e:
        raise ValidationError(f"{k} object is missing field {e}") from e
    raise ValidationError(f"unknown kind {k!r}")


def dumps(x) -> str:
    return json.dumps(to_obj(x), sort_keys=True, separators=(",", ":")) + "\n"


def dumps_obj(o) -> str:
    """Canonical bytes for an already plain JSON object."""
    return json.dumps(o, sort_keys=True, separators=(",", ":")) + "\n"


def loads(s: str):
    return from_obj(json.loads(s))
