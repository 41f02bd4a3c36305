"""Axis-aligned boxes: adjacency chains, punched frames, product families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChainIntractableError, ValidationError
from .linear import LinearRecovery, compress, recover_S_linear
from .rat import Rat, pow2, rat
from .setcore import member
from .terms import PtSetTerm


@dataclass(frozen=True)
class Box:
    """Cube with edges parallel to the axes; closed unless stated."""

    corner: tuple
    edge: Rat
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "corner", tuple(rat(c) for c in self.corner))
        object.__setattr__(self, "edge", rat(self.edge))
        if self.edge <= 0:
            raise ValidationError("box edge must be positive")
        if not self.corner:
            raise ValidationError("box needs at least one axis")

    @property
    def dimension(self) -> int:
        return len(self.corner)

    def lo(self, i: int) -> Rat:
        return self.corner[i]

    def hi(self, i: int) -> Rat:
        return self.corner[i] + self.edge

    def contains(self, xs) -> bool:
        xs = tuple(rat(x) for x in xs)
        if len(xs) != self.dimension:
            raise ValidationError("dimension mismatch")
        if self.closed:
            return all(self.lo(i) <= x <= self.hi(i)
                       for i, x in enumerate(xs))
        return all(self.lo(i) < x < self.hi(i) for i, x in enumerate(xs))


@dataclass(frozen=True)
class BoxUnion:
    boxes: tuple

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        if not self.boxes:
            raise ValidationError("empty box union")
        d = self.boxes[0].dimension
        if any(b.dimension != d for b in self.boxes):
            raise ValidationError("mixed dimensions in box union")

    @property
    def dimension(self) -> int:
        return self.boxes[0].dimension


def boxes_touch(a: Box, b: Box) -> bool:
    """Closures intersect: per axis the closed extents overlap."""
    return all(max(a.lo(i), b.lo(i)) <= min(a.hi(i), b.hi(i))
               for i in range(a.dimension))


def box_components(bu: BoxUnion) -> list:
    """Connected components under closure contact, as lists of box indexes,
    each labelled by its least member."""
    n = len(bu.boxes)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if boxes_touch(bu.boxes[i], bu.boxes[j]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return [sorted(v) for _, v in sorted(comps.items())]


# --------------------------------------------------------------------------
# longest contact chains
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainComponent:
    indexes: tuple
    longest: int
    witness: tuple  # box indexes, consecutive closures touch


_BB_LIMIT = 20


def chain_sizes(bu: BoxUnion) -> list:
    """Longest contact chain in each component, with a validated witness.

    Complete grids get a snake path covering every cell; small irregular
    components fall back to exhaustive search; larger ones are refused.
    """
    out = []
    for comp in box_components(bu):
        boxes = [bu.boxes[i] for i in comp]
        witness_local = _grid_snake(boxes)
        if witness_local is None:
            if len(boxes) > _BB_LIMIT:
                raise ChainIntractableError(
                    f"component of {len(boxes)} boxes is not a grid")
            witness_local = _longest_path(boxes)
        witness = tuple(comp[i] for i in witness_local)
        for a, b in zip(witness, witness[1:]):
            if not boxes_touch(bu.boxes[a], bu.boxes[b]):
                raise ValidationError("chain witness has a gap")
        if len(set(witness)) != len(witness):
            raise ValidationError("chain witness repeats a box")
        out.append(ChainComponent(tuple(comp), len(witness), witness))
    return out


def _grid_snake(boxes) -> list | None:
    """If the boxes form a complete axis-aligned grid of equal cells, return
    a snake ordering visiting all of them; None otherwise."""
    edge = boxes[0].edge
    if any(b.edge != edge for b in boxes):
        return None
    dim = boxes[0].dimension
    axes = []
    for i in range(dim):
        vals = sorted({b.lo(i) for b in boxes})
        for a, b in zip(vals, vals[1:]):
            if b - a != edge:
                return None
        axes.append(vals)
    total = 1
    for vals in axes:
        total *= len(vals)
    if total != len(boxes):
        return None
    pos = {tuple(vals.index(b.lo(i)) for i, vals in enumerate(axes)): k
           for k, b in enumerate(boxes)}
    if len(pos) != len(boxes):
        return None

    def snake(shape):
        if len(shape) == 1:
            return [(i,) for i in range(shape[0])]
        sub = snake(shape[:-1])
        out = []
        for j in range(shape[-1]):
            layer = sub if j % 2 == 0 else list(reversed(sub))
            out.extend(p + (j,) for p in layer)
        return out

    order = snake(tuple(len(v) for v in axes))
    return [pos[p] for p in order]


def _longest_path(boxes) -> list:
    n = len(boxes)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if boxes_touch(boxes[i], boxes[j]):
                adj[i][j] = adj[j][i] = True
    best: list = []

    def walk(path, used):
        nonlocal best
        if len(path) > len(best):
            best = list(path)
        if len(path) + (n - len(used)) <= len(best):
            return
        for j in range(n):
            if j not in used and adj[path[-1]][j]:
                path.append(j)
                used.add(j)
                walk(path, used)
                used.discard(j)
                path.pop()

    for s in range(n):
        walk([s], {s})
    return best


# --------------------------------------------------------------------------
# punched frames
# --------------------------------------------------------------------------

def _hole_positions(m: int) -> set:
    # odd diagonal cells: interior, pairwise non-adjacent, corners kept
    return {(2 * i + 1, 2 * i + 1) for i in range(m)}


def frame_region(m: int, corner=(Fraction(0), Fraction(0))) -> BoxUnion:
    """The closed square of side 2^-m cut into (2m+1)^2 cells with m open
    diagonal cells removed."""
    if m < 1:
        raise ValidationError("need at least one hole")
    h = pow2(-m) / (2 * m + 1)
    cx, cy = (rat(c) for c in corner)
    holes = _hole_positions(m)
    cells = [Box((cx + i * h, cy + j * h), h)
             for i in range(2 * m + 1) for j in range(2 * m + 1)
             if (i, j) not in holes]
    return BoxUnion(tuple(cells))


def frame_holes(bu: BoxUnion) -> int:
    """Count the punched cells, validating the frame shape exactly."""
    if bu.dimension != 2:
        raise ValidationError("frames are two-dimensional")
    h = bu.boxes[0].edge
    if any(b.edge != h for b in bu.boxes):
        raise ValidationError("frame cells must share one edge length")
    x0 = min(b.lo(0) for b in bu.boxes)
    y0 = min(b.lo(1) for b in bu.boxes)
    cells = set()
    for b in bu.boxes:
        qx, qy = (b.lo(0) - x0) / h, (b.lo(1) - y0) / h
        if qx.denominator != 1 or qy.denominator != 1:
            raise ValidationError("cells are off-grid")
        cells.add((int(qx), int(qy)))
    if len(cells) != len(bu.boxes):
        raise ValidationError("duplicate cells")
    k = max(max(i, j) for i, j in cells) + 1
    if k % 2 == 0:
        raise ValidationError("frame side must cover an odd number of cells")
    missing = {(i, j) for i in range(k) for j in range(k)} - cells
    m = (k - 1) // 2
    if missing != _hole_positions(m):
        raise ValidationError("holes are not the odd diagonal cells")
    return m


def frame_unit_decomposition(m: int) -> BoxUnion:
    """The frame rescaled by 4^m (2m+1): integer corners, cell edge 2^m."""
    t = 4**m * (2 * m + 1)
    base = frame_region(m)
    scaled = []
    for b in base.boxes:
        c = tuple(t * x for x in b.corner)
        e = t * b.edge
        if any(x.denominator != 1 for x in c) or e.denominator != 1:
            raise ValidationError("scaling did not clear denominators")
        scaled.append(Box(c, e))
    return BoxUnion(tuple(scaled))


@dataclass(frozen=True)
class FrameRegion:
    """One punched frame with its index; scaled means integer coordinates."""

    m: int
    cells: BoxUnion
    scaled: bool = False


# --------------------------------------------------------------------------
# product families and their recovery
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductFamily:
    """A linear term crossed with unit-interval fibres on the extra axes.

    Derivatives act on the base only: the fibre is compact and perfect, so
    boundary readings at any fibre section agree with the base readings.
    """

    base: PtSetTerm
    dimension: int
    boxes: BoxUnion | None = None
    labels: tuple = ()

    def __post_init__(self):
        if self.dimension < 1:
            raise ValidationError("products need at least one axis")
        if self.boxes is not None and self.boxes.dimension != self.dimension:
            raise ValidationError("component boxes have the wrong dimension")


def product_member(pf: ProductFamily, xs) -> bool:
    xs = tuple(rat(x) for x in xs)
    if len(xs) != pf.dimension:
        raise ValidationError("dimension mismatch")
    if not member(pf.base, xs[0]):
        return False
    return all(0 <= x <= 1 for x in xs[1:])


@dataclass(frozen=True)
class CubeRecovery:
    S: frozenset
    dimension: int
    depths: dict
    probes: tuple

    def __hash__(self):
        return hash((self.S, self.dimension))


def recover_S_cubes(pf: ProductFamily, n_max: int = 8) -> CubeRecovery:
    """Block recovery for a product family via its base readings, with
    membership probes pinning the glue zones inside the product."""
    lr: LinearRecovery = recover_S_linear(pf.base, n_max)
    probes = []
    fib0 = (Fraction(0),) * (pf.dimension - 1)
    fib1 = (Fraction(1),) * (pf.dimension - 1)
    for n in sorted(lr.S):
        p = compress(n, 5 * n + 1)  # glue zone entry, inside the base set
        for fib in (fib0, fib1):
            if not product_member(pf, (p,) + fib):
                raise ValidationError(
                    f"glue probe for block {n} missing from the product")
        probes.append((n, p))
    return CubeRecovery(lr.S, pf.dimension, dict(lr.depths), tuple(probes))
