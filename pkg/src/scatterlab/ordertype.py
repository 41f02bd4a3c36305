"""Symbolic order types: ordinals in base-omega normal form and the small
linear-order vocabulary needed for interval families with integer-like
clusters."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotWellOrderedError, ProfileMismatchError
from .terms import (
    Affine, Empty, FWrap, Ladder, Mirror, Point, PtSetTerm, Union, bounds,
    canonical,
)

# ordinals below omega^omega: tuple of (exponent, coefficient), exponents
# strictly decreasing, coefficients positive
OrdCNF = tuple

ORD_ZERO: OrdCNF = ()
ORD_ONE: OrdCNF = ((0, 1),)
OMEGA: OrdCNF = ((1, 1),)


def ord_fin(n: int) -> OrdCNF:
    if n < 0:
        raise ValueError("finite ordinal must be >= 0")
    return () if n == 0 else ((0, n),)


def omega_pow(e: int, coeff: int = 1) -> OrdCNF:
    return ((e, coeff),)


def ord_add(a: OrdCNF, b: OrdCNF) -> OrdCNF:
    """Ordinal addition; lower-order terms of a are absorbed by b."""
    if not b:
        return a
    eb = b[0][0]
    merged = [term for term in a if term[0] > eb]
    rest = list(b)
    if a:
        same = [term for term in a if term[0] == eb]
        if same:
            rest[0] = (eb, same[0][1] + b[0][1])
    merged.extend(rest)
    return tuple(merged)


def ord_mul_omega(a: OrdCNF) -> OrdCNF:
    """a * omega: only the leading exponent survives."""
    if not a:
        return ORD_ZERO
    return ((a[0][0] + 1, 1),)


def render_ord(a: OrdCNF) -> str:
    if not a:
        return "0"
    out = []
    for e, c in a:
        if e == 0:
            out.append(str(c))
        else:
            base = "w" if e == 1 else f"w^{e}"
            out.append(base if c == 1 else f"{base}·{c}")
    return "+".join(out)


def scattered_order_type(t: PtSetTerm) -> OrdCNF:
    """Order type of a compact scattered term under the real-line order.

    Defined on ascending shapes: points, ladders, wrapped towers, positive
    rescalings and strictly separated unions.
    """
    t = canonical(t)
    return _sot(t)


def _sot(t: PtSetTerm) -> OrdCNF:
    if isinstance(t, Empty):
        return ORD_ZERO
    if isinstance(t, Point):
        return ORD_ONE
    if isinstance(t, Ladder):
        return ord_add(OMEGA, ORD_ONE) if t.include_target else OMEGA
    if isinstance(t, FWrap):
        body = ord_mul_omega(_sot(t.inner))
        return ord_add(body, ORD_ONE) if t.include_top else body
    if isinstance(t, Affine):
        if t.scale < 0:
            raise NotWellOrderedError("negative rescaling reverses the order")
        return _sot(t.inner)
    if isinstance(t, Mirror):
        raise NotWellOrderedError("mirrored sets are not ascending")
    if isinstance(t, Union):
        bs = []
        for p in t.parts:
            bb = bounds(p)
            if bb is None:
                continue
            bs.append((bb, p))
        bs.sort(key=lambda x: x[0])
        for i in range(len(bs) - 1):
            if bs[i][0][1] >= bs[i + 1][0][0]:
                raise NotWellOrderedError("union parts interleave")
        out = ORD_ZERO
        for _, p in bs:
            out = ord_add(out, _sot(p))
        return out
    raise NotWellOrderedError(f"{t.kind} does not denote a scattered order")


# --------------------------------------------------------------------------
# linear order vocabulary for open-interval families
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Fin:
    n: int


@dataclass(frozen=True)
class Zeta:
    """The order type of the integers: no first or last element."""


@dataclass(frozen=True)
class Sum:
    parts: tuple


@dataclass(frozen=True)
class OmegaSeq:
    """An omega-indexed concatenation listed by its first entries."""

    parts: tuple


LinType = object


def render_lin(t) -> str:
    if isinstance(t, Fin):
        return str(t.n)
    if isinstance(t, Zeta):
        return "z"
    if isinstance(t, Sum):
        return "+".join(render_lin(p) for p in t.parts)
    if isinstance(t, OmegaSeq):
        inner = "+".join(render_lin(p) for p in t.parts)
        return f"({inner})+…"
    raise TypeError(f"unknown linear type {t!r}")


def ug_order_type(bits) -> OmegaSeq:
    """Component order of the bit-coded interval family.

    Listed as the prefix of an omega-long concatenation: one leading unit,
    then per bit a cluster of integer type followed by 2+bit units (the
    trailing run of one block together with the head of the next).
    """
    bits = tuple(int(b) for b in bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be a nonempty 0/1 sequence")
    parts = [Fin(1)]
    for b in bits:
        parts.append(Zeta())
        parts.append(Fin(2 + b))
    return OmegaSeq(tuple(parts))


def bits_of_order_type(t) -> tuple:
    """Inverse of ug_order_type; raises ProfileMismatchError off-pattern."""
    if not isinstance(t, (Sum, OmegaSeq)):
        raise ProfileMismatchError("expected a concatenation")
    parts = t.parts
    if not parts or parts[0] != Fin(1):
        raise ProfileMismatchError("must start with a single unit")
    rest = parts[1:]
    if len(rest) % 2 or not rest:
        raise ProfileMismatchError("expected alternating cluster/run pairs")
    bits = []
    for i in range(len(rest) // 2):
        z, f = rest[2 * i], rest[2 * i + 1]
        if not isinstance(z, Zeta) or not isinstance(f, Fin):
            raise ProfileMismatchError("expected cluster then unit run")
        b = f.n - 2
        if b not in (0, 1):
            raise ProfileMismatchError(f"run length {f.n} out of range")
        bits.append(b)
    return tuple(bits)
