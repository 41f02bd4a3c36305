"""Hand-rolled oracles used to pin expected values independently of the
library's own algorithms.

The Cantor check tracks the relative position inside the surviving stage
interval instead of running a digit expansion; the ladder check solves for
the exact rung exponent by integer power matching instead of iterating
offsets down to the query point.
"""

from fractions import Fraction


def cantor_member_stagewise(x, a, b) -> bool:
    """Membership in the Cantor set scaled onto [a, b].

    Keeps the position of x relative to the stage interval that still
    contains it: left third maps r to 3r, right third to 3r - 2, and a
    position strictly inside the removed middle third rejects.  Stage
    endpoints survive forever; a revisited position means the orbit cycles
    without ever entering a middle third, so it survives too.  Exact for
    rationals, which always cycle.
    """
    x, a, b = Fraction(x), Fraction(a), Fraction(b)
    if x < a or x > b:
        return False
    r = (x - a) / (b - a)
    seen = set()
    while True:
        if r == 0 or r == 1:
            return True
        if r in seen:
            return True
        seen.add(r)
        if r <= Fraction(1, 3):
            r = 3 * r
        elif r >= Fraction(2, 3):
            r = 3 * r - 2
        else:
            return False


def _power_exponent(n: int, base: int):
    """k with base**k == n, or None; base >= 2."""
    k = 0
    while n > 1:
        if n % base:
            return None
        n //= base
        k += 1
    return k


def ladder_member_power(x, target, offset0, ratio, include_target) -> bool:
    """Ladder membership solved in closed form.

    x sits on {target - offset0 * ratio^k} iff (target - x) / offset0 is a
    nonnegative integer power of ratio.  A reduced fraction is a power of
    the reduced ratio exactly when numerator and denominator are matching
    integer powers, so no iteration over rungs is needed.
    """
    d = Fraction(target) - Fraction(x)
    if d == 0:
        return bool(include_target)
    q = d / Fraction(offset0)
    if q <= 0 or q > 1:
        return False
    if q == 1:
        return True
    rn, rd = Fraction(ratio).numerator, Fraction(ratio).denominator
    k = _power_exponent(q.denominator, rd)
    return k is not None and q.numerator == rn**k


def k1_points(depth: int) -> list:
    """The first tower written out directly: a geometric ramp to 6 plus 6."""
    pts = {Fraction(6) - Fraction(1, 2**k) for k in range(depth)}
    pts.add(Fraction(6))
    return sorted(pts)
