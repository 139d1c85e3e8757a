"""Hamming's inner-sphere construction in the cube [-2, 2]^n.

Unit balls sit at the 2^n centres (+-1, ..., +-1).  The ball at the origin
tangent to all of them has radius sqrt(n) - 1, which exceeds the half-edge 2
from n = 10 on.  Numerically that means the inner ball does cross the face
planes |x_i| = 2 (the point (sqrt(n) - 1) e_1 lies outside the cube), while
the corner-to-corner diagonal 4 sqrt(n) shows how much room the cube has
along its long directions.  The report keeps both numbers side by side
(``inner_radius`` against ``face_distance``) instead of deciding whether the
inner ball "reaches the outside".
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from decimal import Context, Decimal

from .exact import p_hyper, unit_volume_exact

__all__ = ["ParadoxReport", "analyze", "inner_radius_decimal", "l_max_decimal", "FACE_DISTANCE"]

FACE_DISTANCE = 2.0


@dataclass(frozen=True)
class ParadoxReport:
    n: int
    inner_radius: float
    inner_exceeds_2: bool
    inner_pokes_outside: bool
    face_distance: float
    l_max: float
    corner_sphere_count: int
    frac_corner_exact: float
    frac_inner_raw: float
    frac_uncovered_lower_bound: float

    def as_dict(self) -> dict:
        return asdict(self)


def _check(n):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("n must be an int")
    if n < 2:
        raise ValueError(f"the construction needs n >= 2, got {n}")


def inner_radius_decimal(n: int, precision: int = 50) -> Decimal:
    _check(n)
    ctx = Context(prec=precision)
    return ctx.subtract(ctx.sqrt(Decimal(n)), Decimal(1))


def l_max_decimal(n: int, precision: int = 50) -> Decimal:
    """Longest vertex-to-vertex distance of the edge-4 cube."""
    _check(n)
    ctx = Context(prec=precision)
    return ctx.multiply(Decimal(4), ctx.sqrt(Decimal(n)))


def analyze(n: int) -> ParadoxReport:
    _check(n)
    # sqrt(n) - 1 > 2  <=>  n > 9, decided on integers
    exceeds = n > 9
    radius = math.sqrt(n) - 1.0
    frac_corner = float(p_hyper(n))
    frac_inner = float(unit_volume_exact(n)) * (radius / 4.0) ** n
    return ParadoxReport(
        n=n,
        inner_radius=radius,
        inner_exceeds_2=exceeds,
        inner_pokes_outside=exceeds,
        face_distance=FACE_DISTANCE,
        l_max=4.0 * math.sqrt(n),
        corner_sphere_count=2**n,
        frac_corner_exact=frac_corner,
        frac_inner_raw=frac_inner,
        frac_uncovered_lower_bound=1.0 - frac_corner - frac_inner,
    )
