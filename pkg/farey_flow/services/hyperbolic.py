"""Upper half-plane geometry: geodesics from their feet, crossings, distance and flow."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Tuple, Union

import mpmath

from farey_flow.arith.boundary import (
    INFINITY,
    BoundaryPoint,
    as_boundary,
    compare,
    mobius_apply,
)
from farey_flow.arith.matrix import IntMatrix2
from farey_flow.arith.precision import require_positive, to_mpf
from farey_flow.arith.quadratic import Exact, QuadSurd
from farey_flow.errors import (
    DegenerateGeodesicError,
    DomainError,
    FieldMismatchError,
    NoCrossingError,
)

logger = logging.getLogger(__name__)

Coordinate = Union[Fraction, QuadSurd, mpmath.mpf]


def _is_exact(value: object) -> bool:
    return isinstance(value, (int, Fraction, QuadSurd))


@dataclass(frozen=True)
class HPoint:
    """x + iy with y > 0; coordinates are exact when representable, else mpf."""

    x: Coordinate
    y: Coordinate

    def __post_init__(self) -> None:
        if isinstance(self.x, int):
            object.__setattr__(self, "x", Fraction(self.x))
        if isinstance(self.y, int):
            object.__setattr__(self, "y", Fraction(self.y))
        if not self.y > 0:
            raise DomainError(f"Point must lie in the upper half-plane, got y = {self.y}")

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.x) and _is_exact(self.y)

    def to_mpc(self) -> mpmath.mpc:
        return mpmath.mpc(to_mpf(self.x), to_mpf(self.y))

    @staticmethod
    def from_mpc(z: mpmath.mpc) -> "HPoint":
        return HPoint(mpmath.re(z), require_positive(mpmath.im(z), "height"))


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic from ``past`` to ``future`` on the boundary."""

    past: BoundaryPoint
    future: BoundaryPoint

    def __post_init__(self) -> None:
        past, future = as_boundary(self.past), as_boundary(self.future)
        if compare(past, future) == 0:
            raise DegenerateGeodesicError(f"Geodesic feet coincide: {past}")
        object.__setattr__(self, "past", past)
        object.__setattr__(self, "future", future)

    @property
    def is_vertical(self) -> bool:
        return self.past is INFINITY or self.future is INFINITY

    @property
    def vertical_x(self) -> Exact:
        if not self.is_vertical:
            raise DomainError("Semicircular geodesic has no vertical line")
        return self.future if self.past is INFINITY else self.past  # type: ignore[return-value]

    @property
    def center(self) -> Exact:
        if self.is_vertical:
            raise DomainError("Vertical geodesic has no center")
        return (self.past + self.future) / 2  # type: ignore[operator]

    @property
    def radius(self) -> Exact:
        if self.is_vertical:
            raise DomainError("Vertical geodesic has no radius")
        return abs(self.future - self.past) / 2  # type: ignore[operator]

    def reverse(self) -> "Geodesic":
        return Geodesic(self.future, self.past)

    def mirror(self) -> "Geodesic":
        """Image under the reflection x -> -x (orientation of travel kept)."""
        return Geodesic(_negate(self.past), _negate(self.future))

    def contains_on_boundary(self, point: BoundaryPoint) -> bool:
        """True when ``point`` is one of the two feet."""
        point = as_boundary(point)
        return compare(point, self.past) == 0 or compare(point, self.future) == 0

    def separates(self, x: Exact) -> bool:
        """True when the vertical line at x meets this semicircle."""
        low, high = sorted((self.past, self.future), key=_order_key)
        if high is INFINITY:
            return False
        return compare(low, x) < 0 < compare(high, x)

    def __str__(self) -> str:
        return f"({self.past}, {self.future})"


def _negate(point: BoundaryPoint) -> BoundaryPoint:
    return point if point is INFINITY else -point  # type: ignore[operator]


class _OrderKey:
    __slots__ = ("value",)

    def __init__(self, value: BoundaryPoint) -> None:
        self.value = value

    def __lt__(self, other: "_OrderKey") -> bool:
        return compare(self.value, other.value) < 0


def _order_key(point: BoundaryPoint) -> _OrderKey:
    return _OrderKey(point)


@dataclass(frozen=True)
class UnitTangent:
    """Unit tangent vector at ``base`` pointing along ``geodesic`` towards its future."""

    geodesic: Geodesic
    base: HPoint


class FordContact(str, Enum):
    TANGENT = "tangent"
    DISJOINT = "disjoint"
    INTERSECTING = "intersecting"
    IDENTICAL = "identical"


def geodesic_through(past: BoundaryPoint, future: BoundaryPoint) -> Geodesic:
    return Geodesic(past, future)


def mobius_on_geodesic(m: IntMatrix2, g: Geodesic) -> Geodesic:
    return Geodesic(mobius_apply(m, g.past), mobius_apply(m, g.future))


def mobius_on_point(m: IntMatrix2, z: HPoint) -> HPoint:
    w = z.to_mpc()
    return HPoint.from_mpc((m.m11 * w + m.m12) / (m.m21 * w + m.m22))


def mobius_on_tangent(m: IntMatrix2, u: UnitTangent) -> UnitTangent:
    return UnitTangent(mobius_on_geodesic(m, u.geodesic), mobius_on_point(m, u.base))


def hyp_distance(z1: HPoint, z2: HPoint) -> mpmath.mpf:
    """d = 2 asinh(|z1 - z2| / (2 sqrt(y1 y2)))."""
    w1, w2 = z1.to_mpc(), z2.to_mpc()
    y1 = require_positive(mpmath.im(w1), "height")
    y2 = require_positive(mpmath.im(w2), "height")
    return 2 * mpmath.asinh(abs(w1 - w2) / (2 * mpmath.sqrt(y1 * y2)))


def _exact_or_float_product(*factors: Exact) -> Union[Exact, mpmath.mpf]:
    try:
        product: Exact = Fraction(1)
        for factor in factors:
            product = product * factor
        return product
    except FieldMismatchError:
        result = mpmath.mpf(1)
        for factor in factors:
            result *= to_mpf(factor)
        return result


def cross_vertical(g: Geodesic, x0: Union[int, Fraction]) -> HPoint:
    """Point where the semicircle g meets the vertical line at x0."""
    x0 = Fraction(x0)
    if g.is_vertical or not g.separates(x0):
        raise NoCrossingError(f"Geodesic {g} does not cross x = {x0}")
    # r^2 - (x0 - c)^2 == (future - x0) * (x0 - past)
    square = _exact_or_float_product(g.future - x0, x0 - g.past)  # type: ignore[operator]
    if isinstance(square, Fraction):
        return HPoint(x0, QuadSurd.sqrt(square))
    return HPoint(x0, mpmath.sqrt(to_mpf(square)))


def circle_residual(g: Geodesic, z: HPoint) -> Union[Exact, mpmath.mpf]:
    """(x - past)(x - future) + y^2, zero exactly for points of g."""
    if g.is_vertical:
        if not z.is_exact:
            return to_mpf(z.x) - to_mpf(g.vertical_x)
        return z.x - g.vertical_x  # type: ignore[operator]
    if z.is_exact:
        try:
            return (z.x - g.past) * (z.x - g.future) + z.y * z.y  # type: ignore[operator]
        except FieldMismatchError:
            pass
    x, y = to_mpf(z.x), to_mpf(z.y)
    return (x - to_mpf(g.past)) * (x - to_mpf(g.future)) + y * y


def distance_along(g: Geodesic, x1: Exact, x2: Exact) -> mpmath.mpf:
    """Distance between the points of g above x1 and x2.

    With |h(z)|^2 = (x - past) / (future - x) for the map h sending g to the imaginary
    axis, the distance is half the absolute log of a cross-ratio of exact values.
    """
    if g.is_vertical:
        raise DomainError("distance_along needs a semicircular geodesic")
    for x in (x1, x2):
        if not g.separates(x):
            raise NoCrossingError(f"Geodesic {g} does not cross x = {x}")
    p, f = g.past, g.future
    numerator = _exact_or_float_product(x1 - p, f - x2)  # type: ignore[operator]
    denominator = _exact_or_float_product(f - x1, x2 - p)  # type: ignore[operator]
    ratio = require_positive(to_mpf(numerator) / to_mpf(denominator), "cross-ratio")
    return abs(mpmath.log(ratio)) / 2


def _axis_chart(g: Geodesic) -> Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """Real Mobius map (det > 0) sending past -> 0 and future -> infinity."""
    if g.future is INFINITY:
        return mpmath.mpf(1), -to_mpf(g.past), mpmath.mpf(0), mpmath.mpf(1)
    if g.past is INFINITY:
        return mpmath.mpf(0), mpmath.mpf(-1), mpmath.mpf(1), -to_mpf(g.future)
    p, f = to_mpf(g.past), to_mpf(g.future)
    k = mpmath.mpf(1) if compare(g.past, g.future) > 0 else mpmath.mpf(-1)
    return k, -k * p, mpmath.mpf(1), -f


def flow(u: UnitTangent, t: Union[float, mpmath.mpf]) -> UnitTangent:
    """Move the base point signed arclength t towards the future foot (closed form)."""
    a, b, c, d = _axis_chart(u.geodesic)
    z = u.base.to_mpc()
    w = (a * z + b) / (c * z + d)
    w = w * mpmath.exp(t)
    moved = (d * w - b) / (-c * w + a)
    return UnitTangent(u.geodesic, HPoint.from_mpc(moved))


def tangent_at_axis(g: Geodesic) -> UnitTangent:
    """u_g: the unit tangent of g at its crossing with the imaginary axis."""
    return UnitTangent(g, cross_vertical(g, 0))


def ford_circle(p: Union[int, Fraction]) -> Tuple[HPoint, Fraction]:
    """Circle tangent to the real line at p/q with radius 1/(2 q^2)."""
    p = Fraction(p)
    radius = Fraction(1, 2 * p.denominator * p.denominator)
    return HPoint(p, radius), radius


def ford_contact(p1: Union[int, Fraction], p2: Union[int, Fraction]) -> FordContact:
    (c1, r1), (c2, r2) = ford_circle(p1), ford_circle(p2)
    if c1 == c2:
        return FordContact.IDENTICAL
    center_gap = (c1.x - c2.x) ** 2 + (c1.y - c2.y) ** 2
    reach = (r1 + r2) ** 2
    if center_gap == reach:
        return FordContact.TANGENT
    return FordContact.DISJOINT if center_gap > reach else FordContact.INTERSECTING
