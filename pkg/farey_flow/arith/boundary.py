"""Points of the boundary circle (rationals, surds, infinity) and the Mobius action."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from farey_flow.arith.matrix import IntMatrix2
from farey_flow.arith.quadratic import Exact, QuadSurd, compare_exact
from farey_flow.errors import DomainError


class _Infinity:
    """The boundary point at infinity; a single shared instance."""

    _instance: "_Infinity | None" = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self) -> str:
        return "INFINITY"

    def __hash__(self) -> int:
        return hash("farey_flow.INFINITY")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True


INFINITY = _Infinity()

BoundaryPoint = Union[Fraction, QuadSurd, _Infinity]


def as_boundary(value: Union[int, Fraction, QuadSurd, _Infinity]) -> BoundaryPoint:
    """Normalise ints to Fraction; leave other boundary points unchanged."""
    if isinstance(value, bool):
        raise TypeError("bool is not a boundary point")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, QuadSurd, _Infinity)):
        return value
    raise TypeError(f"Unsupported boundary point type {type(value).__name__}")


def is_infinite(value: object) -> bool:
    return value is INFINITY


def is_rational(value: object) -> bool:
    return isinstance(value, (int, Fraction))


def compare(x: BoundaryPoint, y: BoundaryPoint) -> int:
    """Total order: real order on finite values, infinity above everything."""
    if x is INFINITY or y is INFINITY:
        if x is y:
            return 0
        return 1 if x is INFINITY else -1
    return compare_exact(x, y)  # type: ignore[arg-type]


def floor_of(value: Exact) -> int:
    if value is INFINITY:
        raise DomainError("floor of infinity")
    return math.floor(value)


def mobius_apply(m: IntMatrix2, point: BoundaryPoint) -> BoundaryPoint:
    """(m11*p + m12) / (m21*p + m22) with the pole sent to infinity."""
    if point is INFINITY:
        if m.m21 == 0:
            return INFINITY
        return Fraction(m.m11, m.m21)
    point = as_boundary(point)
    denominator = m.m21 * point + m.m22
    if denominator == 0:
        return INFINITY
    return (m.m11 * point + m.m12) / denominator  # type: ignore[return-value]
