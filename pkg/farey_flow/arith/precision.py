"""Configurable-precision floating views of exact values, with directed rounding.

The floating layer is only used for geometry (heights, distances, flow) and for the
measure experiments; exact decisions never go through it. Interval conversions use
``mpmath.iv`` so that an undecidable sign is reported instead of guessed.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Optional, Union

import mpmath
from mpmath import iv

from farey_flow.arith.boundary import INFINITY
from farey_flow.arith.quadratic import QuadSurd
from farey_flow.config import settings
from farey_flow.errors import PrecisionExhaustedError

logger = logging.getLogger(__name__)

Real = Union[int, Fraction, QuadSurd, mpmath.mpf, float]


def working_precision() -> int:
    return int(mpmath.mp.prec)


@contextmanager
def precision(bits: Optional[int] = None) -> Iterator[int]:
    """Run a block with mpmath (and interval) precision set to ``bits``."""
    bits = bits or settings.PRECISION
    saved_iv = iv.prec
    iv.prec = bits
    try:
        with mpmath.workprec(bits):
            yield bits
    finally:
        iv.prec = saved_iv


def to_mpf(value: Real) -> mpmath.mpf:
    """Round an exact or floating real to an mpf at the working precision."""
    if value is INFINITY:
        return mpmath.inf
    if isinstance(value, QuadSurd):
        return value.to_mpf(working_precision())
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def to_interval(value: Real) -> iv.mpf:
    """Outward-rounded enclosure of an exact value at the current interval precision."""
    if isinstance(value, QuadSurd):
        return (iv.mpf(value.a) + iv.mpf(value.b) * iv.sqrt(iv.mpf(value.d))) / value.c
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / value.denominator
    if isinstance(value, int):
        return iv.mpf(value)
    return iv.mpf(str(value))


def interval_sign(enclosure: iv.mpf, what: str = "value") -> int:
    """Sign of an interval that excludes zero; raise when it straddles zero."""
    if (enclosure > 0) is True:
        return 1
    if (enclosure < 0) is True:
        return -1
    logger.debug(f"Undecidable sign for {what}: {enclosure}")
    raise PrecisionExhaustedError(
        f"Cannot decide the sign of {what} at {iv.prec} bits; raise --precision"
    )


def require_positive(value: mpmath.mpf, what: str) -> mpmath.mpf:
    """Guard a floating result that must be positive and finite."""
    if not mpmath.isfinite(value) or value <= 0:
        raise PrecisionExhaustedError(
            f"{what} lost all significance at {working_precision()} bits"
        )
    return value
