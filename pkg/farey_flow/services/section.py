"""Symbolic cross-section: decorated digit sequences, their shift and the first-return map.

A section point is a geodesic of A together with its unit tangent at the imaginary
axis. Its digits are the runs of its cutting sequence: n1, n2, ... after the axis and
n0, n-1, ... before it; the parity w records whether the run after the axis is L (0)
or R (1). Representatives keep their real signs, so w = 1 exactly when the future foot
is <= -1.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, islice
from typing import Iterator, List, Optional, Sequence, Tuple

import mpmath

from farey_flow.arith.matrix import IntMatrix2, word_product
from farey_flow.arith.quadratic import Exact, exact_sign
from farey_flow.errors import (
    CuspExitError,
    DomainError,
    NotInAError,
    UnsupportedValueError,
    ValueParseError,
)
from farey_flow.services.continued_fraction import CFExpansion, evaluate, expand, primitive_word
from farey_flow.services.farey_coding import is_in_A
from farey_flow.services.hyperbolic import (
    Geodesic,
    HPoint,
    UnitTangent,
    cross_vertical,
    distance_along,
    mobius_on_geodesic,
    tangent_at_axis,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DigitTail:
    """One-sided digit sequence: ``prefix`` followed by ``period`` repeated forever.

    Finite when ``period`` is empty. Canonical: primitive period, shortest prefix.
    """

    prefix: Tuple[int, ...] = ()
    period: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prefix = tuple(int(d) for d in self.prefix)
        period = tuple(int(d) for d in self.period)
        if any(d < 1 for d in chain(prefix, period)):
            raise DomainError("Digits must be positive integers")
        if period:
            period = primitive_word(period)
            while prefix and prefix[-1] == period[-1]:
                prefix = prefix[:-1]
                period = period[-1:] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @staticmethod
    def of_expansion(cf: CFExpansion) -> "DigitTail":
        return DigitTail((cf.a0,) + cf.preperiod, cf.period)

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def is_empty(self) -> bool:
        return not self.prefix and not self.period

    def length(self) -> int:
        if not self.is_finite:
            raise UnsupportedValueError("An infinite digit tail has no length")
        return len(self.prefix)

    def __iter__(self) -> Iterator[int]:
        yield from self.prefix
        while self.period:
            yield from self.period

    def take(self, count: int) -> List[int]:
        return list(islice(self, count))

    def head(self) -> int:
        if self.is_empty:
            raise DomainError("Empty digit tail has no first digit")
        return self.prefix[0] if self.prefix else self.period[0]

    def digit(self, position: int) -> int:
        """Digit at 0-based ``position``."""
        if position < len(self.prefix):
            return self.prefix[position]
        if not self.period:
            raise IndexError(position)
        return self.period[(position - len(self.prefix)) % len(self.period)]

    def drop(self) -> "DigitTail":
        if self.prefix:
            return DigitTail(self.prefix[1:], self.period)
        if self.period:
            return DigitTail((), self.period[1:] + self.period[:1])
        raise DomainError("Cannot drop a digit from an empty tail")

    def push(self, digit: int) -> "DigitTail":
        return DigitTail((digit,) + self.prefix, self.period)

    def to_cf(self) -> CFExpansion:
        if self.prefix:
            return CFExpansion(self.prefix[0], self.prefix[1:], self.period)
        return CFExpansion(self.period[0], (), self.period[1:] + self.period[:1])

    def value(self) -> Exact:
        """Exact value of [d0; d1, d2, ...]."""
        return evaluate(self.to_cf())

    def format(self, reverse: bool = False) -> str:
        prefix = " ".join(map(str, self.prefix))
        if not self.period:
            return prefix
        if reverse:
            period = f"({' '.join(map(str, reversed(self.period)))})"
            prefix = " ".join(map(str, reversed(self.prefix)))
            return f"{period} {prefix}".strip()
        period = f"({' '.join(map(str, self.period))})"
        return f"{prefix} {period}".strip()


@dataclass(frozen=True)
class SigmaElement:
    """Digits n_i for N1 <= i <= N2 plus a parity w in Z/2.

    ``past`` holds n0, n-1, ... and ``future`` holds n1, n2, ...
    """

    past: DigitTail
    future: DigitTail
    parity: int = 0

    def __post_init__(self) -> None:
        if self.parity not in (0, 1):
            raise DomainError(f"Parity must be 0 or 1, got {self.parity}")
        if self.future.is_empty:
            raise DomainError("A sequence in Sigma needs N2 > 0 (nonempty future)")
        if self.past.is_empty:
            raise DomainError("A sequence in Sigma needs N1 <= 0 (nonempty past)")

    @property
    def index_range(self) -> Tuple[float, float]:
        low = -math.inf if not self.past.is_finite else 1 - self.past.length()
        high = math.inf if not self.future.is_finite else self.future.length()
        return low, high

    def digit(self, index: int) -> int:
        if index >= 1:
            return self.future.digit(index - 1)
        return self.past.digit(-index)

    @property
    def is_periodic(self) -> bool:
        return not self.past.is_finite and not self.future.is_finite

    def __str__(self) -> str:
        return format_sigma(self)


@dataclass(frozen=True)
class SectionPoint:
    """A geodesic of A, based at its crossing of the imaginary axis, with its parity."""

    representative: Geodesic
    parity: int

    def __post_init__(self) -> None:
        if not is_in_A(self.representative):
            raise NotInAError(f"Geodesic {self.representative} is not in A")
        expected = 1 if exact_sign(self.representative.future) < 0 else 0  # type: ignore[arg-type]
        if self.parity != expected:
            raise DomainError(
                f"Parity {self.parity} does not match future foot {self.representative.future}"
            )

    @property
    def base(self) -> HPoint:
        return cross_vertical(self.representative, 0)

    @property
    def tangent(self) -> UnitTangent:
        return tangent_at_axis(self.representative)


@dataclass(frozen=True)
class ReturnStep:
    """One application of z -> -1/(z - n1) (or its mirror) and the time it takes."""

    matrix: IntMatrix2
    time: mpmath.mpf
    digit_consumed: int

    def __post_init__(self) -> None:
        if not self.time > 0:
            raise DomainError(f"Return time must be positive, got {self.time}")


def encode(g: Geodesic) -> SigmaElement:
    """Digits of a geodesic in A: expansions of |future| and of 1/|past|."""
    if not is_in_A(g):
        raise NotInAError(f"Geodesic {g} is not in A")
    parity = 1 if exact_sign(g.future) < 0 else 0  # type: ignore[arg-type]
    future, past = abs(g.future), abs(g.past)  # type: ignore[arg-type]
    return SigmaElement(
        past=DigitTail.of_expansion(expand(1 / past)),
        future=DigitTail.of_expansion(expand(future)),
        parity=parity,
    )


def decode(s: SigmaElement) -> SectionPoint:
    """The section point whose digits are ``s``; finite tails give rational feet."""
    future = s.future.value()
    past = -1 / s.past.value()
    if s.parity == 1:
        future, past = -future, -past
    return SectionPoint(Geodesic(past, future), s.parity)


def shift(s: SigmaElement) -> SigmaElement:
    """Move n1 to the past and flip the parity."""
    if s.future.is_finite and s.future.length() < 2:
        raise CuspExitError("The geodesic exits into the cusp before returning (N2 = 1)")
    return SigmaElement(
        past=s.past.push(s.future.head()),
        future=s.future.drop(),
        parity=1 - s.parity,
    )


def return_matrix(n1: int, parity: int) -> IntMatrix2:
    """z -> -1/(z - n1) for w = 0, and its mirror z -> -1/(z + n1) for w = 1."""
    return IntMatrix2(0, -1, 1, -n1 if parity == 0 else n1)


def first_return(p: SectionPoint) -> Tuple[SectionPoint, ReturnStep]:
    """Flow from the axis to the crossing of x = +-n1 and pull back to the axis."""
    g = p.representative
    size = abs(g.future)  # type: ignore[arg-type]
    n1 = math.floor(size)
    if size == n1:
        raise CuspExitError(f"Geodesic {g} exits into the cusp at {g.future}")
    target = Fraction(n1 if p.parity == 0 else -n1)
    time = distance_along(g, Fraction(0), target)
    matrix = return_matrix(n1, p.parity)
    image = SectionPoint(mobius_on_geodesic(matrix, g), 1 - p.parity)
    return image, ReturnStep(matrix, time, n1)


def factor_to_unit_interval(s: SigmaElement) -> Exact:
    """1 / [n1; n2, ...]: the projection intertwining the shift with the Gauss map."""
    if s.future.is_empty:
        raise DomainError("Factor map needs a nonempty future")
    value = s.future.value()
    if value == 1:
        raise CuspExitError("Future (1) lands on the cusp at 1, outside [0, 1)")
    return 1 / value


def periodic_element(word: Sequence[int], parity: int = 0) -> SigmaElement:
    """The two-sided periodic sequence ... w_k | w_1 w_2 ... w_k | w_1 ..."""
    word = tuple(word)
    return SigmaElement(DigitTail((), tuple(reversed(word))), DigitTail((), word), parity)


def closed_word(word: Sequence[int]) -> Tuple[int, ...]:
    word = tuple(int(d) for d in word)
    if not word or any(d < 1 for d in word):
        raise DomainError("A closed geodesic needs a nonempty word of positive digits")
    return word * 2 if len(word) % 2 else word


def closed_geodesic_from_period(word: Sequence[int]) -> Tuple[List[SectionPoint], mpmath.mpf]:
    """Section points of the closed geodesic with digit period ``word`` and its length."""
    word = closed_word(word)
    start = decode(periodic_element(word))
    orbit, length, point = [start], mpmath.mpf(0), start
    for _ in word:
        point, step = first_return(point)
        length += step.time
        orbit.append(point)
    if orbit.pop() != start:
        raise DomainError(f"Orbit of {word} did not close")
    logger.debug(f"Closed geodesic {word}: length {mpmath.nstr(length, 15)}")
    return orbit, length


def trace_length(word: Sequence[int]) -> mpmath.mpf:
    """2 ln(lambda) for the dominant eigenvalue of prod [[n_i, 1], [1, 0]]."""
    trace = word_product(closed_word(word)).trace
    return 2 * mpmath.log((trace + mpmath.sqrt(trace * trace - 4)) / 2)


# -- text form ----------------------------------------------------------------------

_SIGMA = re.compile(r"^\s*\[(?P<past>[^|\]]*)\|(?P<future>[^\]]*)\]\s*;\s*(?P<w>[01])\s*$")
_PAST_SIDE = re.compile(r"^\s*(?:\((?P<period>[^)]*)\))?(?P<prefix>[\d\s,]*)$")
_FUTURE_SIDE = re.compile(r"^(?P<prefix>[\d\s,]*)(?:\((?P<period>[^)]*)\))?\s*$")


def _digits(text: Optional[str]) -> Tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(part) for part in re.split(r"[\s,]+", text.strip()) if part)


def format_sigma(s: SigmaElement) -> str:
    """'[(1 2) 3 | 4 (5 6)] ; w' with the past written in reading order."""
    return f"[{s.past.format(reverse=True)} | {s.future.format()}] ; {s.parity}"


def parse_sigma(text: str) -> SigmaElement:
    match = _SIGMA.match(text)
    if not match:
        raise ValueParseError(f"Cannot parse decorated sequence '{text}'")
    past, future = _PAST_SIDE.match(match.group("past")), _FUTURE_SIDE.match(match.group("future"))
    if not past or not future:
        raise ValueParseError(f"Malformed digit tail in '{text}'")
    try:
        return SigmaElement(
            past=DigitTail(
                tuple(reversed(_digits(past.group("prefix")))),
                tuple(reversed(_digits(past.group("period")))),
            ),
            future=DigitTail(_digits(future.group("prefix")), _digits(future.group("period"))),
            parity=int(match.group("w")),
        )
    except DomainError as e:
        raise ValueParseError(str(e)) from e

