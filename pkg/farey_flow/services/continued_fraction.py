"""Regular continued fractions, the Gauss and Farey maps, convergents and mediants."""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, islice
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from farey_flow.arith.boundary import mobius_apply
from farey_flow.arith.matrix import word_product
from farey_flow.arith.quadratic import Exact, QuadSurd
from farey_flow.config import settings
from farey_flow.errors import (
    DomainError,
    ExpansionExhaustedError,
    UnsupportedValueError,
    ValueParseError,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def primitive_word(word: Sequence[int]) -> Tuple[int, ...]:
    """Shortest word whose repetition gives ``word``."""
    word = tuple(word)
    size = len(word)
    for length in range(1, size + 1):
        if size % length == 0 and word[:length] * (size // length) == word:
            return word[:length]
    return word


@dataclass(frozen=True)
class CFExpansion:
    """[a0; a1, a2, ...] as a finite word or an eventually periodic one.

    A finite expansion keeps its digits in ``preperiod`` and has an empty ``period``.
    Construction canonicalises: a finite word never ends in 1 (unless it is [a0]),
    a period is primitive and the preperiod is as short as possible.
    """

    a0: int
    preperiod: Tuple[int, ...] = ()
    period: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        a0 = int(self.a0)
        preperiod = tuple(int(digit) for digit in self.preperiod)
        period = tuple(int(digit) for digit in self.period)
        if any(digit < 1 for digit in chain(preperiod, period)):
            raise DomainError("Partial quotients after a0 must be positive")

        if period:
            period = primitive_word(period)
            while preperiod and preperiod[-1] == period[-1]:
                preperiod = preperiod[:-1]
                period = period[-1:] + period[:-1]
        elif preperiod and preperiod[-1] == 1:
            if len(preperiod) == 1:
                a0, preperiod = a0 + 1, ()
            else:
                preperiod = preperiod[:-2] + (preperiod[-2] + 1,)

        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "preperiod", preperiod)
        object.__setattr__(self, "period", period)

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def kind(self) -> str:
        return "finite" if self.is_finite else "periodic"

    @property
    def digits(self) -> Tuple[int, ...]:
        """Digits after a0 of a finite expansion."""
        if not self.is_finite:
            raise UnsupportedValueError("A periodic expansion has infinitely many digits")
        return self.preperiod

    def digit_iter(self) -> Iterator[int]:
        """All digits after a0, endless for periodic expansions."""
        yield from self.preperiod
        while self.period:
            yield from self.period

    def terms(self, count: int) -> List[int]:
        """The first ``count`` terms a0, a1, ..."""
        return _take_terms(self, count)

    def shift(self) -> "CFExpansion":
        """Drop a1 and reset a0 to 0: the digit action of the Gauss map."""
        if self.preperiod:
            return CFExpansion(0, self.preperiod[1:], self.period)
        if self.period:
            return CFExpansion(0, (), self.period[1:] + self.period[:1])
        return CFExpansion(0)

    def stream(self) -> "CFStream":
        return CFStream(self.a0, self.digit_iter())

    def __str__(self) -> str:
        return format_cf(self)


class CFStream:
    """Single-consumer cursor over the digits of an expansion that may never end."""

    def __init__(self, a0: int, digits: Iterable[int]) -> None:
        self.a0 = int(a0)
        self._digits = iter(digits)
        self.consumed = 0

    def __iter__(self) -> "CFStream":
        return self

    def __next__(self) -> int:
        digit = next(self._digits)
        self.consumed += 1
        return digit

    def terms(self, count: int) -> List[int]:
        return _take_terms(self, count)


AnyCF = Union[CFExpansion, CFStream]


def _take_terms(cf: AnyCF, count: int) -> List[int]:
    if count < 1:
        raise DomainError(f"Need at least one term, got {count}")
    digits = cf.digit_iter() if isinstance(cf, CFExpansion) else cf
    terms = [cf.a0] + list(islice(digits, count - 1))
    if len(terms) < count:
        raise ExpansionExhaustedError(
            f"Expansion has {len(terms)} terms, {count} requested"
        )
    return terms


@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class Mediant:
    """(a*p[n-1] + p[n-2]) / (a*q[n-1] + q[n-2]) for 1 <= a < a_n."""

    level: int
    a: int
    value: Fraction


# -- expansion and evaluation --------------------------------------------------------


def _check_finite(x: object) -> Exact:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction, QuadSurd)):
        raise UnsupportedValueError(f"Cannot expand {x!r}")
    return Fraction(x) if isinstance(x, int) else x


def expand(x: Union[int, Exact]) -> CFExpansion:
    """Exact expansion: Euclid for rationals, Gauss-orbit repetition for surds."""
    x = _check_finite(x)
    a0 = math.floor(x)
    state: Exact = x - a0

    if isinstance(x, Fraction):
        digits = []
        while state != 0:
            inverse = 1 / state
            digit = math.floor(inverse)
            digits.append(digit)
            state = inverse - digit
        return CFExpansion(a0, tuple(digits))

    seen: Dict[Exact, int] = {}
    digits = []
    while state not in seen:
        if len(digits) > settings.MAX_PERIOD_SEARCH:
            raise UnsupportedValueError(
                f"No period found within {settings.MAX_PERIOD_SEARCH} digits of {x!r}"
            )
        seen[state] = len(digits)
        inverse = 1 / state
        digit = math.floor(inverse)
        digits.append(digit)
        state = inverse - digit
    start = seen[state]
    logger.debug(f"Expansion of {x!r}: preperiod {start}, period {len(digits) - start}")
    return CFExpansion(a0, tuple(digits[:start]), tuple(digits[start:]))


def stream_of(x: Union[int, Exact]) -> CFStream:
    """Lazy Gauss-orbit digits of an exact value."""
    x = _check_finite(x)
    a0 = math.floor(x)

    def digits(state: Exact) -> Iterator[int]:
        while state != 0:
            inverse = 1 / state
            digit = math.floor(inverse)
            yield digit
            state = inverse - digit

    return CFStream(a0, digits(x - a0))


def periodic_value(period: Sequence[int]) -> QuadSurd:
    """The value y > 1 of the purely periodic word [p1; p2, ..., pk, p1, ...]."""
    m = word_product(period)
    # y = (m11 y + m12) / (m21 y + m22)  =>  m21 y^2 + (m22 - m11) y - m12 = 0
    # primitive form; its discriminant is constant along a Gauss orbit
    content = math.gcd(math.gcd(m.m21, m.m11 - m.m22), m.m12)
    a, b = m.m21 // content, (m.m11 - m.m22) // content
    discriminant = b * b + 4 * a * (m.m12 // content)
    value = QuadSurd.from_parts(Fraction(b, 2 * a), Fraction(1, 2 * a), discriminant)
    return value  # type: ignore[return-value]


def evaluate(cf: AnyCF) -> Exact:
    """Exact value of a finite or eventually periodic expansion."""
    if isinstance(cf, CFStream):
        raise UnsupportedValueError("A digit stream has no exact limit")
    if cf.is_finite:
        value = Fraction(0)
        for digit in reversed(cf.preperiod):
            value = 1 / (digit + value)
        return cf.a0 + value
    head = word_product((cf.a0,) + cf.preperiod)
    return mobius_apply(head, periodic_value(cf.period))  # type: ignore[return-value]


def is_purely_periodic(cf: CFExpansion) -> bool:
    """True when a0, a1, ... is periodic from a0 on."""
    return bool(cf.period) and not cf.preperiod and cf.period[-1] == cf.a0


# -- interval maps -------------------------------------------------------------------


def gauss_map(x: Union[int, Exact]) -> Exact:
    """x -> 1/x - floor(1/x) on [0, 1), fixing 0."""
    x = _check_finite(x)
    if x < 0 or x >= 1:
        raise DomainError(f"Gauss map is defined on [0, 1), got {x!r}")
    if x == 0:
        return Fraction(0)
    inverse = 1 / x
    return inverse - math.floor(inverse)


def farey_map(x: Union[int, Exact]) -> Exact:
    """x/(1-x) on [0, 1/2] and (1-x)/x on [1/2, 1]."""
    x = _check_finite(x)
    if x < 0 or x > 1:
        raise DomainError(f"Farey map is defined on [0, 1], got {x!r}")
    if x <= HALF:
        return x / (1 - x)
    return (1 - x) / x


def farey_orbit(x: Union[int, Exact], steps: int) -> List[Exact]:
    orbit = [_check_finite(x)]
    for _ in range(steps):
        orbit.append(farey_map(orbit[-1]))
    return orbit


def farey_accelerate(x: Union[int, Exact]) -> Tuple[int, Exact]:
    """Run the Farey map until its right branch fires; returns (digit, Gauss image)."""
    x = _check_finite(x)
    if x <= 0 or x >= 1:
        raise DomainError(f"Farey acceleration needs 0 < x < 1, got {x!r}")
    left_steps = 0
    while x < HALF:
        x = x / (1 - x)
        left_steps += 1
    image = (1 - x) / x
    if image == 1:
        # x was 1/2: the expansion ends here, [0; 2] convention
        return left_steps + 2, Fraction(0)
    return left_steps + 1, image


# -- convergents and approximation ---------------------------------------------------


def convergents(cf: AnyCF, n: int) -> List[Convergent]:
    """The first n convergents p_k/q_k, k = 0..n-1."""
    terms = _take_terms(cf, n)
    p_prev, q_prev = 1, 0
    p, q = terms[0], 1
    result = [Convergent(p, q, 0)]
    for index, digit in enumerate(terms[1:], start=1):
        p_prev, p = p, digit * p + p_prev
        q_prev, q = q, digit * q + q_prev
        result.append(Convergent(p, q, index))
    return result


def mediant_convergents(cf: AnyCF, n: int) -> List[Mediant]:
    """Intermediate fractions at levels 1..n-1, in order of level then a."""
    terms = _take_terms(cf, n)
    mediants: List[Mediant] = []
    p_older, q_older = 1, 0
    p_old, q_old = terms[0], 1
    for level, digit in enumerate(terms[1:], start=1):
        for a in range(1, digit):
            mediants.append(
                Mediant(level, a, Fraction(a * p_old + p_older, a * q_old + q_older))
            )
        p_older, p_old = p_old, digit * p_old + p_older
        q_older, q_old = q_old, digit * q_old + q_older
    return mediants


def _nearest_error(x: Exact, denominator: int) -> Exact:
    base = math.floor(x * denominator)
    return min(abs(x - Fraction(base, denominator)), abs(x - Fraction(base + 1, denominator)))


def is_best_approx_first_kind(x: Union[int, Exact], p: Fraction) -> bool:
    """|x - p/q| < |x - c/d| for every c/d with 1 <= d < q (brute force, exact)."""
    x = _check_finite(x)
    p = Fraction(p)
    error = abs(x - p)
    for denominator in range(1, p.denominator):
        if _nearest_error(x, denominator) <= error:
            return False
    return True


def best_approximations(x: Union[int, Exact], max_denominator: int) -> List[Fraction]:
    """All best approximations of the first kind with denominator <= max_denominator."""
    x = _check_finite(x)
    found: List[Fraction] = []
    record: Optional[Exact] = None
    for denominator in range(1, max_denominator + 1):
        base = math.floor(x * denominator)
        candidates = (Fraction(base, denominator), Fraction(base + 1, denominator))
        best = min(candidates, key=lambda c: abs(x - c))
        error = abs(x - best)
        if best.denominator == denominator and (record is None or error < record):
            found.append(best)
        if record is None or error < record:
            record = error
    return found


# -- notation ------------------------------------------------------------------------

_CF_PATTERN = re.compile(
    r"^\[\s*(?P<a0>[+-]?\d+)\s*(?:;\s*(?P<body>[^\]]*))?\]$"
)


def _digit_list(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in re.split(r"[,\s]+", text) if part)
    except ValueError as e:
        raise ValueParseError(f"Bad digit list '{text}'") from e


def parse_cf(text: str) -> CFExpansion:
    """Parse '[a0; a1, a2]', '[a0; (period)]' or '[a0; pre | (period)]'."""
    match = _CF_PATTERN.match(text.strip())
    if not match:
        raise ValueParseError(f"Cannot parse continued fraction '{text}'")
    a0 = int(match.group("a0"))
    body = (match.group("body") or "").strip()
    period_match = re.search(r"\(([^)]*)\)\s*$", body)
    if period_match:
        period = _digit_list(period_match.group(1))
        if not period:
            raise ValueParseError(f"Empty period in '{text}'")
        preperiod = _digit_list(body[: period_match.start()].replace("|", " "))
        return CFExpansion(a0, preperiod, period)
    if "(" in body or ")" in body or "|" in body:
        raise ValueParseError(f"Malformed period in '{text}'")
    return CFExpansion(a0, _digit_list(body))


def format_cf(cf: CFExpansion) -> str:
    if cf.is_finite:
        if not cf.preperiod:
            return f"[{cf.a0}]"
        return f"[{cf.a0}; {', '.join(map(str, cf.preperiod))}]"
    period = f"({', '.join(map(str, cf.period))})"
    if cf.preperiod:
        return f"[{cf.a0}; {', '.join(map(str, cf.preperiod))} | {period}]"
    return f"[{cf.a0}; {period}]"


def format_terms(terms: Sequence[int], truncated: bool) -> str:
    """'[a0; a1, ..., an]' with a trailing ellipsis when more digits follow."""
    head, tail = terms[0], [str(digit) for digit in terms[1:]]
    if truncated:
        tail.append("…")
    if not tail:
        return f"[{head}]"
    return f"[{head}; {', '.join(tail)}]"
