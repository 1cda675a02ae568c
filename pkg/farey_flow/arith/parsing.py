"""Text grammar for boundary values.

    integer   -?[0-9]+
    rational  p/q
    surd      (a+b*sqrt(d))/c   (rational part, coefficient, parentheses and /c optional)
    infinity  inf
"""

import re
from fractions import Fraction
from typing import List

from farey_flow.arith.boundary import INFINITY, BoundaryPoint
from farey_flow.arith.quadratic import QuadSurd
from farey_flow.errors import ValueParseError

_RATIONAL = re.compile(r"^(?P<p>[+-]?\d+)(?:/(?P<q>\d+))?$")
_SURD = re.compile(
    r"""^
    (?P<open>\()?
    \s*(?P<a>[+-]?\d+)?
    \s*(?P<sign>[+-])?
    \s*(?:(?P<b>\d+)\s*\*\s*)?
    sqrt\(\s*(?P<d>\d+)\s*\)
    \s*(?(open)\))
    \s*(?:/\s*(?P<c>\d+))?
    $""",
    re.VERBOSE,
)


def parse_value(text: str) -> BoundaryPoint:
    """Parse one boundary value exactly."""
    if text is None:
        raise ValueParseError("Missing value")
    source = text.strip()
    if source.lower() in ("inf", "infinity", "∞"):
        return INFINITY

    match = _RATIONAL.match(source)
    if match:
        denominator = int(match.group("q") or 1)
        if denominator == 0:
            raise ValueParseError(f"Zero denominator in '{text}'")
        return Fraction(int(match.group("p")), denominator)

    match = _SURD.match(source)
    if not match:
        raise ValueParseError(f"Cannot parse value '{text}'")
    if match.group("a") is not None and match.group("sign") is None:
        raise ValueParseError(f"Missing sign before sqrt in '{text}'")
    if match.group("c") is not None and not match.group("open"):
        raise ValueParseError(f"Denominator needs a parenthesised numerator in '{text}'")

    a = int(match.group("a") or 0)
    b = int(match.group("b") or 1)
    if match.group("sign") == "-":
        b = -b
    c = int(match.group("c") or 1)
    d = int(match.group("d"))
    if c == 0:
        raise ValueParseError(f"Zero denominator in '{text}'")
    if d == 0:
        return Fraction(a, c)
    return QuadSurd.from_parts(Fraction(a, c), Fraction(b, c), d)


def format_value(value: object) -> str:
    """Inverse of parse_value."""
    if value is INFINITY:
        return "inf"
    if isinstance(value, QuadSurd):
        sign = "-" if value.b < 0 else "+"
        return f"({value.a}{sign}{abs(value.b)}*sqrt({value.d}))/{value.c}"
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    raise TypeError(f"Cannot format {type(value).__name__}")


def split_top_level(text: str, separator: str = ",") -> List[str]:
    """Split on separators that are not inside parentheses."""
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == separator and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return [part.strip() for part in parts]


def parse_pair(text: str) -> tuple:
    """Parse 'past,future' into two boundary values."""
    parts = split_top_level(text)
    if len(parts) != 2:
        raise ValueParseError(f"Expected 'past,future', got '{text}'")
    return parse_value(parts[0]), parse_value(parts[1])


def parse_word(text: str) -> List[int]:
    """Parse a comma separated digit word; the empty string is the empty word."""
    if text is None or not text.strip():
        return []
    digits = []
    for part in text.split(","):
        part = part.strip()
        if not re.fullmatch(r"\d+", part):
            raise ValueParseError(f"Digit '{part}' is not a nonnegative integer")
        digits.append(int(part))
    return digits
