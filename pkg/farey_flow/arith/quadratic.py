"""Canonical real quadratic surds (a + b*sqrt(d)) / c and exact ordering."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple, Union

import mpmath
from sympy import factorint, isprime

from farey_flow.errors import DomainError, FieldMismatchError

Exact = Union[Fraction, "QuadSurd"]


TRIAL_DIVISION_LIMIT = 2**16


def _split_cofactor(n: int) -> Tuple[int, int]:
    """Squarefree split of a cofactor with no prime factor below the trial limit."""
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    if isprime(n):
        return 1, n
    return _accumulate(factorint(n).items())


def _accumulate(factors: Iterable[Tuple[int, int]]) -> Tuple[int, int]:
    f, k = 1, 1
    for prime, exponent in factors:
        f *= prime ** (exponent // 2)
        if exponent % 2:
            k *= prime
    return f, k


@lru_cache(maxsize=4096)
def squarefree_split(d: int) -> Tuple[int, int]:
    """Return (f, k) with d == f**2 * k and k squarefree."""
    if d <= 0:
        raise DomainError(f"Radicand must be positive, got {d}")
    f, k = 1, 1
    for factor, exponent in factorint(d, limit=TRIAL_DIVISION_LIMIT).items():
        if factor <= TRIAL_DIVISION_LIMIT:
            part_f, part_k = _accumulate([(factor, exponent)])
        else:
            # may be composite when trial division stopped early
            root, kernel = _split_cofactor(factor)
            part_f, part_k = _accumulate([(kernel, exponent)])
            part_f *= root**exponent
        f *= part_f
        k *= part_k
    return f, k


@dataclass(frozen=True)
class QuadSurd:
    """The irrational value (a + b*sqrt(d)) / c.

    Fields are canonical after construction: d > 1 squarefree, b != 0, c > 0 and
    gcd(a, b, c) == 1, so two surds are equal exactly when their fields are.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        a, b, c, d = int(self.a), int(self.b), int(self.c), int(self.d)
        if c == 0:
            raise DomainError("QuadSurd denominator must be nonzero")
        factor, kernel = squarefree_split(d)
        if kernel == 1:
            raise DomainError(f"Radicand {d} is a perfect square; the value is rational")
        b *= factor
        if b == 0:
            raise DomainError("QuadSurd needs a nonzero irrational part; use Fraction")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "d", kernel)

    # -- construction -------------------------------------------------------------

    @staticmethod
    def from_parts(rational: Fraction, coefficient: Fraction, d: int) -> Exact:
        """Build rational + coefficient*sqrt(d), collapsing to a Fraction when possible."""
        rational, coefficient = Fraction(rational), Fraction(coefficient)
        factor, kernel = squarefree_split(d)
        coefficient *= factor
        if kernel == 1:
            return rational + coefficient
        if coefficient == 0:
            return rational
        den = math.lcm(rational.denominator, coefficient.denominator)
        return QuadSurd(
            int(rational * den),
            int(coefficient * den),
            den,
            kernel,
        )

    @staticmethod
    def sqrt(value: Union[int, Fraction]) -> Exact:
        """Exact square root of a nonnegative rational."""
        value = Fraction(value)
        if value < 0:
            raise DomainError(f"Square root of negative value {value}")
        num, den = value.numerator, value.denominator
        root_num, root_den = math.isqrt(num), math.isqrt(den)
        if root_num * root_num == num and root_den * root_den == den:
            return Fraction(root_num, root_den)
        # sqrt(p/q) = sqrt(p*q) / q
        return QuadSurd.from_parts(Fraction(0), Fraction(1, den), num * den)

    # -- parts --------------------------------------------------------------------

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def irrational_part(self) -> Fraction:
        """Coefficient of sqrt(d)."""
        return Fraction(self.b, self.c)

    def _parts_of(self, other: object) -> Tuple[Fraction, Fraction]:
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"Cannot combine sqrt({self.d}) and sqrt({other.d}) surds exactly"
                )
            return other.rational_part, other.irrational_part
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        raise TypeError(f"Unsupported operand type {type(other).__name__}")

    # -- field operations ---------------------------------------------------------

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.c, self.d)

    def norm(self) -> Fraction:
        """x * conjugate(x) = (a^2 - b^2 d) / c^2."""
        return Fraction(self.a * self.a - self.b * self.b * self.d, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def __add__(self, other: object) -> Exact:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        r, s = self._parts_of(other)
        return QuadSurd.from_parts(self.rational_part + r, self.irrational_part + s, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b, self.c, self.d)

    def __pos__(self) -> "QuadSurd":
        return self

    def __sub__(self, other: object) -> Exact:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        r, s = self._parts_of(other)
        return QuadSurd.from_parts(self.rational_part - r, self.irrational_part - s, self.d)

    def __rsub__(self, other: object) -> Exact:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other: object) -> Exact:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        r1, s1 = self.rational_part, self.irrational_part
        r2, s2 = self._parts_of(other)
        return QuadSurd.from_parts(r1 * r2 + s1 * s2 * self.d, r1 * s2 + r2 * s1, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadSurd":
        norm = self.norm()
        return QuadSurd.from_parts(
            self.rational_part / norm, -self.irrational_part / norm, self.d
        )  # type: ignore[return-value]

    def __truediv__(self, other: object) -> Exact:
        if isinstance(other, QuadSurd):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("QuadSurd division by zero")
            return QuadSurd.from_parts(
                self.rational_part / other, self.irrational_part / other, self.d
            )
        return NotImplemented

    def __rtruediv__(self, other: object) -> Exact:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    # -- order --------------------------------------------------------------------

    def sign(self) -> int:
        """Sign of a + b*sqrt(d) (never zero)."""
        a, b = self.a, self.b
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        square_a, square_b = a * a, b * b * self.d
        if a > 0:
            return 1 if square_a > square_b else -1
        return 1 if square_b > square_a else -1

    def __abs__(self) -> "QuadSurd":
        return self if self.sign() > 0 else -self

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        return compare_exact(self, other) < 0

    def __le__(self, other: object) -> bool:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        return compare_exact(self, other) <= 0

    def __gt__(self, other: object) -> bool:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        return compare_exact(self, other) > 0

    def __ge__(self, other: object) -> bool:
        if not isinstance(other, (int, Fraction, QuadSurd)):
            return NotImplemented
        return compare_exact(self, other) >= 0

    def __floor__(self) -> int:
        # a + b*sqrt(d) lies strictly between consecutive integers
        root = math.isqrt(self.b * self.b * self.d)
        top = self.a + root if self.b > 0 else self.a - root - 1
        return top // self.c

    def __ceil__(self) -> int:
        return math.floor(self) + 1

    # -- floating views -----------------------------------------------------------

    def guard_bits(self) -> int:
        return max(abs(self.a).bit_length(), (self.b * self.b * self.d).bit_length()) + 16

    def to_mpf(self, prec: int) -> mpmath.mpf:
        with mpmath.workprec(prec + self.guard_bits()):
            value = (mpmath.mpf(self.a) + mpmath.mpf(self.b) * mpmath.sqrt(self.d)) / self.c
        return value

    def __float__(self) -> float:
        return float(self.to_mpf(64))

    def __repr__(self) -> str:
        return f"QuadSurd(a={self.a}, b={self.b}, c={self.c}, d={self.d})"


def is_exact(value: object) -> bool:
    return isinstance(value, (int, Fraction, QuadSurd))


def surd_conjugate(x: Union[int, Exact]) -> Exact:
    """Galois conjugate; rationals are their own conjugate."""
    if isinstance(x, QuadSurd):
        return x.conjugate()
    return Fraction(x)


def exact_sign(value: Exact) -> int:
    if isinstance(value, QuadSurd):
        return value.sign()
    value = Fraction(value)
    return (value > 0) - (value < 0)


def compare_exact(x: Union[int, Exact], y: Union[int, Exact]) -> int:
    """Return -1, 0 or 1 as x <, ==, > y, exactly, across any radicands."""
    if not isinstance(x, QuadSurd) and not isinstance(y, QuadSurd):
        return exact_sign(Fraction(x) - Fraction(y))
    if not isinstance(x, QuadSurd) or not isinstance(y, QuadSurd) or x.d == y.d:
        return exact_sign(x - y)  # type: ignore[operator]
    # x - y = u - v with u = x - rational(y) in Q(sqrt(dx)) and v = s*sqrt(dy)
    u = x - y.rational_part
    s = y.irrational_part
    sign_u, sign_v = exact_sign(u), (1 if s > 0 else -1)
    if sign_u != sign_v:
        return 1 if sign_u > sign_v else -1
    magnitude = exact_sign(u * u - s * s * y.d)
    return magnitude if sign_u > 0 else -magnitude
