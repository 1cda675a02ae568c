"""2x2 integer matrices acting on the boundary and the upper half-plane."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class IntMatrix2:
    """Integer matrix [[m11, m12], [m21, m22]]; group elements have det == 1."""

    m11: int
    m12: int
    m21: int
    m22: int

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    def is_group_element(self) -> bool:
        return self.det == 1

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return IntMatrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def inverse(self) -> "IntMatrix2":
        """Inverse of a unimodular matrix (det +-1)."""
        det = self.det
        if det not in (1, -1):
            raise ValueError(f"Matrix with det {det} has no integer inverse")
        return IntMatrix2(self.m22 * det, -self.m12 * det, -self.m21 * det, self.m11 * det)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m11, self.m12), (self.m21, self.m22))

    def __str__(self) -> str:
        return f"[[{self.m11},{self.m12}],[{self.m21},{self.m22}]]"


IDENTITY = IntMatrix2(1, 0, 0, 1)
S_MAT = IntMatrix2(0, -1, 1, 0)
T_MAT = IntMatrix2(1, 1, 0, 1)


def translation(k: int) -> IntMatrix2:
    """T_MAT ** k, the map z -> z + k."""
    return IntMatrix2(1, k, 0, 1)


def continuant(n: int) -> IntMatrix2:
    """[[n, 1], [1, 0]], the map z -> n + 1/z (det -1)."""
    return IntMatrix2(n, 1, 1, 0)


def word_product(digits: Iterable[int]) -> IntMatrix2:
    """Product of continuant matrices over a digit word, left to right."""
    result = IDENTITY
    for digit in digits:
        result = result @ continuant(digit)
    return result
