"""Invariant densities, transfer operators, digit statistics and equidistribution runs."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy import stats

from farey_flow.arith.matrix import word_product
from farey_flow.arith.precision import to_mpf
from farey_flow.errors import DomainError
from farey_flow.models import ExperimentReport
from farey_flow.services.continued_fraction import periodic_value, primitive_word
from farey_flow.services.section import closed_geodesic_from_period, trace_length

logger = logging.getLogger(__name__)

LN2 = math.log(2)
CHUNK = 512

ArrayLike = Union[float, np.ndarray]
Density = Callable[[np.ndarray], np.ndarray]


class DensityTag(str, Enum):
    GAUSS = "gauss"
    FAREY = "farey"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DensityGrid:
    """Values of a density on a strictly increasing grid in [0, 1].

    ``function`` keeps the density itself so transfer operators can evaluate it off the
    grid. Grids of ``Fraction`` points (object arrays) are evaluated exactly.
    """

    points: np.ndarray
    values: np.ndarray
    tag: DensityTag = DensityTag.CUSTOM
    function: Optional[Density] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.points.ndim != 1 or self.points.shape != self.values.shape:
            raise DomainError("Grid points and values must be 1-D arrays of equal length")
        if len(self.points) and (self.points[0] < 0 or self.points[-1] > 1):
            raise DomainError("Grid points must lie in [0, 1]")
        if any(b <= a for a, b in zip(self.points[:-1], self.points[1:])):
            raise DomainError("Grid points must be strictly increasing")
        if not self.is_exact and not np.all(np.isfinite(self.values)):
            raise DomainError("Density values must be finite on the grid")

    @property
    def is_exact(self) -> bool:
        return self.points.dtype == object

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.function is not None:
            return self.function(x)
        return np.interp(x, self.points.astype(float), self.values.astype(float))

    @staticmethod
    def sample(
        function: Density,
        points: np.ndarray,
        tag: DensityTag = DensityTag.CUSTOM,
    ) -> "DensityGrid":
        return DensityGrid(points, np.asarray(function(points)), tag, function)


def uniform_grid(size: int, include_zero: bool = True) -> np.ndarray:
    """``size`` equally spaced floats in [0, 1], or in (0, 1] without zero."""
    if include_zero:
        return np.linspace(0.0, 1.0, size)
    return np.arange(1, size + 1, dtype=float) / size


def rational_grid(size: int) -> np.ndarray:
    """Exact points k/size, k = 1..size, as an object array of Fractions."""
    return np.array([Fraction(k, size) for k in range(1, size + 1)], dtype=object)


def _check_unit(x: ArrayLike) -> None:
    values = np.asarray(x, dtype=float)
    if np.any(values < 0) or np.any(values > 1):
        raise DomainError("Gauss measure is defined on [0, 1]")


def gauss_density(x: ArrayLike) -> ArrayLike:
    """(1/ln 2) / (1 + x)."""
    _check_unit(x)
    return 1.0 / (LN2 * (1.0 + np.asarray(x, dtype=float)))


def gauss_cdf(x: ArrayLike) -> ArrayLike:
    """log2(1 + x)."""
    _check_unit(x)
    return np.log2(1.0 + np.asarray(x, dtype=float))


def gauss_inverse_cdf(u: ArrayLike) -> ArrayLike:
    return np.exp2(np.asarray(u, dtype=float)) - 1.0


def digit_probability(k: int) -> float:
    """Gauss measure of (1/(k+1), 1/k]: log2(1 + 1/(k(k+2)))."""
    if k < 1:
        raise DomainError(f"Digits are positive, got {k}")
    return math.log2(1 + 1 / (k * (k + 2)))


def transfer_gauss(f: DensityGrid, branches: int) -> DensityGrid:
    """L f(x) = sum_{n=1..N} (n+x)^-2 f(1/(n+x)), truncated at N branches."""
    if branches < 1:
        raise DomainError(f"Need at least one branch, got {branches}")
    x = f.points.astype(float)
    total = np.zeros_like(x)
    for start in range(1, branches + 1, CHUNK):
        n = np.arange(start, min(start + CHUNK, branches + 1), dtype=float)[:, None]
        shifted = n + x[None, :]
        total += (f(1.0 / shifted) / shifted**2).sum(axis=0)
    logger.debug(f"Gauss transfer with {branches} branches on {len(x)} points")
    return DensityGrid(f.points, total, f.tag)


def gauss_transfer_partial_sum(x: Fraction, branches: int) -> Fraction:
    """Exact L applied to 1/(1+x): sum_{n=1..N} 1/((n+x)(n+x+1))."""
    x = Fraction(x)
    return sum((Fraction(1) / ((n + x) * (n + x + 1)) for n in range(1, branches + 1)), Fraction(0))


def gauss_transfer_closed_form(x: Fraction, branches: int) -> Fraction:
    """The telescoped value 1/(1+x) - 1/(N+1+x)."""
    x = Fraction(x)
    return 1 / (1 + x) - 1 / (branches + 1 + x)


def transfer_farey(f: DensityGrid) -> DensityGrid:
    """L f(y) = (1+y)^-2 [f(y/(1+y)) + f(1/(1+y))] from the two inverse branches."""
    if len(f.points) and f.points[0] == 0:
        raise DomainError("The Farey transfer grid must exclude 0")
    y = f.points
    if f.is_exact:
        values = np.array(
            [(f(p / (1 + p)) + f(1 / (1 + p))) / (1 + p) ** 2 for p in y], dtype=object
        )
    else:
        values = (f(y / (1.0 + y)) + f(1.0 / (1.0 + y))) / (1.0 + y) ** 2
    return DensityGrid(f.points, values, f.tag)


def sup_error(a: DensityGrid, b: DensityGrid) -> Union[float, Fraction]:
    """Largest pointwise difference, exact for exact grids."""
    if a.is_exact and b.is_exact:
        return max((abs(p - q) for p, q in zip(a.values, b.values)), default=Fraction(0))
    return float(np.max(np.abs(a.values.astype(float) - b.values.astype(float))))


# -- experiments --------------------------------------------------------------------


def sample_gauss(sample_count: int, seed: int) -> np.ndarray:
    """Inverse-CDF samples x = 2^u - 1 with u uniform in (0, 1]."""
    rng = np.random.default_rng(seed)
    return gauss_inverse_cdf(1.0 - rng.random(sample_count))


def digit_statistics(
    sample_count: int, seed: int, max_digit: int = 10, tolerance: float = 0.005
) -> ExperimentReport:
    """First-digit frequencies of Gauss-distributed samples against log2(1 + 1/(k(k+2)))."""
    if sample_count < 1:
        raise DomainError(f"Need at least one sample, got {sample_count}")
    samples = sample_gauss(sample_count, seed)
    first_digits = pd.Series(np.floor(1.0 / samples).astype(np.int64))
    frequencies = first_digits.value_counts(normalize=True)

    table = pd.DataFrame({"digit": np.arange(1, max_digit + 1)})
    table["empirical"] = table["digit"].map(frequencies).fillna(0.0)
    table["expected"] = table["digit"].map(digit_probability)
    table["error"] = (table["empirical"] - table["expected"]).abs()

    checked = table[table["digit"] <= 3]
    passed = bool((checked["error"] < tolerance).all())
    logger.info(f"Digit statistics over {sample_count} samples: pass={passed}")
    return ExperimentReport(
        name="digits",
        params={"samples": sample_count, "seed": seed, "max_digit": max_digit},
        stats={
            "table": table.to_dict("records"),
            "total_frequency": float(frequencies.sum()),
            "max_error_1_3": float(checked["error"].max()),
        },
        passed=passed,
    )


def periodic_words(max_digit: int, max_period: int) -> List[Tuple[int, ...]]:
    """Primitive words with digits in 1..max_digit and length <= max_period."""
    words = []
    for size in range(1, max_period + 1):
        for word in product(range(1, max_digit + 1), repeat=size):
            if primitive_word(word) == word:
                words.append(word)
    return words


def quadratic_points(max_digit: int, max_period: int = 4) -> np.ndarray:
    """1 / [p1; p2, ..., pk, p1, ...] for each primitive word, as floats in (0, 1)."""
    return np.array(
        [float(to_mpf(1 / periodic_value(word))) for word in periodic_words(max_digit, max_period)]
    )


def ks_distance(points: Sequence[float]) -> float:
    return float(stats.kstest(np.asarray(points, dtype=float), gauss_cdf).statistic)


def quadratic_equidistribution(height_bound: int, max_period: int = 4) -> ExperimentReport:
    """KS distance to the Gauss CDF of purely periodic surds, per digit bound 1..N."""
    if height_bound < 2:
        raise DomainError(f"Digit bound must be at least 2, got {height_bound}")
    ks, counts = {}, {}
    for bound in range(1, height_bound + 1):
        points = quadratic_points(bound, max_period)
        ks[str(bound)] = ks_distance(points)
        counts[str(bound)] = int(len(points))
    trend = [ks[str(bound)] for bound in range(2, height_bound + 1)]
    passed = all(later < earlier for earlier, later in zip(trend, trend[1:]))
    logger.info(f"Equidistribution up to digit bound {height_bound}: pass={passed}")
    return ExperimentReport(
        name="equidistribution",
        params={"height_bound": height_bound, "max_period": max_period},
        stats={"ks": ks, "counts": counts},
        passed=passed,
    )


def lucas_bound(trace_bound: float) -> int:
    """Largest k with Lucas number L_k <= trace_bound (the trace of k ones)."""
    k, previous, current = 1, 2, 1
    while previous + current <= trace_bound:
        k, previous, current = k + 1, current, previous + current
    return k


def _words_within(trace_bound: float, max_size: int) -> List[Tuple[int, ...]]:
    """All words of length <= max_size whose digit product is <= trace_bound."""
    found: List[Tuple[int, ...]] = []

    def extend(word: Tuple[int, ...], digit_product: int) -> None:
        if word:
            found.append(word)
        if len(word) == max_size:
            return
        digit = 1
        while digit_product * digit <= trace_bound:
            extend(word + (digit,), digit_product * digit)
            digit += 1

    extend((), 1)
    return found


def canonical_rotation(word: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically largest rotation."""
    word = tuple(word)
    return max(word[i:] + word[:i] for i in range(len(word)))


def closed_geodesic_classes(max_length: float) -> List[Tuple[int, ...]]:
    """Even words, one per closed geodesic of length <= max_length, up to rotation.

    A class is a primitive even word or the square of a primitive odd word.
    """
    lam = math.exp(max_length / 2)
    trace_bound = lam + 1 / lam
    classes = set()
    for word in _words_within(trace_bound + 1, lucas_bound(trace_bound + 1)):
        if primitive_word(word) != word or canonical_rotation(word) != word:
            continue
        even = word if len(word) % 2 == 0 else word * 2
        if word_product(even).trace <= trace_bound:
            classes.add(even)
    return sorted(classes, key=lambda w: (word_product(w).trace, w))


def closed_geodesic_census(max_length: float, tolerance: float = 1e-9) -> ExperimentReport:
    """Closed geodesics up to a length bound, with lengths from summed return times."""
    if max_length <= 0:
        raise DomainError(f"Length bound must be positive, got {max_length}")
    rows, factor_values, worst = [], [], 0.0
    for word in closed_geodesic_classes(max_length):
        orbit, length = closed_geodesic_from_period(word)
        if length > max_length:
            continue
        worst = max(worst, float(abs(length - trace_length(word))))
        rows.append({"word": list(word), "length": float(length)})
        factor_values.extend(1 / float(to_mpf(abs(p.representative.future))) for p in orbit)
    rows.sort(key=lambda row: (row["length"], row["word"]))
    ks = ks_distance(factor_values) if factor_values else None
    logger.info(f"Census up to length {max_length}: {len(rows)} classes")
    return ExperimentReport(
        name="census",
        params={"max_length": max_length},
        stats={
            "classes": rows,
            "count": len(rows),
            "max_length_error": worst,
            "factor_ks": ks,
        },
        passed=worst <= tolerance,
    )
