"""The Farey tessellation, L/R cutting sequences, Humbert tips and reduction into A.

Letters are read off a Stern-Brocot descent: starting from the edge (0/1, 1/0) the
current edge is split at its mediant and the half containing the future foot is kept.
Each step crosses one Farey triangle; the vertex shared by the entry and exit edges
(the pivot) lies on the left of the geodesic for ``L`` and on the right for ``R``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import groupby, islice
from typing import Iterator, List, Optional, Sequence, Tuple

from mpmath import iv

from farey_flow.arith.boundary import INFINITY, BoundaryPoint, as_boundary, compare
from farey_flow.arith.matrix import IDENTITY, S_MAT, IntMatrix2, translation
from farey_flow.arith.precision import interval_sign, to_interval
from farey_flow.arith.quadratic import exact_sign
from farey_flow.config import settings
from farey_flow.errors import (
    CuspError,
    DegenerateGeodesicError,
    DomainError,
    ExpansionExhaustedError,
    NotInAError,
    UnsupportedValueError,
)
from farey_flow.services.hyperbolic import Geodesic, mobius_on_geodesic

logger = logging.getLogger(__name__)


def _as_pair(point: BoundaryPoint) -> Tuple[int, int]:
    """p/q with infinity written as 1/0."""
    if point is INFINITY:
        return 1, 0
    value = Fraction(point)  # type: ignore[arg-type]
    return value.numerator, value.denominator


def _from_pair(p: int, q: int) -> BoundaryPoint:
    if q == 0:
        return INFINITY
    return Fraction(p, q)


def _unimodular(x: BoundaryPoint, y: BoundaryPoint) -> bool:
    (p, q), (r, s) = _as_pair(x), _as_pair(y)
    return abs(p * s - q * r) == 1


class Letter(str, Enum):
    L = "L"
    R = "R"
    END = "⊥"

    def swap(self) -> "Letter":
        if self is Letter.L:
            return Letter.R
        if self is Letter.R:
            return Letter.L
        return self


def format_letters(letters: Sequence[Letter]) -> str:
    return "".join(letter.value for letter in letters)


def swap_letters(letters: Sequence[Letter]) -> List[Letter]:
    return [letter.swap() for letter in letters]


@dataclass(frozen=True)
class FareyEdge:
    """Edge of the tessellation between two unimodular vertices, left < right."""

    left: BoundaryPoint
    right: BoundaryPoint

    def __post_init__(self) -> None:
        left, right = as_boundary(self.left), as_boundary(self.right)
        if not _unimodular(left, right):
            raise DomainError(f"({left}, {right}) is not a Farey edge")
        if compare(left, right) >= 0:
            raise DomainError(f"Farey edge endpoints out of order: ({left}, {right})")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def outer_vertex(self) -> BoundaryPoint:
        """Third vertex of the triangle on the far side from the mediant."""
        (p, q), (r, s) = _as_pair(self.left), _as_pair(self.right)
        p, q = p - r, q - s
        if q < 0:
            p, q = -p, -q
        return _from_pair(p, q)

    def triangles(self) -> Tuple["FareyTriangle", "FareyTriangle"]:
        return (
            FareyTriangle(self.left, mediant(self), self.right),
            FareyTriangle(self.left, self.outer_vertex(), self.right),
        )

    def __str__(self) -> str:
        (p, q), (r, s) = _as_pair(self.left), _as_pair(self.right)
        return f"({p}/{q}, {r}/{s})"


@dataclass(frozen=True)
class FareyTriangle:
    a: BoundaryPoint
    b: BoundaryPoint
    c: BoundaryPoint

    def __post_init__(self) -> None:
        vertices = [as_boundary(v) for v in (self.a, self.b, self.c)]
        for first, second in ((0, 1), (1, 2), (0, 2)):
            if not _unimodular(vertices[first], vertices[second]):
                raise DomainError(f"Triangle {tuple(vertices)} is not a Farey triangle")
        object.__setattr__(self, "a", vertices[0])
        object.__setattr__(self, "b", vertices[1])
        object.__setattr__(self, "c", vertices[2])

    @property
    def vertices(self) -> Tuple[BoundaryPoint, BoundaryPoint, BoundaryPoint]:
        return self.a, self.b, self.c


BASE_TRIANGLE = FareyTriangle(Fraction(0), Fraction(1), INFINITY)
AXIS_EDGE = FareyEdge(Fraction(0), INFINITY)


@dataclass(frozen=True)
class RunSequence:
    """Maximal runs n_i of equal letters, starting at index ``start`` with ``first_letter``."""

    runs: Tuple[int, ...]
    first_letter: Letter
    start: int = 1
    terminal: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "runs", tuple(int(n) for n in self.runs))
        if not self.runs or any(n < 1 for n in self.runs):
            raise DomainError("Runs must be a nonempty list of positive integers")
        if self.first_letter is Letter.END:
            raise DomainError("A run cannot consist of the terminal symbol")

    def letter_of(self, position: int) -> Letter:
        return self.first_letter if position % 2 == 0 else self.first_letter.swap()

    def __str__(self) -> str:
        return f"({','.join(map(str, self.runs))})@{self.first_letter.value}"


@dataclass(frozen=True)
class Tip:
    """Pivot vertex of one run; ``order`` is the run length."""

    vertex: Fraction
    order: int
    side: Letter = field(default=Letter.L, compare=False)
    terminal: bool = False

    def __post_init__(self) -> None:
        if self.order < 1:
            raise DomainError(f"Tip order must be positive, got {self.order}")


def mediant(e: FareyEdge) -> Fraction:
    (p, q), (r, s) = _as_pair(e.left), _as_pair(e.right)
    return Fraction(p + r, q + s)


def is_in_A(g: Geodesic) -> bool:
    """Feet of opposite signs, |future| >= 1 and 0 < |past| <= 1."""
    if g.is_vertical:
        return False
    past, future = g.past, g.future
    if exact_sign(past) * exact_sign(future) >= 0:  # type: ignore[arg-type]
        return False
    return compare(abs(future), 1) >= 0 and compare(abs(past), 1) <= 0  # type: ignore[arg-type]


def _canonical(g: Geodesic) -> Tuple[Geodesic, bool]:
    """The A-member itself or its mirror image, with future >= 1."""
    if not is_in_A(g):
        raise NotInAError(f"Geodesic {g} is not in A")
    if g.past is not INFINITY and g.future is not INFINITY:
        if isinstance(g.past, Fraction) and isinstance(g.future, Fraction):
            if _unimodular(g.past, g.future):
                raise DegenerateGeodesicError(f"Geodesic {g} runs along a Farey edge")
    if compare(g.future, 0) < 0:
        return g.mirror(), True
    return g, False


@dataclass(frozen=True)
class _Step:
    letter: Letter
    pivot: BoundaryPoint
    exit_edge: Optional[FareyEdge] = None


def _descent(future: BoundaryPoint) -> Iterator[_Step]:
    """Stern-Brocot descent from (0/1, 1/0) towards a future foot >= 1."""
    p, q, r, s = 0, 1, 1, 0
    previous = Letter.L
    while True:
        m = Fraction(p + r, q + s)
        side = compare(future, m)
        if side == 0:
            # the geodesic runs into the cusp m: close the current run, then stop
            pivot = _from_pair(r, s) if previous is Letter.L else _from_pair(p, q)
            yield _Step(previous, pivot)
            yield _Step(Letter.END, m)
            return
        if side > 0:
            previous = Letter.L
            p, q = p + r, q + s
            yield _Step(Letter.L, _from_pair(r, s), FareyEdge(_from_pair(p, q), _from_pair(r, s)))
        else:
            previous = Letter.R
            r, s = p + r, q + s
            yield _Step(Letter.R, _from_pair(p, q), FareyEdge(_from_pair(p, q), _from_pair(r, s)))


def mirror_edge(e: FareyEdge) -> FareyEdge:
    """Image of an edge under x -> -x."""
    if e.right is INFINITY:
        return FareyEdge(-e.left, INFINITY)  # type: ignore[operator]
    return FareyEdge(-e.right, -e.left)  # type: ignore[operator]


def _oriented_steps(g: Geodesic) -> Iterator[_Step]:
    canonical, mirrored = _canonical(g)
    for step in _descent(canonical.future):
        if not mirrored:
            yield step
        else:
            pivot = step.pivot if step.pivot is INFINITY else -step.pivot  # type: ignore[operator]
            edge = None if step.exit_edge is None else mirror_edge(step.exit_edge)
            yield _Step(step.letter.swap(), pivot, edge)


def cutting_sequence(g: Geodesic, n: int) -> List[Letter]:
    """First n letters of g after its crossing of the imaginary axis.

    Shorter when the future foot is rational: the list then ends with ``Letter.END``.
    """
    if n < 1:
        raise DomainError(f"Need at least one letter, got {n}")
    return [step.letter for step in islice(_oriented_steps(g), n)]


def crossed_edges(g: Geodesic, n: int) -> List[FareyEdge]:
    """The imaginary axis followed by the exit edges of the first n crossed triangles."""
    edges = [AXIS_EDGE]
    for step in islice(_oriented_steps(g), n):
        if step.exit_edge is None:
            break
        edges.append(step.exit_edge)
    return edges


def backward_cutting_sequence(g: Geodesic, n: int) -> List[Letter]:
    """Letters met before the axis crossing, read from the axis towards the past foot.

    S maps the reversed geodesic back into A; reversing orientation swaps the sides.
    """
    turned = mobius_on_geodesic(S_MAT, g.reverse())
    return swap_letters(cutting_sequence(turned, n))


def runs(letters: Sequence[Letter]) -> RunSequence:
    terminal = bool(letters) and letters[-1] is Letter.END
    body = [letter for letter in letters if letter is not Letter.END]
    if not body:
        raise DomainError("Cannot collect runs of an empty letter sequence")
    lengths = tuple(len(list(group)) for _, group in groupby(body))
    return RunSequence(lengths, body[0], terminal=terminal)


def two_sided_runs(g: Geodesic, n: int) -> Tuple[RunSequence, RunSequence]:
    """(runs n0, n-1, ... towards the past, runs n1, n2, ... towards the future)."""
    backward = runs(backward_cutting_sequence(g, n))
    forward = runs(cutting_sequence(g, n))
    return (
        RunSequence(backward.runs, backward.first_letter, start=0, terminal=backward.terminal),
        forward,
    )


def tips(g: Geodesic, k: int) -> List[Tip]:
    """The first k tips: pivots of the runs after the first, with their run lengths."""
    found: List[Tip] = []
    for letter, group in groupby(_oriented_steps(g), key=lambda step: step.letter):
        steps = list(group)
        pivot = steps[0].pivot
        if letter is Letter.END:
            found.append(Tip(pivot, 1, letter, terminal=True))  # type: ignore[arg-type]
        elif pivot is not INFINITY:
            found.append(Tip(pivot, len(steps), letter))  # type: ignore[arg-type]
        if len(found) >= k:
            return found[:k]
    raise ExpansionExhaustedError(f"Geodesic {g} has only {len(found)} tips, {k} requested")


def reduce_to_A(g: Geodesic) -> Tuple[Geodesic, IntMatrix2]:
    """Apply S T^k moves driven by the future foot's digits until the geodesic is in A."""
    current, m = g, IDENTITY
    for step in range(settings.MAX_REDUCTION_STEPS):
        if current.past is INFINITY or current.future is INFINITY:
            raise CuspError(f"Geodesic {g} runs into a cusp before reaching A")
        if is_in_A(current):
            logger.debug(f"Reduced {g} into A in {step} steps")
            return current, m
        future = current.future
        if exact_sign(future) > 0:  # type: ignore[arg-type]
            shift = -math.floor(future)  # type: ignore[arg-type]
        else:
            shift = math.floor(-future)  # type: ignore[operator]
        move = S_MAT @ translation(shift)
        current = mobius_on_geodesic(move, current)
        m = move @ m
    raise CuspError(
        f"Geodesic {g} not reduced within {settings.MAX_REDUCTION_STEPS} steps"
    )


# -- independent oracle -------------------------------------------------------------


def _crossing_height_squared(g: Tuple[iv.mpf, iv.mpf], u: BoundaryPoint, v: BoundaryPoint):
    """Enclosure of y^2 at the intersection of g's semicircle with the edge (u, v)."""
    past, future = g
    if v is INFINITY:
        x = to_interval(u)  # type: ignore[arg-type]
        return (future - x) * (x - past)
    c1, r1 = (past + future) / 2, (future - past) / 2
    lo, hi = to_interval(u), to_interval(v)  # type: ignore[arg-type]
    c2, r2 = (lo + hi) / 2, (hi - lo) / 2
    gap = c2 - c1
    interval_sign(gap, "center gap")
    x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * gap)
    return r1 * r1 - (x - c1) ** 2


def interval_cutting_sequence(g: Geodesic, n: int) -> List[Letter]:
    """Letters from actual edge crossings, decided in interval arithmetic.

    The geodesic enters each triangle through one edge and must leave through one of the
    other two; the exit is found by locating the intersection point. Defined for
    irrational future feet only.
    """
    canonical, mirrored = _canonical(g)
    if isinstance(canonical.future, Fraction):
        raise UnsupportedValueError("The crossing oracle needs an irrational future foot")
    feet = (to_interval(canonical.past), to_interval(canonical.future))  # type: ignore[arg-type]
    left, right = Fraction(0), INFINITY
    letters: List[Letter] = []
    while len(letters) < n:
        m = mediant(FareyEdge(left, right))
        crosses_left = interval_sign(_crossing_height_squared(feet, left, m), "crossing") > 0
        crosses_right = interval_sign(_crossing_height_squared(feet, m, right), "crossing") > 0
        if crosses_left == crosses_right:
            raise UnsupportedValueError(f"Exit edge of triangle ({left}, {m}, {right}) undecided")
        if crosses_right:
            letters.append(Letter.L)
            left = m
        else:
            letters.append(Letter.R)
            right = m
    return swap_letters(letters) if mirrored else letters
