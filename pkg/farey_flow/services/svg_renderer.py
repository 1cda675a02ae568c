"""SVG rendering of the Farey tessellation, a geodesic with its letters, and Ford circles."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
from lxml import etree

from farey_flow.arith.boundary import INFINITY
from farey_flow.arith.parsing import parse_value
from farey_flow.arith.precision import to_mpf
from farey_flow.arith.quadratic import exact_sign
from farey_flow.config import settings
from farey_flow.errors import DomainError, ValueParseError
from farey_flow.services.farey_coding import (
    FareyEdge,
    crossed_edges,
    cutting_sequence,
    is_in_A,
    mediant,
)
from farey_flow.services.hyperbolic import (
    Geodesic,
    HPoint,
    UnitTangent,
    flow,
    ford_circle,
    hyp_distance,
    mobius_on_geodesic,
)
from farey_flow.services.section import SectionPoint, return_matrix

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


@dataclass(frozen=True)
class Viewport:
    """Window [x_min, x_max] x (0, top] mapped onto width x height pixels, y up."""

    x_min: Fraction
    x_max: Fraction
    top: float
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.x_max <= self.x_min:
            raise DomainError(f"Empty window {self.x_min}:{self.x_max}")
        if self.top <= 0 or self.width <= 0 or self.height <= 0:
            raise DomainError("Window height and picture size must be positive")

    @property
    def x_scale(self) -> float:
        return self.width / float(self.x_max - self.x_min)

    @property
    def y_scale(self) -> float:
        return self.height / self.top

    def point(self, x: float, y: float) -> Tuple[float, float]:
        return (x - float(self.x_min)) * self.x_scale, self.height - y * self.y_scale


def parse_window(text: str) -> Tuple[Fraction, Fraction]:
    """'a:b' with rational bounds."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueParseError(f"Window must look like 'a:b', got '{text}'")
    low, high = (parse_value(part) for part in parts)
    if not isinstance(low, Fraction) or not isinstance(high, Fraction):
        raise ValueParseError(f"Window bounds must be rational, got '{text}'")
    if high <= low:
        raise DomainError(f"Window '{text}' is empty")
    return low, high


def farey_edges(depth: int, x_min: Fraction, x_max: Fraction) -> List[FareyEdge]:
    """Edges down to Stern-Brocot depth ``depth`` in every unit interval meeting the window.

    Integer verticals inside the window, plus 2^(depth+1) - 1 semicircles per unit.
    """
    if depth < 0:
        raise DomainError(f"Depth must be nonnegative, got {depth}")
    edges = [
        FareyEdge(Fraction(k), INFINITY) for k in range(math.ceil(x_min), math.floor(x_max) + 1)
    ]
    for unit in range(math.floor(x_min), math.ceil(x_max)):
        level = [FareyEdge(Fraction(unit), Fraction(unit + 1))]
        for _ in range(depth + 1):
            edges.extend(level)
            level = [
                child
                for edge in level
                for child in (
                    FareyEdge(edge.left, mediant(edge)),
                    FareyEdge(mediant(edge), edge.right),
                )
            ]
    return edges


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _arc_path(view: Viewport, left: float, right: float) -> str:
    x1, y0 = view.point(left, 0.0)
    x2, _ = view.point(right, 0.0)
    radius = (right - left) / 2
    rx, ry = radius * view.x_scale, radius * view.y_scale
    return f"M {_fmt(x1)},{_fmt(y0)} A {_fmt(rx)},{_fmt(ry)} 0 0 1 {_fmt(x2)},{_fmt(y0)}"


def _vertical_path(view: Viewport, x: float) -> str:
    px, py = view.point(x, 0.0)
    return f"M {_fmt(px)},{_fmt(py)} L {_fmt(px)},0.000"


def _geodesic_path(view: Viewport, g: Geodesic) -> str:
    if g.is_vertical:
        return _vertical_path(view, float(to_mpf(g.vertical_x)))
    low, high = sorted((float(to_mpf(g.past)), float(to_mpf(g.future))))
    return _arc_path(view, low, high)


def _edge_crossing(g: Geodesic, edge: FareyEdge) -> HPoint:
    """Intersection of g with a Farey edge, in floating arithmetic."""
    p, f = to_mpf(g.past), to_mpf(g.future)
    if edge.right is INFINITY:
        x = to_mpf(edge.left)
        return HPoint(x, mpmath.sqrt((f - x) * (x - p)))
    c1, r1 = (p + f) / 2, abs(f - p) / 2
    lo, hi = to_mpf(edge.left), to_mpf(edge.right)
    c2, r2 = (lo + hi) / 2, (hi - lo) / 2
    x = (r1**2 - r2**2 + c2**2 - c1**2) / (2 * (c2 - c1))
    return HPoint(x, mpmath.sqrt(r1**2 - (x - c1) ** 2))


def letter_anchors(g: Geodesic, count: int) -> List[Tuple[str, HPoint]]:
    """Letters with the hyperbolic midpoints of the segments they label."""
    letters = cutting_sequence(g, count)
    edges = crossed_edges(g, count)
    crossings = [_edge_crossing(g, edge) for edge in edges]
    anchors = []
    for letter, start, end in zip(letters, crossings, crossings[1:]):
        half = hyp_distance(start, end) / 2
        anchors.append((letter.value, flow(UnitTangent(g, start), half).base))
    return anchors


class SvgRenderer:
    """Builds one SVG document; ``edge_count`` is the number of tessellation paths."""

    def __init__(self, view: Viewport) -> None:
        self.view = view
        self.edge_count = 0
        self.root = etree.Element(
            _tag("svg"),
            nsmap={None: SVG_NS},
            width=str(view.width),
            height=str(view.height),
            viewBox=f"0 0 {view.width} {view.height}",
        )
        defs = etree.SubElement(self.root, _tag("defs"))
        clip = etree.SubElement(defs, _tag("clipPath"), id="window")
        etree.SubElement(
            clip, _tag("rect"), x="0", y="0", width=str(view.width), height=str(view.height)
        )
        self.layer = etree.SubElement(self.root, _tag("g"), {"clip-path": "url(#window)"})

    def add_tessellation(self, depth: int) -> int:
        group = etree.SubElement(
            self.layer, _tag("g"), id="tessellation", fill="none", stroke="#555"
        )
        for edge in farey_edges(depth, self.view.x_min, self.view.x_max):
            if edge.right is INFINITY:
                d = _vertical_path(self.view, float(edge.left))  # type: ignore[arg-type]
            else:
                left, right = float(edge.left), float(edge.right)  # type: ignore[arg-type]
                d = _arc_path(self.view, left, right)
            etree.SubElement(group, _tag("path"), {"class": "farey-edge", "d": d})
            self.edge_count += 1
        return self.edge_count

    def add_ford_circles(self, depth: int) -> None:
        group = etree.SubElement(self.layer, _tag("g"), id="ford", fill="none", stroke="#2a7")
        vertices = set()
        for edge in farey_edges(depth, self.view.x_min, self.view.x_max):
            vertices.update(v for v in (edge.left, edge.right) if v is not INFINITY)
        for vertex in sorted(vertices):
            center, radius = ford_circle(vertex)  # type: ignore[arg-type]
            cx, cy = self.view.point(float(center.x), float(center.y))
            etree.SubElement(
                group,
                _tag("ellipse"),
                {
                    "class": "ford-circle",
                    "cx": _fmt(cx),
                    "cy": _fmt(cy),
                    "rx": _fmt(float(radius) * self.view.x_scale),
                    "ry": _fmt(float(radius) * self.view.y_scale),
                },
            )

    def add_geodesic(self, g: Geodesic, letters: int, css_class: str = "geodesic") -> None:
        group = etree.SubElement(self.layer, _tag("g"), {"class": css_class})
        etree.SubElement(
            group,
            _tag("path"),
            {
                "class": css_class,
                "d": _geodesic_path(self.view, g),
                "fill": "none",
                "stroke": "#c22",
            },
        )
        if letters <= 0:
            return
        if not is_in_A(g):
            logger.warning(f"Geodesic {g} is not in A; letters are not annotated")
            return
        for letter, anchor in letter_anchors(g, letters):
            x, y = self.view.point(float(anchor.x), float(anchor.y))
            text = etree.SubElement(
                group, _tag("text"), {"class": "letter", "x": _fmt(x), "y": _fmt(y)}
            )
            text.text = letter

    def add_return(self, g: Geodesic) -> None:
        """The vertical x = +-n1 and the representative after one first return."""
        point = SectionPoint(g, 1 if exact_sign(g.future) < 0 else 0)  # type: ignore[arg-type]
        n1 = math.floor(abs(g.future))  # type: ignore[arg-type]
        x = n1 if point.parity == 0 else -n1
        etree.SubElement(
            self.layer,
            _tag("path"),
            {
                "class": "return-line",
                "d": _vertical_path(self.view, float(x)),
                "stroke": "#27c",
                "stroke-dasharray": "6,4",
            },
        )
        image = mobius_on_geodesic(return_matrix(n1, point.parity), g)
        self.add_geodesic(image, 0, css_class="return-geodesic")

    def to_bytes(self) -> bytes:
        return etree.tostring(self.root, pretty_print=True, xml_declaration=True, encoding="UTF-8")


def default_viewport(window: Optional[str] = None, top: Optional[float] = None) -> Viewport:
    low, high = parse_window(window or settings.SVG_WINDOW)
    return Viewport(low, high, top or settings.SVG_TOP, settings.SVG_WIDTH, settings.SVG_HEIGHT)


def render(
    depth: int,
    view: Viewport,
    geodesic: Optional[Geodesic] = None,
    ford: bool = False,
    show_return: bool = False,
) -> Tuple[bytes, int]:
    """SVG document and the number of tessellation edges drawn."""
    renderer = SvgRenderer(view)
    renderer.add_tessellation(depth)
    if ford:
        renderer.add_ford_circles(depth)
    if geodesic is not None:
        renderer.add_geodesic(geodesic, depth + 1)
        if show_return:
            renderer.add_return(geodesic)
    logger.info(f"Rendered {renderer.edge_count} Farey edges at depth {depth}")
    return renderer.to_bytes(), renderer.edge_count
