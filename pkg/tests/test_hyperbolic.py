"""Unit tests for upper half-plane geometry, the geodesic flow and Ford circles."""

from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy import integrate

from farey_flow.arith.boundary import INFINITY
from farey_flow.arith.matrix import IDENTITY, S_MAT, translation
from farey_flow.arith.quadratic import QuadSurd
from farey_flow.errors import DegenerateGeodesicError, DomainError, NoCrossingError
from farey_flow.services.hyperbolic import (
    FordContact,
    Geodesic,
    HPoint,
    UnitTangent,
    circle_residual,
    cross_vertical,
    distance_along,
    flow,
    ford_circle,
    ford_contact,
    hyp_distance,
    mobius_on_geodesic,
    mobius_on_point,
    mobius_on_tangent,
    tangent_at_axis,
)

SQRT3 = QuadSurd(0, 1, 1, 3)
G_SQRT3 = Geodesic(1 - SQRT3, 1 + SQRT3)


def random_group_element(rng, length=4):
    m = IDENTITY
    for _ in range(length):
        m = m @ translation(int(rng.integers(-3, 4))) @ S_MAT
    return m


@pytest.mark.unit
class TestGeodesic:
    """Test suite for geodesics and points."""

    def test_point_must_be_in_upper_half_plane(self):
        with pytest.raises(DomainError):
            HPoint(0, 0)

    def test_degenerate_geodesic(self):
        with pytest.raises(DegenerateGeodesicError):
            Geodesic(Fraction(1, 2), Fraction(2, 4))

    def test_center_and_radius(self):
        assert G_SQRT3.center == Fraction(1)
        assert G_SQRT3.radius == SQRT3

    def test_mirror_and_reverse(self):
        assert G_SQRT3.mirror() == Geodesic(SQRT3 - 1, -1 - SQRT3)
        assert G_SQRT3.reverse().reverse() == G_SQRT3

    def test_separates(self):
        assert G_SQRT3.separates(Fraction(0))
        assert G_SQRT3.separates(Fraction(2))
        assert not G_SQRT3.separates(Fraction(3))

    def test_cross_vertical_exact(self):
        z = cross_vertical(G_SQRT3, 0)
        assert z == HPoint(Fraction(0), QuadSurd(0, 1, 1, 2))
        assert circle_residual(G_SQRT3, z) == 0

    def test_cross_vertical_mixed_fields_falls_back_to_mpf(self):
        g = Geodesic(-QuadSurd(0, 1, 2, 2), QuadSurd(0, 1, 1, 5))
        z = cross_vertical(g, 0)
        assert not z.is_exact
        assert abs(circle_residual(g, z)) < mpmath.mpf(10) ** -25

    def test_no_crossing(self):
        with pytest.raises(NoCrossingError):
            cross_vertical(G_SQRT3, 5)

    def test_tangent_at_axis(self):
        u = tangent_at_axis(G_SQRT3)
        assert u.base.x == 0


@pytest.mark.unit
class TestDistanceAndFlow:
    """Test suite for hyperbolic distance and the closed-form flow."""

    def test_distance_on_imaginary_axis(self):
        assert abs(hyp_distance(HPoint(0, 1), HPoint(0, 2)) - mpmath.log(2)) < 1e-30

    def test_distance_matches_arclength_integral(self):
        """Integrate |dz|/y along the unit semicircle between two angles."""
        theta1, theta2 = 0.4, 2.1
        z1 = HPoint(mpmath.cos(theta1), mpmath.sin(theta1))
        z2 = HPoint(mpmath.cos(theta2), mpmath.sin(theta2))
        arclength, _ = integrate.quad(lambda t: 1.0 / np.sin(t), theta1, theta2)
        assert abs(float(hyp_distance(z1, z2)) - arclength) < 1e-9

    def test_distance_along_matches_hyp_distance(self):
        z0, z2 = cross_vertical(G_SQRT3, 0), cross_vertical(G_SQRT3, 2)
        along = distance_along(G_SQRT3, Fraction(0), Fraction(2))
        assert abs(along - hyp_distance(z0, z2)) < mpmath.mpf(10) ** -25

    def test_isometry(self, rng):
        for _ in range(100):
            m = random_group_element(rng)
            z1 = HPoint(mpmath.mpf(rng.uniform(-2, 2)), mpmath.mpf(rng.uniform(0.2, 3)))
            z2 = HPoint(mpmath.mpf(rng.uniform(-2, 2)), mpmath.mpf(rng.uniform(0.2, 3)))
            before = hyp_distance(z1, z2)
            after = hyp_distance(mobius_on_point(m, z1), mobius_on_point(m, z2))
            assert abs(before - after) < 1e-12

    def test_flow_moves_arclength_towards_future(self):
        u = tangent_at_axis(G_SQRT3)
        moved = flow(u, 0.75)
        assert abs(hyp_distance(u.base, moved.base) - mpmath.mpf(0.75)) < 1e-25
        assert moved.base.x > 0
        assert abs(circle_residual(G_SQRT3, moved.base)) < 1e-25

    def test_flow_inverse(self):
        u = tangent_at_axis(G_SQRT3)
        back = flow(flow(u, 1.3), -1.3)
        assert hyp_distance(u.base, back.base) < 1e-25

    def test_flow_group_law(self, rng):
        """flow(flow(u, t), s) == flow(u, s + t)."""
        u = tangent_at_axis(G_SQRT3)
        half = flow(flow(u, 0.5), 0.5).base
        assert hyp_distance(half, flow(u, 1).base) < 1e-12
        for _ in range(50):
            s, t = (mpmath.mpf(v) for v in rng.uniform(-3, 3, size=2))
            composed = flow(flow(u, t), s).base
            assert hyp_distance(composed, flow(u, s + t).base) < 1e-12

    def test_flow_on_vertical_geodesics(self):
        up = UnitTangent(Geodesic(Fraction(1), INFINITY), HPoint(1, 1))
        moved = flow(up, mpmath.log(2)).base
        assert abs(moved.y - 2) < 1e-25 and abs(moved.x - 1) < 1e-25
        down = UnitTangent(Geodesic(INFINITY, Fraction(1)), HPoint(1, 2))
        assert abs(flow(down, mpmath.log(2)).base.y - 1) < 1e-25

    def test_flow_equivariance(self, rng):
        u = tangent_at_axis(G_SQRT3)
        for _ in range(20):
            m = random_group_element(rng, length=2)
            t = mpmath.mpf(rng.uniform(-2, 2))
            left = mobius_on_tangent(m, flow(u, t)).base
            right = flow(mobius_on_tangent(m, u), t).base
            assert hyp_distance(left, right) < 1e-12

    def test_mobius_on_geodesic(self):
        assert mobius_on_geodesic(S_MAT, Geodesic(Fraction(-1), Fraction(2))) == Geodesic(
            Fraction(1), Fraction(-1, 2)
        )


@pytest.mark.unit
class TestFordCircles:
    """Test suite for Ford circles."""

    def test_ford_circle(self):
        center, radius = ford_circle(Fraction(2, 3))
        assert radius == Fraction(1, 18)
        assert center == HPoint(Fraction(2, 3), Fraction(1, 18))

    def test_identical(self):
        assert ford_contact(Fraction(1, 2), Fraction(2, 4)) == FordContact.IDENTICAL

    def test_tangent_exactly_when_unimodular(self):
        fractions = sorted(
            {Fraction(p, q) for q in range(1, 31) for p in range(0, q + 1)}
        )
        for i, a in enumerate(fractions):
            for b in fractions[i + 1 :]:
                unimodular = abs(a.numerator * b.denominator - a.denominator * b.numerator) == 1
                expected = FordContact.TANGENT if unimodular else FordContact.DISJOINT
                assert ford_contact(a, b) == expected
