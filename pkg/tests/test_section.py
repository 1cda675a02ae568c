"""Unit tests for decorated digit sequences, the shift and the first-return map."""

from fractions import Fraction
from itertools import product

import mpmath
import pytest

from farey_flow.arith.quadratic import QuadSurd
from farey_flow.errors import (
    CuspExitError,
    DomainError,
    NotInAError,
    UnsupportedValueError,
    ValueParseError,
)
from farey_flow.services.continued_fraction import gauss_map
from farey_flow.services.hyperbolic import Geodesic, cross_vertical, flow, hyp_distance
from farey_flow.services.section import (
    DigitTail,
    SectionPoint,
    SigmaElement,
    closed_geodesic_from_period,
    closed_word,
    decode,
    encode,
    factor_to_unit_interval,
    first_return,
    format_sigma,
    parse_sigma,
    periodic_element,
    return_matrix,
    shift,
    trace_length,
)

SQRT3 = QuadSurd(0, 1, 1, 3)
G_SQRT3 = Geodesic(1 - SQRT3, 1 + SQRT3)


@pytest.mark.unit
class TestDigitTail:
    """Test suite for one-sided digit tails."""

    def test_canonical_form(self):
        assert DigitTail((1, 2), (1, 2)) == DigitTail((), (1, 2))
        assert DigitTail((), (3, 3)) == DigitTail((), (3,))

    def test_digits_must_be_positive(self):
        with pytest.raises(DomainError):
            DigitTail((0,))

    def test_iteration_and_access(self):
        tail = DigitTail((5,), (1, 2))
        assert tail.take(6) == [5, 1, 2, 1, 2, 1]
        assert tail.digit(4) == 2
        assert tail.drop() == DigitTail((), (1, 2))
        assert tail.push(3).take(2) == [3, 5]

    def test_finite_length(self):
        assert DigitTail((2, 3)).length() == 2
        with pytest.raises(UnsupportedValueError):
            DigitTail((), (1,)).length()

    def test_value(self):
        assert DigitTail((), (2, 1)).value() == 1 + SQRT3
        assert DigitTail((3, 7, 16)).value() == Fraction(355, 113)


@pytest.mark.unit
class TestEncoding:
    """Test suite for encode and decode."""

    def test_encode_sqrt3(self):
        s = encode(G_SQRT3)
        assert s == periodic_element((2, 1))
        assert s.parity == 0
        assert s.digit(1) == 2 and s.digit(0) == 1 and s.digit(-1) == 2

    def test_encode_requires_A(self):
        with pytest.raises(NotInAError):
            encode(Geodesic(Fraction(2), Fraction(3)))

    def test_decode_inverts_encode(self, random_geodesics):
        for g in random_geodesics(100):
            assert decode(encode(g)).representative == g

    def test_parity_follows_future_sign(self):
        s = encode(G_SQRT3.mirror())
        assert s.parity == 1
        assert decode(s).representative == G_SQRT3.mirror()

    def test_sigma_needs_both_sides(self):
        with pytest.raises(DomainError):
            SigmaElement(DigitTail(), DigitTail((1,)))
        with pytest.raises(DomainError):
            SigmaElement(DigitTail((1,)), DigitTail((1,)), parity=2)

    def test_index_range(self):
        s = SigmaElement(DigitTail((2, 3)), DigitTail((1,), (2,)))
        assert s.index_range == (-1, float("inf"))

    def test_section_point_checks_parity(self):
        with pytest.raises(DomainError):
            SectionPoint(G_SQRT3, 1)


@pytest.mark.unit
class TestTextForm:
    """Test suite for the bracket notation of decorated sequences."""

    def test_format_periodic(self):
        assert format_sigma(periodic_element((2, 1))) == "[(2 1) | (2 1)] ; 0"

    def test_round_trip(self):
        s = SigmaElement(DigitTail((4, 3), (2, 1)), DigitTail((5,), (6, 7)), parity=1)
        text = format_sigma(s)
        assert text == "[(1 2) 3 4 | 5 (6 7)] ; 1"
        assert parse_sigma(text) == s

    @pytest.mark.parametrize("text", ["[1 | 2]", "[1 2 ; 0", "[(1 | 2] ; 0", "[ | 2] ; 0"])
    def test_parse_rejects(self, text):
        with pytest.raises((ValueParseError, DomainError)):
            parse_sigma(text)


@pytest.mark.unit
class TestFirstReturn:
    """Test suite for the shift, the return map and return times."""

    def test_return_matrix(self):
        assert return_matrix(2, 0).rows() == ((0, -1), (1, -2))
        assert return_matrix(2, 1).rows() == ((0, -1), (1, 2))

    def test_first_return_sqrt3(self):
        image, step = first_return(decode(periodic_element((2, 1))))
        assert image.representative == Geodesic((SQRT3 - 1) / 2, -(SQRT3 + 1) / 2)
        assert image.parity == 1
        assert step.digit_consumed == 2

    def test_return_commutes_with_shift(self, random_geodesics):
        """encode(first_return(p)) == shift(encode(p)) along 30 returns."""
        for g in random_geodesics(200):
            point, s = decode(encode(g)), encode(g)
            for _ in range(30):
                point, _ = first_return(point)
                s = shift(s)
                assert encode(point.representative) == s

    @pytest.mark.slow
    def test_decode_intertwines_return_and_shift(self, random_sigma_elements):
        """first_return(decode(s)) == decode(shift(s)) on two-sided periodic sequences."""
        for s in random_sigma_elements(200):
            point = decode(s)
            for _ in range(30):
                point, step = first_return(point)
                assert step.digit_consumed == s.future.head()
                s = shift(s)
                assert point == decode(s)

    def test_factor_intertwines_on_sigma_elements(self, random_sigma_elements):
        for s in random_sigma_elements(200):
            for _ in range(30):
                assert factor_to_unit_interval(shift(s)) == gauss_map(factor_to_unit_interval(s))
                s = shift(s)

    def test_factor_intertwines_gauss_map(self, random_geodesics):
        for g in random_geodesics(200):
            s = encode(g)
            for _ in range(30):
                assert factor_to_unit_interval(shift(s)) == gauss_map(factor_to_unit_interval(s))
                s = shift(s)

    def test_factor_example(self):
        s = periodic_element((2, 1))
        assert factor_to_unit_interval(s) == (SQRT3 - 1) / 2
        assert factor_to_unit_interval(shift(s)) == SQRT3 - 1
        assert gauss_map((SQRT3 - 1) / 2) == SQRT3 - 1

    def test_factor_of_cusp_future(self):
        """A future (1) ends on the cusp at 1, which is outside [0, 1)."""
        s = SigmaElement(DigitTail((2,)), DigitTail((1,)))
        with pytest.raises(CuspExitError):
            factor_to_unit_interval(s)
        finite = SigmaElement(DigitTail((2,)), DigitTail((3,)))
        assert factor_to_unit_interval(finite) == Fraction(1, 3)

    def test_return_time_is_flow_time(self):
        point = decode(periodic_element((2, 1)))
        _, step = first_return(point)
        landed = flow(point.tangent, step.time).base
        assert hyp_distance(landed, cross_vertical(point.representative, 2)) < 1e-25

    def test_shift_into_cusp(self):
        s = SigmaElement(DigitTail((1,)), DigitTail((3,)))
        with pytest.raises(CuspExitError):
            shift(s)

    def test_first_return_into_cusp(self):
        point = SectionPoint(Geodesic(Fraction(-1, 2), Fraction(3)), 0)
        with pytest.raises(CuspExitError):
            first_return(point)


@pytest.mark.unit
class TestClosedGeodesics:
    """Test suite for closed geodesics from digit periods."""

    @pytest.mark.parametrize(
        "word, length",
        [((1, 1), 1.924847), ((2, 1), 2.633916), ((2, 2), 3.525494)],
    )
    def test_known_lengths(self, word, length):
        orbit, total = closed_geodesic_from_period(word)
        assert len(orbit) == 2
        assert abs(float(total) - length) < 1e-6

    def test_odd_words_are_doubled(self):
        assert closed_word((1,)) == (1, 1)
        assert closed_word((1, 2, 3)) == (1, 2, 3, 1, 2, 3)
        with pytest.raises(DomainError):
            closed_word(())

    def test_lengths_match_traces(self):
        """All even words with digits <= 3 and length <= 4."""
        for size in (2, 4):
            for word in product((1, 2, 3), repeat=size):
                _, total = closed_geodesic_from_period(word)
                assert abs(total - trace_length(word)) < mpmath.mpf(10) ** -9

    def test_rotation_invariance(self):
        _, first = closed_geodesic_from_period((3, 1, 2, 1))
        _, rotated = closed_geodesic_from_period((1, 2, 1, 3))
        assert abs(first - rotated) < 1e-20
