"""Unit tests for continued fraction expansions, interval maps and approximation."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from farey_flow.arith.quadratic import QuadSurd
from farey_flow.errors import DomainError, ExpansionExhaustedError, ValueParseError
from farey_flow.services.continued_fraction import (
    CFExpansion,
    best_approximations,
    convergents,
    evaluate,
    expand,
    farey_accelerate,
    farey_map,
    farey_orbit,
    format_cf,
    format_terms,
    gauss_map,
    is_best_approx_first_kind,
    is_purely_periodic,
    mediant_convergents,
    parse_cf,
    periodic_value,
    primitive_word,
    stream_of,
)

SQRT2 = QuadSurd(0, 1, 1, 2)
GOLDEN = QuadSurd(1, 1, 2, 5)
SQUAREFREE_TO_50 = [d for d in range(2, 51) if all(d % (p * p) for p in range(2, 8))]
SMALL_SHIFTS = [Fraction(0), Fraction(22, 7), Fraction(-3, 5), Fraction(5, 3), Fraction(7, 2)]


def random_unit_surds(count, seed):
    """Fractional parts of (a + b*sqrt(d)) / c for squarefree d <= 50."""
    rng = np.random.default_rng(seed)
    values = []
    for _ in range(count):
        d = SQUAREFREE_TO_50[int(rng.integers(len(SQUAREFREE_TO_50)))]
        a, b, c = (int(v) for v in (rng.integers(-30, 31), rng.integers(1, 8), rng.integers(1, 12)))
        x = QuadSurd(a, b, c, d)
        values.append(x - math.floor(x))
    return values


def reduced_surds(max_discriminant):
    """Every (P + sqrt(D)) / Q with D <= bound, Q | D - P^2, 0 < sqrt(D) - P < Q < sqrt(D) + P."""
    for d in range(2, max_discriminant + 1):
        root = math.isqrt(d)
        if root * root == d:
            continue
        for p in range(1, root + 1):
            for q in range(root - p + 1, root + p + 1):
                if (d - p * p) % q == 0:
                    yield QuadSurd.from_parts(Fraction(p, q), Fraction(1, q), d)


def quadratic_candidates(count, seed, max_discriminant):
    """Random (P + sqrt(D)) / Q with Q | D - P^2, mostly not reduced."""
    rng = np.random.default_rng(seed)
    values = []
    while len(values) < count:
        d = int(rng.integers(2, max_discriminant + 1))
        p, q = int(rng.integers(-20, 21)), int(rng.integers(-30, 31))
        root = math.isqrt(d)
        if root * root != d and q != 0 and (d - p * p) % q == 0:
            values.append(QuadSurd.from_parts(Fraction(p, q), Fraction(1, q), d))
    return values


def random_rationals(count, seed, max_denominator=500):
    rng = np.random.default_rng(seed)
    values = []
    while len(values) < count:
        q = int(rng.integers(2, max_denominator))
        p = int(rng.integers(1, q))
        values.append(Fraction(p, q))
    return values


@pytest.mark.unit
class TestExpansion:
    """Test suite for exact expansion and evaluation."""

    def test_rational_expansion(self):
        cf = expand(Fraction(355, 113))
        assert cf == CFExpansion(3, (7, 16))
        assert cf.kind == "finite"
        assert evaluate(cf) == Fraction(355, 113)

    def test_negative_rational(self):
        cf = expand(Fraction(-7, 3))
        assert cf.a0 == -3
        assert evaluate(cf) == Fraction(-7, 3)

    def test_integer(self):
        assert expand(5) == CFExpansion(5)
        assert format_cf(expand(5)) == "[5]"

    def test_trailing_one_is_merged(self):
        assert CFExpansion(0, (2, 1)) == CFExpansion(0, (3,))
        assert CFExpansion(0, (1,)) == CFExpansion(1)

    def test_sqrt2(self):
        cf = expand(SQRT2)
        assert (cf.a0, cf.preperiod, cf.period) == (1, (), (2,))
        assert cf.terms(5) == [1, 2, 2, 2, 2]
        assert evaluate(cf) == SQRT2
        assert not is_purely_periodic(cf)

    def test_golden_ratio_purely_periodic(self):
        cf = expand(GOLDEN)
        assert cf.period == (1,)
        assert is_purely_periodic(cf)

    def test_preperiodic_surd(self):
        """sqrt(7) = [2; (1, 1, 1, 4)]."""
        cf = expand(QuadSurd(0, 1, 1, 7))
        assert (cf.a0, cf.period) == (2, (1, 1, 1, 4))
        assert evaluate(cf) == QuadSurd(0, 1, 1, 7)

    def test_round_trip_rationals(self):
        rng = np.random.default_rng(17)
        for _ in range(3000):
            x = Fraction(int(rng.integers(-1000, 1001)), int(rng.integers(1, 1001)))
            assert evaluate(expand(x)) == x

    @pytest.mark.slow
    def test_round_trip_shifted_roots(self):
        """sqrt(d) + r for squarefree d <= 50, each within a few seconds."""
        for d in SQUAREFREE_TO_50:
            for r in SMALL_SHIFTS:
                x = QuadSurd.sqrt(d) + r
                started = time.perf_counter()
                assert evaluate(expand(x)) == x
                assert time.perf_counter() - started < 5

    def test_long_period_evaluates_quickly(self):
        x = QuadSurd.sqrt(46) + Fraction(22, 7)
        cf = expand(x)
        assert len(cf.period) > 100
        started = time.perf_counter()
        assert evaluate(cf) == x
        assert time.perf_counter() - started < 1

    @pytest.mark.slow
    def test_galois_purity(self):
        """Purely periodic exactly when x > 1 and -1 < x' < 0."""
        count = 0
        for x in reduced_surds(200):
            assert x > 1 and -1 < x.conjugate() < 0
            assert is_purely_periodic(expand(x))
            count += 1
        assert count > 300
        for x in quadratic_candidates(2000, seed=13, max_discriminant=200):
            reduced = x > 1 and -1 < x.conjugate() < 0
            assert is_purely_periodic(expand(x)) == reduced

    def test_periodic_value(self):
        assert periodic_value([2, 1]) == QuadSurd(1, 1, 1, 3)
        assert periodic_value([1]) == GOLDEN

    def test_canonical_period_rotation(self):
        """[1; 2, (1, 2)] is the same number as [1; (2, 1)]."""
        assert CFExpansion(1, (2,), (1, 2)) == CFExpansion(1, (), (2, 1))
        assert primitive_word((3, 1, 3, 1)) == (3, 1)

    def test_stream_matches_expansion(self):
        stream = stream_of(QuadSurd(0, 1, 1, 7))
        assert stream.terms(9) == expand(QuadSurd(0, 1, 1, 7)).terms(9)
        assert stream.consumed == 8

    def test_finite_terms_exhausted(self):
        with pytest.raises(ExpansionExhaustedError):
            expand(Fraction(1, 3)).terms(3)

    def test_shift(self):
        cf = CFExpansion(0, (3,), (1, 2))
        assert cf.shift() == CFExpansion(0, (), (1, 2))
        assert cf.shift().shift() == CFExpansion(0, (), (2, 1))


@pytest.mark.unit
class TestNotation:
    """Test suite for continued fraction notation."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("[3; 7, 16]", CFExpansion(3, (7, 16))),
            ("[1; (2)]", CFExpansion(1, (), (2,))),
            ("[0; 3 | (1, 2)]", CFExpansion(0, (3,), (1, 2))),
            ("[4]", CFExpansion(4)),
        ],
    )
    def test_parse_cf(self, text, expected):
        assert parse_cf(text) == expected
        assert parse_cf(format_cf(expected)) == expected

    @pytest.mark.parametrize("text", ["3; 7", "[; 1]", "[1; ()]", "[1; 2 | 3]", "[1; a]"])
    def test_parse_cf_rejects(self, text):
        with pytest.raises(ValueParseError):
            parse_cf(text)

    def test_format_terms(self):
        assert format_terms([1, 1, 1], truncated=True) == "[1; 1, 1, …]"
        assert format_terms([3, 7, 16], truncated=False) == "[3; 7, 16]"
        assert format_terms([2], truncated=False) == "[2]"


@pytest.mark.unit
class TestIntervalMaps:
    """Test suite for the Gauss and Farey maps."""

    def test_gauss_map(self):
        assert gauss_map(Fraction(3, 7)) == Fraction(1, 3)
        assert gauss_map(Fraction(0)) == Fraction(0)
        assert gauss_map(GOLDEN - 1) == GOLDEN - 1

    def test_gauss_map_domain(self):
        with pytest.raises(DomainError):
            gauss_map(Fraction(1))

    def test_farey_map_branches(self):
        assert farey_map(Fraction(1, 3)) == Fraction(1, 2)
        assert farey_map(Fraction(2, 3)) == Fraction(1, 2)
        assert farey_map(Fraction(1, 2)) == Fraction(1)

    def test_farey_orbit_reaches_zero(self):
        orbit = farey_orbit(Fraction(2, 5), 4)
        assert orbit == [
            Fraction(2, 5),
            Fraction(2, 3),
            Fraction(1, 2),
            Fraction(1),
            Fraction(0),
        ]

    def test_farey_accelerate_half(self):
        assert farey_accelerate(Fraction(1, 2)) == (2, Fraction(0))

    def test_acceleration_matches_gauss_on_rationals(self):
        """The first right-branch step of the Farey orbit is one Gauss step."""
        for x in random_rationals(1000, seed=7):
            digit, image = farey_accelerate(x)
            assert digit == math.floor(1 / x)
            assert image == gauss_map(x)

    def test_shift_conjugacy(self):
        """expand(gauss_map(x)) is the digit shift of expand(x)."""
        values = random_rationals(250, seed=21) + random_unit_surds(250, seed=22)
        for x in values:
            assert expand(gauss_map(x)) == expand(x).shift()

    def test_iterated_acceleration_reproduces_expansion(self):
        for x in random_rationals(1000, seed=8, max_denominator=10_000):
            digits, state = [], x
            while state != 0:
                digit, state = farey_accelerate(state)
                digits.append(digit)
            assert tuple(digits) == expand(x).preperiod

    def test_acceleration_on_surd(self):
        assert farey_accelerate(SQRT2 - 1) == (2, SQRT2 - 1)


@pytest.mark.unit
class TestApproximation:
    """Test suite for convergents, mediants and best approximations."""

    def test_convergents_of_sqrt2(self):
        values = [c.value for c in convergents(expand(SQRT2), 6)]
        assert values == [
            Fraction(1),
            Fraction(3, 2),
            Fraction(7, 5),
            Fraction(17, 12),
            Fraction(41, 29),
            Fraction(99, 70),
        ]

    def test_convergent_determinant(self):
        cs = convergents(expand(QuadSurd(0, 1, 1, 7)), 10)
        for older, newer in zip(cs, cs[1:]):
            assert newer.p * older.q - newer.q * older.p == (-1) ** older.index

    def test_mediants(self):
        mediants = mediant_convergents(CFExpansion(0, (3, 2)), 3)
        assert [(m.level, m.a, m.value) for m in mediants] == [
            (1, 1, Fraction(1)),
            (1, 2, Fraction(1, 2)),
            (2, 1, Fraction(1, 4)),
        ]

    def test_convergents_are_best_approximations(self):
        x = QuadSurd(0, 1, 1, 7)
        for c in convergents(expand(x), 8)[1:]:
            assert is_best_approx_first_kind(x, c.value)

    def test_best_approximations_are_convergents_or_mediants(self):
        x = QuadSurd(0, 1, 1, 2)
        cf = expand(x)
        known = {c.value for c in convergents(cf, 8)}
        known |= {m.value for m in mediant_convergents(cf, 8)}
        found = best_approximations(x, 300)
        assert Fraction(4, 3) in found
        assert set(found) <= known

    def test_convergent_quality(self):
        """|x - p_n/q_n| < 1/(q_n q_n+1) for every convergent with a successor."""
        targets = [SQRT2, GOLDEN, QuadSurd(0, 1, 1, 7)] + random_unit_surds(20, seed=31)
        for x in targets:
            cs = convergents(expand(x), 25)
            for current, following in zip(cs, cs[1:]):
                assert abs(x - current.value) < Fraction(1, current.q * following.q)

    def test_legendre_criterion(self):
        """|x - p/q| < 1/(2q^2) with q <= 10^4 forces p/q to be a convergent."""
        targets = [SQRT2, GOLDEN, QuadSurd(0, 1, 1, 7), QuadSurd(1, 1, 1, 3)]
        targets += random_unit_surds(16, seed=12)
        known = {x: {c.value for c in convergents(expand(x), 60)} for x in targets}
        rng = np.random.default_rng(11)
        checked = 0
        for _ in range(1000):
            x = targets[int(rng.integers(len(targets)))]
            # log-uniform denominators so that close approximations actually occur
            q = int(10 ** rng.uniform(0, 4))
            p = math.floor(x * q) + int(rng.integers(0, 2))
            candidate = Fraction(p, q)
            if abs(x - candidate) < Fraction(1, 2 * candidate.denominator**2):
                assert candidate in known[x]
                checked += 1
        assert checked > 20
