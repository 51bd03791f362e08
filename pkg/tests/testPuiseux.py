from fractions import Fraction

import pytest

from models.errors import DivisionByZeroError, NonSplitRoot, NotSmall, PrecisionExhausted
from models.puiseux import INF, GradedScalar, PuiseuxScalar, rational_root, to_exponent, to_rational


def t(exponent, coeff=1):
    return PuiseuxScalar.monomial(coeff, exponent)


class TestConversions:

    def test_to_rational_accepts_strings_and_ints(self):
        assert to_rational("3/4") == Fraction(3, 4)
        assert to_rational(" -2 ") == Fraction(-2)
        assert to_rational(5) == Fraction(5)

    def test_to_rational_rejects_booleans_and_floats(self):
        with pytest.raises(TypeError):
            to_rational(True)
        with pytest.raises(TypeError):
            to_rational(0.5)

    def test_to_exponent_infinity(self):
        assert to_exponent("inf") == INF
        assert to_exponent("1/2") == Fraction(1, 2)

    def test_rational_root(self):
        assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
        assert rational_root(Fraction(-8), 3) == Fraction(-2)
        assert rational_root(Fraction(4, 9), 2) == Fraction(2, 3)

    def test_rational_root_without_rational_solution(self):
        with pytest.raises(NonSplitRoot):
            rational_root(Fraction(2), 2)
        with pytest.raises(NonSplitRoot):
            rational_root(Fraction(-4), 2)


class TestScalarArithmetic:

    def test_terms_are_merged_and_sorted(self):
        value = PuiseuxScalar.from_terms([(1, 2), (0, 1), (1, -2), (Fraction(1, 2), 3)])
        assert value.terms == ((Fraction(0), Fraction(1)), (Fraction(1, 2), Fraction(3)))

    def test_terms_beyond_precision_are_dropped(self):
        value = PuiseuxScalar.from_terms([(0, 1), (2, 1), (3, 1)], prec=2)
        assert value.terms == ((Fraction(0), Fraction(1)),)
        assert value.prec == 2

    def test_product_propagates_precision(self):
        value = PuiseuxScalar.from_terms([(0, 1)], prec=2) * t(1)
        assert value.terms == ((Fraction(1), Fraction(1)),)
        assert value.prec == 3

    def test_sum_takes_smallest_precision(self):
        value = PuiseuxScalar.from_terms([(0, 1)], prec=5) + PuiseuxScalar.from_terms([(1, 1)], prec=3)
        assert value.prec == 3
        assert value.val() == 0

    def test_inverse_of_one_minus_t(self):
        inverse = (1 - t(1)).inv(precision=5)
        assert inverse.prec == 5
        assert inverse.terms == tuple((Fraction(k), Fraction(1)) for k in range(5))

    def test_inverse_of_exact_zero(self):
        with pytest.raises(DivisionByZeroError):
            PuiseuxScalar.zero().inv()

    def test_division_by_monomial_is_exact(self):
        value = t(2, 6) / t(Fraction(1, 2), 3)
        assert value == t(Fraction(3, 2), 2)

    def test_nth_root_of_monomial(self):
        assert t(2, 4).nth_root(2) == t(1, 2)
        assert t(1, -27).nth_root(3) == t(Fraction(1, 3), -3)

    def test_nth_root_squares_back(self):
        value = t(0, 4) + t(1, 4)
        root = value.nth_root(2, precision=8)
        assert (root * root).agrees_with(value)

    def test_nth_root_needs_rational_leading_root(self):
        with pytest.raises(NonSplitRoot):
            (-t(2)).nth_root(2)

    def test_exp_and_log_are_inverse(self):
        small = t(1) + t(Fraction(3, 2), 2)
        recovered = small.exp_small(precision=6).log_unit()
        assert recovered.agrees_with(small)

    def test_exp_needs_positive_valuation(self):
        with pytest.raises(NotSmall):
            PuiseuxScalar.one().exp_small()

    def test_power(self):
        assert (1 + t(1)) ** 2 == PuiseuxScalar.from_terms([(0, 1), (1, 2), (2, 1)])
        assert (t(1, 2) ** -1) == t(-1, Fraction(1, 2))


class TestScalarQueries:

    def test_valuation(self):
        assert (t(Fraction(1, 3)) + t(2)).val() == Fraction(1, 3)
        assert PuiseuxScalar.zero().val() == INF
        assert PuiseuxScalar.zero_to(4).val() is None

    def test_leading_term_unknown(self):
        with pytest.raises(PrecisionExhausted):
            PuiseuxScalar.zero_to(3).leading()

    def test_coefficient_beyond_precision(self):
        value = PuiseuxScalar.from_terms([(0, 1)], prec=2)
        assert value.coefficient_at(1) == 0
        with pytest.raises(PrecisionExhausted):
            value.coefficient_at(2)

    def test_zero_predicates(self):
        assert PuiseuxScalar.zero().is_exact_zero()
        assert PuiseuxScalar.zero_to(3).is_zero()
        assert not PuiseuxScalar.zero_to(3).is_exact_zero()

    def test_ramification(self):
        assert (t(Fraction(1, 2)) + t(Fraction(1, 3))).ramification() == 6
        assert t(3).ramification() == 1

    def test_agrees_with_ignores_unknown_terms(self):
        approximate = PuiseuxScalar.from_terms([(0, 1), (1, 1)], prec=2)
        assert approximate.agrees_with(1 + t(1) + t(5))
        assert not approximate.agrees_with(1 - t(1))

    def test_text(self):
        value = PuiseuxScalar.from_terms([(0, 1), (1, -2)], prec=3)
        assert str(value) == "1 - 2*t + O(t^(3))"
        assert str(PuiseuxScalar.zero()) == "0"

    def test_norm_display(self):
        assert t(2).norm_display() == "10^(-2)"
        assert PuiseuxScalar.zero().norm_display() == "0"


class TestGradedReduction:

    def test_graded_reduction_keeps_leading_term(self):
        reduced = (t(Fraction(1, 2), 3) + t(1)).graded_reduction()
        assert reduced == GradedScalar(Fraction(1, 2), 3)

    def test_graded_reduction_is_multiplicative(self):
        a, b = t(1, 2) + t(2), t(-3, 5) + t(0, 7)
        assert (a * b).graded_reduction() == a.graded_reduction() * b.graded_reduction()

    def test_zero_and_inverse(self):
        assert PuiseuxScalar.zero().graded_reduction().is_zero()
        assert GradedScalar(2, 4).inverse() == GradedScalar(-2, Fraction(1, 4))
        with pytest.raises(DivisionByZeroError):
            GradedScalar.ZERO.inverse()
