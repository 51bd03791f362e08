from fractions import Fraction

import numpy as np
import pytest
from sympy import Poly, Rational, gcd, residue, series, symbols

from models.errors import PoleInAnnulus
from models.annulusForm import Skeleton
from models.puiseux import PuiseuxScalar
from models.rationalForm import Polynomial, RationalDifferential


Z, W = symbols("z w")


def _fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _coefficients(poly: Poly):
    return [_fraction(value) for value in reversed(poly.all_coeffs())]


def random_case(seed: int):
    """f = (a + b z) / prod (z - r_i)^m_i con raíces racionales distintas"""
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, 4))
    candidates = [Rational(int(p), int(q)) for p in range(-3, 4) for q in (1, 2)]
    picks = rng.choice(len(candidates), size=count * 3, replace=True)
    roots = []
    for index in picks:
        if candidates[index] not in roots:
            roots.append(candidates[index])
        if len(roots) == count:
            break
    den = Poly(1, Z)
    for root in roots:
        den = den * Poly(Z - root, Z) ** int(rng.integers(1, 3))
    a = int(rng.integers(1, 5)) * (1 if rng.integers(0, 2) else -1)
    b = int(rng.integers(-2, 3))
    num = Poly(a + b * Z, Z)
    if gcd(num, den).degree() > 0:
        num = Poly(a, Z)
    return num, den, roots


SEEDS = list(range(24))


class TestResidueOracle:

    @pytest.mark.parametrize("seed", SEEDS)
    def test_finite_residues_match_sympy(self, seed):
        num, den, roots = random_case(seed)
        form = RationalDifferential.from_coefficients(_coefficients(num), _coefficients(den))
        expression = num.as_expr() / den.as_expr()
        for root in roots:
            expected = _fraction(residue(expression, Z, root))
            computed = form.residue_at(PuiseuxScalar.constant(_fraction(root)))
            assert computed.coefficient_at(0) == expected

    @pytest.mark.parametrize("seed", SEEDS)
    def test_residue_theorem(self, seed):
        num, den, roots = random_case(seed)
        form = RationalDifferential.from_coefficients(_coefficients(num), _coefficients(den))
        total = form.residue_at(None)
        for root in roots:
            total = total + form.residue_at(PuiseuxScalar.constant(_fraction(root)))
        assert total.is_exact_zero()

    @pytest.mark.parametrize("seed", SEEDS)
    def test_laurent_coefficients_match_sympy(self, seed):
        num, den, roots = random_case(seed)
        form = RationalDifferential.from_coefficients(_coefficients(num), _coefficients(den))
        root = roots[0]
        expansion = form.local_expansion(PuiseuxScalar.constant(_fraction(root)), 5)
        shifted = (num.as_expr() / den.as_expr()).subs(Z, root + W)
        reference = series(shifted, W, 0, expansion.start + 4).removeO()
        for index in range(expansion.start, expansion.start + 5):
            expected = _fraction(reference.coeff(W, index - 1))
            assert expansion.coefficient(index).coefficient_at(0) == expected


class TestRationalDifferential:

    def test_simple_poles_have_prescribed_residues(self):
        t = PuiseuxScalar.monomial(1, 1)
        points = [(PuiseuxScalar.constant(0), t), (PuiseuxScalar.constant(1), -t)]
        eta = RationalDifferential.simple_poles(points)
        assert eta.residue_at(points[0][0]) == t
        assert eta.residue_at(points[1][0]) == -t
        assert eta.gauss_valuation() == 1

    def test_gauss_valuation_of_scaled_form(self):
        form = RationalDifferential.from_coefficients([1], [0, -1, 1]).scale(PuiseuxScalar.monomial(3, -2))
        assert form.gauss_valuation() == -2

    def test_expansion_at_infinity(self):
        # dz/(z(z-1)) = -(w + w^2 + ...) dw/w en w = 1/z
        form = RationalDifferential.from_coefficients([1], [0, -1, 1])
        expansion = form.local_expansion(None, 3)
        assert expansion.start == 1
        assert [expansion.coefficient(i).coefficient_at(0) for i in (1, 2, 3)] == [-1, -1, -1]

    def test_pole_inside_chart(self):
        # El polo t^(1/2) cae dentro del anillo [1/4, 3/4] alrededor de 0
        den = Polynomial((PuiseuxScalar.monomial(-1, Fraction(1, 2)), PuiseuxScalar.one()))
        form = RationalDifferential(Polynomial((PuiseuxScalar.one(),)), den)
        expansion = form.local_expansion(PuiseuxScalar.zero(), 4)
        with pytest.raises(PoleInAnnulus):
            expansion.to_annulus(Skeleton(Fraction(1, 2), start=Fraction(1, 4)))


class TestAnnulusExpansion:
    """dz / (z (z - t) (z - 1)): los polos 0 y t comparten el disco interior del anillo en 0"""

    PRECISION = Fraction(6)
    CHART = Skeleton(Fraction(1, 4), start=Fraction(1, 4))

    @staticmethod
    def _form() -> RationalDifferential:
        t = PuiseuxScalar.monomial(1, 1)
        den = Polynomial.from_roots([PuiseuxScalar.zero(), t, PuiseuxScalar.one()])
        return RationalDifferential(Polynomial((PuiseuxScalar.one(),)), den)

    @staticmethod
    def _geometric(sign: int) -> PuiseuxScalar:
        # sign * (1 + t + t^2 + ...)
        return PuiseuxScalar.from_terms([(Fraction(k), Fraction(sign)) for k in range(8)], Fraction(8))

    def test_residue_adds_the_inner_poles(self):
        form = self._form()
        value = form.annulus_residue(PuiseuxScalar.zero(), self.CHART, self.PRECISION)
        # Res_0 + Res_t = 1/t + 1/(t (t - 1)) = 1/(t - 1)
        assert value.agrees_with(self._geometric(-1))
        assert value.coefficient_at(0) == -1
        assert not value.is_exact()
        assert form.residue_at(PuiseuxScalar.zero()).val() == -1

    def test_laurent_coefficients_on_the_annulus(self):
        expansion = self._form().annulus_expansion(PuiseuxScalar.zero(), self.CHART, 3, self.PRECISION)
        # a_i = -(1 + t + ...) para i >= -1 y a_-2 = -(t + t^2 + ...)
        assert expansion.series.coefficient(-1).agrees_with(self._geometric(-1))
        assert expansion.series.coefficient(1).agrees_with(self._geometric(-1))
        assert expansion.series.coefficient(-2).val() == 1

    def test_lone_pole_keeps_the_exact_path(self):
        form = self._form()
        value = form.annulus_residue(PuiseuxScalar.one(), self.CHART, self.PRECISION)
        assert value.agrees_with(form.residue_at(PuiseuxScalar.one(), self.PRECISION))
        assert value.agrees_with(self._geometric(1))

    def test_residues_along_annuli_sum_to_zero(self):
        form = self._form()
        total = PuiseuxScalar.zero()
        for point in (PuiseuxScalar.zero(), PuiseuxScalar.one(), None):
            total = total + form.annulus_residue(point, self.CHART, self.PRECISION)
        assert total.is_zero()

    def test_pole_on_the_annulus(self):
        den = Polynomial((PuiseuxScalar.monomial(-1, Fraction(1, 2)), PuiseuxScalar.one()))
        form = RationalDifferential(Polynomial((PuiseuxScalar.one(),)), den)
        chart = Skeleton(Fraction(1, 2), start=Fraction(1, 4))
        with pytest.raises(PoleInAnnulus):
            form.annulus_expansion(PuiseuxScalar.zero(), chart, 4)
        with pytest.raises(PoleInAnnulus):
            form.annulus_residue(PuiseuxScalar.zero(), chart)
