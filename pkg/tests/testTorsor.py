from fractions import Fraction

import pytest

from models.annulusForm import AnnulusSeries, Skeleton
from models.errors import NotDominant, StructuralError, TruncationTooSmall
from models.formalCoordinate import FormalForm, GnElement, GradedCoordinate
from models.puiseux import PuiseuxScalar
from services.liftingService import lift
from services.torsorService import (
    TorsorService, act, coordinate_reduction, formal_identity_holds, gn_compose, gn_inverse, phi_e,
    random_element, random_form, run_torsor_suite, solve_transition, torsor_base, verify_group_law
)


TRUNCATION = 8


class TestGroup:
    def test_composition_is_associative(self, rng):
        for l in (1, 2, 3):
            a, b, c = random_element(rng), random_element(rng), random_element(rng)
            assert gn_compose(gn_compose(a, b, l), c, l) == gn_compose(a, gn_compose(b, c, l), l)

    def test_inverse(self, rng):
        for l in (1, 2, 3):
            sigma = random_element(rng)
            assert gn_compose(sigma, gn_inverse(sigma, l), l) == GnElement.identity()
            assert gn_compose(gn_inverse(sigma, l), sigma, l) == GnElement.identity()

    def test_zero_lambda_is_rejected(self):
        with pytest.raises(StructuralError):
            GnElement(0, 1)


class TestAction:
    def test_identity_fixes_coordinate(self):
        form = FormalForm(-2, 3, Fraction(1, 2))
        coordinate = act(GnElement.identity(), form, TRUNCATION)
        assert coordinate.coeffs == (1,) + (0,) * (TRUNCATION - 1)
        assert coordinate.form == form

    def test_pure_scaling(self):
        coordinate = act(GnElement(2), FormalForm(-1, 3, 1), 6)
        assert coordinate.coeffs == (2, 0, 0, 0, 0, 0)
        assert coordinate.form == FormalForm(-1, 6, 1)

    def test_translation_part_sets_coefficient(self):
        form = FormalForm(-2, 1, 1)
        coordinate = act(GnElement(3, Fraction(1, 3)), form, TRUNCATION)
        assert coordinate.coefficient(1) == 3
        assert coordinate.coefficient(2) == 0
        assert coordinate.coefficient(3) == 1

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_action_gives_good_coordinates(self, rng, l):
        for _ in range(10):
            form = random_form(rng, l)
            coordinate = act(random_element(rng), form, TRUNCATION)
            assert formal_identity_holds(coordinate, form)

    def test_non_negative_index_is_linear(self):
        coordinate = act(GnElement(3, 5), FormalForm(2, 1), 4)
        assert coordinate.coeffs == (3, 0, 0, 0)
        assert coordinate.form.c_n == Fraction(1, 9)

    def test_truncation_must_exceed_unipotent_degree(self):
        with pytest.raises(TruncationTooSmall):
            act(GnElement(1, 1), FormalForm(-2, 1), 3)


class TestTorsorLaws:
    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_group_law(self, rng, l):
        for _ in range(10):
            assert verify_group_law(random_form(rng, l), random_element(rng), random_element(rng), TRUNCATION)

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_transition_is_unique(self, rng, l):
        form = random_form(rng, l)
        sigma, other = random_element(rng), random_element(rng)
        first, second = act(sigma, form, TRUNCATION), act(other, form, TRUNCATION)

        assert solve_transition(first, second, form) == gn_compose(gn_inverse(sigma, l), other, l)
        assert solve_transition(first, first, form) == GnElement.identity()

    def test_transition_rejects_foreign_coordinates(self):
        form = FormalForm(-1, 1)
        first = act(GnElement(1), form, TRUNCATION)
        other = act(GnElement(1), FormalForm(-1, 2), TRUNCATION)
        with pytest.raises(StructuralError):
            solve_transition(first, other, form)

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_suite_passes(self, l):
        report = run_torsor_suite(l, 20, seed=l)
        assert report.passed
        assert len(report.by_check("group_law")) == 20
        assert len(report.by_check("transitivity")) == 20

    def test_suite_requires_negative_index(self):
        with pytest.raises(StructuralError):
            run_torsor_suite(0, 5)

    def test_service_exit_codes(self):
        assert TorsorService.torsor_check(2, 5, 1)["exit_code"] == 0
        assert TorsorService.torsor_check(0, 5, 1)["exit_code"] == 2


class TestEdgeMap:
    @pytest.fixture
    def model(self, load_datum):
        return lift(load_datum("two_vertex_slope1"))

    def test_grade_drops_by_edge_length(self, model):
        base = torsor_base(model, "e")
        image = phi_e(model, "e", base)
        assert image.grade == torsor_base(model, "f").grade - 1

    @staticmethod
    def _sides(model, edge_id):
        gluing = model.gluings.get(edge_id)
        if gluing is not None:
            return gluing.constant, gluing.tail_side, gluing.head_side
        gluing = next(entry for entry in model.gluings.values() if entry.opposite == edge_id)
        return gluing.constant, gluing.head_side, gluing.tail_side

    def test_equivariance(self, model, rng):
        # Si t pasa a c t en la cola, t' = C / t pasa a t' / c en la cabeza
        constant, near, far = self._sides(model, "e")
        base = torsor_base(model, "e", TRUNCATION)
        for _ in range(10):
            c = PuiseuxScalar.monomial(int(rng.integers(1, 6)) * int(rng.choice([-1, 1])),
                                       Fraction(int(rng.integers(-4, 5)), 2))
            graded = coordinate_reduction(near.change.coordinate() * c, TRUNCATION)
            assert graded == base.scaled(c.graded_reduction())

            head = coordinate_reduction(far.change.coordinate() * c.inv(), TRUNCATION)
            expected = head.scaled(constant.graded_reduction().inverse())
            assert phi_e(model, "e", graded, TRUNCATION) == expected

    def test_edge_without_gluing(self, model):
        with pytest.raises(StructuralError):
            torsor_base(model, "a")

    def test_element_outside_torsor(self, load_datum):
        model = lift(load_datum("two_vertex_slope2"))
        base = torsor_base(model, "e")
        jet = list(base.jet) + [Fraction(0)] * max(0, 2 - len(base.jet))
        jet[1] += 1
        with pytest.raises(StructuralError):
            phi_e(model, "e", GradedCoordinate(base.grade, base.coeff, tuple(jet)))


class TestCoordinateReduction:
    def test_grade_and_jet(self):
        series = AnnulusSeries({1: PuiseuxScalar.monomial(2, 1), 2: PuiseuxScalar.monomial(4, 1)}, Skeleton(1))
        reduced = coordinate_reduction(series, 4)
        assert reduced == GradedCoordinate(1, 2, (1, 2, 0, 0))
        assert reduced.quotient_jet(-2) == (1, 2)
        assert reduced.quotient_jet(3) == (1,)

    def test_constant_term_must_be_smaller(self):
        series = AnnulusSeries({0: PuiseuxScalar.one(), 1: PuiseuxScalar.monomial(1, 1)}, Skeleton(1))
        with pytest.raises(NotDominant):
            coordinate_reduction(series)

    def test_missing_linear_term(self):
        series = AnnulusSeries({2: PuiseuxScalar.monomial(1, 1)}, Skeleton(1))
        with pytest.raises(NotDominant):
            coordinate_reduction(series)


@pytest.mark.slow
class TestTorsorSuiteAtDepth:
    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_hundred_trials(self, l):
        report = run_torsor_suite(l, 100, seed=l, truncation=12)
        assert report.passed
        assert len(report.by_check("group_law")) == 100
        assert len(report.by_check("transitivity")) == 100

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_transition_recovers_the_acting_element(self, rng, l):
        for _ in range(100):
            form = random_form(rng, l)
            sigma = random_element(rng)
            first = act(GnElement.identity(), form, 12)
            assert solve_transition(first, act(sigma, form, 12), form) == sigma
