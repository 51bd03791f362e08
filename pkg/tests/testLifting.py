from fractions import Fraction

import pytest

from models.errors import IncompatibleBinomials, InvalidDatum, ResidueMismatch, UnsupportedGenus
from models.puiseux import PuiseuxScalar
from services.liftingService import (
    LiftingService, gluing_constant, lift, lift_vertex, local_lift, residue_correct
)
from services.tropicalizationService import compare_data, tropicalize
from utils.helpers import fixture_path, list_fixtures


GENUS_ZERO = [name for name in list_fixtures() if not name.startswith("bad_") and name != "genus1_abstract"]


def t(exponent, coeff=1):
    return PuiseuxScalar.monomial(coeff, exponent)


class TestLocalLift:
    def test_lift_scales_by_level(self, load_datum):
        datum = load_datum("two_vertex_slope1")
        piece = local_lift(datum.complex.vertex("y"), datum.reductions["y"], datum.complex)
        assert piece.form.gauss_valuation() == -1
        assert piece.marked["c"] == PuiseuxScalar.zero()
        assert piece.marked["f"] is None

    def test_leg_and_edge_charts(self, load_datum):
        datum = load_datum("two_vertex_slope1")
        piece = local_lift(datum.complex.vertex("x"), datum.reductions["x"], datum.complex)
        assert (piece.annuli["a"].tail, piece.annuli["a"].head) == (Fraction(1, 4), Fraction(1, 2))
        assert (piece.annuli["e"].tail, piece.annuli["e"].head) == (Fraction(3, 8), Fraction(5, 8))

    def test_genus_one_is_unsupported(self, load_datum):
        datum = load_datum("genus1_abstract")
        with pytest.raises(UnsupportedGenus):
            local_lift(datum.complex.vertex("v"), datum.reductions["v"], datum.complex)


class TestResidueCorrection:
    def test_correction_reaches_targets(self, load_datum):
        result = lift_vertex(load_datum("two_vertex_slope0"), "x")
        assert result.matches()
        assert result.achieved["e"].agrees_with(PuiseuxScalar.from_terms({0: -1, 1: 1}))
        assert result.piece.form.gauss_valuation() == 0

    def test_boundary_vertex_uses_auxiliary_point(self, load_datum):
        result = lift_vertex(load_datum("boundary_vertex"), "v")
        assert result.matches()
        aux = result.piece.extra_points[0]
        assert result.piece.form.residue_at(aux).agrees_with(PuiseuxScalar.from_terms({0: 1, 1: -1}))

    def test_visible_change_is_rejected(self, load_datum):
        datum = load_datum("p1_three_legs")
        piece = local_lift(datum.complex.vertex("v"), datum.reductions["v"], datum.complex)
        targets = {"l0": PuiseuxScalar.constant(-2), "l1": PuiseuxScalar.constant(2), "linf": PuiseuxScalar.zero()}
        with pytest.raises(ResidueMismatch):
            residue_correct(piece, targets)

    def test_unbalanced_correction_is_rejected(self, load_datum):
        datum = load_datum("p1_three_legs")
        piece = local_lift(datum.complex.vertex("v"), datum.reductions["v"], datum.complex)
        targets = {
            "l0": PuiseuxScalar.from_terms({0: -1, 1: 1}),
            "l1": PuiseuxScalar.one(),
            "linf": PuiseuxScalar.zero()
        }
        with pytest.raises(ResidueMismatch):
            residue_correct(piece, targets)

    def test_matching_residues_leave_piece(self, load_datum):
        datum = load_datum("p1_three_legs")
        piece = local_lift(datum.complex.vertex("v"), datum.reductions["v"], datum.complex)
        assert residue_correct(piece, dict(datum.re)) is piece


class TestGluingConstant:
    def test_zero_index(self):
        assert gluing_constant(PuiseuxScalar.one(), PuiseuxScalar.one(), 0, 3) == t(3)

    def test_positive_index(self):
        assert gluing_constant(PuiseuxScalar.one(), t(2, -1), 2, 1) == t(1)

    def test_negative_index(self):
        assert gluing_constant(PuiseuxScalar.one(), t(-2, -1), -2, 1) == t(1)

    def test_wrong_valuation(self):
        with pytest.raises(IncompatibleBinomials):
            gluing_constant(PuiseuxScalar.one(), t(2, -1), 2, 2)

    @pytest.mark.parametrize("name,expected", [
        ("two_vertex_slope1", t(1, -1)),
        ("two_vertex_slope0", t(2)),
        ("two_vertex_slope_neg1", t(Fraction(1, 2), -1)),
        ("two_vertex_slope2", t(1)),
    ])
    def test_constants_of_lifted_models(self, load_datum, name, expected):
        gluing = lift(load_datum(name)).gluings["e"]
        assert gluing.constant.agrees_with(expected)
        assert gluing.is_consistent()


class TestRoundtrip:
    @pytest.mark.parametrize("name", GENUS_ZERO)
    def test_lift_then_tropicalize(self, load_datum, name):
        datum = load_datum(name)
        model = lift(datum)
        assert compare_data(datum, tropicalize(model)) == []
        assert set(model.legs) == {leg.id for leg in datum.complex.legs()}

    def test_invalid_datum_is_not_lifted(self, load_datum):
        with pytest.raises(InvalidDatum):
            lift(load_datum("bad_condition2"))

    def test_genus_one_is_not_lifted(self, load_datum):
        with pytest.raises(UnsupportedGenus):
            lift(load_datum("genus1_abstract"))


class TestLiftingService:
    def test_lift_file(self, tmp_path):
        output = tmp_path / "model.json"
        result = LiftingService.lift_file(fixture_path("p1_three_legs"), str(output))
        assert result["exit_code"] == 0
        assert output.exists()
        assert set(result["document"]["pieces"]) == {"v"}

    @pytest.mark.parametrize("name,code", [
        ("bad_condition2", 1),
        ("genus1_abstract", 2),
        ("bad_structure", 2),
    ])
    def test_lift_file_errors(self, name, code):
        result = LiftingService.lift_file(fixture_path(name))
        assert not result["success"]
        assert result["exit_code"] == code

    def test_roundtrip_file(self):
        result = LiftingService.roundtrip_file(fixture_path("three_vertex_chain"))
        assert result["exit_code"] == 0
        assert result["document"] == {"equal": True, "differences": []}
