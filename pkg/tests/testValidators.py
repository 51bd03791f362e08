import json

import pytest

from utils.helpers import fixture_path
from utils.validators import (
    validate_datum_json, validate_exponent, validate_model_json, validate_rational, validate_scalar
)


def _document(name):
    with open(fixture_path(name), "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.mark.parametrize("value", ["3", "-7", "1/2", " -3 / 4 ", 5])
def test_valid_rationals(value):
    ok, _ = validate_rational(value)
    assert ok


@pytest.mark.parametrize("value", ["", "abc", "1.5", "1/0", "2/-3", True, None, [1, 2]])
def test_invalid_rationals(value):
    ok, message = validate_rational(value)
    assert not ok
    assert message


def test_exponent_accepts_infinity():
    assert validate_exponent("inf")[0]
    assert validate_exponent("3/2")[0]
    assert not validate_exponent("-inf")[0]


class TestScalars:
    def test_plain_rational(self):
        assert validate_scalar("-1/3")[0]

    def test_terms_with_precision(self):
        assert validate_scalar({"terms": [["1/2", "3"], ["1", "-1"]], "prec": "2"})[0]

    def test_missing_precision_means_exact(self):
        assert validate_scalar({"terms": [["0", "1"]]})[0]

    def test_malformed_terms(self):
        assert not validate_scalar({"terms": "1"})[0]
        assert not validate_scalar({"terms": [["1"]]})[0]
        assert not validate_scalar({"terms": [["x", "1"]]})[0]

    def test_invalid_precision(self):
        ok, message = validate_scalar({"terms": [], "prec": "mucho"})
        assert not ok
        assert "Precisión" in message


class TestDocuments:
    def test_fixture_datum_is_well_formed(self):
        assert validate_datum_json(_document("two_vertex_slope1"))[0]

    def test_missing_section(self):
        document = _document("p1_three_legs")
        del document["re"]
        ok, message = validate_datum_json(document)
        assert not ok
        assert "re" in message

    def test_bad_edge_length(self):
        document = _document("p1_three_legs")
        document["edges"][0]["length"] = "largo"
        assert not validate_datum_json(document)[0]

    def test_legs_listed_apart(self):
        document = _document("p1_three_legs")
        document["legs"] = document.pop("edges")
        document["edges"] = []
        assert validate_datum_json(document)[0]

    def test_leg_with_finite_length(self):
        document = _document("p1_three_legs")
        document["legs"] = [dict(document["edges"].pop(), length="2")]
        ok, message = validate_datum_json(document)
        assert not ok
        assert "linf" in message

    def test_legs_must_be_a_list(self):
        document = _document("p1_three_legs")
        document["legs"] = {"l0": {}}
        assert not validate_datum_json(document)[0]

    def test_unknown_form_kind(self):
        document = _document("p1_three_legs")
        document["reductions"]["v"]["form"] = {"elliptic": {}}
        assert not validate_datum_json(document)[0]

    def test_bad_residue(self):
        document = _document("p1_three_legs")
        document["re"]["l0"] = "uno"
        ok, message = validate_datum_json(document)
        assert not ok
        assert "l0" in message

    def test_model_requires_pieces(self):
        ok, message = validate_model_json({"vertices": [], "edges": [], "gluings": {}, "legs": {}})
        assert not ok
        assert "pieces" in message

    def test_model_piece_fields(self):
        document = {
            "vertices": [], "edges": [], "gluings": {}, "legs": {},
            "pieces": {"v": {"num": [], "den": [], "marked": {}}}
        }
        ok, message = validate_model_json(document)
        assert not ok
        assert "annuli" in message
