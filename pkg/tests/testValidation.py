from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from models.curveComplex import ExplicitP1Form
from models.errors import InfiniteSlopeMismatch, StructuralError
from models.puiseux import PuiseuxScalar
from models.validationReport import FAIL, INDETERMINATE, PASS
from services.serializationService import JsonCodec
from services.validationService import (
    ValidationService, global_residue_check, grc_sides, level_function, reduction_divisor, scale_datum,
    subdivide_edge, validate
)
from utils.helpers import fixture_path, list_fixtures


VALID = [name for name in list_fixtures() if not name.startswith("bad_")]

FAILING = {
    "bad_condition1": ("log_order", "e"),
    "bad_condition2": ("residue_reduction", "l0"),
    "bad_condition3": ("harmonicity", "v"),
    "bad_condition4": ("negative_slope", "linf"),
    "bad_alternating": ("alternating", "e"),
    "bad_integer_slope": ("integer_slope", "e"),
    "bad_degree": ("degree", "v"),
    "bad_slope_zero_level": ("slope_zero_level", "a"),
    "bad_support": ("support", "v"),
    "bad_genus": ("explicit_genus", "v"),
    "bad_residue_theorem": ("residue_theorem", "v"),
}

# v por encima del corte 1/2, u en la frontera a distancia 2 y Re(e_op) con término t^(-1/2)
FAR_BOUNDARY = {
    "vertices": [
        {"id": "v", "vtype": "type2", "genus": 1},
        {"id": "m", "vtype": "type2", "genus": 1},
        {"id": "u", "vtype": "type2", "genus": 0, "boundary": True},
        {"id": "pa", "vtype": "type1"}
    ],
    "edges": [
        {"id": "e", "tail": "v", "head": "m", "length": "1", "opposite": "e_op"},
        {"id": "e_op", "tail": "m", "head": "v", "length": "1", "opposite": "e"},
        {"id": "g", "tail": "m", "head": "u", "length": "1", "opposite": "g_op"},
        {"id": "g_op", "tail": "u", "head": "m", "length": "1", "opposite": "g"}
    ],
    "legs": [{"id": "a", "tail": "v", "head": "pa", "length": "inf"}],
    "reductions": {
        "v": {"level": "1", "form": {"abstract": {"log_order": {"a": 1, "e": -1}}}},
        "m": {"level": "0", "form": {"abstract": {"log_order": {"e_op": 1, "g": 1}}}},
        "u": {"level": "0", "form": {"abstract": {"log_order": {"g_op": 0}}}}
    },
    "re": {"a": "0", "e": "0", "e_op": {"terms": [["-1/2", "1"]]}, "g": "0", "g_op": "0"}
}


def type2_graph(datum) -> nx.Graph:
    """Vértices de tipo 2 fuera de la frontera y las aristas acotadas entre ellos"""
    graph = nx.Graph()
    graph.add_nodes_from(vertex.id for vertex in datum.complex.type2_vertices() if not vertex.boundary)
    for edge in datum.complex.bounded_edges():
        if edge.tail in graph and edge.head in graph:
            graph.add_edge(edge.tail, edge.head)
    return graph


def connected_subsets(graph: nx.Graph):
    nodes = sorted(graph)
    for size in range(1, len(nodes) + 1):
        for subset in combinations(nodes, size):
            if nx.is_connected(graph.subgraph(subset)):
                yield subset


class TestValidate:
    @pytest.mark.parametrize("name", VALID)
    def test_valid_fixtures_pass(self, load_datum, name):
        report = validate(load_datum(name))
        assert report.passed, [record.to_dict() for record in report.failures()]

    @pytest.mark.parametrize("name,expected", sorted(FAILING.items()))
    def test_failing_fixture_reports_condition(self, load_datum, name, expected):
        check, location = expected
        report = validate(load_datum(name))
        assert not report.passed
        assert report.find(check, location).status == FAIL

    def test_every_bad_fixture_is_covered(self):
        assert set(list_fixtures("bad_")) == set(FAILING) | {"bad_structure"}

    def test_structural_error_is_raised(self, load_datum):
        with pytest.raises(StructuralError):
            load_datum("bad_structure")

    def test_unknown_residue_is_indeterminate(self, load_datum):
        datum = load_datum("p1_three_legs")
        re = dict(datum.re)
        re["linf"] = PuiseuxScalar.zero_to(5)
        report = validate(replace(datum, re=re))

        assert report.passed
        assert report.find("negative_slope", "linf").status == INDETERMINATE
        assert report.find("harmonicity", "v").status == INDETERMINATE
        assert report.find("residue_reduction", "linf").status == PASS

    def test_report_summary_counts_records(self, load_datum):
        report = validate(load_datum("p1_three_legs"))
        summary = report.summary()
        assert summary[FAIL] == 0
        assert sum(summary.values()) == len(report.records)
        assert report.to_dict()["passed"] is True


class TestLevelFunction:
    def test_slopes_and_interpolation(self, load_datum):
        datum = load_datum("two_vertex_slope1")
        levels = level_function(datum)

        assert levels.slopes == {
            "e": Fraction(1), "f": Fraction(-1), "a": Fraction(-1), "c": Fraction(0), "d": Fraction(0)
        }
        assert levels.value_at(datum.complex.edge("e"), Fraction(1, 2)) == Fraction(1, 2)
        assert levels.value_at(datum.complex.edge("f"), 1) == 0

    def test_fractional_slope_raises(self, load_datum):
        with pytest.raises(InfiniteSlopeMismatch):
            level_function(load_datum("bad_integer_slope"))


class TestGlobalResidueCondition:
    def test_component_above_threshold(self, load_datum):
        report = global_residue_check(load_datum("two_level_grc"), Fraction(1, 2))
        assert report.passed
        assert report.find("grc_equation", "x").status == PASS

    def test_whole_graph_below_every_level(self, load_datum):
        report = global_residue_check(load_datum("two_level_grc"), -1)
        assert report.find("grc_equation", "x+y").status == PASS

    def test_vanishing_without_positive_legs(self, load_datum):
        report = global_residue_check(load_datum("genus1_abstract"), -1)
        assert report.find("grc_equation", "v").status == PASS
        assert report.find("grc_vanishing", "v").status == PASS

    @pytest.mark.parametrize("threshold,components", [
        (Fraction(-1), ["w+x+y"]),
        (Fraction(1, 4), ["w"]),
        (Fraction(1), ["empty"]),
    ])
    def test_components_by_threshold(self, load_datum, threshold, components):
        report = global_residue_check(load_datum("three_vertex_chain"), threshold)
        assert [record.location for record in report.by_check("grc_equation")] == components
        assert report.passed


    @pytest.mark.parametrize("name", ["three_vertex_chain", "two_level_grc"])
    def test_identity_on_every_full_subgraph(self, load_datum, name):
        datum = load_datum(name)
        subsets = list(connected_subsets(type2_graph(datum)))
        assert len(subsets) >= 3
        for subset in subsets:
            lhs, rhs = grc_sides(datum, subset)
            assert (lhs - rhs).is_exact_zero(), subset

    @pytest.mark.parametrize("name", ["three_vertex_chain", "two_level_grc"])
    def test_components_match_enumeration(self, load_datum, name):
        datum = load_datum(name)
        graph = type2_graph(datum)
        levels = sorted({datum.level(vertex_id) for vertex_id in graph})
        thresholds = [levels[0] - 1] + levels + [(low + high) / 2 for low, high in zip(levels, levels[1:])]
        for threshold in thresholds:
            high = graph.subgraph([vertex_id for vertex_id in graph if datum.level(vertex_id) > threshold])
            maximal = [
                "+".join(subset) for subset in connected_subsets(high)
                if not any(graph.has_edge(other, member) for other in high if other not in subset for member in subset)
            ]
            report = global_residue_check(datum, threshold)
            records = report.by_check("grc_equation")
            assert sorted(record.location for record in records) == sorted(maximal or ["empty"])
            assert all(record.status == PASS for record in records)

    def test_far_boundary_does_not_exempt(self):
        datum = JsonCodec.datum_from_json(FAR_BOUNDARY)
        report = global_residue_check(datum, Fraction(1, 2))
        assert report.find("grc_vanishing", "v").status == FAIL

    def test_component_next_to_boundary_is_exempt(self):
        datum = JsonCodec.datum_from_json(FAR_BOUNDARY)
        report = global_residue_check(datum, -1)
        assert [record.location for record in report.by_check("grc_equation")] == ["m+v"]
        assert report.by_check("grc_vanishing") == []


class TestDatumOperations:
    def test_reduction_divisor(self, load_datum):
        divisor = reduction_divisor(load_datum("p1_three_legs"), "v")
        assert divisor["orders"] == {"l0": -1, "l1": -1, "linf": 0}
        assert divisor["degree"] == divisor["expected"] == -2

    def test_scale_datum_shifts_levels(self, load_datum):
        scaled = scale_datum(load_datum("p1_three_legs"), PuiseuxScalar.monomial(2, 1))
        assert scaled.level("v") == -1
        assert scaled.re["l0"] == PuiseuxScalar.monomial(-2, 1)
        assert validate(scaled).passed

    def test_subdivide_edge_with_positive_slope(self, load_datum):
        refined = subdivide_edge(load_datum("two_vertex_slope1"), "e", Fraction(1, 2))
        middle = refined.reductions["e_mid"]

        assert middle.level == Fraction(1, 2)
        assert middle.form.same_differential(ExplicitP1Form((1,), (0, 0, 1)))
        assert {"e_1", "e_2", "f_1", "f_2"} <= set(refined.complex.edges)
        assert "e" not in refined.complex.edges
        assert validate(refined).passed

    def test_subdivide_edge_with_zero_slope(self, load_datum):
        refined = subdivide_edge(load_datum("two_vertex_slope0"), "e", 1)
        middle = refined.reductions["e_mid"]

        assert middle.level == 0
        assert middle.form.same_differential(ExplicitP1Form((-1,), (0, 1)))
        assert refined.re["e_2"] == load_datum("two_vertex_slope0").re["e"]
        assert validate(refined).passed

    def test_subdivide_rejects_legs_and_endpoints(self, load_datum):
        datum = load_datum("two_vertex_slope1")
        with pytest.raises(StructuralError):
            subdivide_edge(datum, "a", 1)
        with pytest.raises(StructuralError):
            subdivide_edge(datum, "e", 1)


class TestValidationService:
    def test_validate_file_success(self):
        result = ValidationService.validate_file(fixture_path("p1_three_legs"))
        assert result["success"]
        assert result["exit_code"] == 0

    def test_validate_file_failure(self):
        result = ValidationService.validate_file(fixture_path("bad_condition2"))
        assert not result["success"]
        assert result["exit_code"] == 1
        assert result["report"].failures()

    def test_validate_file_structural_error(self):
        result = ValidationService.validate_file(fixture_path("bad_structure"))
        assert result["exit_code"] == 2

    def test_refine_file_writes_output(self, tmp_path):
        output = tmp_path / "refined.json"
        result = ValidationService.refine_file(fixture_path("two_vertex_slope0"), "e", Fraction(1), str(output))
        assert result["exit_code"] == 0
        assert output.exists()
        assert "e_mid" in result["document"]["reductions"]
