"""Formato JSON de escalares, datos, modelos e informes.

Los escalares se escriben como {"terms", "prec"} con racionales "p/q"; en la entrada
se acepta también un racional suelto. La salida se ordena por claves para que sea reproducible.
"""
import json
from typing import Any, Dict, List, Optional

from models.annulusForm import AnnulusForm, AnnulusSeries, CoordinateChange, GoodCoordinate, Skeleton
from models.curveComplex import (
    AbstractForm, CurveComplex, ExplicitP1Form, OrientedEdge, TropicalReductionDatum, Vertex, VertexReduction
)
from models.errors import StructuralError
from models.gluedModel import GluedModel, Gluing, LegExtension, StarPiece
from models.puiseux import INF, PuiseuxScalar, to_exponent, to_rational
from models.rationalForm import Polynomial, RationalDifferential
from utils.logger import app_logger
from utils.validators import validate_datum_json, validate_model_json, validate_rational, validate_scalar


class JsonCodec:
    """Conversión entre objetos del dominio y documentos JSON"""

    # Escalares
    @staticmethod
    def exponent_to_json(value) -> str:
        return "inf" if value == INF else str(value)

    @staticmethod
    def exponent_from_json(data):
        return to_exponent(data)

    @classmethod
    def scalar_to_json(cls, value: PuiseuxScalar) -> Dict[str, Any]:
        """Objeto {"terms": [[exponente, coeficiente], ...], "prec": exponente | "inf"}"""
        return {
            "terms": [[str(exponent), str(coeff)] for exponent, coeff in value.terms],
            "prec": cls.exponent_to_json(value.prec)
        }

    @classmethod
    def scalar_from_json(cls, data) -> PuiseuxScalar:
        ok, message = validate_scalar(data)
        if not ok:
            raise StructuralError(message)
        if not isinstance(data, dict):
            return PuiseuxScalar.constant(to_rational(data))
        terms = [(to_rational(exponent), to_rational(coeff)) for exponent, coeff in data.get("terms", [])]
        return PuiseuxScalar.from_terms(terms, cls.exponent_from_json(data.get("prec", "inf")))

    @classmethod
    def point_to_json(cls, point: Optional[PuiseuxScalar]):
        return "inf" if point is None else cls.scalar_to_json(point)

    @classmethod
    def point_from_json(cls, data) -> Optional[PuiseuxScalar]:
        if isinstance(data, str) and data.strip() == "inf":
            return None
        return cls.scalar_from_json(data)

    # Complejo y dato
    @classmethod
    def complex_to_json(cls, complex_: CurveComplex, split_legs: bool = False) -> Dict[str, Any]:
        """
        Vértices y aristas del complejo

        Args:
            complex_ (CurveComplex): Complejo a escribir
            split_legs (bool): Escribe las patas en una lista "legs" aparte

        Returns:
            Dict[str, Any]: {"vertices", "edges"} y, si se pide, "legs"
        """
        vertices = [
            {"id": vertex.id, "vtype": vertex.vtype, "genus": vertex.genus, "boundary": vertex.boundary}
            for vertex in sorted(complex_.vertices.values(), key=lambda v: v.id)
        ]
        edges, legs = [], []
        for edge in sorted(complex_.edges.values(), key=lambda e: e.id):
            entry = {
                "id": edge.id,
                "tail": edge.tail,
                "head": edge.head,
                "length": cls.exponent_to_json(edge.length)
            }
            if edge.opposite is not None:
                entry["opposite"] = edge.opposite
            (legs if split_legs and edge.is_leg else edges).append(entry)
        document = {"vertices": vertices, "edges": edges}
        if split_legs:
            document["legs"] = legs
        return document

    @classmethod
    def complex_from_json(cls, data: Dict[str, Any], legs: Optional[List[Dict[str, Any]]] = None) -> CurveComplex:
        """Complejo desde "vertices" y "edges", más las patas listadas aparte"""
        vertices = [
            Vertex(
                str(entry["id"]),
                entry.get("vtype", entry.get("type", "type2")),
                int(entry.get("genus", 0)),
                bool(entry.get("boundary", False))
            )
            for entry in data["vertices"]
        ]
        edges = [
            OrientedEdge(
                str(entry["id"]),
                str(entry["tail"]),
                str(entry["head"]),
                cls.exponent_from_json(entry["length"]),
                entry.get("opposite")
            )
            for entry in list(data["edges"]) + list(legs or [])
        ]
        return CurveComplex.build(vertices, edges)

    @staticmethod
    def reduction_to_json(reduction: VertexReduction) -> Dict[str, Any]:
        form = reduction.form
        if isinstance(form, ExplicitP1Form):
            body = {
                "p1": {
                    "num": [str(value) for value in form.num],
                    "den": [str(value) for value in form.den],
                    "marked": {key: str(point) for key, point in sorted(form.marked.items())},
                    "aux": None if form.aux is None else str(form.aux)
                }
            }
        else:
            body = {
                "abstract": {
                    "log_order": {key: value for key, value in sorted(form.log_orders.items())},
                    "residue": {key: str(value) for key, value in sorted(form.residues.items())}
                }
            }
        return {"level": str(reduction.level), "form": body}

    @staticmethod
    def reduction_from_json(data: Dict[str, Any]) -> VertexReduction:
        form = data["form"]
        if "p1" in form:
            body = form["p1"]
            reduced = ExplicitP1Form(
                tuple(to_rational(value) for value in body["num"]),
                tuple(to_rational(value) for value in body["den"]),
                dict(body.get("marked", {})),
                body.get("aux")
            )
        else:
            body = form["abstract"]
            reduced = AbstractForm(
                {key: int(value) for key, value in body["log_order"].items()},
                {key: to_rational(value) for key, value in body.get("residue", {}).items()}
            )
        return VertexReduction(to_rational(data["level"]), reduced)

    @classmethod
    def datum_to_json(cls, datum: TropicalReductionDatum) -> Dict[str, Any]:
        document = cls.complex_to_json(datum.complex, split_legs=True)
        document["reductions"] = {
            vertex_id: cls.reduction_to_json(reduction) for vertex_id, reduction in sorted(datum.reductions.items())
        }
        document["re"] = {edge_id: cls.scalar_to_json(value) for edge_id, value in sorted(datum.re.items())}
        return document

    @classmethod
    def datum_from_json(cls, data: Dict[str, Any]) -> TropicalReductionDatum:
        """
        Construye el dato desde su documento JSON

        Args:
            data (Dict[str, Any]): Documento con vertices, edges, legs opcional, reductions y re

        Returns:
            TropicalReductionDatum: Dato estructuralmente válido
        """
        ok, message = validate_datum_json(data)
        if not ok:
            raise StructuralError(message)
        complex_ = cls.complex_from_json(data, data.get("legs", []))
        reductions = {vertex_id: cls.reduction_from_json(entry) for vertex_id, entry in data["reductions"].items()}
        re = {edge_id: cls.scalar_from_json(value) for edge_id, value in data["re"].items()}
        return TropicalReductionDatum(complex_, reductions, re)

    # Anillos y coordenadas
    @classmethod
    def skeleton_to_json(cls, skeleton: Skeleton) -> Dict[str, Any]:
        return {
            "length": str(skeleton.length),
            "start": str(skeleton.start),
            "closed": list(skeleton.closed)
        }

    @staticmethod
    def skeleton_from_json(data: Dict[str, Any]) -> Skeleton:
        return Skeleton(to_rational(data["length"]), tuple(data.get("closed", (True, True))),
                        to_rational(data.get("start", "0")))

    @classmethod
    def series_to_json(cls, series: AnnulusSeries) -> Dict[str, Any]:
        return {
            "coeffs": [[index, cls.scalar_to_json(value)] for index, value in series.coeffs],
            "skeleton": cls.skeleton_to_json(series.skeleton),
            "window": list(series.window),
            "prec": [cls.exponent_to_json(value) for value in series.prec]
        }

    @classmethod
    def series_from_json(cls, data: Dict[str, Any]) -> AnnulusSeries:
        return AnnulusSeries(
            tuple((int(index), cls.scalar_from_json(value)) for index, value in data["coeffs"]),
            cls.skeleton_from_json(data["skeleton"]),
            tuple(data["window"]),
            tuple(cls.exponent_from_json(value) for value in data["prec"])
        )

    @classmethod
    def annulus_form_from_json(cls, data: Dict[str, Any]) -> AnnulusForm:
        """
        Forma sobre un anillo desde su documento

        Args:
            data (Dict[str, Any]): {"L", "closed", "coeffs", "window"} con "prec" opcional,
                o una serie escrita por series_to_json (suelta o bajo "series")

        Returns:
            AnnulusForm: La forma series * ds/s
        """
        if "series" in data:
            data = data["series"]
        if "L" not in data:
            return AnnulusForm(cls.series_from_json(data))
        ok, message = validate_rational(data["L"])
        if not ok:
            raise StructuralError(f"Longitud del anillo: {message}")
        skeleton = Skeleton(to_rational(data["L"]), tuple(data.get("closed", (True, True))))
        window = data.get("window")
        return AnnulusForm(AnnulusSeries(
            tuple((int(index), cls.scalar_from_json(value)) for index, value in data["coeffs"]),
            skeleton,
            tuple(window) if window is not None else None,
            tuple(cls.exponent_from_json(value) for value in data.get("prec", ("inf", "inf")))
        ))

    @classmethod
    def good_coordinate_to_json(cls, coordinate: GoodCoordinate) -> Dict[str, Any]:
        return {
            "n": coordinate.n,
            "c_n": cls.scalar_to_json(coordinate.c_n),
            "c_0": cls.scalar_to_json(coordinate.c_0),
            "iterations": coordinate.iterations,
            "gaps": [cls.exponent_to_json(value) for value in coordinate.gaps],
            "precision": str(coordinate.precision),
            "unit": cls.series_to_json(coordinate.change.unit)
        }

    @classmethod
    def good_coordinate_from_json(cls, data: Dict[str, Any]) -> GoodCoordinate:
        return GoodCoordinate(
            CoordinateChange(cls.series_from_json(data["unit"])),
            int(data["n"]),
            cls.scalar_from_json(data["c_n"]),
            cls.scalar_from_json(data["c_0"]),
            int(data["iterations"]),
            tuple(cls.exponent_from_json(value) for value in data["gaps"]),
            to_rational(data["precision"])
        )

    # Modelos
    @classmethod
    def piece_to_json(cls, piece: StarPiece) -> Dict[str, Any]:
        return {
            "num": [cls.scalar_to_json(value) for value in piece.form.num.coeffs],
            "den": [cls.scalar_to_json(value) for value in piece.form.den.coeffs],
            "marked": {key: cls.point_to_json(point) for key, point in sorted(piece.marked.items())},
            "annuli": {key: cls.skeleton_to_json(skeleton) for key, skeleton in sorted(piece.annuli.items())},
            "extra_points": [cls.point_to_json(point) for point in piece.extra_points]
        }

    @classmethod
    def piece_from_json(cls, vertex_id: str, data: Dict[str, Any]) -> StarPiece:
        form = RationalDifferential(
            Polynomial(tuple(cls.scalar_from_json(value) for value in data["num"])),
            Polynomial(tuple(cls.scalar_from_json(value) for value in data["den"]))
        )
        return StarPiece(
            vertex_id,
            form,
            {key: cls.point_from_json(point) for key, point in data["marked"].items()},
            {key: cls.skeleton_from_json(skeleton) for key, skeleton in data["annuli"].items()},
            tuple(cls.point_from_json(point) for point in data.get("extra_points", []))
        )

    @classmethod
    def model_to_json(cls, model: GluedModel) -> Dict[str, Any]:
        document = cls.complex_to_json(model.complex)
        document["pieces"] = {
            vertex_id: cls.piece_to_json(piece) for vertex_id, piece in sorted(model.pieces.items())
        }
        document["gluings"] = {
            edge_id: {
                "opposite": gluing.opposite,
                "constant": cls.scalar_to_json(gluing.constant),
                "tail_side": cls.good_coordinate_to_json(gluing.tail_side),
                "head_side": cls.good_coordinate_to_json(gluing.head_side)
            }
            for edge_id, gluing in sorted(model.gluings.items())
        }
        document["legs"] = {
            edge_id: cls.good_coordinate_to_json(leg.coordinate) for edge_id, leg in sorted(model.legs.items())
        }
        return document

    @classmethod
    def model_from_json(cls, data: Dict[str, Any]) -> GluedModel:
        """
        Construye el modelo pegado desde su documento JSON

        Args:
            data (Dict[str, Any]): Documento escrito por model_to_json

        Returns:
            GluedModel: Modelo con sus invariantes comprobados
        """
        ok, message = validate_model_json(data)
        if not ok:
            raise StructuralError(message)
        complex_ = cls.complex_from_json(data)
        pieces = {vertex_id: cls.piece_from_json(vertex_id, entry) for vertex_id, entry in data["pieces"].items()}
        gluings = {
            edge_id: Gluing(
                edge_id,
                entry["opposite"],
                cls.good_coordinate_from_json(entry["tail_side"]),
                cls.good_coordinate_from_json(entry["head_side"]),
                cls.scalar_from_json(entry["constant"])
            )
            for edge_id, entry in data["gluings"].items()
        }
        legs = {
            edge_id: LegExtension(edge_id, cls.good_coordinate_from_json(entry))
            for edge_id, entry in data["legs"].items()
        }
        return GluedModel(complex_, pieces, gluings, legs)

    # Archivos
    @staticmethod
    def dumps(document: Any) -> str:
        return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def load_file(path: str) -> Any:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
        app_logger.debug(f"Documento leído: {path}")
        return document

    @classmethod
    def write_file(cls, path: str, document: Any):
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(cls.dumps(document))
        app_logger.debug(f"Documento escrito: {path}")

    @classmethod
    def read_datum(cls, path: str) -> TropicalReductionDatum:
        return cls.datum_from_json(cls.load_file(path))

    @classmethod
    def read_model(cls, path: str) -> GluedModel:
        return cls.model_from_json(cls.load_file(path))
