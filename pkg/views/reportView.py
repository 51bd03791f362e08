"""Presentación de resultados en texto (tablas de pandas) o JSON."""
from typing import Dict, List

import pandas as pd

from models.annulusForm import GoodCoordinate
from models.curveComplex import TropicalReductionDatum
from models.gluedModel import GluedModel
from models.validationReport import ValidationReport
from services.serializationService import JsonCodec


FORMAT_JSON = "json"
FORMAT_TEXT = "text"


class ReportView:
    """Convierte las respuestas de los servicios en texto para la salida estándar"""

    @staticmethod
    def report_dataframe(report: ValidationReport) -> pd.DataFrame:
        """
        Tabla con una fila por comprobación

        Args:
            report (ValidationReport): Informe a mostrar

        Returns:
            pd.DataFrame: Columnas check, location, status y witness
        """
        if not report.records:
            return pd.DataFrame()
        data = []
        for record in report.records:
            data.append({
                "check": record.check,
                "location": record.location,
                "status": record.status,
                "witness": ", ".join(f"{key}={value}" for key, value in record.witness)
            })
        return pd.DataFrame(data)

    @staticmethod
    def datum_tables(datum: TropicalReductionDatum) -> List[pd.DataFrame]:
        vertices = pd.DataFrame([
            {
                "vertex": vertex.id,
                "genus": vertex.genus,
                "boundary": "sí" if vertex.boundary else "no",
                "level": str(datum.level(vertex.id))
            }
            for vertex in datum.complex.type2_vertices()
        ])
        edges = pd.DataFrame([
            {
                "edge": edge.id,
                "tail": edge.tail,
                "head": edge.head,
                "length": JsonCodec.exponent_to_json(edge.length),
                "log_order": datum.log_order(edge),
                "re": str(datum.re[edge.id])
            }
            for edge in sorted(datum.complex.edges.values(), key=lambda e: e.id)
        ])
        return [vertices, edges]

    @staticmethod
    def model_tables(model: GluedModel) -> List[pd.DataFrame]:
        gluings = pd.DataFrame([
            {
                "edge": edge_id,
                "n": gluing.n,
                "constant": str(gluing.constant),
                "iterations": f"{gluing.tail_side.iterations}/{gluing.head_side.iterations}"
            }
            for edge_id, gluing in sorted(model.gluings.items())
        ])
        legs = pd.DataFrame([
            {"leg": edge_id, "n": leg.n, "c_n": str(leg.c_n), "c_0": str(leg.c_0)}
            for edge_id, leg in sorted(model.legs.items())
        ])
        return [gluings, legs]

    @staticmethod
    def coordinate_table(coordinate: GoodCoordinate) -> pd.DataFrame:
        rows = [
            ("n", coordinate.n),
            ("c_n", str(coordinate.c_n)),
            ("c_0", str(coordinate.c_0)),
            ("iterations", coordinate.iterations),
            ("gaps", ", ".join(JsonCodec.exponent_to_json(gap) for gap in coordinate.gaps)),
            ("t", str(coordinate.change.coordinate()))
        ]
        return pd.DataFrame(rows, columns=["field", "value"])

    @classmethod
    def render_text(cls, result: Dict) -> str:
        lines = [result.get("message", "")]
        tables: List[pd.DataFrame] = []
        if "report" in result:
            tables.append(cls.report_dataframe(result["report"]))
        elif "datum" in result:
            tables.extend(cls.datum_tables(result["datum"]))
        elif "model" in result:
            tables.extend(cls.model_tables(result["model"]))
        elif "coordinate" in result:
            tables.append(cls.coordinate_table(result["coordinate"]))
        elif "differences" in result:
            lines.extend(f"  - {difference}" for difference in result["differences"])

        for table in tables:
            if not table.empty:
                lines.append(table.to_string(index=False))
        return "\n".join(lines) + "\n"

    @classmethod
    def render(cls, result: Dict, output_format: str = FORMAT_JSON) -> str:
        """
        Texto a escribir en la salida estándar

        Args:
            result (Dict): Respuesta de un servicio
            output_format (str): "json" o "text"

        Returns:
            str: Salida determinista
        """
        if output_format == FORMAT_TEXT:
            return cls.render_text(result)
        if "report" in result:
            return JsonCodec.dumps(result["report"].to_dict())
        if "document" in result:
            return JsonCodec.dumps(result["document"])
        return JsonCodec.dumps({"success": result["success"], "message": result["message"]})
