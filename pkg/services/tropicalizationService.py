"""Tropicalización de modelos pegados: niveles, reducciones y función de residuos."""
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Optional

from config.settings import Settings
from models.annulusForm import AnnulusForm, Skeleton
from models.curveComplex import ExplicitP1Form, P1Point, TropicalReductionDatum, VertexReduction
from models.errors import PrecisionExhausted, StructuralError
from models.gluedModel import GluedModel, Gluing, LegExtension, StarPiece, reduce_point
from models.puiseux import PuiseuxScalar
from models.rationalForm import Polynomial
from services.operationWrapper import handle_operation
from services.serializationService import JsonCodec
from services.validationService import edge_slope
from utils.logger import app_logger


def gauss_level(piece: StarPiece) -> Fraction:
    """
    Nivel del vértice: -val de la norma de Gauss de la forma

    Args:
        piece (StarPiece): Pieza con forma no nula

    Returns:
        Fraction: l = -(min val(num) - min val(den))
    """
    return -piece.form.gauss_valuation()


def _reduce_polynomial(poly: Polynomial, exponent) -> List[Fraction]:
    coeffs = []
    for value in poly.coeffs:
        if value.prec <= exponent:
            raise PrecisionExhausted(f"El coeficiente {value} no se conoce en el grado {exponent}")
        coeffs.append(value.coefficient_at(exponent))
    return coeffs


def _reduced_point(point) -> P1Point:
    return P1Point(reduce_point(point))


def scaled_reduction(piece: StarPiece) -> ExplicitP1Form:
    """
    Reducción de c * omega con c = t^l normalizando la norma de Gauss

    Args:
        piece (StarPiece): Pieza con forma no nula

    Returns:
        ExplicitP1Form: Diferencial racional sobre Q sin factores comunes
    """
    form = piece.form
    form.gauss_valuation()
    num = _reduce_polynomial(form.num, form.num.min_valuation())
    den = _reduce_polynomial(form.den, form.den.min_valuation())
    marked = {edge_id: _reduced_point(point) for edge_id, point in piece.marked.items()}
    aux = _reduced_point(piece.extra_points[0]) if piece.extra_points else None
    return ExplicitP1Form(tuple(num), tuple(den), marked, aux).normalized()


def expand_on_annulus(piece: StarPiece, edge_id: str, window: Optional[int] = None,
                      skeleton: Optional[Skeleton] = None, precision=None) -> AnnulusForm:
    """
    Desarrollo de Laurent de la forma en el anillo de una arista

    Args:
        piece (StarPiece): Pieza en la cola de la arista
        edge_id (str): Arista o pata de Star(vertex)
        window (int): Índice máximo del desarrollo (por defecto Settings.DEFAULT_WINDOW)
        skeleton (Skeleton): Anillo (por defecto el de la pieza)
        precision (Fraction): Precisión relativa de la división

    Returns:
        AnnulusForm: (sum a_i w^i) dw/w con w = z - q o w = 1/z
    """
    if edge_id not in piece.marked:
        raise StructuralError(f"La arista {edge_id} no sale del vértice {piece.vertex}")
    top = window if window is not None else Settings.DEFAULT_WINDOW
    point = piece.marked[edge_id]
    leading = piece.form.local_expansion(point, 1, precision)
    count = max(top - leading.start + 1, 1)
    return piece.form.annulus_expansion(point, skeleton or piece.annuli[edge_id], count, precision)


def residue_function_of(model: GluedModel, precision=None) -> Dict[str, PuiseuxScalar]:
    """
    Función de residuos: el coeficiente a_0 del desarrollo en el anillo de cada arista orientada

    Args:
        model (GluedModel): Modelo con desarrollos válidos

    Returns:
        Dict[str, PuiseuxScalar]: Residuo por arista y pata
    """
    re = {}
    for edge in model.complex.edges.values():
        piece = model.piece_of(edge)
        re[edge.id] = piece.form.annulus_residue(piece.marked[edge.id], piece.annuli[edge.id], precision)
    return re


def harmonicity_check(model: GluedModel, vertex_id: str, precision=None) -> bool:
    """La suma de la función de residuos sobre Star(x) se anula en todos los términos conocidos"""
    vertex = model.complex.vertex(vertex_id)
    if vertex.boundary:
        raise StructuralError(f"El vértice {vertex_id} es de frontera")
    re = residue_function_of(model, precision)
    total = sum((re[edge.id] for edge in model.complex.star(vertex_id)), PuiseuxScalar.zero())
    return total.is_zero()


def invisible_residues(datum: TropicalReductionDatum) -> List[str]:
    """Aristas con Re(e) no nulo invisible en las dos reducciones"""
    notes = []
    for edge in datum.complex.bounded_edges():
        value = datum.re[edge.id]
        if value.is_zero():
            continue
        twin = datum.complex.edge(edge.opposite)
        if datum.reduced_residue(edge) == 0 and datum.reduced_residue(twin) == 0:
            notes.append(f"Re({edge.id}) = {value} no es visible en las reducciones de {edge.tail} ni {edge.head}")
    return notes


def tropicalize(model: GluedModel, precision=None) -> TropicalReductionDatum:
    """
    Dato de reducción tropical del modelo

    Args:
        model (GluedModel): Modelo estructuralmente válido
        precision (Fraction): Precisión relativa de los residuos

    Returns:
        TropicalReductionDatum: Niveles, reducciones escaladas y función de residuos
    """
    reductions = {}
    for vertex in model.complex.type2_vertices():
        piece = model.pieces[vertex.id]
        reductions[vertex.id] = VertexReduction(gauss_level(piece), scaled_reduction(piece))
    datum = TropicalReductionDatum(model.complex, reductions, residue_function_of(model, precision))

    for note in invisible_residues(datum):
        app_logger.info(note)
    app_logger.info(f"Modelo tropicalizado: {len(reductions)} vértices, {len(datum.re)} aristas orientadas")
    return datum


def scale_model(model: GluedModel, factor: PuiseuxScalar) -> GluedModel:
    """
    Modelo de c * omega con los mismos cambios de coordenadas

    Args:
        model (GluedModel): Modelo original
        factor (PuiseuxScalar): Escalar no nulo c

    Returns:
        GluedModel: Piezas y formas binomiales multiplicadas por c
    """
    pieces = {
        vertex_id: piece.with_form(piece.form.scale(factor))
        for vertex_id, piece in model.pieces.items()
    }

    def scaled(coordinate):
        return replace(coordinate, c_n=coordinate.c_n * factor, c_0=coordinate.c_0 * factor)

    gluings = {
        edge_id: Gluing(gluing.edge, gluing.opposite, scaled(gluing.tail_side),
                        scaled(gluing.head_side), gluing.constant)
        for edge_id, gluing in model.gluings.items()
    }
    legs = {edge_id: LegExtension(leg.edge, scaled(leg.coordinate)) for edge_id, leg in model.legs.items()}
    return GluedModel(model.complex, pieces, gluings, legs)


def compare_data(expected: TropicalReductionDatum, actual: TropicalReductionDatum) -> List[str]:
    """
    Diferencias campo por campo entre dos datos

    Returns:
        List[str]: Lista vacía si los datos coinciden
    """
    differences = []
    if set(expected.complex.edges) != set(actual.complex.edges) or \
            set(expected.complex.vertices) != set(actual.complex.vertices):
        return ["los complejos tienen identificadores distintos"]

    for vertex in expected.complex.type2_vertices():
        ours, theirs = expected.reductions[vertex.id], actual.reductions[vertex.id]
        if ours.level != theirs.level:
            differences.append(f"nivel de {vertex.id}: {ours.level} != {theirs.level}")
        if ours.is_explicit and theirs.is_explicit:
            if not ours.form.same_differential(theirs.form):
                differences.append(f"reducción de {vertex.id} distinta")
            if ours.form.marked != theirs.form.marked:
                differences.append(f"puntos marcados de {vertex.id} distintos")

    for edge in sorted(expected.complex.edges.values(), key=lambda e: e.id):
        if expected.log_order(edge) != actual.log_order(edge):
            differences.append(
                f"orden logarítmico en {edge.id}: {expected.log_order(edge)} != {actual.log_order(edge)}"
            )
        if expected.reduced_residue(edge) != actual.reduced_residue(edge):
            differences.append(f"residuo reducido en {edge.id} distinto")
        if edge_slope(expected, edge) != edge_slope(actual, edge):
            differences.append(f"pendiente en {edge.id} distinta")
        if not expected.re[edge.id].agrees_with(actual.re[edge.id]):
            differences.append(f"Re({edge.id}): {expected.re[edge.id]} != {actual.re[edge.id]}")
    return differences


class TropicalizationService:
    """Tropicalización de modelos guardados en archivos"""

    @classmethod
    @handle_operation
    def tropicalize_file(cls, path: str, output: str = None, precision=None) -> Dict:
        """
        Tropicaliza el modelo de un archivo

        Args:
            path (str): Archivo JSON del modelo pegado
            output (str): Archivo de salida del dato
            precision (Fraction): Precisión relativa de los residuos

        Returns:
            Dict: Respuesta con el documento del dato en "document"
        """
        datum = tropicalize(JsonCodec.read_model(path), precision)
        document = JsonCodec.datum_to_json(datum)
        if output:
            JsonCodec.write_file(output, document)
        return {
            "success": True,
            "message": f"Dato con {len(datum.reductions)} reducciones",
            "exit_code": 0,
            "document": document,
            "datum": datum
        }
