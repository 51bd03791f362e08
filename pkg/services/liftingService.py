"""Levantamiento de datos de reducción tropical de género 0.

Cada vértice se levanta incluyendo su reducción en k, se corrigen los
residuos con polos simples en los puntos marcados y las piezas se pegan a lo
largo de las aristas mediante coordenadas buenas.
"""
from typing import Dict, Optional

from config.settings import Settings
from models.curveComplex import CurveComplex, TropicalReductionDatum, Vertex, VertexReduction
from models.errors import (
    IncompatibleBinomials, InvalidDatum, NormViolation, ResidueMismatch, StructuralError, UnsupportedGenus
)
from models.gluedModel import GluedModel, Gluing, LegExtension, LocalLift, StarPiece, edge_chart
from models.puiseux import PuiseuxScalar
from models.rationalForm import RationalDifferential
from services.goodCoordinateService import good_coordinate
from services.operationWrapper import handle_operation
from services.serializationService import JsonCodec
from services.tropicalizationService import compare_data, expand_on_annulus, tropicalize
from services.validationService import validate
from utils.logger import app_logger


def local_lift(vertex: Vertex, reduction: VertexReduction, complex_: CurveComplex) -> StarPiece:
    """
    Levanta la reducción explícita de un vértice de género 0

    Args:
        vertex (Vertex): Vértice de tipo 2
        reduction (VertexReduction): Nivel y forma explícita sobre Q
        complex_ (CurveComplex): Complejo del dato

    Returns:
        StarPiece: t^(-l) f(z) dz con los puntos marcados incluidos en k
    """
    if vertex.genus > 0:
        raise UnsupportedGenus(f"El vértice {vertex.id} tiene género {vertex.genus}")
    if not reduction.is_explicit:
        raise StructuralError(f"El vértice {vertex.id} no tiene una reducción explícita")

    form = reduction.form
    factor = PuiseuxScalar.monomial(1, -reduction.level)
    star = complex_.star(vertex.id)
    marked = {edge.id: form.marked[edge.id].as_scalar() for edge in star}
    annuli = {edge.id: edge_chart(edge, Settings.GLUING_MARGIN) for edge in star}
    extra = (form.aux.as_scalar(),) if form.aux is not None else ()
    return StarPiece(vertex.id, form.to_differential(factor), marked, annuli, extra)


def _exact(value: PuiseuxScalar) -> PuiseuxScalar:
    return PuiseuxScalar(value.terms)


def residue_correct(piece: StarPiece, targets: Dict[str, PuiseuxScalar], boundary: bool = False,
                    precision=None) -> StarPiece:
    """
    Suma a la forma eta' = sum a'_i dz / (z - q_i) para alcanzar los residuos dados

    Args:
        piece (StarPiece): Pieza levantada
        targets (Dict[str, PuiseuxScalar]): Residuo buscado en cada punto marcado
        boundary (bool): Si el vértice es de frontera
        precision (Fraction): Precisión relativa de los residuos actuales

    Returns:
        StarPiece: La pieza con la forma corregida
    """
    if set(targets) != set(piece.marked):
        raise StructuralError(f"Los residuos buscados no corresponden a los puntos de {piece.vertex}")
    gauss = piece.form.gauss_valuation()

    corrections = []
    for edge_id in sorted(piece.marked):
        point = piece.marked[edge_id]
        difference = targets[edge_id] - piece.form.residue_at(point, precision)
        if difference.is_zero():
            continue
        if difference.val() <= gauss:
            raise ResidueMismatch(
                f"El residuo buscado en {edge_id} cambia la reducción de {piece.vertex} "
                f"(corrección {difference}, valuación de Gauss {gauss})"
            )
        corrections.append((point, _exact(difference)))

    if not corrections:
        return piece

    total = sum((value for _, value in corrections), PuiseuxScalar.zero())
    if not total.is_exact_zero():
        if not (boundary and piece.extra_points):
            raise ResidueMismatch(f"Las correcciones de {piece.vertex} no suman cero: {total}")
        corrections.append((piece.extra_points[0], -total))

    finite = [(point, value) for point, value in corrections if point is not None]
    eta = RationalDifferential.simple_poles(finite)
    lowest = min(value.val() for _, value in corrections)
    norm = eta.gauss_valuation()
    if norm != lowest or norm <= gauss:
        raise NormViolation(
            f"La corrección de {piece.vertex} tiene valuación {norm}; se esperaba {lowest} > {gauss}"
        )
    app_logger.debug(f"Residuos de {piece.vertex} corregidos en {len(corrections)} puntos (valuación {norm})")
    return piece.with_form(piece.form + eta)


def lift_vertex(datum: TropicalReductionDatum, vertex_id: str, precision=None) -> LocalLift:
    """
    Levantamiento local con residuos corregidos

    Args:
        datum (TropicalReductionDatum): Dato válido
        vertex_id (str): Vértice de tipo 2

    Returns:
        LocalLift: Pieza, residuos buscados y residuos obtenidos
    """
    vertex = datum.complex.vertex(vertex_id)
    piece = local_lift(vertex, datum.reductions[vertex_id], datum.complex)
    targets = {edge.id: datum.re[edge.id] for edge in datum.complex.star(vertex_id)}
    piece = residue_correct(piece, targets, vertex.boundary, precision)
    achieved = {edge_id: piece.form.residue_at(point, precision) for edge_id, point in piece.marked.items()}
    result = LocalLift(piece, targets, achieved)
    if not result.matches():
        raise NormViolation(f"Los residuos obtenidos en {vertex_id} no coinciden con los buscados")
    return result


def gluing_constant(alpha: PuiseuxScalar, beta: PuiseuxScalar, n: int, length, precision=None) -> PuiseuxScalar:
    """
    Constante c de tau = c sigma^-1 con c^n = -beta / alpha

    Args:
        alpha (PuiseuxScalar): Coeficiente dominante del lado de la cola
        beta (PuiseuxScalar): Coeficiente dominante del lado de la cabeza
        n (int): Índice dominante del lado de la cola
        length (Fraction): Longitud de la arista

    Returns:
        PuiseuxScalar: t^length para n = 0
    """
    if n == 0:
        return PuiseuxScalar.monomial(1, length)
    ratio = -beta * alpha.inv(precision)
    if n < 0:
        ratio = ratio.inv(precision)
    constant = ratio.nth_root(abs(n), precision)
    if constant.val() != length:
        raise IncompatibleBinomials(f"La constante de pegado {constant} no tiene valuación {length}")
    return constant


def glue(pieces: Dict[str, StarPiece], complex_: CurveComplex, precision=None,
         window: Optional[int] = None) -> GluedModel:
    """
    Pega las piezas a lo largo de las aristas y extiende las patas

    Args:
        pieces (Dict[str, StarPiece]): Pieza por vértice de tipo 2
        complex_ (CurveComplex): Complejo a realizar
        precision (Fraction): Precisión relativa de las coordenadas buenas
        window (int): Ventana de los desarrollos en los anillos

    Returns:
        GluedModel: Modelo con un pegado por par de aristas opuestas
    """
    gluings = {}
    for edge in complex_.bounded_edges():
        if edge.opposite < edge.id:
            continue
        near = good_coordinate(expand_on_annulus(pieces[edge.tail], edge.id, window, precision=precision), precision)
        far = good_coordinate(
            expand_on_annulus(pieces[edge.head], edge.opposite, window, precision=precision), precision
        )
        if near.n != -far.n:
            raise IncompatibleBinomials(f"Exponentes {near.n} y {far.n} incompatibles en la arista {edge.id}")
        if not (near.c_0 + far.c_0).is_zero():
            raise IncompatibleBinomials(f"Residuos {near.c_0} y {far.c_0} no opuestos en la arista {edge.id}")

        constant = gluing_constant(near.c_n, far.c_n, near.n, edge.length, precision)
        gluing = Gluing(edge.id, edge.opposite, near, far, constant)
        if not gluing.is_consistent():
            raise IncompatibleBinomials(f"Las formas binomiales de {edge.id} no se transportan")
        app_logger.debug(f"Arista {edge.id} pegada con n = {near.n} y constante {constant}")
        gluings[edge.id] = gluing

    legs = {}
    for leg in complex_.legs():
        form = expand_on_annulus(pieces[leg.tail], leg.id, window, precision=precision)
        coordinate = good_coordinate(form, precision)
        legs[leg.id] = LegExtension(leg.id, coordinate)
    return GluedModel(complex_, dict(pieces), gluings, legs)


def lift(datum: TropicalReductionDatum, precision=None, window: Optional[int] = None) -> GluedModel:
    """
    Modelo pegado cuya tropicalización es el dato

    Args:
        datum (TropicalReductionDatum): Dato con reducciones explícitas de género 0
        precision (Fraction): Precisión relativa de trabajo
        window (int): Ventana de los desarrollos en los anillos

    Returns:
        GluedModel: Piezas corregidas, pegados y extensiones de las patas
    """
    report = validate(datum)
    if not report.passed:
        failed = ", ".join(f"{record.check}@{record.location}" for record in report.failures())
        raise InvalidDatum(f"El dato no pasa la validación: {failed}")

    pieces = {
        vertex.id: lift_vertex(datum, vertex.id, precision).piece
        for vertex in datum.complex.type2_vertices()
    }
    model = glue(pieces, datum.complex, precision, window)
    app_logger.info(
        f"Dato levantado: {len(pieces)} piezas, {len(model.gluings)} pegados, {len(model.legs)} patas"
    )
    return model


class LiftingService:
    """Levantamiento y viaje de ida y vuelta sobre archivos"""

    @classmethod
    @handle_operation
    def lift_file(cls, path: str, output: str = None, precision=None, window: Optional[int] = None) -> Dict:
        """
        Levanta el dato de un archivo y escribe el modelo pegado

        Args:
            path (str): Archivo JSON del dato
            output (str): Archivo de salida del modelo
            precision (Fraction): Precisión relativa de trabajo
            window (int): Ventana de los desarrollos

        Returns:
            Dict: Respuesta con el documento del modelo en "document"
        """
        model = lift(JsonCodec.read_datum(path), precision, window)
        document = JsonCodec.model_to_json(model)
        if output:
            JsonCodec.write_file(output, document)
        return {
            "success": True,
            "message": f"Modelo con {len(model.pieces)} piezas y {len(model.gluings)} pegados",
            "exit_code": 0,
            "document": document,
            "model": model
        }

    @classmethod
    @handle_operation
    def roundtrip_file(cls, path: str, precision=None, window: Optional[int] = None) -> Dict:
        """Levanta, tropicaliza y compara con el dato original"""
        datum = JsonCodec.read_datum(path)
        recovered = tropicalize(lift(datum, precision, window), precision)
        differences = compare_data(datum, recovered)
        for difference in differences:
            app_logger.info(f"Diferencia tras el viaje de ida y vuelta: {difference}")
        return {
            "success": not differences,
            "message": "El dato se recupera exactamente" if not differences else f"{len(differences)} diferencias",
            "exit_code": 0 if not differences else 1,
            "document": {"equal": not differences, "differences": differences},
            "differences": differences
        }
