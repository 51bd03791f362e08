"""Validación de datos de reducción tropical.

Las condiciones se comprueban por vértice y por arista y se devuelven como
registros; sólo los errores estructurales se lanzan como excepciones.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from models.curveComplex import (
    INFINITY, AbstractForm, CurveComplex, ExplicitP1Form, OrientedEdge, P1Point,
    TropicalReductionDatum, Vertex, VertexReduction
)
from models.errors import InfiniteSlopeMismatch, NonSplitDenominator, StructuralError
from models.puiseux import PuiseuxScalar, to_rational
from models.validationReport import FAIL, INDETERMINATE, PASS, CheckRecord, ValidationReport
from services.operationWrapper import handle_operation
from services.serializationService import JsonCodec
from utils.logger import app_logger


@dataclass(frozen=True)
class LevelFunction:
    """Niveles en los vértices de tipo 2 y pendientes en aristas y patas"""

    levels: Dict[str, Fraction]
    slopes: Dict[str, Fraction]

    def value_at(self, edge: OrientedEdge, distance) -> Fraction:
        """Nivel a distancia dada de la cola de la arista"""
        return self.levels[edge.tail] + self.slopes[edge.id] * to_rational(distance)


def _zero_status(value: PuiseuxScalar) -> str:
    if value.is_exact_zero():
        return PASS
    if value.is_zero():
        return INDETERMINATE
    return FAIL


def edge_slope(datum: TropicalReductionDatum, edge: OrientedEdge) -> Fraction:
    if edge.is_leg:
        return Fraction(-datum.log_order(edge))
    return (datum.level(edge.head) - datum.level(edge.tail)) / edge.length


def level_function(datum: TropicalReductionDatum) -> LevelFunction:
    """
    Función de nivel afín a trozos del dato

    Args:
        datum (TropicalReductionDatum): Dato estructuralmente válido

    Returns:
        LevelFunction: Niveles y pendientes

    Raises:
        InfiniteSlopeMismatch: Si una arista acotada tiene pendiente no entera
    """
    levels = {vertex.id: datum.level(vertex.id) for vertex in datum.complex.type2_vertices()}
    slopes = {}
    for edge in datum.complex.edges.values():
        slope = edge_slope(datum, edge)
        if slope.denominator != 1:
            raise InfiniteSlopeMismatch(
                f"La arista {edge.id} une niveles {levels[edge.tail]} y {levels[edge.head]} "
                f"con longitud {edge.length}: pendiente {slope} no entera"
            )
        slopes[edge.id] = slope
    return LevelFunction(levels, slopes)


# Condiciones por arista

def _residue_reduction_record(datum: TropicalReductionDatum, edge: OrientedEdge) -> CheckRecord:
    """Condición (2): la reducción graduada de Re(e) es el residuo en p_e"""
    level = datum.level(edge.tail)
    reduced = datum.reduced_residue(edge)
    value = datum.re[edge.id]
    grade = -level
    witness = {"re": value, "reduced_residue": reduced, "grade": grade}
    if reduced == 0:
        if value.is_exact_zero():
            status = PASS
        elif value.terms:
            status = PASS if value.val() > grade else FAIL
        else:
            status = PASS if value.prec > grade else INDETERMINATE
    elif value.terms:
        exponent, coeff = value.leading()
        status = PASS if exponent == grade and coeff == reduced else FAIL
    else:
        status = INDETERMINATE if value.prec <= grade else FAIL
    return CheckRecord.of("residue_reduction", edge.id, status, **witness)


def _edge_records(datum: TropicalReductionDatum, edge: OrientedEdge) -> List[CheckRecord]:
    records = []
    slope = edge_slope(datum, edge)
    value = datum.re[edge.id]

    if not edge.is_leg:
        total = value + datum.re[edge.opposite]
        records.append(CheckRecord.of(
            "alternating", edge.id, _zero_status(total),
            re=value, re_opposite=datum.re[edge.opposite]
        ))
        records.append(CheckRecord.of(
            "integer_slope", edge.id, PASS if slope.denominator == 1 else FAIL,
            slope=slope, length=edge.length
        ))

    log_order = datum.log_order(edge)
    records.append(CheckRecord.of(
        "log_order", edge.id, PASS if log_order == -slope else FAIL,
        log_order=log_order, slope=slope
    ))
    records.append(_residue_reduction_record(datum, edge))

    if slope < 0:
        records.append(CheckRecord.of("negative_slope", edge.id, _zero_status(value), slope=slope, re=value))

    if slope == 0:
        level = datum.level(edge.tail)
        if value.terms:
            status = PASS if -value.val() == level else FAIL
        elif value.is_exact_zero():
            status = FAIL
        else:
            status = INDETERMINATE
        records.append(CheckRecord.of("slope_zero_level", edge.id, status, level=level, re=value))
    return records


# Condiciones por vértice

def _vertex_records(datum: TropicalReductionDatum, vertex: Vertex) -> List[CheckRecord]:
    records = []
    star = datum.complex.star(vertex.id)
    reduction = datum.reductions[vertex.id]

    if not vertex.boundary:
        total = sum((datum.re[edge.id] for edge in star), PuiseuxScalar.zero())
        records.append(CheckRecord.of("harmonicity", vertex.id, _zero_status(total), sum=total))

        degree = sum(datum.log_order(edge) for edge in star)
        expected = 2 * vertex.genus - 2 + len(star)
        records.append(CheckRecord.of(
            "degree", vertex.id, PASS if degree == expected else FAIL,
            log_order_sum=degree, expected=expected
        ))

    if reduction.is_explicit:
        form = reduction.form
        records.append(CheckRecord.of(
            "explicit_genus", vertex.id, PASS if vertex.genus == 0 else FAIL, genus=vertex.genus
        ))
        points = form.points()
        problems = form.support_problems()
        if len(set(points)) != len(points):
            problems.append("puntos marcados repetidos")
        records.append(CheckRecord.of(
            "support", vertex.id, FAIL if problems else PASS, problems="; ".join(problems) or "-"
        ))
        try:
            status = PASS if residue_theorem_check(datum, vertex.id) else FAIL
            witness = {"residue_sum": form.residue_sum()}
        except NonSplitDenominator as e:
            status, witness = FAIL, {"error": str(e)}
        records.append(CheckRecord.of("residue_theorem", vertex.id, status, **witness))
    return records


def validate(datum: TropicalReductionDatum) -> ValidationReport:
    """
    Comprueba todas las condiciones de compatibilidad del dato

    Args:
        datum (TropicalReductionDatum): Dato a validar

    Returns:
        ValidationReport: Un registro por condición y ubicación
    """
    report = ValidationReport()
    for vertex in datum.complex.type2_vertices():
        report = report.merge(ValidationReport.from_records(_vertex_records(datum, vertex)))
    for edge in sorted(datum.complex.edges.values(), key=lambda e: e.id):
        report = report.merge(ValidationReport.from_records(_edge_records(datum, edge)))

    for record in report.failures():
        app_logger.info(f"Condición {record.check} falla en {record.location}: {dict(record.witness)}")
    return report


def residue_theorem_check(datum: TropicalReductionDatum, vertex_id: str) -> bool:
    """La suma de los residuos de la reducción explícita es cero"""
    reduction = datum.reductions[vertex_id]
    if not reduction.is_explicit:
        raise StructuralError(f"El vértice {vertex_id} no tiene una reducción explícita")
    return reduction.form.residue_sum() == 0


# Condición global de residuos

def grc_sides(datum: TropicalReductionDatum, vertex_ids: Iterable[str]) -> Tuple[PuiseuxScalar, PuiseuxScalar]:
    """
    Ambos lados de la identidad global de residuos para un subgrafo pleno

    Args:
        datum (TropicalReductionDatum): Dato validado
        vertex_ids (Iterable[str]): Vértices de tipo 2 no frontera del subgrafo

    Returns:
        Tuple[PuiseuxScalar, PuiseuxScalar]: (suma sobre patas, suma de Re(e^op) sobre aristas salientes)
    """
    members = set(vertex_ids)
    legs = PuiseuxScalar.zero()
    leaving = PuiseuxScalar.zero()
    for vertex_id in sorted(members):
        for edge in datum.complex.star(vertex_id):
            if edge.is_leg:
                legs = legs + datum.re[edge.id]
            elif edge.head not in members:
                leaving = leaving + datum.re[edge.opposite]
    return legs, leaving


def global_residue_check(datum: TropicalReductionDatum, threshold) -> ValidationReport:
    """
    Condición global de residuos sobre el nivel dado

    Args:
        datum (TropicalReductionDatum): Dato que pasa validate
        threshold (Fraction): Nivel de corte l_0

    Returns:
        ValidationReport: Registros grc_equation y grc_vanishing por componente
    """
    threshold = to_rational(threshold)
    complex_ = datum.complex
    high = [
        vertex.id for vertex in complex_.type2_vertices()
        if not vertex.boundary and datum.level(vertex.id) > threshold
    ]
    graph = nx.Graph()
    graph.add_nodes_from(high)
    for edge in complex_.bounded_edges():
        if edge.tail in graph and edge.head in graph:
            graph.add_edge(edge.tail, edge.head)

    boundary = {vertex.id for vertex in complex_.type2_vertices() if vertex.boundary}
    records = []
    components = sorted((sorted(component) for component in nx.connected_components(graph)), key=lambda c: c[0])
    if not components:
        records.append(CheckRecord.of("grc_equation", "empty", PASS, threshold=threshold))

    for component in components:
        name = "+".join(component)
        lhs, rhs = grc_sides(datum, component)
        records.append(CheckRecord.of("grc_equation", name, _zero_status(lhs - rhs), lhs=lhs, rhs=rhs))

        star = [edge for vertex_id in component for edge in complex_.star(vertex_id)]
        legs = [edge for edge in star if edge.is_leg]
        # Las componentes adyacentes a la frontera quedan exentas
        if any(edge.head in boundary for edge in star) or any(edge_slope(datum, leg) >= 0 for leg in legs):
            continue
        grade = -threshold
        if not lhs.is_exact_zero():
            status = _zero_status(lhs)
        elif grade >= rhs.prec:
            status = INDETERMINATE
        else:
            status = PASS if rhs.coefficient_at(grade) == 0 else FAIL
        records.append(CheckRecord.of("grc_vanishing", name, status, lhs=lhs, rhs=rhs, grade=grade))

    return ValidationReport.from_records(records)


# Operaciones sobre datos

def reduction_divisor(datum: TropicalReductionDatum, vertex_id: str) -> Dict:
    """
    Divisor de la reducción en los puntos marcados

    Returns:
        Dict: Órdenes ord = orden logarítmico - 1, grado total y grado esperado 2g - 2
    """
    vertex = datum.complex.vertex(vertex_id)
    orders = {edge.id: datum.log_order(edge) - 1 for edge in datum.complex.star(vertex_id)}
    return {
        "orders": orders,
        "degree": sum(orders.values()),
        "expected": 2 * vertex.genus - 2
    }


def scale_datum(datum: TropicalReductionDatum, factor: PuiseuxScalar) -> TropicalReductionDatum:
    """
    Dato de la forma c * omega

    Args:
        datum (TropicalReductionDatum): Dato original
        factor (PuiseuxScalar): Escalar no nulo c

    Returns:
        TropicalReductionDatum: Niveles desplazados por -val(c), residuos por c
    """
    grade, lead = factor.leading()
    reductions = {}
    for vertex_id, reduction in datum.reductions.items():
        form = reduction.form
        if isinstance(form, ExplicitP1Form):
            form = replace(form, num=tuple(value * lead for value in form.num))
        else:
            form = AbstractForm(dict(form.log_orders), {key: value * lead for key, value in form.residues.items()})
        reductions[vertex_id] = VertexReduction(reduction.level - grade, form)
    re = {edge_id: value * factor for edge_id, value in datum.re.items()}
    return TropicalReductionDatum(datum.complex, reductions, re)


def _rename_branches(reduction: VertexReduction, names: Dict[str, str]) -> VertexReduction:
    form = reduction.form
    if isinstance(form, ExplicitP1Form):
        marked = {names.get(key, key): point for key, point in form.marked.items()}
        return VertexReduction(reduction.level, replace(form, marked=marked))
    return VertexReduction(reduction.level, AbstractForm(
        {names.get(key, key): value for key, value in form.log_orders.items()},
        {names.get(key, key): value for key, value in form.residues.items()}
    ))


def _fresh_id(taken, base: str) -> str:
    candidate, counter = base, 1
    while candidate in taken:
        counter += 1
        candidate = f"{base}{counter}"
    return candidate


def subdivide_edge(datum: TropicalReductionDatum, edge_id: str, distance) -> TropicalReductionDatum:
    """
    Inserta un vértice de género 0 a distancia dada de la cola de una arista

    Args:
        datum (TropicalReductionDatum): Dato válido
        edge_id (str): Arista acotada a subdividir
        distance (Fraction): Distancia desde la cola, 0 < distance < longitud

    Returns:
        TropicalReductionDatum: Dato refinado con el vértice nuevo
    """
    complex_ = datum.complex
    edge = complex_.edge(edge_id)
    if edge.is_leg:
        raise StructuralError("Sólo se subdividen aristas acotadas")
    distance = to_rational(distance)
    if not 0 < distance < edge.length:
        raise StructuralError(f"La distancia {distance} no está dentro de la arista {edge_id}")
    twin = complex_.edge(edge.opposite)
    slope = edge_slope(datum, edge)
    if slope.denominator != 1:
        raise InfiniteSlopeMismatch(f"La arista {edge_id} no tiene pendiente entera")

    taken = set(complex_.vertices) | set(complex_.edges)
    middle = _fresh_id(taken, f"{edge.id}_mid")
    taken.add(middle)
    near = _fresh_id(taken, f"{edge.id}_1")
    taken.add(near)
    far = _fresh_id(taken, f"{edge.id}_2")
    taken.add(far)
    twin_near = _fresh_id(taken, f"{twin.id}_1")
    taken.add(twin_near)
    twin_far = _fresh_id(taken, f"{twin.id}_2")

    rest = edge.length - distance
    new_edges = [e for e in complex_.edges.values() if e.id not in (edge.id, twin.id)]
    new_edges.extend([
        OrientedEdge(near, edge.tail, middle, distance, twin_far),
        OrientedEdge(far, middle, edge.head, rest, twin_near),
        OrientedEdge(twin_near, twin.tail, middle, rest, far),
        OrientedEdge(twin_far, middle, edge.tail, distance, near),
    ])
    new_complex = CurveComplex.build(list(complex_.vertices.values()) + [Vertex(middle)], new_edges)

    level = datum.level(edge.tail) + slope * distance
    n = int(-slope)
    value = datum.re[edge.id]
    residue = value.coefficient_at(-level) if not value.is_exact_zero() else Fraction(0)
    if n == 0:
        num, den = (residue,), (0, 1)
    elif n > 0:
        num, den = (residue,) + (0,) * (n - 1) + (1,), (0, 1)
    else:
        num, den = (1,) + (0,) * (-n - 1) + (residue,), (0,) * (1 - n) + (1,)
    form = ExplicitP1Form(num, den, {far: P1Point(0), twin_far: INFINITY})

    reductions = {
        vertex_id: _rename_branches(reduction, {edge.id: near, twin.id: twin_near})
        for vertex_id, reduction in datum.reductions.items()
    }
    reductions[middle] = VertexReduction(level, form)
    re = {key: val for key, val in datum.re.items() if key not in (edge.id, twin.id)}
    re.update({near: value, far: value, twin_near: datum.re[twin.id], twin_far: datum.re[twin.id]})
    app_logger.debug(f"Arista {edge_id} subdividida en {middle} (nivel {level}, n = {n})")
    return TropicalReductionDatum(new_complex, reductions, re)


class ValidationService:
    """Operaciones sobre archivos de datos invocadas desde la línea de comandos"""

    @classmethod
    @handle_operation
    def validate_file(cls, path: str, threshold=None) -> Dict:
        """
        Valida un archivo de dato y opcionalmente la condición global de residuos

        Args:
            path (str): Archivo JSON del dato
            threshold (Fraction): Nivel de corte para la condición global

        Returns:
            Dict: Respuesta con el informe en "report"
        """
        datum = JsonCodec.read_datum(path)
        report = validate(datum)
        if threshold is not None:
            report = report.merge(global_residue_check(datum, threshold))

        counts = report.summary()
        passed = report.passed
        app_logger.info(f"Validación de {path}: {counts}")
        return {
            "success": passed,
            "message": f"{counts[PASS]} correctas, {counts[FAIL]} fallidas, {counts[INDETERMINATE]} indeterminadas",
            "exit_code": 0 if passed else 1,
            "report": report
        }

    @classmethod
    @handle_operation
    def refine_file(cls, path: str, edge_id: str, distance, output: str = None) -> Dict:
        """Subdivide una arista del dato y escribe el dato refinado"""
        datum = subdivide_edge(JsonCodec.read_datum(path), edge_id, distance)
        document = JsonCodec.datum_to_json(datum)
        if output:
            JsonCodec.write_file(output, document)
        return {
            "success": True,
            "message": f"Arista {edge_id} subdividida a distancia {distance}",
            "exit_code": 0,
            "document": document,
            "datum": datum
        }
