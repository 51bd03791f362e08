"""Acción de G_n sobre coordenadas formales buenas y la aplicación phi_e.

Para n = -l < 0 la coordenada sigma(s) = sum a_i s^i queda determinada por
(a_1, a_{l+1}) = (lam, lam mu); los demás coeficientes salen de comparar
coeficientes en (c + r t^l) dt/ds = u^(l+1) (e + r s^l) con u = t/s.
"""
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from config.settings import Settings
from models.annulusForm import AnnulusSeries, GoodCoordinate
from models.errors import (
    InternalError, NotDominant, PrecisionExhausted, StructuralError, TruncationTooSmall
)
from models.formalCoordinate import (
    FormalForm, FormalGoodCoordinate, GnElement, GradedCoordinate,
    revert, substitute, truncated_power, truncated_product
)
from models.gluedModel import GluedModel, Gluing
from models.validationReport import FAIL, PASS, CheckRecord, ValidationReport
from services.operationWrapper import handle_operation
from utils.logger import app_logger


# Grupo G_n

def gn_compose(sigma: GnElement, other: GnElement, l: int) -> GnElement:
    """
    Producto (lam, mu)(lam', mu') = (lam lam', mu + lam^l mu')

    Args:
        sigma (GnElement): Primer factor
        other (GnElement): Segundo factor
        l (int): -n

    Returns:
        GnElement: El producto en G_n
    """
    return GnElement(sigma.lam * other.lam, sigma.mu + sigma.lam ** l * other.mu)


def gn_inverse(sigma: GnElement, l: int) -> GnElement:
    return GnElement(1 / sigma.lam, -sigma.lam ** (-l) * sigma.mu)


# Acción sobre coordenadas formales

def _default_truncation(truncation: Optional[int]) -> int:
    return truncation if truncation is not None else Settings.FORMAL_TRUNCATION


def _identity_defect(a, form: FormalForm, target: FormalForm, order: int):
    """
    Coeficientes de (c + r t^l) t' - u^(l+1) (e + r s^l)

    a es la serie de t (a[0] = 0), form la forma en s y target la forma en t.
    """
    l = form.l
    t = list(a)
    derivative = [k * t[k] for k in range(1, order + 1)] + [Fraction(0)]
    left = truncated_product(
        [target.c_n] + [Fraction(0)] * order,
        derivative,
        order
    )
    if target.r:
        powered = truncated_power(t, l, order)
        left = [x + target.r * y for x, y in zip(left, truncated_product(powered, derivative, order))]
    u = t[1:] + [Fraction(0)]
    right_factor = [form.c_n] + [Fraction(0)] * order
    if l <= order:
        right_factor[l] += form.r
    right = truncated_product(truncated_power(u, l + 1, order), right_factor, order)
    return [x - y for x, y in zip(left, right)]


def act(sigma: GnElement, form: FormalForm, truncation: Optional[int] = None) -> FormalGoodCoordinate:
    """
    Coordenada buena sigma(s) a partir de la coordenada buena s

    Args:
        sigma (GnElement): Elemento (lam, mu)
        form (FormalForm): Forma (e s^n + r) ds/s
        truncation (int): Número N de coeficientes a_1..a_N

    Returns:
        FormalGoodCoordinate: Coeficientes y la forma (c t^n + r) dt/t con c = e lam^-n
    """
    order = _default_truncation(truncation)
    target = form.rescaled(sigma.lam)
    if form.n >= 0:
        return FormalGoodCoordinate((sigma.lam,) + (Fraction(0),) * (order - 1), target)

    l = form.l
    if order <= l + 1:
        raise TruncationTooSmall(f"La truncación {order} no supera l + 1 = {l + 1}")
    c = target.c_n
    a = [Fraction(0)] * (order + 1)
    a[1] = sigma.lam
    a[l + 1] = sigma.lam * sigma.mu
    for k in range(2, order + 1):
        if k == l + 1:
            continue
        a[k] = Fraction(0)
        defect = _identity_defect(a, form, target, k - 1)[k - 1]
        a[k] = -defect / (c * (k - l - 1))

    coordinate = FormalGoodCoordinate(tuple(a[1:]), target)
    if not formal_identity_holds(coordinate, form):
        raise InternalError(f"La recurrencia no produce una coordenada buena para {sigma}")
    return coordinate


def formal_identity_holds(coordinate: FormalGoodCoordinate, form: FormalForm) -> bool:
    """La identidad (c t^n + r) dt/t = (e s^n + r) ds/s hasta el orden de la coordenada"""
    order = coordinate.order
    if form.n >= 0:
        scaled = form.rescaled(coordinate.coeffs[0])
        return not any(coordinate.coeffs[1:]) and coordinate.form == scaled
    defect = _identity_defect(coordinate.as_series(), form, coordinate.form, order - 1)
    return not any(defect)


def compose(outer: FormalGoodCoordinate, inner: FormalGoodCoordinate) -> FormalGoodCoordinate:
    """outer(inner(s)), con outer escrita en la coordenada inner"""
    order = min(outer.order, inner.order)
    series = substitute(outer.as_series()[:order + 1], inner.as_series()[:order + 1], order)
    return FormalGoodCoordinate(tuple(series[1:]), outer.form)


def verify_group_law(form: FormalForm, sigma: GnElement, other: GnElement,
                     truncation: Optional[int] = None) -> bool:
    """
    Comprueba sigma'(sigma(s)) = (sigma sigma')(s) coeficiente a coeficiente

    Args:
        form (FormalForm): Forma en la coordenada s
        sigma (GnElement): Primer elemento
        other (GnElement): Segundo elemento
        truncation (int): Orden N

    Returns:
        bool: True si ambas series coinciden hasta el orden N
    """
    first = act(sigma, form, truncation)
    second = act(other, first.form, truncation)
    composed = compose(second, first)
    direct = act(gn_compose(sigma, other, form.l), form, truncation)
    return composed.agrees_with(direct)


def solve_transition(first: FormalGoodCoordinate, second: FormalGoodCoordinate,
                     form: FormalForm) -> GnElement:
    """
    El único elemento que lleva la coordenada first a second

    Args:
        first (FormalGoodCoordinate): Coordenada buena de form
        second (FormalGoodCoordinate): Otra coordenada buena de form
        form (FormalForm): Forma en la coordenada s

    Returns:
        GnElement: sigma con sigma(first) = second
    """
    order = min(first.order, second.order)
    if form.n < 0 and order <= form.l + 1:
        raise TruncationTooSmall(f"La truncación {order} no supera l + 1 = {form.l + 1}")
    for coordinate in (first, second):
        if not formal_identity_holds(coordinate, form):
            raise StructuralError("Las coordenadas no son buenas para la forma dada")

    inverse = revert(first.as_series()[:order + 1], order)
    relative = substitute(second.as_series()[:order + 1], inverse, order)
    lam = relative[1]
    mu = relative[form.l + 1] / lam if form.n < 0 else Fraction(0)
    sigma = GnElement(lam, mu)

    expected = act(sigma, first.form, order)
    if tuple(relative[1:]) != expected.coeffs:
        raise StructuralError("Los coeficientes altos no corresponden a ningún elemento de G_n")
    return sigma


# Reducciones graduadas y la aplicación phi_e

def coordinate_reduction(coordinate: AnnulusSeries, truncation: Optional[int] = None) -> GradedCoordinate:
    """
    Reducción graduada de una coordenada t = sum a_i f^i en el vértice

    Args:
        coordinate (AnnulusSeries): t en un parámetro f con |f| = 1 en el vértice
        truncation (int): Longitud máxima del jet reducido

    Returns:
        GradedCoordinate: Grado val(a_1), coeficiente principal y jet de a_i / a_1
    """
    order = _default_truncation(truncation)
    a_1 = coordinate.coefficient(1)
    if a_1.is_zero():
        raise NotDominant("El coeficiente a_1 de la coordenada es nulo o desconocido")
    grade, lead = a_1.leading()
    for index, value in coordinate.coeffs:
        bound = value.lower_bound()
        if index < 1 and bound <= grade:
            raise NotDominant(f"El coeficiente a_{index} no es menor que a_1")
        if index > 1 and bound < grade:
            raise NotDominant(f"El coeficiente a_{index} supera a a_1")

    inverse = a_1.inv()
    jet = [Fraction(1)]
    for index in range(2, order + 1):
        try:
            jet.append((coordinate.coefficient(index) * inverse).coefficient_at(0))
        except PrecisionExhausted:
            break
    return GradedCoordinate(grade, lead, tuple(jet))


def _gluing_sides(model: GluedModel, edge_id: str) -> Tuple[Gluing, GoodCoordinate, GoodCoordinate]:
    if edge_id in model.gluings:
        gluing = model.gluings[edge_id]
        return gluing, gluing.tail_side, gluing.head_side
    for gluing in model.gluings.values():
        if gluing.opposite == edge_id:
            return gluing, gluing.head_side, gluing.tail_side
    raise StructuralError(f"La arista {edge_id} no tiene pegado en el modelo")


def torsor_base(model: GluedModel, edge_id: str, truncation: Optional[int] = None) -> GradedCoordinate:
    """Reducción en la cola de la coordenada buena del pegado"""
    _, near, _ = _gluing_sides(model, edge_id)
    return coordinate_reduction(near.change.coordinate(), truncation)


def phi_e(model: GluedModel, edge_id: str, graded: GradedCoordinate,
          truncation: Optional[int] = None) -> GradedCoordinate:
    """
    Transporta un elemento del torsor graduado de la cola a la cabeza

    Args:
        model (GluedModel): Modelo con el pegado de la arista
        edge_id (str): Arista acotada orientada
        graded (GradedCoordinate): Elemento en la cola
        truncation (int): Longitud del jet reducido

    Returns:
        GradedCoordinate: Reducción en la cabeza de la inversa de un levantamiento
    """
    gluing, near, far = _gluing_sides(model, edge_id)
    base = coordinate_reduction(near.change.coordinate(), truncation)
    target = coordinate_reduction(far.change.coordinate(), truncation)
    if graded.quotient_jet(near.n) != base.quotient_jet(near.n):
        raise StructuralError(f"El elemento no pertenece al torsor de la arista {edge_id}")

    # t' = C / t en el solapamiento
    scale = graded.lead * base.lead.inverse()
    return target.scaled((scale * gluing.constant.graded_reduction()).inverse())


# Pruebas aleatorias de las leyes del torsor

def _random_rational(rng: np.random.Generator, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        if value or not nonzero:
            return value


def random_element(rng: np.random.Generator) -> GnElement:
    return GnElement(_random_rational(rng, nonzero=True), _random_rational(rng))


def random_form(rng: np.random.Generator, l: int) -> FormalForm:
    return FormalForm(-l, _random_rational(rng, nonzero=True), _random_rational(rng))


def run_torsor_suite(l: int, trials: int, seed: int = 0, truncation: Optional[int] = None) -> ValidationReport:
    """
    Leyes de grupo y transitividad sobre elementos aleatorios

    Args:
        l (int): -n, con l >= 1
        trials (int): Número de pares aleatorios
        seed (int): Semilla del generador
        truncation (int): Orden N

    Returns:
        ValidationReport: Registros group_law y transitivity por prueba
    """
    if l < 1:
        raise StructuralError("La prueba del torsor requiere l >= 1")
    rng = np.random.default_rng(seed)
    width = len(str(max(trials - 1, 0)))
    records = []
    for trial in range(trials):
        name = f"trial{trial:0{width}d}"
        form = random_form(rng, l)
        sigma, other = random_element(rng), random_element(rng)
        holds = verify_group_law(form, sigma, other, truncation)
        records.append(CheckRecord.of(
            "group_law", name, PASS if holds else FAIL, form=_form_text(form), sigma=sigma, other=other
        ))

        first, second = act(sigma, form, truncation), act(other, form, truncation)
        found = solve_transition(first, second, form)
        expected = gn_compose(gn_inverse(sigma, l), other, l)
        records.append(CheckRecord.of(
            "transitivity", name, PASS if found == expected else FAIL, found=found, expected=expected
        ))
    report = ValidationReport.from_records(records)
    app_logger.info(f"Prueba del torsor con l = {l}: {report.summary()}")
    return report


def _form_text(form: FormalForm) -> str:
    return f"({form.c_n} t^{form.n} + {form.r}) dt/t"


class TorsorService:
    """Pruebas de las leyes del torsor desde la línea de comandos"""

    @classmethod
    @handle_operation
    def torsor_check(cls, l: int, trials: int, seed: int = 0, truncation: Optional[int] = None) -> Dict:
        report = run_torsor_suite(l, trials, seed, truncation)
        passed = report.passed
        return {
            "success": passed,
            "message": f"Leyes del torsor con l = {l}: {report.summary()}",
            "exit_code": 0 if passed else 1,
            "report": report
        }
