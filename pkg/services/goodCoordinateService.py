"""Búsqueda de coordenadas buenas sobre un anillo.

Dada una forma con término dominante a_n s^n, se construye t = s u con u
unidad tal que la forma se escribe (c_n t^n + c_0) dt/t. Para n = 0 basta
una exponencial; para n distinto de cero se itera un punto fijo que
contrae la parte no binomial en cada paso.
"""
from fractions import Fraction
from typing import Dict, Optional

from config.settings import Settings
from models.annulusForm import (
    AnnulusForm, AnnulusSeries, CoordinateChange, GoodCoordinate, Skeleton, binomial_form,
    dominant_index, epsilon_gap, exp_series, log_series, pullback, residue, val_at
)
from models.errors import NonConvergent
from models.puiseux import INF, Exponent, PuiseuxScalar
from services.operationWrapper import handle_operation
from services.serializationService import JsonCodec
from utils.logger import app_logger


def _gap(series: AnnulusSeries, dominant: PuiseuxScalar, n: int) -> Exponent:
    """Brecha medida de una serie respecto del término dominante"""
    if series.is_zero():
        return INF
    xs = (series.skeleton.tail, series.skeleton.head)
    lowest = min(series.known_valuation(x) for x in xs)
    highest = max(val_at(dominant, n, x) for x in xs)
    return lowest - highest


def _relative_precision(series: AnnulusSeries, dominant: PuiseuxScalar, n: int, precision) -> Fraction:
    """Precisión relativa que la forma permite en algún extremo"""
    target = Fraction(precision) if precision is not None else Settings.DEFAULT_PRECISION
    if series.prec[0] == INF:
        return target
    xs = (series.skeleton.tail, series.skeleton.head)
    available = max(series.prec[j] - val_at(dominant, n, xs[j]) for j in (0, 1))
    return min(target, available)


def _working_skeleton(series: AnnulusSeries, n: int) -> Skeleton:
    """Cierra los extremos abiertos donde el término dominante empata"""
    skeleton = series.skeleton
    dominant = series.coefficient(n)
    margin = skeleton.length * Settings.GLUING_MARGIN
    margins = [Fraction(0), Fraction(0)]
    for j, (x, closed) in enumerate(skeleton.endpoints()):
        if closed:
            continue
        level = val_at(dominant, n, x)
        tied = any(value.lower_bound() + index * x == level for index, value in series.coeffs if index != n)
        if tied or series.prec[j] == level:
            margins[j] = margin
    if margins == [0, 0]:
        return skeleton
    app_logger.debug(f"Extremo abierto con empate: se recorta el esqueleto en {margins}")
    return skeleton.shrunk(*margins)


def _check_residual(form: AnnulusForm, binomial: AnnulusForm, change: CoordinateChange,
                    precision: Fraction) -> AnnulusSeries:
    return form.series - pullback(binomial, change, precision).series


def good_coordinate(form: AnnulusForm, precision=None, max_iterations: Optional[int] = None) -> GoodCoordinate:
    """
    Construye una coordenada buena para la forma

    Args:
        form (AnnulusForm): Forma con término dominante
        precision (Fraction): Precisión relativa de trabajo
        max_iterations (int): Tope de iteraciones (por defecto Settings.MAX_ITERATIONS)

    Returns:
        GoodCoordinate: Cambio t = s u y coeficientes (c_n, c_0)
    """
    series = form.series
    n = dominant_index(series)
    c_0 = residue(form)
    dominant = series.coefficient(n)
    limit = max_iterations if max_iterations is not None else Settings.MAX_ITERATIONS

    if all(index in (0, n) for index, _ in series.coeffs):
        app_logger.debug(f"La forma ya es buena (n = {n})")
        working = _relative_precision(series, dominant, n, precision)
        return GoodCoordinate(CoordinateChange.identity(series.skeleton), n,
                              PuiseuxScalar.zero() if n == 0 else dominant, c_0, 0, (INF,), working)

    if n == 0:
        return _exponential_branch(form, c_0, precision)
    return _fixed_point_branch(form, n, precision, limit)


def _exponential_branch(form: AnnulusForm, c_0: PuiseuxScalar, precision) -> GoodCoordinate:
    """n = 0: la forma es a_0 (1 + D b) con u = exp(b)"""
    series = form.series
    working = _relative_precision(series, c_0, 0, precision)
    g0 = epsilon_gap(form)
    integral = AnnulusSeries(
        tuple((index, value.scale(Fraction(1, index))) for index, value in series.coeffs if index != 0),
        series.skeleton,
        None,
        series.prec
    )
    b = integral * c_0.inv(working)
    change = CoordinateChange(exp_series(b, working))
    binomial = binomial_form(PuiseuxScalar.zero(), 0, c_0, series.skeleton)

    residual = _check_residual(form, binomial, change, working)
    if not residual.is_zero():
        raise NonConvergent(f"La exponencial deja un residuo no nulo: {residual}")
    app_logger.debug(f"Coordenada buena para n = 0 con brecha inicial {g0}")
    return GoodCoordinate(change, 0, PuiseuxScalar.zero(), c_0, 1, (g0, INF), working)


def _fixed_point_branch(form: AnnulusForm, n: int, precision, limit: int) -> GoodCoordinate:
    """
    Itera u_{k+1}^n = 1 + (n / a_n) s^-n (N - a_0 log u_k)

    donde N es la primitiva de la parte no binomial. El residuo tras el paso
    k es -a_0 D(log u_k - log u_{k-1}).
    """
    skeleton = _working_skeleton(form.series, n)
    series = form.series if skeleton == form.series.skeleton else form.series.restricted(skeleton)
    form = AnnulusForm(series)
    # La dominancia debe ser estricta en el esqueleto de trabajo
    dominant_index(series)

    a_n = series.coefficient(n)
    a_0 = series.coefficient(0)
    working = _relative_precision(series, a_n, n, precision)
    xs = (skeleton.tail, skeleton.head)

    integral = AnnulusSeries(
        tuple((index, value.scale(Fraction(1, index)))
              for index, value in series.coeffs if index not in (0, n)),
        skeleton,
        None,
        series.prec
    )
    factor = a_n.inv(working).scale(n)
    contraction = a_0.lower_bound() - max(val_at(a_n, n, x) for x in xs)
    binomial = binomial_form(a_n, n, a_0, skeleton)

    g0 = epsilon_gap(form)
    gaps = [g0]
    log_unit = AnnulusSeries.zero(skeleton)
    app_logger.debug(f"Punto fijo para n = {n}: brecha inicial {g0}, contracción {contraction}")

    for k in range(1, limit + 1):
        h = ((integral - log_unit * a_0) * factor).shift(-n)
        log_unit = log_series(h + 1, working) * Fraction(1, n)
        change = CoordinateChange(exp_series(log_unit, working))

        residual = _check_residual(form, binomial, change, working)
        gap = _gap(residual, a_n, n)
        gaps.append(gap)
        app_logger.debug(f"Iteración {k}: brecha {gap}")

        if gap == INF:
            return GoodCoordinate(change, n, a_n, a_0, k, tuple(gaps), working)
        if gap < g0 + k * contraction:
            raise NonConvergent(f"La brecha {gap} no alcanza la cota {g0 + k * contraction} en la iteración {k}")

    raise NonConvergent(f"Sin convergencia tras {limit} iteraciones (brechas {gaps[-3:]})")


def verify_good_coordinate(form: AnnulusForm, coordinate: GoodCoordinate) -> bool:
    """El pullback de la forma binomial coincide con la forma en los coeficientes conocidos"""
    series = form.series
    if series.skeleton != coordinate.skeleton:
        series = series.restricted(coordinate.skeleton)
    pulled = pullback(coordinate.binomial(), coordinate.change, coordinate.precision).series
    return series.agrees_with(pulled)


class GoodCoordinateService:
    """Coordenadas buenas para formas leídas de archivos"""

    @classmethod
    @handle_operation
    def good_coordinate_file(cls, path: str, precision=None) -> Dict:
        """
        Calcula y verifica una coordenada buena

        Args:
            path (str): Archivo JSON con la forma {"L", "closed", "coeffs", "window"}
            precision (Fraction): Precisión relativa de trabajo

        Returns:
            Dict: Respuesta con la coordenada en "document"
        """
        document = JsonCodec.load_file(path)
        form = JsonCodec.annulus_form_from_json(document)
        coordinate = good_coordinate(form, precision)
        verified = verify_good_coordinate(form, coordinate)
        if not verified:
            raise NonConvergent("El pullback de la forma binomial no reproduce la forma")
        result = JsonCodec.good_coordinate_to_json(coordinate)
        result["verified"] = verified
        return {
            "success": True,
            "message": f"Coordenada buena con n = {coordinate.n} tras {coordinate.iterations} iteraciones",
            "exit_code": 0,
            "document": result,
            "coordinate": coordinate
        }
