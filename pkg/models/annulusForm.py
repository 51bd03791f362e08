"""Formas diferenciales de Laurent sobre anillos orientados.

Un punto x del esqueleto tiene val(s) = x. La precisión de una serie se guarda
en los dos extremos: toda contribución desconocida c s^i cumple
val(c) + i x >= P_x en ambos, de modo que el coeficiente i se conoce módulo
t^max(P_x - i x).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple, Union

from config.settings import Settings
from models.errors import NoDominantTerm, NotSmall, PrecisionExhausted, StructuralError, WindowTooSmall
from models.puiseux import INF, Exponent, PuiseuxScalar, binomial_coefficient, to_exponent, to_rational


@dataclass(frozen=True)
class Skeleton:
    """Intervalo [start, start + length] con extremos abiertos o cerrados"""

    length: Fraction
    closed: Tuple[bool, bool] = (True, True)
    start: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "length", to_rational(self.length))
        object.__setattr__(self, "start", to_rational(self.start))
        object.__setattr__(self, "closed", (bool(self.closed[0]), bool(self.closed[1])))
        if self.length <= 0:
            raise StructuralError(f"La longitud del esqueleto debe ser positiva: {self.length}")

    @property
    def tail(self) -> Fraction:
        return self.start

    @property
    def head(self) -> Fraction:
        return self.start + self.length

    def endpoints(self) -> Tuple[Tuple[Fraction, bool], Tuple[Fraction, bool]]:
        return (self.tail, self.closed[0]), (self.head, self.closed[1])

    def reversed(self) -> "Skeleton":
        """Esqueleto visto desde la coordenada c/s con val(c) = tail + head"""
        return Skeleton(self.length, (self.closed[1], self.closed[0]), self.start)

    def shrunk(self, tail_margin, head_margin) -> "Skeleton":
        tail_margin, head_margin = to_rational(tail_margin), to_rational(head_margin)
        return Skeleton(
            self.length - tail_margin - head_margin,
            (self.closed[0] or tail_margin > 0, self.closed[1] or head_margin > 0),
            self.start + tail_margin
        )

    def contains(self, other: "Skeleton") -> bool:
        return self.tail <= other.tail and other.head <= self.head


def val_at(a: PuiseuxScalar, i: int, x) -> Exponent:
    """
    Valuación del monomio a s^i en el punto x del esqueleto

    Args:
        a (PuiseuxScalar): Coeficiente
        i (int): Índice
        x (Fraction): Punto del esqueleto

    Returns:
        Fraction: val(a) + i x
    """
    v = a.val()
    if v is None:
        raise PrecisionExhausted(f"Valuación desconocida para {a}")
    return v + i * to_rational(x)


def _scalar(value) -> PuiseuxScalar:
    if isinstance(value, PuiseuxScalar):
        return value
    return PuiseuxScalar.constant(value)


@dataclass(frozen=True)
class AnnulusSeries:
    """Serie de Laurent sum a_i s^i sobre un esqueleto, con precisión en los extremos"""

    coeffs: Tuple[Tuple[int, PuiseuxScalar], ...]
    skeleton: Skeleton
    window: Optional[Tuple[int, int]] = None
    prec: Tuple[Exponent, Exponent] = (INF, INF)

    def __post_init__(self):
        items = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        merged: Dict[int, PuiseuxScalar] = {}
        for index, value in items:
            index = int(index)
            value = _scalar(value)
            merged[index] = merged[index] + value if index in merged else value

        x0, x1 = self.skeleton.tail, self.skeleton.head
        p0, p1 = (to_exponent(p) for p in self.prec)
        for index, value in merged.items():
            if value.prec != INF:
                p0 = min(p0, value.prec + index * x0)
                p1 = min(p1, value.prec + index * x1)
        # Un término desconocido no nulo tiene valuación finita en ambos extremos
        if p0 == INF or p1 == INF:
            p0 = p1 = INF
        object.__setattr__(self, "prec", (p0, p1))

        coeffs = []
        for index in sorted(merged):
            value = merged[index].truncate(self.coefficient_precision(index))
            if not value.is_zero():
                coeffs.append((index, value))
        object.__setattr__(self, "coeffs", tuple(coeffs))

        if self.window is None:
            indices = [index for index, _ in coeffs] + [0]
            window = (min(indices), max(indices))
        else:
            window = (int(self.window[0]), int(self.window[1]))
            if window[0] > window[1]:
                raise StructuralError(f"Ventana vacía: {window}")
            for index, _ in coeffs:
                if not window[0] <= index <= window[1]:
                    raise StructuralError(f"El índice {index} está fuera de la ventana {window}")
        object.__setattr__(self, "window", window)

    # Constructores
    @classmethod
    def constant(cls, value, skeleton: Skeleton) -> "AnnulusSeries":
        return cls(((0, _scalar(value)),), skeleton)

    @classmethod
    def zero(cls, skeleton: Skeleton) -> "AnnulusSeries":
        return cls((), skeleton)

    @classmethod
    def _settled(cls, coeffs: Dict[int, PuiseuxScalar], skeleton: Skeleton,
                 natural: Tuple[int, int], prec) -> "AnnulusSeries":
        """Resultado aritmético: la ventana se ajusta a los índices conocidos"""
        series = cls(tuple(coeffs.items()), skeleton, None, prec)
        indices = [index for index, _ in series.coeffs]
        if natural[0] <= 0 <= natural[1]:
            indices.append(0)
        if not indices:
            indices = [natural[0]]
        object.__setattr__(series, "window", (min(indices), max(indices)))
        return series

    # Consultas
    def coefficient_precision(self, index: int) -> Exponent:
        x0, x1 = self.skeleton.tail, self.skeleton.head
        return max(self.prec[0] - index * x0, self.prec[1] - index * x1)

    def coefficient(self, index: int) -> PuiseuxScalar:
        for stored, value in self.coeffs:
            if stored == index:
                return value
        return PuiseuxScalar.zero_to(self.coefficient_precision(index))

    def as_dict(self) -> Dict[int, PuiseuxScalar]:
        return dict(self.coeffs)

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.prec[0] == INF

    def is_zero(self) -> bool:
        """Ningún coeficiente conocido es no nulo"""
        return not self.coeffs

    def precision_at(self, x) -> Exponent:
        """Cota de lo desconocido en un punto interior (interpolación lineal)"""
        p0, p1 = self.prec
        if p0 == INF:
            return INF
        x = to_rational(x)
        return p0 + (p1 - p0) * (x - self.skeleton.tail) / self.skeleton.length

    def known_valuation(self, x) -> Exponent:
        x = to_rational(x)
        values = [value.lower_bound() + index * x for index, value in self.coeffs]
        return min(values) if values else INF

    def lower_bound(self, x) -> Exponent:
        """Cota inferior certificada de la valuación en x"""
        return min(self.known_valuation(x), self.precision_at(x))

    def agrees_with(self, other: "AnnulusSeries") -> bool:
        return (self - other).is_zero()

    # Transformaciones
    def capped(self, prec) -> "AnnulusSeries":
        return AnnulusSeries(self.coeffs, self.skeleton, self.window,
                             (min(self.prec[0], prec[0]), min(self.prec[1], prec[1])))

    def restricted(self, skeleton: Skeleton) -> "AnnulusSeries":
        if not self.skeleton.contains(skeleton):
            raise StructuralError("El sub-esqueleto no está contenido en el esqueleto")
        prec = (self.precision_at(skeleton.tail), self.precision_at(skeleton.head))
        return AnnulusSeries(self.coeffs, skeleton, self.window, prec)

    def shift(self, k: int) -> "AnnulusSeries":
        """Multiplica por s^k"""
        x0, x1 = self.skeleton.tail, self.skeleton.head
        return AnnulusSeries(
            tuple((index + k, value) for index, value in self.coeffs),
            self.skeleton,
            (self.window[0] + k, self.window[1] + k),
            (self.prec[0] + k * x0, self.prec[1] + k * x1)
        )

    def log_derivative(self) -> "AnnulusSeries":
        """Aplica s d/ds"""
        return AnnulusSeries(
            tuple((index, value.scale(index)) for index, value in self.coeffs if index != 0),
            self.skeleton, self.window, self.prec
        )

    def _coerce(self, other) -> "AnnulusSeries":
        if isinstance(other, AnnulusSeries):
            if other.skeleton != self.skeleton:
                raise StructuralError("Las series viven en esqueletos distintos")
            return other
        if isinstance(other, (PuiseuxScalar, int, Fraction)):
            return AnnulusSeries.constant(other, self.skeleton)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        coeffs = self.as_dict()
        for index, value in other.coeffs:
            coeffs[index] = coeffs[index] + value if index in coeffs else value
        natural = (min(self.window[0], other.window[0]), max(self.window[1], other.window[1]))
        prec = (min(self.prec[0], other.prec[0]), min(self.prec[1], other.prec[1]))
        return AnnulusSeries._settled(coeffs, self.skeleton, natural, prec)

    __radd__ = __add__

    def __neg__(self):
        return AnnulusSeries(tuple((index, -value) for index, value in self.coeffs),
                             self.skeleton, self.window, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        xs = (self.skeleton.tail, self.skeleton.head)
        prec = tuple(
            min(self.prec[j] + other.lower_bound(xs[j]), other.prec[j] + self.lower_bound(xs[j]))
            for j in (0, 1)
        )
        coeffs: Dict[int, PuiseuxScalar] = {}
        for i, a in self.coeffs:
            va = a.lower_bound()
            for j, b in other.coeffs:
                k = i + j
                vb = b.lower_bound()
                if va + vb + k * xs[0] >= prec[0] and va + vb + k * xs[1] >= prec[1]:
                    continue
                product = a * b
                coeffs[k] = coeffs[k] + product if k in coeffs else product
        natural = (self.window[0] + other.window[0], self.window[1] + other.window[1])
        return AnnulusSeries._settled(coeffs, self.skeleton, natural, prec)

    __rmul__ = __mul__

    def __str__(self):
        body = " + ".join(f"({value})*s^{index}" for index, value in self.coeffs) or "0"
        return f"{body}  [P = {self.prec[0]}, {self.prec[1]}]"


@dataclass(frozen=True)
class AnnulusForm:
    """La forma series * ds/s en la coordenada actual"""

    series: AnnulusSeries

    @property
    def skeleton(self) -> Skeleton:
        return self.series.skeleton

    @classmethod
    def from_coefficients(cls, coeffs, skeleton: Skeleton, window=None, prec=(INF, INF)) -> "AnnulusForm":
        return cls(AnnulusSeries(tuple(dict(coeffs).items()), skeleton, window, prec))


@dataclass(frozen=True)
class CoordinateChange:
    """t = s u (preserva orientación) o t = c s^-1 u (la invierte)"""

    unit: AnnulusSeries
    reversing: bool = False
    constant: PuiseuxScalar = field(default_factory=PuiseuxScalar.one)

    @classmethod
    def identity(cls, skeleton: Skeleton) -> "CoordinateChange":
        return cls(AnnulusSeries.constant(1, skeleton))

    @property
    def skeleton(self) -> Skeleton:
        return self.unit.skeleton

    def coordinate(self) -> AnnulusSeries:
        """La serie de t en la variable s"""
        if self.reversing:
            return (self.unit * self.constant).shift(-1)
        return self.unit.shift(1)

    def is_identity(self) -> bool:
        return not self.reversing and self.unit.coeffs == ((0, PuiseuxScalar.one()),) \
            and self.unit.prec[0] == INF


# Dominancia

def _dominates(n_values, other_values, closed) -> bool:
    diffs = [o - v for v, o in zip(n_values, other_values)]
    for diff, is_closed in zip(diffs, closed):
        if diff < 0 or (is_closed and diff == 0):
            return False
    return max(diffs) > 0


def dominant_index(series: AnnulusSeries) -> int:
    """
    Índice dominante en todo el esqueleto

    Args:
        series (AnnulusSeries): Serie a analizar

    Returns:
        int: El único n con |a_n s^n| estrictamente máximo
    """
    skeleton = series.skeleton
    xs = (skeleton.tail, skeleton.head)
    lines = [(index, tuple(value.lower_bound() + index * x for x in xs)) for index, value in series.coeffs]
    for n, n_values in lines:
        if all(_dominates(n_values, values, skeleton.closed) for index, values in lines if index != n):
            if series.prec[0] == INF or _dominates(n_values, series.prec, skeleton.closed):
                return n
    raise NoDominantTerm(f"Ningún índice domina en el esqueleto de longitud {skeleton.length}")


def level_slope(form: AnnulusForm) -> int:
    """Pendiente de la función de nivel: el índice dominante"""
    return dominant_index(form.series)


def residue(form: AnnulusForm) -> PuiseuxScalar:
    """
    Residuo a lo largo del anillo: el coeficiente a_0

    Args:
        form (AnnulusForm): Forma en la coordenada actual

    Returns:
        PuiseuxScalar: a_0 con su precisión
    """
    lo, hi = form.series.window
    if not lo <= 0 <= hi:
        raise WindowTooSmall(f"La ventana [{lo}, {hi}] no contiene el índice 0")
    return form.series.coefficient(0)


def is_good(form: AnnulusForm) -> bool:
    """Forma binomial con el término c_n s^n estrictamente dominante"""
    try:
        n = dominant_index(form.series)
    except NoDominantTerm:
        return False
    return all(index in (0, n) for index, _ in form.series.coeffs)


def epsilon_gap(form: AnnulusForm) -> Exponent:
    """
    Brecha de valuación entre la parte no binomial y el término dominante

    Se toma la lectura uniforme: el mínimo de val(a_i) + i x sobre los términos no binomiales y los dos
    extremos, menos el máximo de val_at del término dominante en los extremos.

    Returns:
        Fraction | INF: INF si la forma es buena
    """
    series = form.series
    n = dominant_index(series)
    xs = (series.skeleton.tail, series.skeleton.head)
    others = [(index, value) for index, value in series.coeffs if index not in (0, n)]
    if not others:
        return INF
    lowest = min(value.lower_bound() + index * x for index, value in others for x in xs)
    dominant = series.coefficient(n)
    highest = max(val_at(dominant, n, x) for x in xs)
    return lowest - highest


# Series de elementos pequeños

def _default_precision(precision) -> Fraction:
    return to_rational(precision) if precision is not None else Settings.DEFAULT_PRECISION


def _series_in(small: AnnulusSeries, coefficient: Callable[[int], Fraction], precision=None) -> AnnulusSeries:
    """Suma de coefficient(k) small^k con la cota del resto certificada"""
    target = _default_precision(precision)
    skeleton = small.skeleton
    if small.is_exact_zero():
        return AnnulusSeries.constant(coefficient(0), skeleton)
    bounds = [small.lower_bound(x) for x in (skeleton.tail, skeleton.head)]
    for bound, is_closed in zip(bounds, skeleton.closed):
        if bound < 0 or (is_closed and bound == 0):
            raise NotSmall("La serie requiere un elemento pequeño en todo el esqueleto")
    positive = [bound for bound in bounds if bound > 0]
    if not positive:
        raise NotSmall("La serie requiere un elemento pequeño en el interior del esqueleto")
    terms = max(ceil(target / bound) if bound != INF else 1 for bound in positive)
    cap = (target, target)

    result = AnnulusSeries.constant(coefficient(0), skeleton)
    power = AnnulusSeries.constant(1, skeleton)
    for k in range(1, terms):
        power = (power * small).capped(cap)
        c = coefficient(k)
        if c:
            result = result + power * c
    remainder = tuple(terms * bound if bound != INF else INF for bound in bounds)
    return result.capped((min(target, remainder[0]), min(target, remainder[1])))


def exp_series(small: AnnulusSeries, precision=None) -> AnnulusSeries:
    return _series_in(small, lambda k: Fraction(1, factorial(k)), precision)


def log_series(unit: AnnulusSeries, precision=None) -> AnnulusSeries:
    """Logaritmo de una unidad principal 1 + h"""
    return _series_in(unit - 1, lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), k), precision)


def binomial_series(small: AnnulusSeries, alpha, precision=None) -> AnnulusSeries:
    """(1 + small)^alpha"""
    alpha = to_rational(alpha)
    return _series_in(small, lambda k: binomial_coefficient(alpha, k), precision)


def inverse_series(series: AnnulusSeries, precision=None) -> AnnulusSeries:
    """
    Inverso de una serie con término dominante

    Args:
        series (AnnulusSeries): a_m s^m (1 + h)
        precision (Fraction): Precisión relativa de trabajo

    Returns:
        AnnulusSeries: a_m^-1 s^-m (1 - h + h^2 - ...)
    """
    m = dominant_index(series)
    lead_inverse = series.coefficient(m).inv(precision)
    small = (series * lead_inverse).shift(-m) - 1
    return (_series_in(small, lambda k: Fraction((-1) ** k), precision) * lead_inverse).shift(-m)


def power_series(series: AnnulusSeries, k: int, precision=None) -> AnnulusSeries:
    """Potencia entera"""
    base = series if k >= 0 else inverse_series(series, precision)
    result = AnnulusSeries.constant(1, series.skeleton)
    for _ in range(abs(k)):
        result = result * base
    return result


# Cambio de coordenadas

def pullback(form: AnnulusForm, change: CoordinateChange, precision=None) -> AnnulusForm:
    """
    Expresa la forma en la coordenada anterior s

    Args:
        form (AnnulusForm): Forma en la coordenada t
        change (CoordinateChange): t en función de s
        precision (Fraction): Precisión relativa de las series auxiliares

    Returns:
        AnnulusForm: La misma forma en la coordenada s
    """
    unit = change.unit
    skeleton = unit.skeleton
    coordinate = change.coordinate()
    sign = -1 if change.reversing else 1
    offset = change.constant.val() if change.reversing else None
    if change.reversing and offset is None:
        raise PrecisionExhausted("La constante del cambio que invierte la orientación es desconocida")

    def source_point(x):
        return offset - x if change.reversing else x

    for x in (skeleton.tail, skeleton.head):
        point = source_point(x)
        if not form.skeleton.tail <= point <= form.skeleton.head:
            raise StructuralError("La forma no cubre el esqueleto del cambio de coordenadas")

    lo, hi = form.series.window
    positive = AnnulusSeries.constant(1, skeleton)
    negative = AnnulusSeries.constant(1, skeleton)
    inverse = inverse_series(coordinate, precision) if lo < 0 else None
    substituted = AnnulusSeries.zero(skeleton)
    for index in range(0, hi + 1):
        if index > 0:
            positive = positive * coordinate
        value = form.series.coefficient(index) if lo <= index else None
        if value is not None and not value.is_zero():
            substituted = substituted + positive * value
    for index in range(-1, lo - 1, -1):
        negative = negative * inverse
        value = form.series.coefficient(index)
        if not value.is_zero():
            substituted = substituted + negative * value

    dlog = unit.log_derivative() * inverse_series(unit, precision) + sign
    result = substituted * dlog
    unknown = tuple(
        form.series.precision_at(source_point(x)) + dlog.lower_bound(x)
        for x in (skeleton.tail, skeleton.head)
    )
    return AnnulusForm(result.capped(unknown))


# Coordenadas buenas

def binomial_form(c_n: PuiseuxScalar, n: int, c_0: PuiseuxScalar, skeleton: Skeleton) -> AnnulusForm:
    """La forma (c_n t^n + c_0) dt/t"""
    coeffs = {0: c_0} if n == 0 else {n: c_n, 0: c_0}
    return AnnulusForm(AnnulusSeries(tuple(coeffs.items()), skeleton))


@dataclass(frozen=True)
class GoodCoordinate:
    """Cambio de coordenadas t = s u junto con la forma binomial resultante"""

    change: CoordinateChange
    n: int
    c_n: PuiseuxScalar
    c_0: PuiseuxScalar
    iterations: int
    gaps: Tuple[Exponent, ...]
    precision: Fraction

    @property
    def skeleton(self) -> Skeleton:
        return self.change.skeleton

    def binomial(self) -> AnnulusForm:
        return binomial_form(self.c_n, self.n, self.c_0, self.skeleton)

    def as_tuple(self):
        return self.change, self.c_n, self.c_0, self.iterations
