"""Coordenadas formales buenas en un punto de la curva reducida.

Las series formales en s se guardan como tuplas de racionales indexadas por
el grado, truncadas en un orden N fijo.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from models.errors import DivisionByZeroError, StructuralError
from models.puiseux import GradedScalar, to_rational


Series = List[Fraction]


def truncated_product(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> Series:
    """Producto de series módulo s^(order + 1)"""
    result = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            if y:
                result[i + j] += x * y
    return result


def truncated_power(a: Sequence[Fraction], k: int, order: int) -> Series:
    result = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(k):
        result = truncated_product(result, a, order)
    return result


def substitute(outer: Sequence[Fraction], inner: Sequence[Fraction], order: int) -> Series:
    """
    Composición outer(inner(s)) con inner sin término constante

    Args:
        outer (Sequence[Fraction]): Coeficientes de la serie exterior
        inner (Sequence[Fraction]): Serie interior con inner[0] = 0
        order (int): Grado de truncación

    Returns:
        List[Fraction]: Coeficientes hasta s^order
    """
    if inner and inner[0] != 0:
        raise StructuralError("La serie interior debe anularse en el origen")
    result = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k, value in enumerate(outer[:order + 1]):
        if k > 0:
            power = truncated_product(power, inner, order)
        if value:
            result = [x + value * y for x, y in zip(result, power)]
    return result


def revert(series: Sequence[Fraction], order: int) -> Series:
    """Inversa composicional de una serie con término lineal no nulo"""
    if series[1] == 0:
        raise DivisionByZeroError("La serie no tiene término lineal")
    result = [Fraction(0), 1 / series[1]] + [Fraction(0)] * (order - 1)
    for k in range(2, order + 1):
        composed = substitute(series, result, order)
        result[k] = -composed[k] / series[1]
    return result


@dataclass(frozen=True)
class FormalForm:
    """La forma (c_n t^n + r) dt/t sobre Q"""

    n: int
    c_n: Fraction
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c_n", to_rational(self.c_n))
        object.__setattr__(self, "r", to_rational(self.r))
        if self.c_n == 0:
            raise StructuralError("El coeficiente c_n de la forma formal debe ser no nulo")

    @property
    def l(self) -> int:
        return -self.n

    def rescaled(self, lam: Fraction) -> "FormalForm":
        """La misma forma en la coordenada lam * t"""
        return FormalForm(self.n, self.c_n * to_rational(lam) ** (-self.n), self.r)


@dataclass(frozen=True)
class GnElement:
    """Elemento (lam, mu) del grupo G_n = G_m semidirecto G_a"""

    lam: Fraction
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", to_rational(self.lam))
        object.__setattr__(self, "mu", to_rational(self.mu))
        if self.lam == 0:
            raise StructuralError("lambda debe ser no nulo")

    @classmethod
    def identity(cls) -> "GnElement":
        return cls(Fraction(1), Fraction(0))

    def __str__(self):
        return f"({self.lam}, {self.mu})"


@dataclass(frozen=True)
class FormalGoodCoordinate:
    """t = sum a_i s^i con la forma expresada en t"""

    coeffs: Tuple[Fraction, ...]
    form: FormalForm

    def __post_init__(self):
        coeffs = tuple(to_rational(value) for value in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[0] == 0:
            raise StructuralError("El coeficiente a_1 de una coordenada buena es no nulo")
        if self.form.n < 0 and any(coeffs[1:self.form.l]):
            raise StructuralError(f"Los coeficientes a_2, ..., a_{self.form.l} deben anularse")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, index: int) -> Fraction:
        """a_index con index >= 1"""
        if 1 <= index <= len(self.coeffs):
            return self.coeffs[index - 1]
        return Fraction(0)

    def as_series(self) -> Series:
        return [Fraction(0)] + list(self.coeffs)

    def agrees_with(self, other: "FormalGoodCoordinate") -> bool:
        size = min(self.order, other.order)
        return self.coeffs[:size] == other.coeffs[:size] and self.form == other.form


@dataclass(frozen=True)
class GradedCoordinate:
    """Reducción graduada (sum b_i f^i) (x) a_1 de una coordenada"""

    grade: Fraction
    coeff: Fraction
    jet: Tuple[Fraction, ...] = (Fraction(1),)

    def __post_init__(self):
        object.__setattr__(self, "grade", to_rational(self.grade))
        object.__setattr__(self, "coeff", to_rational(self.coeff))
        object.__setattr__(self, "jet", tuple(to_rational(value) for value in self.jet))
        if self.coeff == 0:
            raise StructuralError("El coeficiente principal de la reducción es nulo")
        if not self.jet or self.jet[0] != 1:
            raise StructuralError("El jet reducido empieza por 1")

    @property
    def lead(self) -> GradedScalar:
        return GradedScalar(self.grade, self.coeff)

    def scaled(self, factor: GradedScalar) -> "GradedCoordinate":
        lead = self.lead * factor
        return GradedCoordinate(lead.grade, lead.coeff, self.jet)

    def quotient_jet(self, n: int) -> Tuple[Fraction, ...]:
        """Jet módulo el subgrupo unipotente: grados 1..l si n = -l < 0, grado 1 si no"""
        size = -n if n < 0 else 1
        return self.jet[:size]
