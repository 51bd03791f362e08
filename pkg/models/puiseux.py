"""Aritmética exacta en el cuerpo de series de Puiseux sobre los racionales.

Un escalar guarda sus términos conocidos (exponente -> coeficiente) y una
precisión: los exponentes mayores o iguales a ella son desconocidos. La
precisión infinita marca un valor exacto.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, inf, lcm
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple, Union

from sympy import integer_nthroot

from config.settings import Settings
from models.errors import DivisionByZeroError, MalformedNumber, NonSplitRoot, NotSmall, PrecisionExhausted


INF = inf
Exponent = Union[Fraction, float]


def to_rational(value) -> Fraction:
    """
    Convierte enteros, fracciones y cadenas "p/q" a Fraction

    Args:
        value: Valor a convertir

    Returns:
        Fraction: Racional en forma reducida
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Un booleano no es un racional")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise MalformedNumber(f"No se puede interpretar {value!r} como racional") from None
    raise TypeError(f"No se puede interpretar {value!r} como racional")


def to_exponent(value) -> Exponent:
    """Como to_rational, aceptando además "inf" e infinito"""
    if isinstance(value, str) and value.strip() == "inf":
        return INF
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TypeError("Los exponentes finitos deben ser racionales exactos")
    return to_rational(value)


def rational_root(value: Fraction, n: int) -> Fraction:
    """
    Raíz n-ésima exacta de un racional

    Args:
        value (Fraction): Radicando
        n (int): Índice de la raíz

    Returns:
        Fraction: La raíz racional (la positiva cuando hay dos)
    """
    if value == 0:
        return Fraction(0)
    sign = 1
    if value < 0:
        if n % 2 == 0:
            raise NonSplitRoot(f"{value} no tiene raíz {n}-ésima en Q")
        sign = -1
    num, exact_num = integer_nthroot(abs(value.numerator), n)
    den, exact_den = integer_nthroot(value.denominator, n)
    if not (exact_num and exact_den):
        raise NonSplitRoot(f"{value} no tiene raíz {n}-ésima en Q")
    return sign * Fraction(int(num), int(den))


def binomial_coefficient(alpha: Fraction, k: int) -> Fraction:
    """Coeficiente binomial generalizado alpha sobre k"""
    result = Fraction(1)
    for j in range(k):
        result *= (alpha - j)
    return result / factorial(k)


@dataclass(frozen=True)
class PuiseuxScalar:
    """Elemento truncado de la unión de Q((t^(1/n)))"""

    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()
    prec: Exponent = INF

    def __post_init__(self):
        prec = to_exponent(self.prec)
        merged: Dict[Fraction, Fraction] = {}
        for exponent, coeff in self.terms:
            exponent = to_rational(exponent)
            merged[exponent] = merged.get(exponent, Fraction(0)) + to_rational(coeff)
        terms = tuple(sorted(
            (exponent, coeff) for exponent, coeff in merged.items()
            if coeff != 0 and exponent < prec
        ))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "prec", prec)

    # Constructores
    @classmethod
    def from_terms(cls, terms: Union[Mapping, Iterable], prec=INF) -> "PuiseuxScalar":
        items = terms.items() if isinstance(terms, Mapping) else terms
        return cls(tuple(items), prec)

    @classmethod
    def constant(cls, value) -> "PuiseuxScalar":
        return cls(((Fraction(0), to_rational(value)),))

    @classmethod
    def monomial(cls, coeff, exponent) -> "PuiseuxScalar":
        return cls(((to_rational(exponent), to_rational(coeff)),))

    @classmethod
    def zero(cls) -> "PuiseuxScalar":
        return cls()

    @classmethod
    def one(cls) -> "PuiseuxScalar":
        return cls.constant(1)

    @classmethod
    def zero_to(cls, prec) -> "PuiseuxScalar":
        """Cero conocido sólo hasta la precisión dada"""
        return cls((), prec)

    # Consultas
    def val(self) -> Optional[Exponent]:
        """
        Valuación: menor exponente conocido

        Returns:
            Fraction | INF | None: None cuando el valor es desconocido
        """
        if self.terms:
            return self.terms[0][0]
        if self.prec == INF:
            return INF
        return None

    def lower_bound(self) -> Exponent:
        """Cota inferior certificada de la valuación"""
        return self.terms[0][0] if self.terms else self.prec

    def is_exact(self) -> bool:
        return self.prec == INF

    def is_exact_zero(self) -> bool:
        return not self.terms and self.prec == INF

    def is_zero(self) -> bool:
        """Cero exacto o cero hasta la precisión"""
        return not self.terms

    def leading(self) -> Tuple[Fraction, Fraction]:
        """
        Término principal (exponente, coeficiente)

        Returns:
            Tuple[Fraction, Fraction]: El término de menor exponente
        """
        if self.is_exact_zero():
            raise DivisionByZeroError("El cero exacto no tiene término principal")
        if not self.terms:
            raise PrecisionExhausted(f"Término principal desconocido (O(t^{self.prec}))")
        return self.terms[0]

    def coefficient_at(self, exponent) -> Fraction:
        exponent = to_rational(exponent)
        if exponent >= self.prec:
            raise PrecisionExhausted(f"El coeficiente de t^{exponent} está más allá de la precisión")
        return dict(self.terms).get(exponent, Fraction(0))

    def ramification(self) -> int:
        """Denominador común de los exponentes"""
        return lcm(1, *(exponent.denominator for exponent, _ in self.terms))

    def agrees_with(self, other) -> bool:
        """Igualdad en todos los términos conocidos por ambos"""
        return (self - _coerce(other)).is_zero()

    # Aritmética
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PuiseuxScalar(self.terms + other.terms, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxScalar(tuple((e, -c) for e, c in self.terms), self.prec)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec + other.lower_bound(), other.prec + self.lower_bound())
        products = []
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                exponent = ea + eb
                if exponent >= prec:
                    break
                products.append((exponent, ca * cb))
        return PuiseuxScalar(tuple(products), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = PuiseuxScalar.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor) -> "PuiseuxScalar":
        """Multiplica por un racional"""
        factor = to_rational(factor)
        if factor == 0:
            return PuiseuxScalar.zero()
        return PuiseuxScalar(tuple((e, c * factor) for e, c in self.terms), self.prec)

    def shift(self, exponent) -> "PuiseuxScalar":
        """Multiplica por t^exponent"""
        exponent = to_rational(exponent)
        return PuiseuxScalar(tuple((e + exponent, c) for e, c in self.terms), self.prec + exponent)

    def truncate(self, prec) -> "PuiseuxScalar":
        return PuiseuxScalar(self.terms, min(self.prec, to_exponent(prec)))

    # Operaciones analíticas
    def _unit_part(self) -> Tuple[Fraction, Fraction, "PuiseuxScalar"]:
        """Descompone a = c t^q (1 + h) y devuelve (q, c, h)"""
        q, c = self.leading()
        h = PuiseuxScalar(tuple((e - q, a / c) for e, a in self.terms[1:]), self.prec - q)
        return q, c, h

    @staticmethod
    def _target(value: "PuiseuxScalar", base: Exponent, precision) -> Exponent:
        if value.prec != INF:
            return value.prec
        return base + (precision if precision is not None else Settings.DEFAULT_PRECISION)

    def inv(self, precision=None) -> "PuiseuxScalar":
        """
        Inverso multiplicativo

        Args:
            precision (Fraction): Precisión relativa para entradas exactas

        Returns:
            PuiseuxScalar: a^-1 con la precisión propagada
        """
        q, c, h = self._unit_part()
        series = _power_series(h, lambda k: Fraction((-1) ** k), self._target(h, 0, precision))
        return series.shift(-q).scale(1 / c)

    def nth_root(self, n: int, precision=None) -> "PuiseuxScalar":
        """
        Raíz n-ésima con coeficiente principal racional

        Args:
            n (int): Índice (>= 1)
            precision (Fraction): Precisión relativa para entradas exactas

        Returns:
            PuiseuxScalar: r con r^n = a hasta la precisión propagada
        """
        if n < 1:
            raise ValueError("El índice de la raíz debe ser positivo")
        if n == 1 or self.is_exact_zero():
            return self
        q, c, h = self._unit_part()
        root = rational_root(c, n)
        alpha = Fraction(1, n)
        series = _power_series(h, lambda k: binomial_coefficient(alpha, k), self._target(h, 0, precision))
        return series.shift(q / n).scale(root)

    def exp_small(self, precision=None) -> "PuiseuxScalar":
        """Serie exponencial para valuación positiva"""
        if self.is_exact_zero():
            return PuiseuxScalar.one()
        if self.lower_bound() <= 0:
            raise NotSmall(f"exp requiere valuación positiva: {self}")
        return _power_series(self, lambda k: Fraction(1, factorial(k)), self._target(self, 0, precision))

    def log_unit(self, precision=None) -> "PuiseuxScalar":
        """Logaritmo de una unidad principal 1 + b"""
        small = self - 1
        if small.is_exact_zero():
            return PuiseuxScalar.zero()
        if small.lower_bound() <= 0:
            raise NotSmall(f"log requiere una unidad 1 + b con val(b) > 0: {self}")
        target = self._target(small, small.lower_bound(), precision)
        return _power_series(
            small,
            lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), k),
            target
        )

    def graded_reduction(self) -> "GradedScalar":
        """
        Reducción graduada (valuación, coeficiente principal)

        Returns:
            GradedScalar: ZERO para el cero exacto
        """
        if self.is_exact_zero():
            return GradedScalar.ZERO
        grade, coeff = self.leading()
        return GradedScalar(grade, coeff)

    # Presentación
    def norm_display(self) -> str:
        """Valor absoluto |a| = 10^(-val(a))"""
        v = self.val()
        if v == INF:
            return "0"
        if v is None:
            return f"<= 10^({-self.prec})"
        return f"10^({-v})"

    def __str__(self):
        pieces = []
        for exponent, coeff in self.terms:
            if exponent == 0:
                body = f"{abs(coeff)}"
            else:
                power = "t" if exponent == 1 else f"t^({exponent})"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        if self.prec != INF:
            pieces.append(("+", f"O(t^({self.prec}))"))
        if not pieces:
            return "0"
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value):
    if isinstance(value, PuiseuxScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return PuiseuxScalar.constant(value)
    return NotImplemented


def _power_series(h: PuiseuxScalar, coefficient: Callable[[int], Fraction], target: Exponent) -> PuiseuxScalar:
    """Suma de coefficient(k) h^k módulo t^target, con val(h) > 0"""
    if h.is_exact_zero():
        return PuiseuxScalar.constant(coefficient(0))
    v = h.lower_bound()
    if v <= 0:
        raise NotSmall(f"La serie requiere valuación positiva: {h}")
    result = PuiseuxScalar.constant(coefficient(0))
    power = PuiseuxScalar.one()
    k = 1
    while k * v < target:
        power = (power * h).truncate(target)
        c = coefficient(k)
        if c:
            result = result + power.scale(c)
        k += 1
    return result.truncate(target)


@dataclass(frozen=True)
class GradedScalar:
    """Elemento del anillo graduado: cero o (grado, coeficiente)"""

    grade: Optional[Fraction] = None
    coeff: Fraction = Fraction(0)

    def __post_init__(self):
        if self.grade is None:
            if self.coeff != 0:
                raise ValueError("El cero graduado no lleva coeficiente")
            return
        object.__setattr__(self, "grade", to_rational(self.grade))
        object.__setattr__(self, "coeff", to_rational(self.coeff))
        if self.coeff == 0:
            raise ValueError("Un elemento graduado no nulo necesita coeficiente no nulo")

    def is_zero(self) -> bool:
        return self.grade is None

    def __mul__(self, other: "GradedScalar") -> "GradedScalar":
        if self.is_zero() or other.is_zero():
            return GradedScalar.ZERO
        return GradedScalar(self.grade + other.grade, self.coeff * other.coeff)

    def inverse(self) -> "GradedScalar":
        if self.is_zero():
            raise DivisionByZeroError("El cero graduado no es invertible")
        return GradedScalar(-self.grade, 1 / self.coeff)

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"{self.coeff}*t^({self.grade})"


GradedScalar.ZERO = GradedScalar()
