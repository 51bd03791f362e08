"""Polinomios y diferenciales racionales f(z) dz con coeficientes de Puiseux."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from models.annulusForm import AnnulusForm, AnnulusSeries, Skeleton, dominant_index, inverse_series
from models.errors import DivisionByZeroError, NoDominantTerm, PoleInAnnulus, PrecisionExhausted, ZeroForm
from models.puiseux import INF, Exponent, PuiseuxScalar


def _scalar(value) -> PuiseuxScalar:
    if isinstance(value, PuiseuxScalar):
        return value
    return PuiseuxScalar.constant(value)


@dataclass(frozen=True)
class Polynomial:
    """Polinomio en z con coeficientes en orden creciente de grado"""

    coeffs: Tuple[PuiseuxScalar, ...] = ()

    def __post_init__(self):
        coeffs = [_scalar(value) for value in self.coeffs]
        while coeffs and coeffs[-1].is_exact_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_coefficients(cls, values: Iterable) -> "Polynomial":
        return cls(tuple(values))

    @classmethod
    def from_roots(cls, roots: Iterable[PuiseuxScalar]) -> "Polynomial":
        """Producto de los factores (z - q)"""
        result = cls((1,))
        for root in roots:
            result = result * cls((-_scalar(root), 1))
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, index: int) -> PuiseuxScalar:
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return PuiseuxScalar.zero()

    def lowest_index(self) -> int:
        """Primer coeficiente que no es el cero exacto"""
        for index, value in enumerate(self.coeffs):
            if not value.is_exact_zero():
                return index
        raise DivisionByZeroError("El polinomio nulo no tiene término más bajo")

    def min_valuation(self) -> Exponent:
        """
        Valuación de Gauss: mínimo de las valuaciones de los coeficientes

        Returns:
            Fraction: INF para el polinomio nulo
        """
        known = [value.val() for value in self.coeffs if value.val() is not None]
        unknown = [value.prec for value in self.coeffs if value.val() is None]
        lowest = min(known, default=INF)
        if unknown and min(unknown) <= lowest:
            raise PrecisionExhausted("La valuación de Gauss depende de coeficientes desconocidos")
        return lowest

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-value for value in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial()
        products: List[PuiseuxScalar] = [PuiseuxScalar.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                products[i + j] = products[i + j] + a * b
        return Polynomial(tuple(products))

    def scale(self, factor) -> "Polynomial":
        factor = _scalar(factor)
        return Polynomial(tuple(value * factor for value in self.coeffs))

    def evaluate(self, point) -> PuiseuxScalar:
        point = _scalar(point)
        result = PuiseuxScalar.zero()
        for value in reversed(self.coeffs):
            result = result * point + value
        return result

    def taylor_shift(self, point) -> "Polynomial":
        """El polinomio p(w + q) en la variable w"""
        linear = Polynomial((_scalar(point), 1))
        result = Polynomial()
        for value in reversed(self.coeffs):
            result = result * linear + Polynomial((value,))
        return result

    def reversed(self) -> "Polynomial":
        """w^deg p(1/w)"""
        return Polynomial(tuple(reversed(self.coeffs)))

    def map_coefficients(self, function) -> "Polynomial":
        return Polynomial(tuple(function(value) for value in self.coeffs))

    def __str__(self):
        pieces = [f"({value})*z^{index}" for index, value in enumerate(self.coeffs) if not value.is_exact_zero()]
        return " + ".join(pieces) or "0"


def series_quotient(num: Polynomial, den: Polynomial, count: int, precision=None) -> Tuple[int, List[PuiseuxScalar]]:
    """
    Desarrollo de N/G como w^m (c_0 + c_1 w + ...)

    Args:
        num (Polynomial): Numerador N(w)
        den (Polynomial): Denominador G(w)
        count (int): Número de coeficientes c_j a calcular
        precision (Fraction): Precisión relativa para invertir G

    Returns:
        Tuple[int, List[PuiseuxScalar]]: (m, [c_0, ..., c_{count-1}])
    """
    vn, vg = num.lowest_index(), den.lowest_index()
    numerator = num.coeffs[vn:]
    denominator = den.coeffs[vg:]
    lead_inverse = denominator[0].inv(precision)
    quotient: List[PuiseuxScalar] = []
    for j in range(count):
        acc = numerator[j] if j < len(numerator) else PuiseuxScalar.zero()
        for k in range(1, min(j, len(denominator) - 1) + 1):
            acc = acc - denominator[k] * quotient[j - k]
        quotient.append(acc * lead_inverse)
    return vn - vg, quotient


@dataclass(frozen=True)
class LocalExpansion:
    """Desarrollo (sum a_i w^i) dw/w en un parámetro local w"""

    start: int
    coeffs: Tuple[PuiseuxScalar, ...]
    bound: Exponent
    denominator: Polynomial

    def coefficient(self, index: int) -> PuiseuxScalar:
        position = index - self.start
        if position < 0:
            return PuiseuxScalar.zero()
        if position >= len(self.coeffs):
            raise PrecisionExhausted(f"El índice {index} excede el desarrollo calculado")
        return self.coeffs[position]

    def to_annulus(self, skeleton: Skeleton) -> AnnulusForm:
        """
        Forma sobre el anillo, con la cota de lo omitido en cada extremo

        Args:
            skeleton (Skeleton): Anillo val(w) en [tail, head] dentro del disco

        Returns:
            AnnulusForm: Serie con ventana [min(start, 0), start + len - 1]
        """
        lead = self.denominator.coeffs[0].val()
        drift = Fraction(0)
        for k, value in enumerate(self.denominator.coeffs[1:], start=1):
            v = value.lower_bound()
            if v == INF:
                continue
            gap = v + k * skeleton.tail - lead
            if gap < 0 or (gap == 0 and skeleton.closed[0]):
                raise PoleInAnnulus(f"El denominador se anula dentro del anillo (índice {k})")
            drift = max(drift, (lead - v) / k)

        top = self.start + len(self.coeffs) - 1
        indices = range(self.start, top + 1)
        prec = tuple(
            self.bound + self.start * drift + (top + 1) * (x - drift)
            for x in (skeleton.tail, skeleton.head)
        )
        return AnnulusForm(AnnulusSeries(
            tuple(zip(indices, self.coeffs)),
            skeleton,
            (min(self.start, 0), max(top, 0)),
            prec
        ))


@dataclass(frozen=True)
class RationalDifferential:
    """La forma f(z) dz con f = num / den"""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise DivisionByZeroError("El denominador de la forma es nulo")

    @classmethod
    def from_coefficients(cls, num: Sequence, den: Sequence) -> "RationalDifferential":
        return cls(Polynomial.from_coefficients(num), Polynomial.from_coefficients(den))

    @classmethod
    def simple_poles(cls, residues: Sequence[Tuple[PuiseuxScalar, PuiseuxScalar]]) -> "RationalDifferential":
        """sum a_i dz / (z - q_i) sobre polos finitos"""
        roots = [q for q, _ in residues]
        numerator = Polynomial()
        for i, (_, a) in enumerate(residues):
            others = Polynomial.from_roots(roots[:i] + roots[i + 1:])
            numerator = numerator + others.scale(a)
        return cls(numerator, Polynomial.from_roots(roots))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def gauss_valuation(self) -> Exponent:
        """val de la norma de Gauss |num| / |den|"""
        if self.num.is_zero():
            raise ZeroForm("La forma nula no tiene norma de Gauss")
        return self.num.min_valuation() - self.den.min_valuation()

    def scale(self, factor) -> "RationalDifferential":
        return RationalDifferential(self.num.scale(factor), self.den)

    def __add__(self, other: "RationalDifferential") -> "RationalDifferential":
        if self.den == other.den:
            return RationalDifferential(self.num + other.num, self.den)
        return RationalDifferential(self.num * other.den + other.num * self.den, self.den * other.den)

    def _local_parts(self, point: Optional[PuiseuxScalar]) -> Tuple[int, int, Polynomial, Polynomial]:
        """(sign, offset, N, G) con f(z) dz = sign w^offset N(w) / G(w) dw/w"""
        if self.num.is_zero():
            raise ZeroForm("La forma nula no tiene desarrollo")
        if point is None:
            return -1, self.den.degree - self.num.degree - 1, self.num.reversed(), self.den.reversed()
        return 1, 1, self.num.taylor_shift(point), self.den.taylor_shift(point)

    @staticmethod
    def _inner_poles(den: Polynomial, skeleton: Skeleton) -> bool:
        """
        Si G tiene raíces no nulas en el disco interior del anillo

        El índice del monomio dominante de G cuenta sus raíces con val(w) mayor que el anillo.

        Raises:
            PoleInAnnulus: Si ningún monomio domina, es decir, si G se anula en el anillo
        """
        try:
            m = dominant_index(AnnulusSeries(tuple(enumerate(den.coeffs)), skeleton))
        except NoDominantTerm:
            raise PoleInAnnulus(f"El denominador se anula en el anillo [{skeleton.tail}, {skeleton.head}]") from None
        return m > den.lowest_index()

    def annulus_expansion(self, point: Optional[PuiseuxScalar], skeleton: Skeleton, count: int,
                          precision=None) -> AnnulusForm:
        """
        Desarrollo de Laurent sobre el anillo val(w) en [tail, head] alrededor del punto

        Sin otros polos en el disco interior basta el desarrollo en el punto. Si los hay, G = g_m w^m (1 + h)
        con |h| < 1 en todo el anillo y 1/G = g_m^-1 w^-m (1 - h + h^2 - ...).

        Args:
            point (PuiseuxScalar): Centro del disco, None para el infinito
            skeleton (Skeleton): Anillo dentro del disco
            count (int): Coeficientes del desarrollo en el punto
            precision (Fraction): Precisión de trabajo

        Returns:
            AnnulusForm: (sum a_i w^i) dw/w; a_0 suma los residuos del disco interior
        """
        sign, offset, num, den = self._local_parts(point)
        if not self._inner_poles(den, skeleton):
            return self.local_expansion(point, count, precision).to_annulus(skeleton)
        numerator = AnnulusSeries(tuple(enumerate(num.coeffs)), skeleton)
        quotient = numerator * inverse_series(AnnulusSeries(tuple(enumerate(den.coeffs)), skeleton), precision)
        return AnnulusForm((quotient * sign).shift(offset))

    def annulus_residue(self, point: Optional[PuiseuxScalar], skeleton: Skeleton, precision=None) -> PuiseuxScalar:
        """Residuo a lo largo del anillo: exacto si el único polo del disco interior es el punto"""
        _, _, _, den = self._local_parts(point)
        if not self._inner_poles(den, skeleton):
            return self.residue_at(point, precision)
        return self.annulus_expansion(point, skeleton, 1, precision).series.coefficient(0)

    def local_expansion(self, point: Optional[PuiseuxScalar], count: int, precision=None) -> LocalExpansion:
        """
        Desarrollo de Laurent en w = z - q, o en w = 1/z si point es None

        Args:
            point (PuiseuxScalar): Punto q, None para el infinito
            count (int): Número de coeficientes a_i
            precision (Fraction): Precisión relativa de la división

        Returns:
            LocalExpansion: Coeficientes a_start, ..., a_{start+count-1}
        """
        sign, offset, num, den = self._local_parts(point)
        power, quotient = series_quotient(num, den, count, precision)
        stripped_num = Polynomial(num.coeffs[num.lowest_index():])
        stripped_den = Polynomial(den.coeffs[den.lowest_index():])
        bound = stripped_num.min_valuation() - stripped_den.coeffs[0].val()
        coeffs = tuple(value.scale(sign) for value in quotient)
        return LocalExpansion(power + offset, coeffs, bound, stripped_den)

    def residue_at(self, point: Optional[PuiseuxScalar], precision=None) -> PuiseuxScalar:
        """Residuo algebraico en q (o en el infinito)"""
        if self.num.is_zero():
            return PuiseuxScalar.zero()
        leading = self.local_expansion(point, 1, precision)
        if leading.start > 0:
            return PuiseuxScalar.zero()
        return self.local_expansion(point, 1 - leading.start, precision).coefficient(0)

    def __str__(self):
        return f"({self.num}) / ({self.den}) dz"
