"""Complejo de curvas métrico y datos de reducción tropical.

Convención de niveles: el nivel de un vértice es -val de la norma de la
forma, y la pendiente de una arista saliente es -(orden logarítmico) en el
punto marcado correspondiente.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from sympy import Poly, Rational, Symbol, factor_list, residue

from models.errors import NonSplitDenominator, StructuralError
from models.puiseux import INF, Exponent, PuiseuxScalar, to_exponent, to_rational
from models.rationalForm import Polynomial, RationalDifferential


Z = Symbol("z")
W = Symbol("w")

TYPE1 = "type1"
TYPE2 = "type2"


def _to_sympy(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class P1Point:
    """Punto de P^1(Q); value None es el infinito"""

    value: Optional[Fraction] = None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", to_rational(self.value))

    @classmethod
    def parse(cls, text) -> "P1Point":
        if isinstance(text, P1Point):
            return text
        if isinstance(text, str) and text.strip() == "inf":
            return cls(None)
        return cls(to_rational(text))

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def as_scalar(self) -> Optional[PuiseuxScalar]:
        return None if self.value is None else PuiseuxScalar.constant(self.value)

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INFINITY = P1Point()


@dataclass(frozen=True)
class Vertex:
    id: str
    vtype: str = TYPE2
    genus: int = 0
    boundary: bool = False

    def __post_init__(self):
        if self.vtype not in (TYPE1, TYPE2):
            raise StructuralError(f"Tipo de vértice desconocido: {self.vtype}")
        if self.genus < 0:
            raise StructuralError(f"Género negativo en {self.id}")

    @property
    def is_type2(self) -> bool:
        return self.vtype == TYPE2


@dataclass(frozen=True)
class OrientedEdge:
    id: str
    tail: str
    head: str
    length: Exponent
    opposite: Optional[str] = None

    def __post_init__(self):
        length = to_exponent(self.length)
        if length <= 0:
            raise StructuralError(f"La arista {self.id} tiene longitud no positiva")
        object.__setattr__(self, "length", length)

    @property
    def is_leg(self) -> bool:
        return self.length == INF


@dataclass(frozen=True)
class CurveComplex:
    """Grafo métrico con vértices de tipo 1 y 2, aristas orientadas y patas"""

    vertices: Dict[str, Vertex]
    edges: Dict[str, OrientedEdge]

    @classmethod
    def build(cls, vertices: Sequence[Vertex], edges: Sequence[OrientedEdge]) -> "CurveComplex":
        """
        Construye el complejo y verifica su estructura

        Args:
            vertices (Sequence[Vertex]): Vértices
            edges (Sequence[OrientedEdge]): Aristas orientadas y patas

        Returns:
            CurveComplex: Complejo estructuralmente válido
        """
        vertex_map: Dict[str, Vertex] = {}
        for vertex in vertices:
            if vertex.id in vertex_map:
                raise StructuralError(f"Vértice duplicado: {vertex.id}")
            vertex_map[vertex.id] = vertex
        edge_map: Dict[str, OrientedEdge] = {}
        for edge in edges:
            if edge.id in edge_map or edge.id in vertex_map:
                raise StructuralError(f"Identificador duplicado: {edge.id}")
            edge_map[edge.id] = edge
        complex_ = cls(vertex_map, edge_map)
        complex_.check_structure()
        return complex_

    def check_structure(self):
        for edge in self.edges.values():
            for end in (edge.tail, edge.head):
                if end not in self.vertices:
                    raise StructuralError(f"La arista {edge.id} apunta al vértice inexistente {end}")
            if not self.vertices[edge.tail].is_type2:
                raise StructuralError(f"La arista {edge.id} sale de un vértice de tipo 1")
            if edge.is_leg:
                if self.vertices[edge.head].is_type2:
                    raise StructuralError(f"La pata {edge.id} debe terminar en un vértice de tipo 1")
                if edge.opposite is not None:
                    raise StructuralError(f"La pata {edge.id} no tiene arista opuesta")
                continue
            if not self.vertices[edge.head].is_type2:
                raise StructuralError(f"La arista acotada {edge.id} termina en un vértice de tipo 1")
            twin = self.edges.get(edge.opposite)
            if twin is None or twin.opposite != edge.id or twin.id == edge.id:
                raise StructuralError(f"La arista {edge.id} no tiene una opuesta recíproca")
            if (twin.tail, twin.head) != (edge.head, edge.tail) or twin.length != edge.length:
                raise StructuralError(f"La arista opuesta de {edge.id} no invierte la orientación")

        for vertex in self.vertices.values():
            if vertex.is_type2:
                continue
            incident = [edge for edge in self.edges.values() if vertex.id in (edge.tail, edge.head)]
            if len(incident) != 1 or not incident[0].is_leg:
                raise StructuralError(f"El vértice de tipo 1 {vertex.id} debe ser la cabeza de una sola pata")

        if not self.vertices:
            raise StructuralError("El complejo no tiene vértices")
        if not nx.is_connected(self.graph()):
            raise StructuralError("El complejo no es conexo")

    def graph(self) -> nx.MultiGraph:
        """Grafo no orientado subyacente (cada arista acotada una vez)"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges.values():
            if edge.is_leg or edge.id < edge.opposite:
                graph.add_edge(edge.tail, edge.head, key=edge.id)
        return graph

    def vertex(self, vertex_id: str) -> Vertex:
        return self.vertices[vertex_id]

    def edge(self, edge_id: str) -> OrientedEdge:
        return self.edges[edge_id]

    def star(self, vertex_id: str) -> List[OrientedEdge]:
        """Aristas con cola en el vértice, ordenadas por identificador"""
        return sorted((edge for edge in self.edges.values() if edge.tail == vertex_id), key=lambda e: e.id)

    def legs(self) -> List[OrientedEdge]:
        return sorted((edge for edge in self.edges.values() if edge.is_leg), key=lambda e: e.id)

    def bounded_edges(self) -> List[OrientedEdge]:
        return sorted((edge for edge in self.edges.values() if not edge.is_leg), key=lambda e: e.id)

    def type2_vertices(self) -> List[Vertex]:
        return sorted((vertex for vertex in self.vertices.values() if vertex.is_type2), key=lambda v: v.id)


@dataclass(frozen=True)
class AbstractForm:
    """Reducción dada sólo por órdenes logarítmicos y residuos"""

    log_orders: Dict[str, int]
    residues: Dict[str, Fraction]

    def log_order(self, edge_id: str) -> int:
        return self.log_orders[edge_id]

    def residue(self, edge_id: str) -> Fraction:
        return self.residues.get(edge_id, Fraction(0))

    def branches(self) -> List[str]:
        return sorted(self.log_orders)


@dataclass(frozen=True)
class ExplicitP1Form:
    """Diferencial racional f(z) dz sobre Q con puntos marcados en P^1(Q)"""

    num: Tuple[Fraction, ...]
    den: Tuple[Fraction, ...]
    marked: Dict[str, P1Point] = field(default_factory=dict)
    aux: Optional[P1Point] = None

    def __post_init__(self):
        num = [to_rational(value) for value in self.num]
        den = [to_rational(value) for value in self.den]
        while num and num[-1] == 0:
            num.pop()
        while den and den[-1] == 0:
            den.pop()
        if not den:
            raise StructuralError("El denominador de la reducción es nulo")
        if not num:
            raise StructuralError("La reducción es la forma nula")
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))
        object.__setattr__(self, "marked", {key: P1Point.parse(value) for key, value in self.marked.items()})
        if self.aux is not None:
            object.__setattr__(self, "aux", P1Point.parse(self.aux))

    # Polinomios de sympy
    def polys(self) -> Tuple[Poly, Poly]:
        num = Poly([_to_sympy(value) for value in reversed(self.num)] or [0], Z, domain="QQ")
        den = Poly([_to_sympy(value) for value in reversed(self.den)], Z, domain="QQ")
        return num, den

    def normalized(self) -> "ExplicitP1Form":
        """Sin factores comunes y con denominador mónico"""
        num, den = self.polys()
        common = num.gcd(den)
        num, den = num.quo(common), den.quo(common)
        lead = den.LC()
        return ExplicitP1Form(
            tuple(_to_fraction(value / lead) for value in reversed(num.all_coeffs())),
            tuple(_to_fraction(value / lead) for value in reversed(den.all_coeffs())),
            dict(self.marked),
            self.aux
        )

    def expression(self):
        num, den = self.polys()
        return num.as_expr() / den.as_expr()

    def branches(self) -> List[str]:
        return sorted(self.marked)

    def points(self) -> List[P1Point]:
        points = list(self.marked.values())
        if self.aux is not None:
            points.append(self.aux)
        return points

    # Órdenes y residuos
    def order_at(self, point: P1Point) -> int:
        """Orden de f(z) dz en el punto"""
        num, den = self.polys()
        if point.is_infinity:
            return den.degree() - num.degree() - 2
        return _multiplicity(num, point.value) - _multiplicity(den, point.value)

    def log_order_at(self, point: P1Point) -> int:
        return self.order_at(point) + 1

    def residue_at(self, point: P1Point) -> Fraction:
        if point.is_infinity:
            pulled = self.expression().subs(Z, 1 / W) / W ** 2
            return -_to_fraction(residue(pulled, W, 0))
        return _to_fraction(residue(self.expression(), Z, _to_sympy(point.value)))

    def log_order(self, edge_id: str) -> int:
        return self.log_order_at(self.marked[edge_id])

    def residue(self, edge_id: str) -> Fraction:
        return self.residue_at(self.marked[edge_id])

    def divisor(self) -> Tuple[Dict[P1Point, int], List[str]]:
        """
        Divisor de f(z) dz y factores irreducibles no lineales

        Returns:
            Tuple[Dict[P1Point, int], List[str]]: Órdenes no nulos y factores sin raíz racional
        """
        orders: Dict[P1Point, int] = {}
        unsplit: List[str] = []
        num, den = self.polys()
        for poly, sign in ((num, 1), (den, -1)):
            if poly.is_zero:
                continue
            _, factors = factor_list(poly)
            for factor, multiplicity in factors:
                if factor.degree() != 1:
                    unsplit.append(str(factor.as_expr()))
                    continue
                c1, c0 = factor.all_coeffs()
                point = P1Point(_to_fraction(-c0 / c1))
                orders[point] = orders.get(point, 0) + sign * multiplicity
        at_infinity = self.order_at(INFINITY)
        if at_infinity:
            orders[INFINITY] = at_infinity
        return {point: order for point, order in orders.items() if order}, unsplit

    def support_problems(self) -> List[str]:
        """Ceros, polos o factores que no están en los puntos marcados"""
        orders, unsplit = self.divisor()
        allowed = set(self.points())
        problems = [f"factor sin raíz racional: {factor}" for factor in unsplit]
        problems.extend(
            f"orden {order} en el punto no marcado {point}"
            for point, order in sorted(orders.items(), key=lambda item: str(item[0]))
            if point not in allowed
        )
        return problems

    def residue_sum(self) -> Fraction:
        """Suma de los residuos en todos los polos (teorema de los residuos)"""
        num, den = self.polys()
        _, factors = factor_list(den)
        poles = []
        for factor, _ in factors:
            if factor.degree() != 1:
                raise NonSplitDenominator(f"El denominador tiene el factor irreducible {factor.as_expr()}")
            c1, c0 = factor.all_coeffs()
            poles.append(P1Point(_to_fraction(-c0 / c1)))
        poles.append(INFINITY)
        return sum((self.residue_at(point) for point in poles), Fraction(0))

    def same_differential(self, other: "ExplicitP1Form") -> bool:
        """Igualdad como diferenciales racionales (producto cruzado)"""
        num_a, den_a = self.polys()
        num_b, den_b = other.polys()
        return num_a * den_b == num_b * den_a

    def to_differential(self, factor: PuiseuxScalar) -> RationalDifferential:
        """La forma factor * f(z) dz con coeficientes en k"""
        return RationalDifferential(
            Polynomial(tuple(PuiseuxScalar.constant(value) * factor for value in self.num)),
            Polynomial(tuple(PuiseuxScalar.constant(value) for value in self.den))
        )


def _multiplicity(poly: Poly, root: Fraction) -> int:
    if poly.is_zero:
        return 0
    linear = Poly([1, -_to_sympy(root)], Z, domain="QQ")
    count = 0
    while poly.eval(_to_sympy(root)) == 0:
        poly = poly.quo(linear)
        count += 1
    return count


ReductionForm = Union[AbstractForm, ExplicitP1Form]


@dataclass(frozen=True)
class VertexReduction:
    """Nivel del vértice y dirección de la reducción graduada"""

    level: Fraction
    form: ReductionForm

    def __post_init__(self):
        object.__setattr__(self, "level", to_rational(self.level))

    @property
    def is_explicit(self) -> bool:
        return isinstance(self.form, ExplicitP1Form)


@dataclass(frozen=True)
class TropicalReductionDatum:
    """La terna (complejo, reducciones graduadas, función de residuos)"""

    complex: CurveComplex
    reductions: Dict[str, VertexReduction]
    re: Dict[str, PuiseuxScalar]

    def __post_init__(self):
        for vertex in self.complex.type2_vertices():
            if vertex.id not in self.reductions:
                raise StructuralError(f"Falta la reducción del vértice {vertex.id}")
            branches = set(self.reductions[vertex.id].form.branches())
            star = {edge.id for edge in self.complex.star(vertex.id)}
            if branches != star:
                raise StructuralError(f"Los puntos marcados de {vertex.id} no están en biyección con Star")
        for vertex_id in self.reductions:
            if vertex_id not in self.complex.vertices or not self.complex.vertex(vertex_id).is_type2:
                raise StructuralError(f"Reducción para un vértice que no es de tipo 2: {vertex_id}")
        for edge_id in self.complex.edges:
            if edge_id not in self.re:
                raise StructuralError(f"Falta el residuo de la arista {edge_id}")
        for edge_id in self.re:
            if edge_id not in self.complex.edges:
                raise StructuralError(f"Residuo para una arista inexistente: {edge_id}")

    def level(self, vertex_id: str) -> Fraction:
        return self.reductions[vertex_id].level

    def log_order(self, edge: OrientedEdge) -> int:
        return self.reductions[edge.tail].form.log_order(edge.id)

    def reduced_residue(self, edge: OrientedEdge) -> Fraction:
        return self.reductions[edge.tail].form.residue(edge.id)
