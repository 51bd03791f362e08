"""Modelos analíticos pegados de género 0: piezas estrelladas y datos de pegado."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from models.annulusForm import GoodCoordinate, Skeleton
from models.curveComplex import CurveComplex, OrientedEdge
from models.errors import StructuralError
from models.puiseux import PuiseuxScalar
from models.rationalForm import RationalDifferential


Point = Optional[PuiseuxScalar]


def reduce_point(point: Point) -> Optional[Fraction]:
    """Reducción de un punto de k U {inf} a Q U {inf} (None es el infinito)"""
    if point is None:
        return None
    if point.is_exact_zero():
        return Fraction(0)
    value = point.val()
    if value is None:
        raise StructuralError(f"El punto {point} no tiene reducción conocida")
    if value < 0:
        return None
    return point.coefficient_at(0)


def edge_chart(edge: OrientedEdge, margin: Fraction) -> Skeleton:
    """
    Anillo de trabajo de la arista dentro del disco de su punto marcado

    Args:
        edge (OrientedEdge): Arista acotada o pata
        margin (Fraction): Fracción de la longitud que sobrepasa la mitad

    Returns:
        Skeleton: [L/2 - m L, L/2 + m L] para aristas acotadas, [1/4, 1/2] para patas
    """
    if edge.is_leg:
        return Skeleton(Fraction(1, 4), (True, True), Fraction(1, 4))
    half = edge.length / 2
    return Skeleton(2 * margin * edge.length, (True, True), half - margin * edge.length)


@dataclass(frozen=True)
class StarPiece:
    """Carta P^1 de un vértice con su forma y sus puntos marcados"""

    vertex: str
    form: RationalDifferential
    marked: Dict[str, Point]
    annuli: Dict[str, Skeleton]
    extra_points: Tuple[Point, ...] = ()

    def __post_init__(self):
        if set(self.marked) != set(self.annuli):
            raise StructuralError(f"Los anillos de {self.vertex} no corresponden a sus puntos marcados")
        reductions = [reduce_point(point) for point in list(self.marked.values()) + list(self.extra_points)]
        if len(set(reductions)) != len(reductions):
            raise StructuralError(f"Puntos marcados con la misma reducción en {self.vertex}")

    def with_form(self, form: RationalDifferential) -> "StarPiece":
        return StarPiece(self.vertex, form, dict(self.marked), dict(self.annuli), self.extra_points)


@dataclass(frozen=True)
class Gluing:
    """Pegado de los anillos de una arista: tau = constant * sigma^-1"""

    edge: str
    opposite: str
    tail_side: GoodCoordinate
    head_side: GoodCoordinate
    constant: PuiseuxScalar

    @property
    def n(self) -> int:
        return self.tail_side.n

    def is_consistent(self) -> bool:
        """La forma binomial de un lado se transporta a la del otro"""
        residues = (self.tail_side.c_0 + self.head_side.c_0).is_zero()
        if self.n == 0:
            return residues
        transported = self.tail_side.c_n * self.constant ** self.n + self.head_side.c_n
        return residues and transported.is_zero()


@dataclass(frozen=True)
class LegExtension:
    """Extensión al disco de una pata: (c_n s^n + c_0) ds/s"""

    edge: str
    coordinate: GoodCoordinate

    @property
    def n(self) -> int:
        return self.coordinate.n

    @property
    def c_n(self) -> PuiseuxScalar:
        return self.coordinate.c_n

    @property
    def c_0(self) -> PuiseuxScalar:
        return self.coordinate.c_0


@dataclass(frozen=True)
class GluedModel:
    """Par (X, omega) presentado por piezas, pegados y discos en las patas"""

    complex: CurveComplex
    pieces: Dict[str, StarPiece]
    gluings: Dict[str, Gluing] = field(default_factory=dict)
    legs: Dict[str, LegExtension] = field(default_factory=dict)

    def __post_init__(self):
        for vertex in self.complex.type2_vertices():
            piece = self.pieces.get(vertex.id)
            if piece is None:
                raise StructuralError(f"Falta la pieza del vértice {vertex.id}")
            star = {edge.id for edge in self.complex.star(vertex.id)}
            if set(piece.marked) != star:
                raise StructuralError(f"Los puntos marcados de {vertex.id} no están en biyección con Star")
        for edge in self.complex.bounded_edges():
            near = self.pieces[edge.tail].annuli[edge.id]
            far = self.pieces[edge.head].annuli[edge.opposite]
            if near.tail + far.head != edge.length or near.head + far.tail != edge.length:
                raise StructuralError(f"Los anillos de la arista {edge.id} no se solapan exactamente")
            if near.head <= edge.length / 2:
                raise StructuralError(f"El anillo de {edge.id} no supera la mitad de la arista")

    def piece_of(self, edge: OrientedEdge) -> StarPiece:
        return self.pieces[edge.tail]


@dataclass(frozen=True)
class LocalLift:
    """Pieza corregida con los residuos buscados y los obtenidos"""

    piece: StarPiece
    targets: Dict[str, PuiseuxScalar]
    achieved: Dict[str, PuiseuxScalar]

    def matches(self) -> bool:
        return all(self.achieved[edge_id].agrees_with(target) for edge_id, target in self.targets.items())
