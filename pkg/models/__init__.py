from .puiseux import PuiseuxScalar, GradedScalar, INF
from .annulusForm import Skeleton, AnnulusSeries, AnnulusForm, CoordinateChange, GoodCoordinate
from .rationalForm import Polynomial, RationalDifferential
from .curveComplex import P1Point, Vertex, OrientedEdge, CurveComplex, TropicalReductionDatum
from .gluedModel import StarPiece, Gluing, LegExtension, GluedModel, LocalLift
from .formalCoordinate import FormalForm, GnElement, FormalGoodCoordinate, GradedCoordinate
from .validationReport import CheckRecord, ValidationReport

__all__ = [
    'PuiseuxScalar',
    'GradedScalar',
    'INF',
    'Skeleton',
    'AnnulusSeries',
    'AnnulusForm',
    'CoordinateChange',
    'GoodCoordinate',
    'Polynomial',
    'RationalDifferential',
    'P1Point',
    'Vertex',
    'OrientedEdge',
    'CurveComplex',
    'TropicalReductionDatum',
    'StarPiece',
    'Gluing',
    'LegExtension',
    'GluedModel',
    'LocalLift',
    'FormalForm',
    'GnElement',
    'FormalGoodCoordinate',
    'GradedCoordinate',
    'CheckRecord',
    'ValidationReport'
]
