from .goodCoordinateService import GoodCoordinateService
from .liftingService import LiftingService
from .serializationService import JsonCodec
from .torsorService import TorsorService
from .tropicalizationService import TropicalizationService
from .validationService import ValidationService

__all__ = [
    'GoodCoordinateService',
    'LiftingService',
    'JsonCodec',
    'TorsorService',
    'TropicalizationService',
    'ValidationService'
]
