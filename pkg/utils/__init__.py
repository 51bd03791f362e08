from .validators import validate_rational, validate_exponent, validate_scalar, validate_datum_json, validate_model_json
from .logger import LoggerSetup, app_logger
from .helpers import fixture_path, list_fixtures

__all__ = [
    'validate_rational',
    'validate_exponent',
    'validate_scalar',
    'validate_datum_json',
    'validate_model_json',
    'LoggerSetup',
    'app_logger',
    'fixture_path',
    'list_fixtures'
]
