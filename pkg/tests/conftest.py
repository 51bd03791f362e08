import numpy as np
import pytest

from services.serializationService import JsonCodec
from utils.helpers import fixture_path
from utils.logger import LoggerSetup


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Sólo advertencias y errores durante las pruebas"""
    LoggerSetup.setup("WARNING")


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


@pytest.fixture
def load_datum():
    """Lee un dato de ejemplo de fixtures/ por su nombre"""
    def _load(name):
        return JsonCodec.read_datum(fixture_path(name))
    return _load
