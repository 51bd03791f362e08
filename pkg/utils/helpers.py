import os
from typing import List

from config.settings import Settings


def fixture_path(name: str) -> str:
    """
    Obtiene la ruta absoluta de un dato de ejemplo en fixtures/

    Args:
        name (str): Nombre del archivo, con o sin la extensión .json

    Returns:
        str: Ruta absoluta
    """
    if not name.endswith(".json"):
        name = f"{name}.json"
    return os.path.join(Settings.FIXTURES_DIR, name)


def list_fixtures(prefix: str = "") -> List[str]:
    """Nombres (sin extensión) de los datos de ejemplo que empiezan por prefix"""
    if not os.path.isdir(Settings.FIXTURES_DIR):
        return []
    return sorted(
        name[:-len(".json")]
        for name in os.listdir(Settings.FIXTURES_DIR)
        if name.endswith(".json") and name.startswith(prefix)
    )
