import os
from fractions import Fraction
from dotenv import load_dotenv


load_dotenv()


class Settings:
    """Configuraciones generales de la aplicación"""

    # Información de la aplicación
    APP_NAME = os.getenv("APP_NAME", "TropRed")
    APP_VERSION = os.getenv("APP_VERSION", "1.0.0")
    ENVIRONMENT = os.getenv("ENVIRONMENT", "development")

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
    LOG_TO_FILE = os.getenv("LOG_TO_FILE", "false").lower() == "true"
    LOG_FILE_PATH = os.getenv("LOG_FILE_PATH", "./logs/tropred.log")
    LOG_MAX_SIZE = 10 * 1024 * 1024  # 10 MB
    LOG_BACKUP_COUNT = 5

    # Precisión de trabajo (unidades de exponente)
    DEFAULT_PRECISION = Fraction(24)

    # Ventana de expansión en anillos
    DEFAULT_WINDOW = 12

    # Coordenadas formales
    FORMAL_TRUNCATION = 12

    # Iteración de coordenadas buenas
    MAX_ITERATIONS = 64

    # Margen de pegado (fracción de la longitud de la arista)
    GLUING_MARGIN = Fraction(1, 8)

    # Paths
    BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    FIXTURES_DIR = os.path.join(BASE_DIR, "fixtures")
    LOGS_DIR = os.path.join(BASE_DIR, "logs")

    @classmethod
    def ensure_directories(cls):
        """Asegura que los directorios necesarios existan"""
        if cls.LOG_TO_FILE:
            os.makedirs(os.path.dirname(os.path.abspath(cls.LOG_FILE_PATH)), exist_ok=True)

