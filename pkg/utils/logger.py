import sys
from loguru import logger
from config.settings import Settings


class LoggerSetup:
    """Configuración centralizada del sistema de logging"""

    _configured = False

    @classmethod
    def setup(cls, level: str = None):
        """
        Configura el sistema de logging

        Args:
            level (str): Nivel mínimo para la consola (por defecto Settings.LOG_LEVEL)
        """
        if cls._configured and level is None:
            return

        # Remover configuración por defecto
        logger.remove()
        logger.configure(extra={"module": Settings.APP_NAME})

        # La salida estándar queda reservada para los reportes
        logger.add(
            sys.stderr,
            colorize=False,
            format="{time:YYYY-MM-DD HH:mm:ss} | "
                   "{level: <8} | "
                   "{extra[module]}:{function}:{line} | "
                   "{message}",
            level=level or Settings.LOG_LEVEL
        )

        if Settings.LOG_TO_FILE:
            Settings.ensure_directories()
            logger.add(
                Settings.LOG_FILE_PATH,
                rotation=Settings.LOG_MAX_SIZE,
                retention=Settings.LOG_BACKUP_COUNT,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | "
                       "{extra[module]}:{function}:{line} | {message}",
                level="DEBUG",  # Guardar todos los niveles en archivo
                encoding="utf-8"
            )

        cls._configured = True

    @classmethod
    def get_logger(cls, name: str = None):
        """
        Obtiene una instancia del logger

        Args:
            name (str): Nombre del módulo que usa el logger

        Returns:
            Logger: Instancia configurada de loguru
        """
        if not cls._configured:
            cls.setup()

        return logger.bind(module=name or Settings.APP_NAME)


# Instancia global del logger
app_logger = LoggerSetup.get_logger(Settings.APP_NAME)
