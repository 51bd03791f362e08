import json
from functools import wraps
from typing import Callable

from models.errors import TropicalError
from utils.logger import app_logger


def handle_error(error: Exception, operation: str = "Operación") -> dict:
    """
    Maneja errores de forma estandarizada

    Args:
        error (Exception): Error capturado
        operation (str): Nombre de la operación

    Returns:
        dict: Respuesta estandarizada de error
    """
    if isinstance(error, TropicalError):
        message = f"{operation} falló: {type(error).__name__}: {error}"
        exit_code = error.exit_code
    elif isinstance(error, (OSError, json.JSONDecodeError, KeyError, TypeError)):
        message = f"{operation} falló: entrada inválida: {error}"
        exit_code = 2
    else:
        message = f"{operation} falló: error interno: {type(error).__name__}: {error}"
        exit_code = 3

    app_logger.error(message)

    return {
        "success": False,
        "message": message,
        "exit_code": exit_code
    }


def handle_operation(func: Callable) -> Callable:
    """
    Decorador para operaciones de servicio invocadas desde la línea de comandos

    Usage:
        @handle_operation
        def validate_file(self, ...):
            # código que puede lanzar TropicalError
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except Exception as e:
            return handle_error(e, func.__name__)

    return wrapper
