"""Jerarquía de excepciones del cálculo tropical.

Cada excepción lleva el código de salida que la línea de comandos devuelve
cuando la operación falla por ella.
"""


class TropicalError(Exception):
    """Excepción base para todas las operaciones"""

    exit_code = 3


class InputError(TropicalError):
    """Entrada mal formada o fuera del alcance del cálculo exacto"""

    exit_code = 2


class SemanticError(TropicalError):
    """Dato bien formado que no cumple las condiciones requeridas"""

    exit_code = 1


class InternalError(TropicalError):
    """Violación de un invariante interno"""

    exit_code = 3


# Aritmética de Puiseux
class MalformedNumber(InputError):
    """Texto que no es un racional"""
    pass


class PrecisionExhausted(InputError):
    pass


class DivisionByZeroError(InputError):
    pass


class NonSplitRoot(InputError):
    """La raíz n-ésima no existe sobre los racionales"""
    pass


class NotSmall(InputError):
    pass


# Anillos
class NoDominantTerm(InputError):
    """Dos índices empatan en un extremo cerrado o en el interior"""
    pass


class WindowTooSmall(InputError):
    pass


class NonConvergent(InternalError):
    pass


# Complejo de curvas
class StructuralError(InputError):
    pass


class InfiniteSlopeMismatch(SemanticError):
    pass


class NonSplitDenominator(InputError):
    pass


class InvalidDatum(SemanticError):
    """El dato no pasa la validación"""
    pass


# Modelos pegados
class ZeroForm(InputError):
    pass


class PoleInAnnulus(InputError):
    pass


# Levantamiento
class UnsupportedGenus(InputError):
    pass


class ResidueMismatch(SemanticError):
    pass


class NormViolation(InternalError):
    pass


class IncompatibleBinomials(SemanticError):
    pass


# Torsor
class TruncationTooSmall(InputError):
    pass


class NotDominant(InputError):
    pass


# Línea de comandos
class ArgumentError(InputError):
    pass
