import re
from typing import Tuple


RATIONAL_PATTERN = r'^\s*-?\d+(\s*/\s*\d+)?\s*$'


def validate_rational(value) -> Tuple[bool, str]:
    """
    Valida un racional exacto escrito como entero o "p/q"

    Args:
        value: Valor a validar

    Returns:
        Tuple[bool, str]: (es_válido, mensaje_error)
    """
    if isinstance(value, bool):
        return False, "Un booleano no es un racional"
    if isinstance(value, int):
        return True, "Racional válido"
    if not isinstance(value, str) or not value.strip():
        return False, f"Se esperaba un racional como cadena: {value!r}"

    if not re.match(RATIONAL_PATTERN, value):
        return False, f"El formato del racional es inválido: {value!r}"
    if re.search(r'/\s*0+\s*$', value):
        return False, f"Denominador nulo en {value!r}"

    return True, "Racional válido"


def validate_exponent(value) -> Tuple[bool, str]:
    """Como validate_rational, aceptando además "inf" """
    if isinstance(value, str) and value.strip() == "inf":
        return True, "Exponente infinito"
    return validate_rational(value)


def validate_scalar(data) -> Tuple[bool, str]:
    """
    Valida un escalar de Puiseux en JSON

    Args:
        data: Cadena racional u objeto {"terms": [[exponente, coeficiente]], "prec": ...}

    Returns:
        Tuple[bool, str]: (es_válido, mensaje_error)
    """
    if not isinstance(data, dict):
        return validate_rational(data)

    terms = data.get("terms", [])
    if not isinstance(terms, list):
        return False, "El campo 'terms' debe ser una lista"
    for term in terms:
        if not isinstance(term, list) or len(term) != 2:
            return False, f"Cada término es un par [exponente, coeficiente]: {term!r}"
        for part in term:
            ok, message = validate_rational(part)
            if not ok:
                return False, message

    ok, message = validate_exponent(data.get("prec", "inf"))
    if not ok:
        return False, f"Precisión inválida: {message}"

    return True, "Escalar válido"


def validate_required_fields(data: dict, required_fields: list) -> Tuple[bool, str]:
    """
    Valida que los campos requeridos estén presentes

    Args:
        data (dict): Datos a validar
        required_fields (list): Lista de campos requeridos

    Returns:
        Tuple[bool, str]: (es_válido, mensaje_error)
    """
    if not isinstance(data, dict):
        return False, "Se esperaba un objeto JSON"
    for field in required_fields:
        if field not in data or data[field] is None:
            return False, f"El campo '{field}' es requerido"

    return True, "Campos completos"


def validate_datum_json(data: dict) -> Tuple[bool, str]:
    """
    Valida la estructura JSON de un dato de reducción tropical

    Args:
        data (dict): Documento leído

    Returns:
        Tuple[bool, str]: (es_válido, mensaje_error)
    """
    ok, message = validate_required_fields(data, ["vertices", "edges", "reductions", "re"])
    if not ok:
        return False, message

    for vertex in data["vertices"]:
        ok, message = validate_required_fields(vertex, ["id"])
        if not ok:
            return False, f"Vértice: {message}"

    for edge in data["edges"]:
        ok, message = validate_required_fields(edge, ["id", "tail", "head", "length"])
        if not ok:
            return False, f"Arista: {message}"
        ok, message = validate_exponent(edge["length"])
        if not ok:
            return False, f"Longitud de {edge['id']}: {message}"

    legs = data.get("legs", [])
    if not isinstance(legs, list):
        return False, "El campo 'legs' debe ser una lista"
    for leg in legs:
        ok, message = validate_required_fields(leg, ["id", "tail", "head", "length"])
        if not ok:
            return False, f"Pata: {message}"
        if str(leg["length"]).strip() != "inf":
            return False, f"La pata {leg['id']} debe tener longitud 'inf'"

    for vertex_id, reduction in data["reductions"].items():
        ok, message = validate_required_fields(reduction, ["level", "form"])
        if not ok:
            return False, f"Reducción de {vertex_id}: {message}"
        ok, message = validate_rational(reduction["level"])
        if not ok:
            return False, f"Nivel de {vertex_id}: {message}"
        form = reduction["form"]
        if not isinstance(form, dict) or len(form) != 1 or next(iter(form)) not in ("p1", "abstract"):
            return False, f"La forma de {vertex_id} debe ser {{'p1': ...}} o {{'abstract': ...}}"

    for edge_id, value in data["re"].items():
        ok, message = validate_scalar(value)
        if not ok:
            return False, f"Residuo de {edge_id}: {message}"

    return True, "Estructura válida"


def validate_model_json(data: dict) -> Tuple[bool, str]:
    """Valida la estructura JSON de un modelo pegado"""
    ok, message = validate_required_fields(data, ["vertices", "edges", "pieces", "gluings", "legs"])
    if not ok:
        return False, message

    for vertex_id, piece in data["pieces"].items():
        ok, message = validate_required_fields(piece, ["num", "den", "marked", "annuli"])
        if not ok:
            return False, f"Pieza de {vertex_id}: {message}"

    return True, "Estructura válida"
