"""Utilidades para validación de datos de entrada"""

from typing import Any, Iterable

from app.core.exceptions import ValidationError


def validate_int(value: Any, field_name: str) -> None:
    """Valida que un valor sea un entero (bool no cuenta)"""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(
            f"{field_name} debe ser un entero",
            details={"field": field_name, "value": repr(value)}
        )


def validate_non_negative_int(value: Any, field_name: str) -> None:
    validate_int(value, field_name)
    if value < 0:
        raise ValidationError(
            f"{field_name} no puede ser negativo",
            details={"field": field_name, "value": value}
        )


def validate_positive_int(value: Any, field_name: str) -> None:
    validate_int(value, field_name)
    if value < 1:
        raise ValidationError(
            f"{field_name} debe ser un entero positivo",
            details={"field": field_name, "value": value}
        )


def validate_choice(value: str, field_name: str, choices: Iterable[str]) -> None:
    """Valida que un valor pertenezca a un conjunto cerrado de opciones"""
    allowed = list(choices)
    if value not in allowed:
        raise ValidationError(
            f"{field_name} debe ser uno de: {', '.join(allowed)}",
            details={"field": field_name, "value": value, "choices": allowed}
        )


def validate_not_empty_string(value: str, field_name: str) -> None:
    if not isinstance(value, str) or not value.strip():
        raise ValidationError(
            f"{field_name} no puede estar vacío",
            details={"field": field_name, "value": repr(value)}
        )
