"""Utilidades para racionales exactos y su serialización "a/b" """

from fractions import Fraction
from typing import Any, Union

import sympy
from sympy import Expr, Rational

from app.core.exceptions import ValidationError

RationalLike = Union[int, str, Fraction, Rational, Expr]


def to_rational(value: RationalLike) -> Rational:
    """Convierte un valor a Rational de sympy sin pasar por flotantes"""
    if isinstance(value, bool):
        raise ValidationError("Un booleano no es un racional", details={"value": value})
    if isinstance(value, float):
        raise ValidationError(
            "No se aceptan flotantes; use la forma 'a/b'",
            details={"value": value}
        )
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    result = sympy.sympify(value)
    if not result.is_Rational:
        raise ValidationError("El valor no es un racional exacto", details={"value": str(value)})
    return result


def parse_rational(text: str) -> Rational:
    """Parsea un string 'a/b' o 'a' a Rational"""
    raw = text.strip()
    parts = raw.split("/")
    try:
        if len(parts) == 1:
            return Rational(int(parts[0]))
        if len(parts) == 2:
            denominator = int(parts[1])
            if denominator == 0:
                raise ValidationError("Denominador cero", details={"value": text})
            return Rational(int(parts[0]), denominator)
    except ValueError:
        pass
    raise ValidationError(f"Racional inválido: '{text}'", details={"value": text})


def format_rational(value: RationalLike) -> str:
    """Formatea un racional como 'numerador/denominador'"""
    rational = to_rational(value)
    return f"{rational.p}/{rational.q}"


def format_value(value: Any) -> str:
    """Formatea un racional como 'a/b' o una forma lineal simbólica en forma canónica"""
    expr = sympy.expand(sympy.sympify(value))
    if expr.is_Rational:
        return format_rational(expr)
    return sympy.sstr(expr, order="lex")


def is_zero(value: Any) -> bool:
    """Indica si una expresión es exactamente cero tras expandir"""
    return sympy.expand(sympy.sympify(value)) == 0
