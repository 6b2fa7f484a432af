"""Parser descendente recursivo para entradas polinomiales

Gramática:

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      "/" solo entre números
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?            exponente >= 0
    atom   := NUMBER | IDENT | "(" expr ")"

Los identificadores se resuelven contra una tabla de símbolos que entrega
quien llama (x1..xN, U..Y, nombres de campos y sus derivadas).
"""

import re
from typing import Dict, List, Tuple

from sympy import Expr, Integer, Symbol

from app.core.exceptions import ValidationError

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str) -> List[Tuple[str, str]]:
    """Divide el texto en tokens (tipo, valor)"""
    tokens: List[Tuple[str, str]] = []
    for number, ident, other in _TOKEN_RE.findall(text):
        if number:
            tokens.append(("NUMBER", number))
        elif ident:
            tokens.append(("IDENT", ident))
        elif other:
            if other not in "+-*/^()":
                raise ValidationError(
                    f"Carácter no permitido en el polinomio: '{other}'",
                    details={"text": text, "character": other}
                )
            tokens.append(("OP", other))
    tokens.append(("END", ""))
    return tokens


class PolynomialParser:
    """Parser de la gramática polinomial contra una tabla de símbolos"""

    def __init__(self, symbols: Dict[str, Symbol]):
        self.symbols = symbols
        self._tokens: List[Tuple[str, str]] = []
        self._pos = 0
        self._text = ""

    def parse(self, text: str) -> Expr:
        """Parsea el texto completo y retorna una expresión de sympy"""
        if not text or not text.strip():
            raise ValidationError("Polinomio vacío", details={"text": text})
        self._text = text
        self._tokens = tokenize(text)
        self._pos = 0
        result = self._expr()
        kind, value = self._peek()
        if kind != "END":
            self._fail(f"token inesperado '{value}'")
        return result

    def _peek(self) -> Tuple[str, str]:
        return self._tokens[self._pos]

    def _advance(self) -> Tuple[str, str]:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _fail(self, reason: str) -> None:
        raise ValidationError(
            f"Polinomio inválido: {reason}",
            details={"text": self._text, "position": self._pos}
        )

    def _expr(self) -> Expr:
        result = self._term()
        while self._peek() in (("OP", "+"), ("OP", "-")):
            _, op = self._advance()
            right = self._term()
            result = result + right if op == "+" else result - right
        return result

    def _term(self) -> Expr:
        result = self._unary()
        while self._peek() in (("OP", "*"), ("OP", "/")):
            _, op = self._advance()
            right = self._unary()
            if op == "*":
                result = result * right
                continue
            if not right.is_Rational or right == 0:
                self._fail("solo se permite dividir por un número distinto de cero")
            result = result / right
        return result

    def _unary(self) -> Expr:
        if self._peek() == ("OP", "-"):
            self._advance()
            return -self._unary()
        if self._peek() == ("OP", "+"):
            self._advance()
            return self._unary()
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._peek() == ("OP", "^"):
            self._advance()
            kind, value = self._advance()
            if kind != "NUMBER":
                self._fail("el exponente debe ser un entero no negativo")
            return base ** int(value)
        return base

    def _atom(self) -> Expr:
        kind, value = self._advance()
        if kind == "NUMBER":
            return Integer(int(value))
        if kind == "IDENT":
            if value not in self.symbols:
                self._fail(f"identificador desconocido '{value}'")
            return self.symbols[value]
        if (kind, value) == ("OP", "("):
            inner = self._expr()
            if self._advance() != ("OP", ")"):
                self._fail("falta ')'")
            return inner
        self._fail(f"token inesperado '{value}'")
        raise AssertionError("inalcanzable")


def parse_expression(text: str, symbols: Dict[str, Symbol]) -> Expr:
    """Atajo: parsea `text` con la tabla de símbolos dada"""
    return PolynomialParser(symbols).parse(text)
