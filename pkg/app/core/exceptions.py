"""Excepciones personalizadas del dominio y la aplicación

Cada subclase fija su código JET-ERR-xxx; la CLI traduce VerificationError
a código de salida 1 y el resto a 2.
"""

from typing import Any, Dict, Optional


class BaseAppException(Exception):
    """Excepción base con mensaje, código y detalles para el reporte"""

    default_code = "JET-ERR-000"
    default_message = "Error de la aplicación"

    def __init__(
        self,
        message: Optional[str] = None,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message or self.default_message
        self.error_code = error_code or self.default_code
        self.details = dict(details or {})
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message}"


class PreconditionError(BaseAppException):
    """Precondición matemática violada (n negativo, p < r, |m| > p − o)"""

    default_code = "JET-ERR-001"
    default_message = "Precondición no satisfecha"


class SpecFileError(BaseAppException):
    """Archivo de especificación ilegible o con formato no soportado"""

    default_code = "JET-ERR-002"
    default_message = "Archivo de especificación inválido"


class ValidationError(BaseAppException):
    default_code = "JET-ERR-005"
    default_message = "Valor de entrada inválido"


class NotFoundError(BaseAppException):
    """Representación, álgebra o modelo no registrado"""

    default_code = "JET-ERR-006"
    default_message = "Recurso no encontrado"


class VerificationError(BaseAppException):
    """Una verificación dejó residuos distintos de cero"""

    default_code = "JET-ERR-008"
    default_message = "La verificación dejó residuos distintos de cero"
