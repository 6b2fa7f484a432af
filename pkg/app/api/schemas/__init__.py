"""Esquemas Pydantic para validación de entrada/salida"""

from app.api.schemas.report_schema import Report
from app.api.schemas.spec_schema import SpecFile

__all__ = ["Report", "SpecFile"]
