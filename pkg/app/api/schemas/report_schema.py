"""Esquema Pydantic del reporte de salida"""

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


class Report(BaseModel):
    """Reporte determinista de un subcomando; los racionales van como 'a/b'"""
    model_config = ConfigDict(extra="forbid")

    command: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    outputs: Dict[str, Any] = Field(default_factory=dict)
    verdicts: Dict[str, bool] = Field(default_factory=dict)
    residuals: Dict[str, List[str]] = Field(default_factory=dict)
    passed: bool = True
    version: str
