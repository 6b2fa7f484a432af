"""Servicio de reportes: serialización exacta y salida determinista"""

import json
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from sympy import Basic

from app.api.schemas.report_schema import Report
from app.core.config import settings
from app.core.utils.rationals import format_value
from app.domain.ladder import ChargeVector, SectorEntry, SectorLadder


def serialize(value: Any) -> Any:
    """Convierte valores de dominio a tipos JSON; los racionales quedan como 'a/b'"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Basic):
        return format_value(value)
    if isinstance(value, ChargeVector):
        return {k: format_value(v) for k, v in value.as_dict().items()}
    if isinstance(value, SectorEntry):
        return {f: format_value(value.get(f)) for f in ("x", "y", "u", "v", "w")}
    if isinstance(value, SectorLadder):
        return [dict(offset=i, **serialize(entry)) for i, entry in value]
    if isinstance(value, Mapping):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    return str(value)


class ReportService:
    """Construye reportes y los renderiza como JSON o como tabla de texto"""

    def build(
        self,
        command: str,
        inputs: Optional[Dict[str, Any]] = None,
        outputs: Optional[Dict[str, Any]] = None,
        verdicts: Optional[Dict[str, bool]] = None,
        residuals: Optional[Dict[str, Iterable[Any]]] = None
    ) -> Report:
        verdicts = dict(verdicts or {})
        cleaned = {
            key: [format_value(v) if isinstance(v, Basic) else str(v) for v in values]
            for key, values in (residuals or {}).items()
        }
        cleaned = {k: v for k, v in cleaned.items() if v}
        return Report(
            command=command,
            inputs=serialize(inputs or {}),
            outputs=serialize(outputs or {}),
            verdicts=verdicts,
            residuals=cleaned,
            passed=all(verdicts.values()) and not cleaned,
            version=settings.VERSION,
        )

    def to_json(self, report: Report) -> str:
        return json.dumps(
            report.model_dump(),
            indent=settings.REPORT_INDENT,
            sort_keys=True,
            ensure_ascii=False,
        ) + "\n"

    def table(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[str]:
        """Tabla de texto con columnas alineadas"""
        body = [[str(cell) for cell in row] for row in rows]
        widths = [len(h) for h in header]
        for row in body:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
        lines = [line, "  ".join("-" * w for w in widths)]
        lines += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)) for row in body]
        return lines

    def to_text(self, report: Report, tables: Optional[List[List[str]]] = None) -> str:
        """Resumen legible: tablas del comando, veredictos y residuos"""
        lines = [f"{report.command} (v{report.version})"]
        for table in tables or []:
            lines.append("")
            lines.extend(table)
        if report.verdicts:
            lines.append("")
            for name, passed in sorted(report.verdicts.items()):
                lines.append(f"{name}: {'ok' if passed else 'FALLO'}")
        for name, values in sorted(report.residuals.items()):
            lines.append(f"residuo {name}:")
            lines.extend(f"  {value}" for value in values)
        lines.append("")
        lines.append("RESULTADO: " + ("ok" if report.passed else "FALLO"))
        return "\n".join(lines) + "\n"
