"""Configuración de logging con formato JSON y trazabilidad por ejecución"""

import json
import logging
import sys
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from app.core.config import settings

# Identificador de la ejecución en curso
run_id_var: ContextVar[Optional[str]] = ContextVar("run_id", default=None)

# Atributos de registro que log_case agrega a cada caso verificado
CASE_FIELDS = ("command", "case", "passed", "elapsed")


class JSONFormatter(logging.Formatter):
    """Un objeto JSON por registro, con run_id y los campos del caso"""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "run_id": run_id_var.get(),
        }
        entry.update({name: getattr(record, name) for name in CASE_FIELDS if hasattr(record, name)})
        entry.update(getattr(record, "extra_data", None) or {})
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


def setup_logging(level: Optional[str] = None) -> None:
    """
    Instala un único handler JSON en el logger raíz

    Escribe en stderr; stdout queda reservado para los informes.
    """
    root = logging.getLogger()
    root.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper()))
    for existing in list(root.handlers):
        root.removeHandler(existing)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JSONFormatter())
    root.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def set_run_id(run_id: Optional[str] = None) -> str:
    """Fija el run_id del contexto actual; genera un uuid4 si no se indica"""
    value = run_id or str(uuid.uuid4())
    run_id_var.set(value)
    return value


def log_case(
    logger: logging.Logger,
    command: str,
    case: str,
    passed: bool,
    elapsed: float,
    extra_data: Optional[Dict[str, Any]] = None
) -> None:
    """Registra el veredicto de un caso verificado"""
    logger.info(
        f"{command} {case} - {'ok' if passed else 'fallo'}",
        extra={
            "command": command,
            "case": case,
            "passed": passed,
            "elapsed": round(elapsed, 6),
            "extra_data": extra_data or {},
        },
    )
