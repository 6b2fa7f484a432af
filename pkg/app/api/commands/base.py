"""Utilidades comunes de los subcomandos: errores, salida y opciones compartidas"""

import functools
import sys
from typing import Any, Callable, List, Optional, Tuple

import click

from app.api.schemas.report_schema import Report
from app.core.exceptions import BaseAppException, ValidationError, VerificationError
from app.core.logger import get_logger
from app.services.report_service import ReportService

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


def get_report_service() -> ReportService:
    """Dependencia para obtener el servicio de reportes"""
    return ReportService()


def handle_errors(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Traduce excepciones de la aplicación a códigos de salida y mensajes en stderr"""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except VerificationError as e:
            logger.error(f"Verificación fallida: {e.message}", extra={"extra_data": e.details})
            click.echo(f"[{e.error_code}] {e.message}", err=True)
            sys.exit(EXIT_VERIFICATION)
        except BaseAppException as e:
            logger.error(f"Error de entrada: {e.message}", extra={"extra_data": e.details})
            click.echo(f"[{e.error_code}] {e.message}", err=True)
            for key, value in sorted(e.details.items()):
                click.echo(f"  {key}: {value}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


def emit(report: Report, as_json: bool, tables: Optional[List[List[str]]] = None) -> None:
    """Escribe el reporte en stdout y termina con 1 si alguna verificación falló"""
    service = get_report_service()
    if as_json:
        click.echo(service.to_json(report), nl=False)
    else:
        click.echo(service.to_text(report, tables), nl=False)
    if not report.passed:
        sys.exit(EXIT_VERIFICATION)


def parse_range(text: Optional[str]) -> Optional[Tuple[int, int]]:
    """Parsea 'A..B' con 0 <= A <= B"""
    if text is None:
        return None
    parts = text.split("..")
    try:
        if len(parts) != 2:
            raise ValueError
        start, end = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"Rango inválido '{text}'; use A..B", details={"range": text})
    if start < 0 or end < start:
        raise ValidationError("El rango debe cumplir 0 <= A <= B", details={"range": text})
    return start, end


json_option = click.option("--json", "as_json", is_flag=True, help="Reporte JSON en stdout")
spec_option = click.option(
    "--spec", "spec_path", type=click.Path(dir_okay=False), default=None,
    help="Archivo de especificación (.yaml, .yml o .json)"
)
