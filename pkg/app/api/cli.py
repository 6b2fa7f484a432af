"""Grupo de comandos de la herramienta jetcharges"""

from typing import Optional

import click

from app.api.commands.census_command import census
from app.api.commands.charges_command import charges
from app.api.commands.solve_command import solve
from app.api.commands.verify_command import verify
from app.core.config import settings
from app.core.logger import get_logger, set_run_id, setup_logging

logger = get_logger(__name__)


@click.group()
@click.version_option(settings.VERSION, prog_name=settings.PROJECT_NAME)
@click.option("--log-level", default=None, help="Nivel de logging (por defecto el de la configuración)")
@click.option("--run-id", default=None, help="Identificador de ejecución para los logs")
def cli(log_level: Optional[str], run_id: Optional[str]) -> None:
    """Cargas abelianas, complejo de Koszul-Tate y contenido de campos sobre jets truncados"""
    setup_logging(log_level)
    run = set_run_id(run_id)
    logger.info(f"Inicio de ejecución {run}")


cli.add_command(charges)
cli.add_command(solve)
cli.add_command(verify)
cli.add_command(census)


def main() -> None:
    """Punto de entrada; click sale con código 2 ante errores de uso"""
    cli()
