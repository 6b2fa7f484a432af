"""Subcomando charges: cargas abelianas c1..c5 de un archivo de especificación"""

from typing import Optional

import click

from app.api.commands.base import emit, get_report_service, handle_errors, json_option, parse_range, spec_option
from app.api.schemas.spec_schema import SpecFile
from app.core.config import settings
from app.core.utils.rationals import format_value
from app.core.utils.validation import validate_positive_int
from app.repositories.spec_repository import SpecRepository
from app.services.charges_service import ChargesService
from app.services.content_service import ContentService


def get_charges_service() -> ChargesService:
    """Dependencia para obtener el servicio de cargas"""
    return ChargesService()


def get_content_service() -> ContentService:
    """Dependencia para obtener el servicio de contenido"""
    return ContentService(charges_service=get_charges_service(), spec_repository=SpecRepository())


@click.command("charges")
@spec_option
@click.option("--n", "n", type=int, default=None, help="Dimensión N cuando no hay archivo")
@click.option("--p", "p", type=int, default=None, help="Orden de jet p")
@click.option("--p-range", "p_range", default=None, help="Barrido A..B en p")
@click.option("--no-trajectory", is_flag=True, help="Omite las constantes de la trayectoria (1, 0, 1, 2N, 0)")
@json_option
@handle_errors
def charges(
    spec_path: Optional[str],
    n: Optional[int],
    p: Optional[int],
    p_range: Optional[str],
    no_trajectory: bool,
    as_json: bool
) -> None:
    """
    Calcula c1..c5 de la escalera total de la especificación

    Cada fila reporta las cargas con la convención de trayectoria elegida y
    la parte de la escalera sin constantes.
    """
    content = get_content_service()
    charges_service = content.charges

    # 1. Escalera desde el archivo o vacía
    if spec_path is not None:
        spec = content.spec_repository.load(spec_path)
    else:
        spec = SpecFile(dimension=n or 1)
    if n is not None and spec_path is not None:
        spec.dimension = n
    validate_positive_int(spec.dimension, "N")
    ladder, targets = content.ladder_from_spec(spec)

    # 2. Órdenes a evaluar
    bounds = parse_range(p_range)
    if bounds is not None:
        ps = list(range(bounds[0], bounds[1] + 1))
    elif p is not None or spec.jet_order is not None:
        ps = [p if p is not None else spec.jet_order]
    else:
        # Sin orden explícito: barrido desde la profundidad de la escalera
        ps = list(range(ladder.depth, ladder.depth + settings.SWEEP_LENGTH))

    include_trajectory = not no_trajectory
    rows = []
    for order in ps:
        finite = charges_service.abelian_charges_multi(ladder, spec.dimension, order)
        total = finite + charges_service.trajectory(spec.dimension) if include_trajectory else finite
        rows.append({"p": order, "charges": total, "ladder_charges": finite})

    distinct = {row["ladder_charges"] for row in rows}
    report = get_report_service().build(
        command="charges",
        inputs={
            "spec": spec_path,
            "N": spec.dimension,
            "p": ps,
            "trajectory": include_trajectory,
            "targets": {str(k): v for k, v in sorted(targets.items(), key=lambda kv: str(kv[0]))},
        },
        outputs={
            "depth": ladder.depth,
            "ladder": ladder,
            "rows": rows,
            "p_independent": len(distinct) == 1,
        },
    )
    table = get_report_service().table(
        ["p", "c1", "c2", "c3", "c4", "c5"],
        [[row["p"]] + [format_value(c) for c in row["charges"].as_tuple()] for row in rows],
    )
    emit(report, as_json, [table, [f"independiente de p: {'si' if len(distinct) == 1 else 'no'}"]])
