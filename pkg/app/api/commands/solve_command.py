"""Subcomando solve: sistemas de restricciones del contenido estándar"""

import click

from app.api.commands.base import emit, get_report_service, handle_errors, json_option
from app.core.utils.rationals import format_value
from app.domain.ladder import FAMILIES
from app.services.content_service import MODES, STANDARD_SECTORS, ContentService, ContentSolution, unknown


def get_content_service() -> ContentService:
    """Dependencia para obtener el servicio de contenido"""
    return ContentService()


def _cell(solution: ContentSolution, family: str, sector: str) -> str:
    symbol = unknown(family, sector)
    return format_value(solution.assignment[symbol]) if symbol in solution.assignment else "-"


@click.command("solve")
@click.option("--mode", type=click.Choice(MODES), default="full", show_default=True)
@click.option("--r", "r", type=int, required=True, help="Profundidad r del sistema")
@json_option
@handle_errors
def solve(mode: str, r: int, as_json: bool) -> None:
    """
    Resuelve exactamente el sistema de las cinco familias

    Reporta la tabla de solución o, si no es factible, las ecuaciones
    violadas y las condiciones que impondrían sobre U..Y.
    """
    service = get_content_service()
    system = service.assemble_system(mode, r, families=FAMILIES)
    solution = service.solve_content(system)

    verdicts = {}
    outputs = {
        "feasible": solution.feasible,
        "unique": solution.unique,
        "violated": solution.violated,
        "constraints": solution.constraints,
        "nonnegative": solution.nonnegative,
        "equations": [f"{eq.label}: {eq.lhs} = {eq.rhs}" for eq in system.equations],
    }
    tables = []
    if solution.feasible:
        outputs["solution"] = {str(s): v for s, v in solution.assignment.items()}
        residuals = system.residuals(solution.assignment)
        verdicts["residuals_zero"] = all(value == 0 for value in residuals.values())
        tables.append(get_report_service().table(
            ["familia"] + list(STANDARD_SECTORS),
            [
                [family] + [_cell(solution, family, s) for s in STANDARD_SECTORS]
                for family in FAMILIES
            ],
        ))
    else:
        tables.append(["no factible:"] + [
            f"  {label}: {format_value(condition)} = 0"
            for label, condition in zip(solution.violated, solution.constraints)
        ])

    if mode == "reduced":
        formula = service.xs_formula(r)
        outputs["xs_formula"] = formula
        verdicts["xs_formula"] = format_value(formula) == format_value(service.xs_from_system(r))

    report = get_report_service().build(
        command="solve",
        inputs={"mode": mode, "r": r},
        outputs=outputs,
        verdicts=verdicts,
    )
    emit(report, as_json, tables)
