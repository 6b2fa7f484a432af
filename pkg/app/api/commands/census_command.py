"""Subcomando census: contenido del Modelo Estándar más gravedad"""

import click

from app.api.commands.base import emit, get_report_service, handle_errors, json_option
from app.core.utils.rationals import format_value
from app.services.content_service import ContentService


def get_content_service() -> ContentService:
    """Dependencia para obtener el servicio de contenido"""
    return ContentService()


@click.command("census")
@json_option
@handle_errors
def census(as_json: bool) -> None:
    """Tablas de bosones y fermiones, predicciones de X y verificación de cancelación principal"""
    service = get_content_service()
    result = service.sm_census()
    vielbein = service.vielbein_equivalence()
    reports = get_report_service()

    def rows(items):
        return [[row.field, row.name, row.multiplicity, row.components, row.total] for row in items]

    header = ["campo", "nombre", "multiplicidad", "componentes", "total"]
    tables = [
        ["Bosones"] + reports.table(header, rows(result.bosons)),
        ["Condiciones gauge"] + reports.table(header, rows(result.gauge_conditions)),
        ["Fermiones por generación"] + reports.table(header, rows(result.fermions)),
        reports.table(
            ["sector", "total", "X predicho"],
            [[s, result.totals[s], format_value(result.predictions[s])] for s in ("B", "G", "F", "S")],
        ),
        [
            f"consistente: {'si' if result.consistent else 'no'}",
            f"2 x_F = 3 x_B: {result.leading_check[0]} = {result.leading_check[1]}",
            f"vielbein: {vielbein.fields} componentes, {vielbein.algebraic_antifields} condiciones, neto {vielbein.net}",
        ],
    ]
    report = reports.build(
        command="census",
        outputs={
            "totals": result.totals,
            "predictions": result.predictions,
            "consistent": result.consistent,
            "leading_check": list(result.leading_check),
            "vielbein": {
                "fields": vielbein.fields,
                "algebraic_antifields": vielbein.algebraic_antifields,
                "net": vielbein.net,
            },
        },
        verdicts={
            "leading_cancellation": result.leading_passed,
            "vielbein_equivalence": vielbein.equivalent,
        },
    )
    emit(report, as_json, tables)
