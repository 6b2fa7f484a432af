"""Subcomando verify: verificaciones exactas de corchetes, pullback, KT, oráculo, identidades y series"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import click
import sympy

from app.api.commands.base import emit, get_report_service, handle_errors, json_option, spec_option
from app.core.config import settings
from app.core.exceptions import VerificationError
from app.domain.ladder import TARGET_SYMBOLS
from app.domain.mindex import ZETA, CountKind, FormalSeries, fugacity_series
from app.domain.polynomials import PolyVectorField, random_current, random_vector_field
from app.domain.representations import Statistics
from app.repositories.representation_repository import RepresentationRepository
from app.repositories.spec_repository import SpecRepository
from app.repositories.toy_model_repository import ToyModelRepository
from app.services.charges_service import ChargesService
from app.services.kt_service import KTService
from app.services.liejet_service import LieJetService
from app.services.oracle_service import OracleService

KINDS = ("brackets", "pullback", "kt", "oracle", "identities", "fugacity")
FUGACITY_ORDER = 8


@dataclass
class Outcome:
    outputs: Dict[str, object] = field(default_factory=dict)
    verdicts: Dict[str, bool] = field(default_factory=dict)
    residuals: Dict[str, List[str]] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)


def get_liejet_service() -> LieJetService:
    """Dependencia para obtener el servicio de jets"""
    return LieJetService(RepresentationRepository())


def get_kt_service() -> KTService:
    """Dependencia para obtener el servicio de Koszul-Tate"""
    return KTService()


def get_charges_service() -> ChargesService:
    """Dependencia para obtener el servicio de cargas"""
    return ChargesService()


def get_oracle_service() -> OracleService:
    """Dependencia para obtener el oráculo de Wick"""
    return OracleService()


def _brackets(n: int, p: int, trials: int, seed: int, degree: int, spec_path: Optional[str]) -> Outcome:
    service = get_liejet_service()
    outcome = Outcome()
    results = service.run_bracket_trials(n, p, trials=trials, seed=seed, degree=degree)

    # Campos ξ explícitos del archivo, tomados por pares consecutivos
    if spec_path is not None:
        spec = SpecRepository().load(spec_path)
        fields = [PolyVectorField.from_strings(texts, spec.dimension) for texts in spec.vector_fields]
        for name in ("scalar", "vector", "covector"):
            table = service.field_table(spec.dimension, spec.jet_order or p, [("f", name, None)])
            for index in range(len(fields) - 1):
                report = service.verify_homomorphism(fields[index], fields[index + 1], table)
                results.append((f"spec-{index}-{name}", report))

    for case, report in results:
        outcome.verdicts[case] = report.passed
        for relation, lines in report.residuals.items():
            if lines:
                outcome.residuals[f"{case}/{relation}"] = lines
    outcome.outputs = {"cases": len(results), "relations": ["LL", "LJ", "JJ"]}
    outcome.lines = [f"{len(results)} casos, N={n}, p={p}, semilla={seed}"]
    return outcome


def _pullback(n: int, p: int, seed: int, degree: int) -> Outcome:
    service = get_liejet_service()
    outcome = Outcome()
    rng = random.Random(seed)
    for name in ("scalar", "vector", "covector", "density"):
        table = service.field_table(n, p, [("f", name, None)], density_weight=sympy.Rational(1, 2))
        entry = table.entries[0]
        xi = random_vector_field(n, degree, rng)
        mismatches = service.verify_pullback(xi, entry, p) + service.truncation_closure(xi, entry, p)
        outcome.verdicts[f"L-{name}"] = not mismatches
        if mismatches:
            outcome.residuals[f"L-{name}"] = mismatches
    table = service.field_table(n, p, [("g", "scalar", "adjoint")])
    current = random_current(table.algebra.dimension if table.algebra else 0, n, degree, rng)
    mismatches = service.verify_pullback(current, table.entries[0], p)
    outcome.verdicts["J-adjoint"] = not mismatches
    if mismatches:
        outcome.residuals["J-adjoint"] = mismatches
    outcome.lines = [f"N={n}, p={p}, semilla={seed}"]
    return outcome


def _kt(n: int, p: int, model_name: str, correction: bool, seed: int, spec_path: Optional[str]) -> Outcome:
    service = get_kt_service()
    outcome = Outcome()
    if spec_path is not None:
        spec_repository = SpecRepository()
        model = spec_repository.toy_model(spec_repository.load(spec_path))
    else:
        model = ToyModelRepository().get(model_name, n)
    report = service.verify_nilpotency(model, p, correction=correction)
    mismatches = service.verify_prolongation(model, p, seed=seed)
    outcome.verdicts["nilpotency"] = not (report.generator_residuals or report.product_residuals)
    outcome.verdicts["grading"] = not report.grading_violations
    outcome.verdicts["prolongation"] = not mismatches
    for name, residual in sorted(report.generator_residuals.items()):
        outcome.residuals[name] = [residual]
    for name, residual in sorted(report.product_residuals.items()):
        outcome.residuals[name] = [residual]
    if report.grading_violations:
        outcome.residuals["grading"] = report.grading_violations
    if mismatches:
        outcome.residuals["prolongation"] = mismatches
    outcome.outputs = {
        "model": model.name,
        "lagrangian": model.lagrangian,
        "correction": correction,
        "generators": report.generators_checked,
        "products": report.products_checked,
    }
    outcome.lines = [
        f"modelo {model.name}, N={model.n}, p={p}, corrección {'si' if correction else 'no'}",
        f"{report.generators_checked} generadores, {report.products_checked} productos",
    ]
    return outcome


def _oracle(n: int, gl_name: str, g_name: str, max_mode: int) -> Outcome:
    repository = RepresentationRepository()
    charges = get_charges_service()
    gl_rep = repository.get_gl(gl_name, n)
    g_rep = None if g_name == "none" else repository.get_internal(g_name)
    traces = charges.trace_numbers(gl_rep, g_rep)
    k_of = {s: charges.k_parameters(traces, s) for s in (Statistics.BOSON, Statistics.FERMION)}
    report = get_oracle_service().verify_oracle(gl_rep, g_rep, k_of, max_mode)
    outcome = Outcome()
    for case in report.cases:
        label = f"{case.statistics}-{case.channel}-m{case.mode}"
        outcome.verdicts[label] = case.passed
        if not case.passed:
            outcome.residuals[label] = [f"{case.kappa} != {case.expected}"]
    for failure in report.failures:
        outcome.verdicts[failure] = False
    outcome.outputs = {
        "traces": traces.as_dict(),
        "kappa": {
            f"{c.statistics}-{c.channel}-m{c.mode}": c.kappa for c in report.cases
        },
    }
    outcome.lines = [f"{len(report.cases)} casos, rep {gl_rep.name}" + (f" ⊗ {g_rep.name}" if g_rep else "")]
    return outcome


def _identities(max_r: int) -> Outcome:
    charges = get_charges_service()
    outcome = Outcome()
    table: Dict[str, List[List[int]]] = {}
    for r in range(max_r + 1):
        rows = []
        passed = True
        for i in range(r + 2):
            try:
                value = charges.albega(i, r)
            except VerificationError as e:
                passed = False
                outcome.residuals[f"r={r},i={i}"] = [str(e.details)]
                continue
            rows.append([value.alpha, value.beta, value.gamma])
        closing = charges.albega_closed(r + 1, r)
        if r >= 2 and closing.alpha != 0:
            passed = False
        if r >= 1 and closing.beta != 0:
            passed = False
        outcome.verdicts[f"r={r}"] = passed
        table[str(r)] = rows
    outcome.outputs = {"albega": table}
    outcome.lines = [f"r = 0..{max_r}"]
    return outcome


def _fugacity() -> Outcome:
    charges = get_charges_service()
    outcome = Outcome()
    x = TARGET_SYMBOLS["X"]
    zeta_series = {}

    # 1. X(1−ζ)^N A(ζ) es constante
    for n in range(1, 6):
        series = FormalSeries.from_polynomial(x * (1 - ZETA) ** n, FUGACITY_ORDER)
        product = series * fugacity_series(CountKind.A, n, FUGACITY_ORDER)
        outcome.verdicts[f"xA-N{n}"] = product.is_constant() and product.coefficient(0) == x
        zeta_series[f"N{n}"] = list(product.coefficients)

    # 2. Polinomios de sector y acuerdo con las sumas parciales
    t = TARGET_SYMBOLS
    limit = (t["U"], t["V"], -t["W"], t["X"], -t["Y"])
    for n in range(2, 5):
        series = charges.fugacity_charges(charges.sector_polynomials(None, n), n, FUGACITY_ORDER)
        constants = tuple(series[f"c{k}"].coefficient(0) for k in range(1, 6))
        outcome.verdicts[f"csz-N{n}"] = (
            all(s.is_constant() for s in series.values())
            and all(sympy.expand(a - b) == 0 for a, b in zip(constants, limit))
        )
        ladder = charges.conditions_ladder(n)
        ladder_series = charges.fugacity_charges(charges.ladder_polynomials(ladder), n, FUGACITY_ORDER)
        agree = True
        for p in range(n, n + 5):
            direct = charges.abelian_charges_multi(ladder, n, p)
            if not (direct - charges.charges_from_series(ladder_series, p)).is_zero():
                agree = False
                outcome.residuals[f"partial-sums-N{n}-p{p}"] = [str(direct)]
        outcome.verdicts[f"partial-sums-N{n}"] = agree
    outcome.outputs = {"xA": zeta_series}
    outcome.lines = [f"series truncadas en orden {FUGACITY_ORDER}"]
    return outcome


@click.command("verify")
@click.argument("kind", type=click.Choice(KINDS))
@spec_option
@click.option("--n", "n", type=int, default=None, help="Dimensión N")
@click.option("--p", "p", type=int, default=None, help="Orden de jet p")
@click.option("--trials", type=int, default=None, help="Ensayos aleatorios de corchetes")
@click.option("--seed", type=int, default=None, help="Semilla de los ensayos")
@click.option("--degree", type=int, default=None, help="Grado máximo de los campos aleatorios")
@click.option("--model", "model_name", default="phi4", show_default=True, help="Modelo de juguete para kt")
@click.option("--no-correction", is_flag=True, help="Desactiva el término de corrección de δ")
@click.option("--r", "r", type=int, default=None, help="r máximo para identities")
@click.option("--max-mode", type=int, default=None, help="Modo máximo del oráculo")
@click.option("--gl", "gl_name", default="scalar", show_default=True, help="Representación de gl(N) del oráculo")
@click.option("--g", "g_name", default="none", show_default=True, help="Representación interna del oráculo")
@json_option
@handle_errors
def verify(
    kind: str,
    spec_path: Optional[str],
    n: Optional[int],
    p: Optional[int],
    trials: Optional[int],
    seed: Optional[int],
    degree: Optional[int],
    model_name: str,
    no_correction: bool,
    r: Optional[int],
    max_mode: Optional[int],
    gl_name: str,
    g_name: str,
    as_json: bool
) -> None:
    """
    Ejecuta una verificación exacta y lista cada caso

    Termina con código 1 si algún residuo es distinto de cero.
    """
    seed = seed if seed is not None else settings.DEFAULT_SEED
    degree = degree if degree is not None else settings.BRACKET_DEGREE
    if kind == "brackets":
        n, p = n or 2, p if p is not None else 2
        outcome = _brackets(n, p, trials or settings.DEFAULT_TRIALS, seed, degree, spec_path)
    elif kind == "pullback":
        n, p = n or 2, p if p is not None else 2
        outcome = _pullback(n, p, seed, degree)
    elif kind == "kt":
        n, p = n or 1, p if p is not None else 3
        outcome = _kt(n, p, model_name, not no_correction, seed, spec_path)
    elif kind == "oracle":
        n = n or 1
        outcome = _oracle(n, gl_name, g_name, max_mode or settings.ORACLE_MAX_MODE)
    elif kind == "identities":
        outcome = _identities(r if r is not None else settings.IDENTITIES_MAX_R)
    else:
        outcome = _fugacity()

    report = get_report_service().build(
        command=f"verify {kind}",
        inputs={
            "kind": kind, "spec": spec_path, "N": n, "p": p, "seed": seed, "degree": degree,
            "correction": not no_correction, "r": r, "max_mode": max_mode,
        },
        outputs=outcome.outputs,
        verdicts=outcome.verdicts,
        residuals=outcome.residuals,
    )
    emit(report, as_json, [outcome.lines])
