"""Servicio de contenido de campos: escaleras, sistemas de restricciones y censo"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import Expr, Rational, Symbol

from app.api.schemas.spec_schema import SpecFile
from app.core.exceptions import PreconditionError
from app.core.logger import get_logger
from app.core.utils.validation import validate_choice, validate_non_negative_int, validate_positive_int
from app.domain.fieldspec import FieldSpec, gauge_entry
from app.domain.ladder import FAMILIES, TARGET_SYMBOLS, SectorEntry, SectorLadder
from app.domain.representations import Statistics
from app.repositories.census_repository import CensusRepository, CensusRow
from app.repositories.representation_repository import RepresentationRepository
from app.repositories.spec_repository import SpecRepository, parse_value
from app.services.charges_service import ChargesService, ConditionsReport

logger = get_logger(__name__)

MODES = ("full", "reduced")
STANDARD_SECTORS = ("F", "S", "B", "G")


def unknown(family: str, sector: str) -> Symbol:
    return Symbol(f"{family}_{sector}")


def _symbolic_counts(sector: str, families: Sequence[str] = FAMILIES) -> Dict[str, object]:
    return {family: unknown(family, sector) for family in families}


@dataclass(frozen=True)
class Equation:
    """Ecuación lineal `lhs = rhs` de una familia en un desplazamiento"""

    label: str
    lhs: Expr
    rhs: Expr

    @property
    def residual(self) -> Expr:
        return sympy.expand(self.lhs - self.rhs)


@dataclass
class ConstraintSystem:
    mode: str
    r: int
    unknowns: List[Symbol]
    equations: List[Equation] = field(default_factory=list)

    def residuals(self, assignment: Dict[Symbol, Expr]) -> Dict[str, Expr]:
        return {
            eq.label: sympy.expand(eq.residual.subs(assignment))
            for eq in self.equations
        }


@dataclass
class ContentSolution:
    """Solución exacta en las incógnitas de sector como formas lineales en U..Y"""

    assignment: Dict[Symbol, Expr] = field(default_factory=dict)
    feasible: bool = True
    unique: bool = True
    violated: List[str] = field(default_factory=list)
    constraints: List[Expr] = field(default_factory=list)
    nonnegative: Optional[bool] = None

    def value(self, family: str, sector: str) -> Expr:
        return self.assignment[unknown(family, sector)]


@dataclass
class CensusReport:
    bosons: List[CensusRow]
    gauge_conditions: List[CensusRow]
    fermions: List[CensusRow]
    totals: Dict[str, int]
    predictions: Dict[str, Expr]
    consistent: bool
    leading_check: Tuple[int, int]
    vielbein_net: int

    @property
    def leading_passed(self) -> bool:
        return self.leading_check[0] == self.leading_check[1]


@dataclass
class SpuriousReport:
    """Conteo de campos, anticampos algebraicos y contribución neta en el orden 0"""

    fields: int
    algebraic_antifields: int
    net: Expr
    equivalent: bool


@dataclass
class TelescopingReport:
    n: int
    p: int
    full_c4: Expr
    reduced_c4: Expr
    totals_zero: bool

    @property
    def passed(self) -> bool:
        return self.totals_zero and sympy.expand(self.full_c4 - self.reduced_c4) == 0


class ContentService:
    """
    Escaleras de sectores a partir de especificaciones de campos y
    resolución exacta de los sistemas de restricciones
    """

    def __init__(
        self,
        charges_service: Optional[ChargesService] = None,
        census_repository: Optional[CensusRepository] = None,
        spec_repository: Optional[SpecRepository] = None,
        representation_repository: Optional[RepresentationRepository] = None
    ):
        self.charges = charges_service or ChargesService()
        self.census = census_repository or CensusRepository()
        self.spec_repository = spec_repository or SpecRepository()
        self.representation_repository = representation_repository or RepresentationRepository()

    # 1. Escaleras

    def _dual(self, counts: SectorEntry) -> SectorEntry:
        # u, v invariantes; w cambia de signo
        return SectorEntry.of(x=counts.x, y=counts.y, u=counts.u, v=counts.v, w=-counts.w)

    def build_ladder(
        self, specs: Sequence[FieldSpec], reduced: bool = False, dual_trace: bool = False
    ) -> SectorLadder:
        """
        Filas de la tabla por campo:
        - campo en 0 con signo +conteo (impar) o −conteo (par)
        - anticampo en o con el signo opuesto
        - simetrías gauge en ς con el signo del campo
        - compañeras barradas en desplazamiento+1 con signo negado
        """
        ladder = SectorLadder()
        for spec in specs:
            sign = spec.sign
            antifield_counts = self._dual(spec.counts) if dual_trace else spec.counts
            rows: List[Tuple[int, SectorEntry]] = [
                (0, spec.counts.scale(sign)),
                (spec.el_order, antifield_counts.scale(-sign)),
            ]
            for gauge in spec.gauge:
                if gauge.order <= spec.el_order:
                    logger.warning(
                        f"Orden gauge {gauge.order} <= orden EL {spec.el_order} en '{spec.name}'",
                        extra={"extra_data": {"field": spec.name, "gauge": gauge.name}}
                    )
                rows.append((gauge.order, gauge.counts.scale(sign)))
            for offset, entry in rows:
                ladder.add(offset, entry)
                if spec.include_barred and not reduced:
                    ladder.add(offset + 1, entry.scale(-1))
        return ladder

    def standard_content(self, families: Sequence[str] = FAMILIES) -> List[FieldSpec]:
        """Fermión F (o=1, gauge S en 2) y bosón B (o=2, gauge G en 3) con conteos simbólicos"""
        return [
            FieldSpec.build(
                "F", "fermion", 1, _symbolic_counts("F", families),
                gauge=[gauge_entry("S", 2, _symbolic_counts("S", families))],
            ),
            FieldSpec.build(
                "B", "boson", 2, _symbolic_counts("B", families),
                gauge=[gauge_entry("G", 3, _symbolic_counts("G", families))],
            ),
        ]

    # 2. Sistemas

    def assemble_system(
        self,
        mode: str,
        r: int,
        families: Sequence[str] = ("x",),
        specs: Optional[Sequence[FieldSpec]] = None
    ) -> ConstraintSystem:
        """
        Ecuaciones por familia y desplazamiento i = 0..max(r+1, profundidad)

        El lado derecho es la entrada i de la escalera que cumple las
        condiciones simplificadas con profundidad r.
        """
        validate_choice(mode, "mode", MODES)
        validate_positive_int(r, "r")
        for family in families:
            validate_choice(family, "family", FAMILIES)
        content = list(specs) if specs is not None else self.standard_content(families)
        ladder = self.build_ladder(content, reduced=(mode == "reduced"))

        unknowns: List[Symbol] = []
        for family in families:
            for spec in content:
                for sym in [spec.counts.get(family)] + [g.counts.get(family) for g in spec.gauge]:
                    for s in sorted(sympy.sympify(sym).free_symbols - set(TARGET_SYMBOLS.values()), key=str):
                        if s not in unknowns:
                            unknowns.append(s)

        system = ConstraintSystem(mode=mode, r=r, unknowns=unknowns)
        top = max(r + 1, ladder.depth)
        for family in families:
            for i in range(top + 1):
                target = self.charges.ladder_targets(i, r)
                system.equations.append(Equation(
                    label=f"{family}[{i}]",
                    lhs=sympy.expand(ladder.entry(i).get(family)),
                    rhs=sympy.expand(target.get(family)),
                ))
        return system

    def solve_content(self, system: ConstraintSystem) -> ContentSolution:
        """Resolución exacta sobre los racionales con objetivos simbólicos"""
        lhs = [eq.lhs for eq in system.equations]
        # lhs = matrix*unknowns - offsets
        matrix, offsets = sympy.linear_eq_to_matrix(lhs, system.unknowns)
        rhs = sympy.Matrix([eq.rhs for eq in system.equations]) + offsets
        solution = ContentSolution()

        # 1. Factibilidad: el lado derecho debe anular el espacio nulo izquierdo
        for vector in matrix.T.nullspace():
            condition = sympy.expand((vector.T * rhs)[0])
            if condition != 0:
                solution.feasible = False
                solution.constraints.append(condition)
                support = [system.equations[k].label for k in range(len(vector)) if vector[k] != 0]
                solution.violated.append(support[0] if len(support) == 1 else " + ".join(support))
        if not solution.feasible:
            solution.unique = False
            return solution

        # 2. Solución y unicidad
        rank = matrix.rank()
        solution.unique = rank == len(system.unknowns)
        solved = sympy.linsolve((matrix, rhs), system.unknowns)
        values = next(iter(solved))
        solution.assignment = {s: sympy.expand(v) for s, v in zip(system.unknowns, values)}

        residuals = system.residuals(solution.assignment)
        if any(value != 0 for value in residuals.values()):
            raise PreconditionError(
                "La solución no satisface el sistema",
                details={"residuals": {k: str(v) for k, v in residuals.items() if v != 0}}
            )

        # 3. Diagnóstico de no negatividad para los conteos x
        ones = {symbol: 1 for symbol in TARGET_SYMBOLS.values()}
        counts = [v.subs(ones) for s, v in solution.assignment.items() if s.name.startswith("x_")]
        if counts and all(c.is_number for c in counts):
            solution.nonnegative = all(c >= 0 for c in counts)
        return solution

    def xs_formula(self, r: int) -> Expr:
        """x_S = (r² − 3r + 2) X / 2"""
        validate_positive_int(r, "r")
        return Rational(r * r - 3 * r + 2, 2) * TARGET_SYMBOLS["X"]

    def xs_from_system(self, r: int) -> Expr:
        """x_S resuelto desde las tres primeras ecuaciones del sistema reducido"""
        system = self.assemble_system("reduced", r)
        system.equations = system.equations[:3]
        system.unknowns = [unknown("x", s) for s in ("F", "B", "S")]
        solution = self.solve_content(system)
        return solution.value("x", "S")

    # 3. Resultado principal

    def main_result(self) -> ContentSolution:
        """Tabla de veinte parámetros del sistema reducido con r = 3"""
        return self.solve_content(self.assemble_system("reduced", 3, families=FAMILIES))

    def verify_main_result(self) -> ConditionsReport:
        solution = self.main_result()
        ladder = self.build_ladder(self.standard_content(), reduced=True).substitute(solution.assignment)
        return self.charges.check_conditions(ladder, 3)

    # 4. Censo

    def sm_census(self) -> CensusReport:
        """Predicciones de X desde las tablas y la solución completa con r = 4"""
        bosons = self.census.bosons()
        gauge = self.census.gauge_conditions()
        per_generation = self.census.fermions_per_generation()
        factor = self.census.GENERATIONS * self.census.ANTIPARTICLES
        totals = {
            "B": sum(row.total for row in bosons),
            "G": sum(row.total for row in gauge),
            "F": factor * sum(row.total for row in per_generation),
            "S": sum(row.total for row in self.census.fermionic_gauge_conditions()),
        }
        solution = self.solve_content(self.assemble_system("full", 4))
        x = TARGET_SYMBOLS["X"]
        coefficients = {s: solution.value("x", s).coeff(x) for s in STANDARD_SECTORS}
        predictions = {s: Rational(totals[s]) / coefficients[s] for s in STANDARD_SECTORS}
        leading = (int(coefficients["B"] * totals["F"]), int(coefficients["F"] * totals["B"]))
        return CensusReport(
            bosons=bosons,
            gauge_conditions=gauge,
            fermions=per_generation,
            totals=totals,
            predictions=predictions,
            consistent=len(set(predictions.values())) == 1,
            leading_check=leading,
            vielbein_net=int(self.vielbein_equivalence().net),
        )

    def spurious_equivalence(self, base_count: int, spurious_count: int, el_order: int = 2) -> SpuriousReport:
        """Campos espurios con ecuaciones EL algebraicas se cancelan orden a orden"""
        validate_non_negative_int(base_count, "base_count")
        validate_non_negative_int(spurious_count, "spurious_count")
        base = FieldSpec.build("base", "boson", el_order, {"x": base_count})
        spurious = FieldSpec.build("spurious", "boson", 0, {"x": spurious_count})
        reference = self.build_ladder([base])
        combined = self.build_ladder([base, spurious])
        return SpuriousReport(
            fields=base_count + spurious_count,
            algebraic_antifields=spurious_count,
            net=sympy.expand(-combined.entry(0).x),
            equivalent=(combined + reference.scale(-1)).is_zero(),
        )

    def vielbein_equivalence(self) -> SpuriousReport:
        data = self.census.vielbein()
        return self.spurious_equivalence(
            data.vielbein_components - data.symmetry_conditions, data.symmetry_conditions
        )

    # 5. Telescopado

    def telescoping_check(self, specs: Sequence[FieldSpec], n: int, p: int) -> TelescopingReport:
        """c4 completa en (N, p) frente a c4 reducida en (N−1, p)"""
        if n < 2:
            raise PreconditionError("El telescopado requiere N >= 2", details={"N": n})
        full = self.build_ladder(specs)
        reduced = self.build_ladder(specs, reduced=True)
        totals = full.totals()
        return TelescopingReport(
            n=n,
            p=p,
            full_c4=self.charges.abelian_charges_multi(full, n, p).c4,
            reduced_c4=self.charges.abelian_charges_multi(reduced, n - 1, p).c4,
            totals_zero=totals.is_zero(),
        )

    # 6. Archivos de especificación

    def ladder_from_spec(self, spec: SpecFile) -> Tuple[SectorLadder, Dict[Symbol, Expr]]:
        """
        Escalera total de un archivo de especificación y la sustitución de objetivos

        Suma campos, entradas explícitas, sectores por representación y la
        escalera de condiciones si se pide.
        """
        ladder = self.build_ladder(self.spec_repository.field_specs(spec), reduced=spec.reduced)
        ladder = ladder + self.spec_repository.explicit_ladder(spec)
        for rep in spec.representations:
            gl_rep = self.representation_repository.get_gl(rep.gl, spec.dimension, weight=parse_value(rep.gl_weight))
            g_rep = None if rep.g == "none" else self.representation_repository.get_internal(rep.g)
            ladder = ladder + self.charges.rep_ladder(gl_rep, g_rep, Statistics(rep.statistics))
        if spec.conditions_ladder is not None:
            ladder = ladder + self.charges.conditions_ladder(spec.conditions_ladder)
        targets = self.spec_repository.targets(spec)
        return ladder.substitute(targets), targets
