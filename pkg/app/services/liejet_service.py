"""Servicio de realizaciones sobre jets del álgebra de difeomorfismos y corrientes"""

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.polys.rings import PolyElement

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logger import get_logger, log_case
from app.core.utils.concurrency import ordered_map
from app.core.utils.validation import validate_non_negative_int, validate_positive_int
from app.domain.mindex import MultiIndex, enumerate_jets, multi_binomial
from app.domain.operators import FirstOrderOperator, JetMatrix
from app.domain.polynomials import (
    CurrentField,
    JetSpace,
    PolyVectorField,
    base_ring,
    partial,
    random_current,
    random_vector_field,
    to_qq,
    vf_bracket,
)
from app.domain.representations import FieldEntry, FieldTable
from app.repositories.representation_repository import RepresentationRepository

logger = get_logger(__name__)

Row = Tuple[int, MultiIndex]
TestField = Tuple[PolyElement, ...]


class GeneratorKind(str, Enum):
    DIFFEOMORPHISM = "L"
    CURRENT = "J"


@dataclass
class HomomorphismReport:
    """Residuos de las tres relaciones de corchete; vacíos si cierran"""

    residuals: Dict[str, List[str]] = field(default_factory=dict)
    checked: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(not lines for lines in self.residuals.values())


class _Derivatives:
    """Caché de derivadas ∂_k de las componentes de un argumento polinomial"""

    def __init__(self, components: Sequence[PolyElement]):
        self.components = components
        self._cache: Dict[Tuple[int, MultiIndex], PolyElement] = {}

    def get(self, index: int, k: MultiIndex) -> PolyElement:
        key = (index, k)
        if key not in self._cache:
            self._cache[key] = partial(self.components[index], k)
        return self._cache[key]


class LieJetService:
    """
    Servicio de matrices de acción T^{βn}_{αm}(ξ), J^{βn}_{αm}(X) y de la
    verificación exacta del cierre del álgebra clásica sobre jets
    """

    def __init__(self, representation_repository: RepresentationRepository):
        self.representation_repository = representation_repository

    def field_table(
        self,
        n: int,
        p: int,
        fields: Sequence[Tuple[str, str, Optional[str]]],
        algebra: str = "su2",
        density_weight: Optional[object] = None
    ) -> FieldTable:
        """Construye una tabla de campos desde (etiqueta, rep de gl(N), rep interna)"""
        validate_positive_int(n, "N")
        validate_non_negative_int(p, "p")
        entries = []
        for label, gl_name, g_name in fields:
            gl_rep = self.representation_repository.get_gl(gl_name, n, density_weight)
            g_rep = (
                self.representation_repository.get_internal(g_name, algebra)
                if g_name and g_name != "none" else None
            )
            entries.append(FieldEntry(label=label, gl_rep=gl_rep, g_rep=g_rep))
        lie = self.representation_repository.get_algebra(algebra)
        return FieldTable(n=n, p=p, entries=entries, algebra=lie)

    def vf_bracket(self, xi: PolyVectorField, eta: PolyVectorField) -> PolyVectorField:
        return vf_bracket(xi, eta)

    def action_entry(
        self,
        xi: PolyVectorField,
        entry: FieldEntry,
        row: Row,
        column: Row,
        derivatives: Optional[_Derivatives] = None
    ) -> PolyElement:
        """
        Entrada T^{βn}_{αm}(ξ) con fila (α, m) y columna (β, n):

            C(m,n) ∂_{m−n+ν}ξ^μ (T^ν_μ)_{αβ}
            + δ_{αβ} Σ_μ [C(m, n−μ) ∂_{m−n+μ}ξ^μ − δ_{n,m+μ} ξ^μ]
        """
        n_dim = xi.dimension
        derivatives = derivatives or _Derivatives(xi.components)
        (alpha, m), (beta, n) = row, column
        R = xi.ring
        value = R.zero
        difference = m.minus(n)
        if difference is not None:
            weight = multi_binomial(m, n)
            for mu in range(n_dim):
                for nu in range(n_dim):
                    coefficient = entry.gl_matrix(nu, mu)[alpha, beta]
                    if coefficient != 0:
                        d = derivatives.get(mu, difference + MultiIndex.unit(n_dim, nu))
                        value += d * (weight * to_qq(coefficient))
        if alpha == beta:
            for mu in range(n_dim):
                unit = MultiIndex.unit(n_dim, mu)
                lowered = n.minus(unit)
                if lowered is None:
                    continue
                shifted = m.minus(lowered)
                if shifted is not None:
                    value += derivatives.get(mu, shifted) * multi_binomial(m, lowered)
                if lowered == m:
                    value -= xi.components[mu]
        return value

    def jet_action_matrix(self, xi: PolyVectorField, entry: FieldEntry, p: int) -> JetMatrix:
        """Matriz T^{βn}_{αm}(ξ) para |m|, |n| <= p; solo |n| <= |m| puede ser no nulo"""
        validate_non_negative_int(p, "p")
        self._check_dimension(xi.dimension, entry)
        derivatives = _Derivatives(xi.components)
        jets = enumerate_jets(xi.dimension, p)
        matrix = JetMatrix()
        for alpha in range(entry.components):
            for m in jets:
                for beta in range(entry.components):
                    for n in jets:
                        if n.norm > m.norm:
                            continue
                        matrix.set(
                            (alpha, m), (beta, n),
                            self.action_entry(xi, entry, (alpha, m), (beta, n), derivatives)
                        )
        return matrix

    def truncation_closure(self, xi: PolyVectorField, entry: FieldEntry, p: int) -> List[str]:
        """Entradas no nulas hacia jets de orden |m|+1; vacío si el p-jet es cerrado"""
        derivatives = _Derivatives(xi.components)
        n_dim = xi.dimension
        violations = []
        for alpha in range(entry.components):
            for m in enumerate_jets(n_dim, p):
                for mu in range(n_dim):
                    n = m + MultiIndex.unit(n_dim, mu)
                    for beta in range(entry.components):
                        value = self.action_entry(xi, entry, (alpha, m), (beta, n), derivatives)
                        if value:
                            violations.append(f"T[{alpha}{m}][{beta}{n}] = {value}")
        return violations

    def jet_current_matrix(self, x: CurrentField, entry: FieldEntry, p: int) -> JetMatrix:
        """Matriz J^{βn}_{αm}(X) = C(m,n) ∂_{m−n}X_a (t^a)_{αβ}"""
        validate_non_negative_int(p, "p")
        generators = entry.current_matrices()
        matrix = JetMatrix()
        if not generators:
            return matrix
        if x.dimension != len(generators):
            raise ValidationError(
                "La corriente no coincide con la dimensión del álgebra interna",
                details={"current": x.dimension, "algebra": len(generators)}
            )
        derivatives = _Derivatives(x.components)
        jets = enumerate_jets(x.n, p)
        for alpha in range(entry.components):
            for m in jets:
                for n in jets:
                    difference = m.minus(n)
                    if difference is None:
                        continue
                    weight = multi_binomial(m, n)
                    for beta in range(entry.components):
                        value = x.components[0].ring.zero
                        for a, t in generators.items():
                            if t[alpha, beta] != 0:
                                value += derivatives.get(a, difference) * (weight * to_qq(t[alpha, beta]))
                        matrix.set((alpha, m), (beta, n), value)
        return matrix

    def jet_space(self, table: FieldTable) -> JetSpace:
        return JetSpace(table.n, table.p, table.field_shapes())

    def assemble_generator(
        self,
        kind: GeneratorKind,
        argument: object,
        table: FieldTable,
        space: Optional[JetSpace] = None
    ) -> FirstOrderOperator:
        """
        Operador L_ξ o J_X sobre el anillo de jets

        L_ξ envía q^μ a ξ^μ(q) y φ_{α,m} a −Σ T^{βn}_{αm}(ξ(q)) φ_{β,n};
        J_X solo actúa sobre los jets.
        """
        space = space or self.jet_space(table)
        kind = GeneratorKind(kind)
        terms: Dict[int, PolyElement] = {}
        if kind is GeneratorKind.DIFFEOMORPHISM:
            if not isinstance(argument, PolyVectorField):
                raise ValidationError("L_ξ necesita un campo vectorial polinomial")
            self._check_dimension(argument.dimension, None, table.n)
            for mu, component in enumerate(argument.components):
                terms[mu] = space.lift(component)
        elif not isinstance(argument, CurrentField):
            raise ValidationError("J_X necesita una corriente polinomial")

        for entry in table.entries:
            if kind is GeneratorKind.DIFFEOMORPHISM:
                matrix = self.jet_action_matrix(argument, entry, table.p)  # type: ignore[arg-type]
            else:
                matrix = self.jet_current_matrix(argument, entry, table.p)  # type: ignore[arg-type]
            for (alpha, m), columns in matrix.rows.items():
                coefficient = space.ring.zero
                for (beta, n), value in columns.items():
                    coefficient -= space.lift(value) * space.variable(entry.label, beta, n)
                index = space.variable_index(entry.label, alpha, m)
                terms[index] = terms.get(index, space.ring.zero) + coefficient
        return FirstOrderOperator(space.ring, terms)

    def verify_homomorphism(
        self,
        xi: PolyVectorField,
        eta: PolyVectorField,
        table: FieldTable,
        x: Optional[CurrentField] = None,
        y: Optional[CurrentField] = None
    ) -> HomomorphismReport:
        """
        Verifica como identidades exactas de operadores:

        - [L_ξ, L_η] = L_[ξ,η]
        - [L_ξ, J_X] = J_ξX
        - [J_X, J_Y] = J_[X,Y]
        """
        space = self.jet_space(table)
        report = HomomorphismReport()
        describe = space.name

        # 1. Difeomorfismos
        l_xi = self.assemble_generator(GeneratorKind.DIFFEOMORPHISM, xi, table, space)
        l_eta = self.assemble_generator(GeneratorKind.DIFFEOMORPHISM, eta, table, space)
        l_bracket = self.assemble_generator(GeneratorKind.DIFFEOMORPHISM, vf_bracket(xi, eta), table, space)
        report.checked.append("LL")
        report.residuals["LL"] = (l_xi.bracket(l_eta) - l_bracket).describe(describe)

        # 2. Corrientes, si hay álgebra interna y argumentos
        if x is not None and table.algebra is not None:
            j_x = self.assemble_generator(GeneratorKind.CURRENT, x, table, space)
            j_xi_x = self.assemble_generator(GeneratorKind.CURRENT, x.transported(xi), table, space)
            report.checked.append("LJ")
            report.residuals["LJ"] = (l_xi.bracket(j_x) - j_xi_x).describe(describe)
            if y is not None:
                j_y = self.assemble_generator(GeneratorKind.CURRENT, y, table, space)
                j_xy = self.assemble_generator(
                    GeneratorKind.CURRENT, table.algebra.bracket(x, y), table, space
                )
                report.checked.append("JJ")
                report.residuals["JJ"] = (j_x.bracket(j_y) - j_xy).describe(describe)
        return report

    def monomial_test_fields(self, n: int, components: int, degree: int) -> List[TestField]:
        """Campos de prueba: un monomio de grado <= degree en una sola componente"""
        R = base_ring(n)
        fields: List[TestField] = []
        for k in enumerate_jets(n, degree):
            monomial = R.from_dict({k.components: 1})
            for alpha in range(components):
                fields.append(tuple(monomial if beta == alpha else R.zero for beta in range(components)))
        return fields

    def verify_pullback(
        self,
        argument: object,
        entry: FieldEntry,
        p: int,
        test_fields: Optional[List[TestField]] = None
    ) -> List[str]:
        """
        Oráculo de flujo: compara la variación de primer orden de los jets de
        un campo polinomial (con el punto base transportado por ξ) contra
        −Σ T^{βn}_{αm} ∂_nφ_β. Retorna las discrepancias.
        """
        is_action = isinstance(argument, PolyVectorField)
        n_dim = argument.dimension if is_action else argument.n  # type: ignore[union-attr]
        fields = test_fields or self.monomial_test_fields(n_dim, entry.components, p + 1)
        if is_action:
            matrix = self.jet_action_matrix(argument, entry, p)  # type: ignore[arg-type]
        else:
            matrix = self.jet_current_matrix(argument, entry, p)  # type: ignore[arg-type]
        jets = enumerate_jets(n_dim, p)
        mismatches: List[str] = []
        for case, phi in enumerate(fields):
            variation = (
                self._diffeomorphism_variation(argument, entry, phi)  # type: ignore[arg-type]
                if is_action else self._current_variation(argument, entry, phi)  # type: ignore[arg-type]
            )
            for alpha in range(entry.components):
                for m in jets:
                    expected = partial(variation[alpha], m)
                    if is_action:
                        for mu, component in enumerate(argument.components):  # type: ignore[union-attr]
                            expected += component * partial(phi[alpha], m + MultiIndex.unit(n_dim, mu))
                    actual = base_ring(n_dim).zero
                    for (beta, n), value in matrix.row((alpha, m)).items():
                        actual -= value * partial(phi[beta], n)
                    if expected != actual:
                        mismatches.append(f"campo {case}, fila ({alpha},{m}): {expected} != {actual}")
        return mismatches

    def _diffeomorphism_variation(
        self, xi: PolyVectorField, entry: FieldEntry, phi: TestField
    ) -> List[PolyElement]:
        # δφ_α = −ξ·∂φ_α − ∂_νξ^μ (T^ν_μ)_{αβ} φ_β
        n_dim = xi.dimension
        result = []
        gens = xi.ring.gens
        for alpha in range(entry.components):
            value = -xi.derive(phi[alpha])
            for mu in range(n_dim):
                for nu in range(n_dim):
                    t: Matrix = entry.gl_matrix(nu, mu)
                    d = xi.components[mu].diff(gens[nu])
                    if not d:
                        continue
                    for beta in range(entry.components):
                        if t[alpha, beta] != 0:
                            value -= d * phi[beta] * to_qq(t[alpha, beta])
            result.append(value)
        return result

    def _current_variation(
        self, x: CurrentField, entry: FieldEntry, phi: TestField
    ) -> List[PolyElement]:
        # δφ_α = −X_a (t^a)_{αβ} φ_β
        generators = entry.current_matrices()
        result = []
        for alpha in range(entry.components):
            value = base_ring(x.n).zero
            for a, t in generators.items():
                for beta in range(entry.components):
                    if t[alpha, beta] != 0:
                        value -= x.components[a] * phi[beta] * to_qq(t[alpha, beta])
            result.append(value)
        return result

    def run_bracket_trials(
        self,
        n: int,
        p: int,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        degree: Optional[int] = None,
        gl_names: Sequence[str] = ("scalar", "vector", "covector")
    ) -> List[Tuple[str, HomomorphismReport]]:
        """
        Ensayos aleatorios reproducibles del homomorfismo

        Cada ensayo usa una tabla con un campo de la representación de gl(N)
        que toca (rotando entre `gl_names`) más un escalar en la adjunta de
        su(2) para las corrientes.
        """
        trials = trials if trials is not None else settings.DEFAULT_TRIALS
        seed = seed if seed is not None else settings.DEFAULT_SEED
        degree = degree if degree is not None else settings.BRACKET_DEGREE
        validate_positive_int(trials, "trials")
        tables = {
            name: self.field_table(n, p, [("f", name, None), ("g", "scalar", "adjoint")])
            for name in gl_names
        }

        def run(index: int) -> Tuple[str, HomomorphismReport]:
            rng = random.Random(seed * 1_000_003 + index)
            name = gl_names[index % len(gl_names)]
            table = tables[name]
            dim_g = table.algebra.dimension if table.algebra else 0
            started = time.perf_counter()
            report = self.verify_homomorphism(
                random_vector_field(n, degree, rng),
                random_vector_field(n, degree, rng),
                table,
                random_current(dim_g, n, degree, rng),
                random_current(dim_g, n, degree, rng),
            )
            case = f"trial-{index}-{name}"
            log_case(logger, "brackets", case, report.passed, time.perf_counter() - started, {"N": n, "p": p})
            return case, report

        return ordered_map(run, range(trials))

    def _check_dimension(self, dimension: int, entry: Optional[FieldEntry], n: Optional[int] = None) -> None:
        expected = entry.gl_rep.n if entry is not None else n
        if dimension != expected:
            raise ValidationError(
                "El campo vectorial no coincide con la dimensión de la tabla",
                details={"vector_field": dimension, "table": expected}
            )
