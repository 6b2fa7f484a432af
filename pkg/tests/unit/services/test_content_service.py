"""Tests unitarios para el servicio de contenido de campos"""

import logging

import pytest
import sympy
from sympy import Integer, Symbol

from app.core.exceptions import PreconditionError, ValidationError
from app.domain.fieldspec import FieldSpec, gauge_entry
from app.services.content_service import ConstraintSystem, Equation, unknown

XF, XB, XS, XG = (Symbol(f"x_{s}") for s in "FBSG")


def _telescoping_specs():
    return [
        FieldSpec.build("F", "fermion", 1, {"x": 4}, gauge=[gauge_entry("S", 2, {"x": 1})]),
        FieldSpec.build("B", "boson", 2, {"x": 10}, gauge=[gauge_entry("G", 3, {"x": 4})]),
    ]


class TestBuildLadder:
    """Tests para la construcción de escaleras"""

    def test_fermion_with_gauge(self, content_service):
        """Test fermión con o=1 y gauge en 2: (x_F, −2x_F, x_F + x_S, −x_S)"""
        spec = FieldSpec.build("F", "fermion", 1, {"x": XF}, gauge=[gauge_entry("S", 2, {"x": XS})])

        ladder = content_service.build_ladder([spec])

        assert ladder.family("x") == [XF, -2 * XF, XF + XS, -XS]

    def test_reduced_boson(self, content_service):
        """Test bosón reducido con o=2 y gauge en 3: (−x_B, 0, x_B, −x_G)"""
        spec = FieldSpec.build("B", "boson", 2, {"x": XB}, gauge=[gauge_entry("G", 3, {"x": XG})])

        ladder = content_service.build_ladder([spec], reduced=True)

        assert ladder.family("x") == [-XB, 0, XB, -XG]

    def test_full_ladder_totals_vanish(self, content_service):
        """Test con filas barradas las sumas por familia se anulan"""
        ladder = content_service.build_ladder(content_service.standard_content())

        assert ladder.totals().is_zero()

    def test_dual_trace_flips_w(self, content_service):
        """Test modo dual: w del anticampo cambia de signo"""
        spec = FieldSpec.build("B", "boson", 2, {"x": 1, "w": 1}, include_barred=False)

        plain = content_service.build_ladder([spec])
        dual = content_service.build_ladder([spec], dual_trace=True)

        assert plain.family("w") == [-1, 0, 1]
        assert dual.family("w") == [-1, 0, -1]

    def test_gauge_below_el_order_warns(self, content_service, caplog):
        """Test gauge con ς <= o registra una advertencia"""
        spec = FieldSpec.build("B", "boson", 2, {"x": 1}, gauge=[gauge_entry("G", 2, {"x": 1})])

        with caplog.at_level(logging.WARNING):
            content_service.build_ladder([spec])

        assert any("Orden gauge 2" in record.getMessage() for record in caplog.records)


class TestConstraintSystems:
    """Tests para los sistemas de restricciones"""

    def test_full_system_r4(self, content_service, targets):
        """Test sistema completo con r = 4: (3X, 2X, X, X) único"""
        x = targets["X"]

        solution = content_service.solve_content(content_service.assemble_system("full", 4))

        assert solution.feasible
        assert solution.unique
        assert [solution.value("x", s) for s in "FBSG"] == [3 * x, 2 * x, x, x]
        assert solution.nonnegative is True

    def test_full_system_r5_infeasible(self, content_service, targets):
        """Test sistema completo con r = 5 sin solución"""
        x = targets["X"]

        solution = content_service.solve_content(content_service.assemble_system("full", 5))

        assert not solution.feasible
        assert "x[5]" in solution.violated
        assert any(sympy.expand(c * c - x * x) == 0 for c in solution.constraints)
        assert solution.assignment == {}

    def test_reduced_system_r2(self, content_service, targets):
        """Test sistema reducido con r = 2"""
        x = targets["X"]

        solution = content_service.solve_content(content_service.assemble_system("reduced", 2))

        assert solution.feasible
        assert [solution.value("x", s) for s in "FBSG"] == [2 * x, x, 0, 0]

    def test_constant_terms_on_left_side(self, content_service):
        """Test los términos constantes del lado izquierdo pasan al derecho"""
        a = Symbol("a")
        system = ConstraintSystem(mode="full", r=1, unknowns=[a], equations=[
            Equation(label="x[0]", lhs=a + 1, rhs=Integer(3)),
            Equation(label="x[1]", lhs=2 * a - 1, rhs=Integer(3)),
        ])

        solution = content_service.solve_content(system)

        assert solution.feasible
        assert solution.assignment == {a: 2}

    def test_specs_with_constant_counts(self, content_service, targets):
        """Test contenido propio con conteos constantes: solo es factible con X = −1"""
        a = Symbol("a")
        x = targets["X"]
        specs = [
            FieldSpec.build("f", "boson", 2, {"x": a}),
            FieldSpec.build("g", "boson", 1, {"x": 1}),
        ]

        system = content_service.assemble_system("full", 2, specs=specs)
        solution = content_service.solve_content(system)

        assert [eq.lhs for eq in system.equations[:4]] == [-a - 1, a + 2, a - 1, -a]
        assert not solution.feasible
        assert solution.constraints
        assert all(sympy.expand(c.subs(x, -1)) == 0 for c in solution.constraints)
        assert all(sympy.expand(c.subs(x, 0)) != 0 for c in solution.constraints)

    def test_unknown_mode(self, content_service):
        """Test modo desconocido"""
        with pytest.raises(ValidationError):
            content_service.assemble_system("partial", 3)

    def test_unknown_family(self, content_service):
        """Test familia desconocida"""
        with pytest.raises(ValidationError):
            content_service.assemble_system("full", 3, families=("z",))

    @pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
    def test_xs_formula(self, content_service, r):
        """Test x_S = (r² − 3r + 2) X / 2 contra el sistema"""
        assert sympy.expand(content_service.xs_formula(r) - content_service.xs_from_system(r)) == 0

    def test_equation_labels(self, content_service):
        """Test etiquetas familia[i] hasta max(r+1, profundidad)"""
        system = content_service.assemble_system("reduced", 3)

        assert [eq.label for eq in system.equations] == ["x[0]", "x[1]", "x[2]", "x[3]", "x[4]"]
        assert system.unknowns == [XF, XS, XB, XG]


class TestMainResult:
    """Tests para la tabla de veinte parámetros"""

    def test_table(self, content_service, targets):
        """Test valores de las cinco familias en los cuatro sectores"""
        U, V, W, X, Y = (targets[name] for name in ("U", "V", "W", "X", "Y"))
        expected = {
            "x": (3 * X, 2 * X, X, X),
            "y": (3 * Y, 2 * Y, Y, Y),
            "u": (3 * U, 2 * U, U - X, U - X),
            "w": (3 * W + X, 2 * W + X, W + X, W + X),
            "v": (3 * V + 2 * W, 2 * V + 2 * W, V + 2 * W + X, V + 2 * W + X),
        }

        solution = content_service.main_result()

        assert solution.feasible and solution.unique
        for family, values in expected.items():
            for sector, value in zip("FBSG", values):
                assert sympy.expand(solution.value(family, sector) - value) == 0, (family, sector)

    def test_main_result_satisfies_conditions(self, content_service):
        """Test la escalera reducida resultante cumple las condiciones con r = 3"""
        report = content_service.verify_main_result()

        assert report.passed, report.failing
        assert report.passed_simplified


class TestCensus:
    """Tests para el censo del Modelo Estándar"""

    def test_totals_and_predictions(self, content_service):
        """Test totales y predicciones de X por sector"""
        report = content_service.sm_census()

        assert report.totals == {"B": 60, "G": 16, "F": 90, "S": 0}
        assert report.predictions == {"B": 30, "G": 16, "F": 30, "S": 0}
        assert not report.consistent

    def test_leading_check(self, content_service):
        """Test 2·F = 3·B"""
        report = content_service.sm_census()

        assert report.leading_check == (180, 180)
        assert report.leading_passed

    def test_vielbein(self, content_service):
        """Test el vielbein con condiciones algebraicas equivale a la métrica"""
        report = content_service.vielbein_equivalence()

        assert report.fields == 16
        assert report.algebraic_antifields == 6
        assert report.net == 10
        assert report.equivalent

    def test_spurious_counts_rejected_when_negative(self, content_service):
        """Test conteos negativos"""
        with pytest.raises(ValidationError, match="no puede ser negativo"):
            content_service.spurious_equivalence(-1, 2)


class TestTelescoping:
    """Tests para c4 completa frente a reducida"""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_full_equals_reduced(self, content_service, n):
        """Test c4(N, p) completa coincide con c4(N−1, p) reducida"""
        for p in range(4, 7):
            report = content_service.telescoping_check(_telescoping_specs(), n, p)
            assert report.passed, (n, p, report.full_c4, report.reduced_c4)

    def test_requires_two_dimensions(self, content_service):
        """Test N=1 no admite telescopado"""
        with pytest.raises(PreconditionError, match="N >= 2"):
            content_service.telescoping_check(_telescoping_specs(), 1, 4)


class TestLadderFromSpec:
    """Tests para escaleras desde archivos de especificación"""

    def test_conditions_ladder_with_targets(self, content_service, spec_repository, write_spec):
        """Test escalera de condiciones con objetivos unitarios"""
        path = write_spec(
            "dimension: 2\n"
            "conditions_ladder: 2\n"
            "targets: {U: 1, V: 1, W: 1, X: 1, Y: 1}\n"
        )

        ladder, targets = content_service.ladder_from_spec(spec_repository.load(path))

        assert ladder.family("x") == [1, -2, 1]
        assert targets[Symbol("X")] == 1

    def test_fields_and_representations(self, content_service, spec_repository, write_spec):
        """Test suma de campos, entradas explícitas y sectores por representación"""
        path = write_spec(
            "dimension: 1\n"
            "fields:\n"
            "  - {name: B, statistics: boson, el_order: 2, counts: {x: 2}, include_barred: false}\n"
            "ladder:\n"
            "  - {offset: 0, x: 1}\n"
            "representations:\n"
            "  - {name: s, gl: scalar}\n"
        )

        ladder, _ = content_service.ladder_from_spec(spec_repository.load(path))

        assert ladder.family("x") == [-2 + 1 + 1, 0, 2]

    def test_unknown_symbol_in_ladder(self, content_service, spec_repository, write_spec):
        """Test entrada con un símbolo que no es objetivo"""
        path = write_spec("dimension: 2\nladder:\n  - {offset: 0, x: Z}\n")

        with pytest.raises(ValidationError):
            content_service.ladder_from_spec(spec_repository.load(path))

    def test_unknown_helper(self):
        """Test símbolo de incógnita por familia y sector"""
        assert unknown("x", "F") == XF
