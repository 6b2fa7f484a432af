"""Tests unitarios para las realizaciones sobre jets"""

import random

import pytest
from sympy import Rational

from app.core.exceptions import ValidationError
from app.domain.mindex import MultiIndex
from app.domain.polynomials import (
    CurrentField,
    PolyVectorField,
    base_ring,
    random_current,
    random_vector_field,
)
from app.services.liejet_service import GeneratorKind


class TestActionMatrix:
    """Tests para T^{βn}_{αm}(ξ)"""

    def test_translation_acts_trivially_on_scalar(self, liejet_service):
        """Test una traslación no mezcla jets distintos salvo el orden superior"""
        table = liejet_service.field_table(1, 2, [("f", "scalar", None)])
        xi = PolyVectorField.translation(1, 0)

        matrix = liejet_service.jet_action_matrix(xi, table.entries[0], 2)

        assert matrix.is_zero()

    def test_dilation_weights_jets_by_order(self, liejet_service):
        """Test x ∂ sobre un escalar da |m| en la diagonal"""
        table = liejet_service.field_table(1, 3, [("f", "scalar", None)])
        xi = PolyVectorField.from_strings(["x1"], 1)
        R = base_ring(1)

        matrix = liejet_service.jet_action_matrix(xi, table.entries[0], 3)

        for k in range(4):
            m = MultiIndex.of(k)
            assert matrix.entry((0, m), (0, m)) == (R(k) if k else None)

    def test_vector_picks_up_jacobian(self, liejet_service):
        """Test x ∂ sobre un vector suma la matriz T"""
        table = liejet_service.field_table(1, 0, [("v", "vector", None)])
        xi = PolyVectorField.from_strings(["x1"], 1)

        matrix = liejet_service.jet_action_matrix(xi, table.entries[0], 0)

        zero = MultiIndex.of(0)
        assert matrix.entry((0, zero), (0, zero)) == base_ring(1).one

    @pytest.mark.parametrize("gl_name", ["scalar", "vector", "covector", "density"])
    def test_truncation_is_closed(self, liejet_service, gl_name):
        """Test el p-jet no se acopla al orden p+1"""
        table = liejet_service.field_table(2, 2, [("f", gl_name, None)], density_weight=Rational(1, 2))
        xi = random_vector_field(2, 3, random.Random(3))

        assert liejet_service.truncation_closure(xi, table.entries[0], 2) == []

    def test_dimension_mismatch(self, liejet_service):
        """Test campo vectorial de otra dimensión"""
        table = liejet_service.field_table(2, 1, [("f", "scalar", None)])

        with pytest.raises(ValidationError, match="dimensión de la tabla"):
            liejet_service.jet_action_matrix(PolyVectorField.translation(1, 0), table.entries[0], 1)


class TestPullback:
    """Tests para el oráculo de flujo"""

    @pytest.mark.parametrize("gl_name", ["scalar", "vector", "covector", "density"])
    def test_diffeomorphism_pullback(self, liejet_service, gl_name):
        """Test la matriz reproduce la variación de jets de campos de prueba"""
        table = liejet_service.field_table(2, 1, [("f", gl_name, None)], density_weight=Rational(1, 2))
        xi = random_vector_field(2, 2, random.Random(7))

        assert liejet_service.verify_pullback(xi, table.entries[0], 1) == []

    def test_current_pullback(self, liejet_service):
        """Test J_X sobre la adjunta"""
        table = liejet_service.field_table(1, 2, [("g", "scalar", "adjoint")])
        current = random_current(3, 1, 2, random.Random(2))

        assert liejet_service.verify_pullback(current, table.entries[0], 2) == []

    def test_wrong_current_dimension(self, liejet_service):
        """Test corriente con número de componentes incorrecto"""
        table = liejet_service.field_table(1, 1, [("g", "scalar", "adjoint")])

        with pytest.raises(ValidationError, match="dimensión del álgebra interna"):
            liejet_service.jet_current_matrix(CurrentField.from_strings(["1"], 1), table.entries[0], 1)


class TestHomomorphism:
    """Tests para el cierre del álgebra sobre jets"""

    def test_fixed_fields_close(self, liejet_service):
        """Test [L_ξ, L_η] = L_[ξ,η] con campos explícitos"""
        table = liejet_service.field_table(2, 2, [("f", "vector", None), ("g", "scalar", "adjoint")])
        xi = PolyVectorField.from_strings(["x1*x2", "1"], 2)
        eta = PolyVectorField.from_strings(["x2^2", "x1"], 2)
        x = CurrentField.from_strings(["x1", "0", "1"], 2)
        y = CurrentField.from_strings(["0", "x2", "x1*x2"], 2)

        report = liejet_service.verify_homomorphism(xi, eta, table, x, y)

        assert report.checked == ["LL", "LJ", "JJ"]
        assert report.passed, report.residuals

    def test_wrong_argument_type(self, liejet_service):
        """Test L_ξ exige un campo vectorial"""
        table = liejet_service.field_table(1, 1, [("f", "scalar", None)])

        with pytest.raises(ValidationError, match="campo vectorial polinomial"):
            liejet_service.assemble_generator(GeneratorKind.DIFFEOMORPHISM, "x1", table)

    def test_bracket_trials_are_reproducible(self, liejet_service):
        """Test la misma semilla produce los mismos casos"""
        first = liejet_service.run_bracket_trials(1, 2, trials=3, seed=4, degree=2)
        second = liejet_service.run_bracket_trials(1, 2, trials=3, seed=4, degree=2)

        assert [case for case, _ in first] == ["trial-0-scalar", "trial-1-vector", "trial-2-covector"]
        assert [r.residuals for _, r in first] == [r.residuals for _, r in second]
        assert all(r.passed for _, r in first)

    @pytest.mark.slow
    def test_random_trials_in_two_dimensions(self, liejet_service):
        """Test ensayos aleatorios con N=2, p=2"""
        results = liejet_service.run_bracket_trials(2, 2, trials=6, seed=1998, degree=3)

        failing = [case for case, report in results if not report.passed]
        assert failing == []

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "n,p,trials",
        [
            (1, 1, 8), (1, 2, 6), (1, 3, 6),
            (2, 1, 6), (2, 2, 6), (2, 3, 5),
            (3, 1, 5), (3, 2, 4), (3, 3, 4),
        ],
    )
    def test_seeded_trials_up_to_three_dimensions(self, liejet_service, n, p, trials):
        """Test 50 ensayos con semilla fija para N <= 3 y p <= 3"""
        results = liejet_service.run_bracket_trials(n, p, trials=trials, seed=1998, degree=3)

        assert len(results) == trials
        failing = [case for case, report in results if not report.passed]
        assert failing == []

    def test_explicit_fields_from_rng(self, liejet_service):
        """Test el homomorfismo con corrientes aleatorias en N=1"""
        rng = random.Random(9)
        table = liejet_service.field_table(1, 2, [("f", "covector", None), ("g", "scalar", "adjoint")])

        report = liejet_service.verify_homomorphism(
            random_vector_field(1, 2, rng), random_vector_field(1, 2, rng), table,
            random_current(3, 1, 2, rng), random_current(3, 1, 2, rng),
        )

        assert report.passed
