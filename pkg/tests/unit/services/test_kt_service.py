"""Tests unitarios para el complejo de Koszul-Tate"""

import pytest
from sympy import Symbol

from app.core.exceptions import NotFoundError, PreconditionError, ValidationError
from app.domain.fieldspec import ToyModel
from app.domain.graded import GeneratorKind
from app.domain.mindex import MultiIndex
from app.services.kt_service import generator_name, trajectory_name

PHI0 = Symbol("phi_0")
PHI1 = Symbol("phi_1")
PHI2 = Symbol("phi_2")


class TestEulerLagrange:
    """Tests para las ecuaciones de movimiento"""

    def test_free_model(self, kt_service, toy_model_repository):
        """Test E = −φ − φ_2 de orden 2"""
        model = toy_model_repository.get("free")

        equation = kt_service.euler_lagrange(model)["phi"]

        assert equation.expression == -PHI0 - PHI2
        assert equation.order == 2

    def test_phi4_model(self, kt_service, toy_model_repository):
        """Test E = −φ³ − φ_2"""
        equation = kt_service.euler_lagrange(toy_model_repository.get("phi4"))["phi"]

        assert equation.expression == -PHI0 ** 3 - PHI2

    def test_total_derivative(self, kt_service, toy_model_repository):
        """Test D(φ²) = 2 φ φ_1"""
        model = toy_model_repository.get("free")

        assert kt_service.total_derivative(PHI0 ** 2, model, 0) == 2 * PHI0 * PHI1

    def test_prolong_out_of_range(self, kt_service, toy_model_repository):
        """Test E_{,m} solo existe para |m| <= p − o"""
        model = toy_model_repository.get("free")
        equation = kt_service.euler_lagrange(model)["phi"]

        assert kt_service.prolong(equation, model, MultiIndex.of(1), 3) == -PHI1 - Symbol("phi_3")
        with pytest.raises(PreconditionError, match="no está definido"):
            kt_service.prolong(equation, model, MultiIndex.of(2), 3)

    def test_isotropic_model_in_two_dimensions(self, kt_service, toy_model_repository):
        """Test con N=2 el término cinético suma sobre las direcciones"""
        model = toy_model_repository.get("free", 2)

        equation = kt_service.euler_lagrange(model)["phi"]

        assert equation.expression == -Symbol("phi_0_0") - Symbol("phi_2_0") - Symbol("phi_0_2")

    def test_fermions_rejected(self, kt_service):
        """Test los campos fermiónicos no están soportados"""
        model = ToyModel(name="f", fields=["psi"], lagrangian="psi^2", statistics={"psi": "fermion"})

        with pytest.raises(ValidationError, match="fermiónicos"):
            kt_service.euler_lagrange(model)

    def test_name_clash_rejected(self, kt_service):
        """Test nombres que chocan con los generadores derivados"""
        model = ToyModel(name="c", fields=["phi", "phiS"], lagrangian="phi^2 + phiS^2")

        with pytest.raises(ValidationError, match="conflicto"):
            kt_service.euler_lagrange(model)

    def test_unknown_model(self, toy_model_repository):
        """Test modelo no registrado"""
        with pytest.raises(NotFoundError, match="no encontrado"):
            toy_model_repository.get("sigma")


class TestKTComplex:
    """Tests para el diferencial δ"""

    def test_generator_table_bounds(self, kt_service, toy_model_repository):
        """Test cotas de orden por tipo de generador"""
        model = toy_model_repository.get("free")
        complex_ = kt_service.kt_differential(model, 3)
        algebra = complex_.algebra
        zero, one, two = MultiIndex.of(0), MultiIndex.of(1), MultiIndex.of(2)

        assert algebra.has(generator_name(GeneratorKind.FIELD, "phi", MultiIndex.of(3), 2))
        assert algebra.has(generator_name(GeneratorKind.ANTIFIELD, "phi", one))
        assert not algebra.has(generator_name(GeneratorKind.ANTIFIELD, "phi", two))
        assert algebra.has(generator_name(GeneratorKind.BARRED, "phi", two))
        assert algebra.has(generator_name(GeneratorKind.BARRED_ANTIFIELD, "phi", zero))
        assert not algebra.has(generator_name(GeneratorKind.BARRED_ANTIFIELD, "phi", one))
        assert algebra.has(trajectory_name(0, 2))

    def test_dt_constraint_top_order_rejected(self, kt_service, toy_model_repository):
        """Test D_t no existe en el orden superior"""
        complex_ = kt_service.kt_differential(toy_model_repository.get("free"), 2)

        with pytest.raises(PreconditionError, match="orden superior"):
            kt_service.dt_constraint(complex_, GeneratorKind.FIELD, "phi", MultiIndex.of(2))

    def test_time_derivative_leaves_algebra(self, kt_service, toy_model_repository):
        """Test la derivada temporal de un generador con dos puntos"""
        complex_ = kt_service.kt_differential(toy_model_repository.get("free"), 2)
        value = complex_.algebra.gen(generator_name(GeneratorKind.FIELD, "phi", MultiIndex.of(0), 2))

        with pytest.raises(PreconditionError, match="sale del álgebra truncada"):
            kt_service.time_derivative(complex_, value)

    @pytest.mark.parametrize("model_name", ["free", "phi4", "coupled"])
    @pytest.mark.parametrize("p", [2, 3])
    def test_nilpotency(self, kt_service, toy_model_repository, model_name, p):
        """Test δ² = 0 sobre generadores y productos"""
        report = kt_service.verify_nilpotency(toy_model_repository.get(model_name), p)

        assert report.passed, (report.generator_residuals, report.product_residuals, report.grading_violations)
        assert report.generators_checked > 0
        assert report.products_checked > 0

    @pytest.mark.slow
    def test_nilpotency_phi4_p4(self, kt_service, toy_model_repository):
        """Test δ² = 0 para phi4 con p = 4"""
        report = kt_service.verify_nilpotency(toy_model_repository.get("phi4"), 4)

        assert report.passed

    def test_missing_correction_leaves_expected_residual(self, kt_service, toy_model_repository):
        """Test sin corrección δ²(φ̄*_m) es Σ ∂E_m/∂φ_n (φ̇_n − q̇ φ_{n+1})"""
        model = toy_model_repository.get("phi4")
        complex_ = kt_service.kt_differential(model, 3, correction=False)
        zero = MultiIndex.of(0)
        name = generator_name(GeneratorKind.BARRED_ANTIFIELD, "phi", zero)

        residual = complex_.delta.apply(complex_.delta.apply_to(name))
        expected = kt_service.uncorrected_residual(complex_, "phi", zero)

        assert not residual.is_zero()
        assert (residual - expected).is_zero()

    def test_missing_correction_fails_report(self, kt_service, toy_model_repository):
        """Test el reporte detecta los residuos sin corrección"""
        report = kt_service.verify_nilpotency(
            toy_model_repository.get("phi4"), 3, correction=False, include_products=False
        )

        assert not report.passed
        assert generator_name(GeneratorKind.BARRED_ANTIFIELD, "phi", MultiIndex.of(0)) in report.generator_residuals
        assert not report.grading_violations

    def test_prolongation_by_substitution(self, kt_service, toy_model_repository):
        """Test E_{,m} coincide con derivar E evaluada en campos de prueba"""
        for name in ("free", "phi4", "coupled"):
            assert kt_service.verify_prolongation(toy_model_repository.get(name), 3, seed=5) == []
