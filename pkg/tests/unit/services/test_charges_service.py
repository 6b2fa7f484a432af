"""Tests unitarios para el servicio de cargas abelianas"""

import pytest
from sympy import Integer, Rational, Symbol, expand

from app.core.exceptions import PreconditionError, ValidationError
from app.domain.ladder import ChargeVector, KParameters, SectorEntry, SectorLadder
from app.domain.mindex import ZETA
from app.domain.representations import Statistics
from app.services.charges_service import Albega


def _k(**values) -> KParameters:
    base = {name: Integer(0) for name in ("k1", "k2", "k3", "k4", "k5", "d0", "d1", "c")}
    base.update({k: Integer(v) for k, v in values.items()})
    return KParameters(**base)


class TestTraceNumbers:
    """Tests para trazas de representaciones"""

    def test_vector_traces(self, charges_service, representation_repository):
        """Test vector: u = 1, v = 0, w = 1, x = N"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("vector", 3))

        assert traces.as_tuple() == (1, 0, 1, 3, 0)

    def test_covector_traces(self, charges_service, representation_repository):
        """Test covector: w = −1"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("covector", 2))

        assert traces.as_tuple() == (1, 0, -1, 2, 0)

    def test_scalar_traces(self, charges_service, representation_repository):
        """Test escalar: solo x = 1"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("scalar", 2))

        assert traces.as_tuple() == (0, 0, 0, 1, 0)

    def test_density_traces(self, charges_service, representation_repository):
        """Test densidad de peso λ: v = λ², w = λ"""
        lam = Rational(1, 2)
        traces = charges_service.trace_numbers(representation_repository.get_gl("density", 2, lam))

        assert traces.as_tuple() == (0, lam ** 2, lam, 1, 0)

    def test_one_dimension_assigns_everything_to_u(self, charges_service, representation_repository):
        """Test con N=1 u y v no se separan"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("vector", 1))

        assert traces.as_tuple() == (1, 0, 1, 1, 0)

    def test_internal_traces(self, charges_service, representation_repository):
        """Test y = tr J^a J^a por la dimensión de gl"""
        vector = representation_repository.get_gl("vector", 2)
        adjoint = representation_repository.get_internal("adjoint")
        fundamental = representation_repository.get_internal("fundamental")

        assert charges_service.trace_numbers(representation_repository.get_gl("scalar", 2), adjoint).y == 2
        assert charges_service.trace_numbers(vector, fundamental).as_tuple() == (2, 0, 2, 4, 1)

    def test_internal_rep_rejected_as_gl(self, charges_service, representation_repository):
        """Test se espera una representación de gl(N)"""
        with pytest.raises(ValidationError, match="gl\\(N\\)"):
            charges_service.trace_numbers(representation_repository.get_internal("adjoint"))

    def test_validate_rep(self, charges_service, representation_repository):
        """Test validación de representaciones integradas"""
        result = charges_service.validate_rep(representation_repository.get_gl("covector", 2))

        assert result.passed
        assert result.rep == "covector"


class TestKParameters:
    """Tests para la tabla de signos"""

    def test_boson_scalar(self, charges_service, representation_repository):
        """Test bosón escalar: k4 = c = −1"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("scalar", 1))

        k = charges_service.k_parameters(traces, Statistics.BOSON)

        assert (k.k4, k.d0, k.c) == (-1, -1, -1)
        assert (k.k6, k.k7, k.k8) == (0, 0, 0)

    def test_fermion_is_opposite(self, charges_service, representation_repository):
        """Test fermiones con el signo opuesto"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("vector", 2))

        boson = charges_service.k_parameters(traces, Statistics.BOSON)
        fermion = charges_service.k_parameters(traces, "fermion")

        assert fermion.core() == (-boson).core()
        assert fermion.d1 == traces.w


class TestAbelianCharges:
    """Tests para las fórmulas de c1..c5"""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_trajectory_constants(self, charges_service, n):
        """Test con k = 0 quedan (1, 0, 1, 2N, 0)"""
        charges = charges_service.abelian_charges_single(_k(), n, 4)

        assert charges.as_tuple() == (1, 0, 1, 2 * n, 0)

    def test_scalar_boson_in_one_dimension(self, charges_service, representation_repository):
        """Test c4 = 3 para un bosón escalar con N=1, p=0"""
        traces = charges_service.trace_numbers(representation_repository.get_gl("scalar", 1))
        k = charges_service.k_parameters(traces, Statistics.BOSON)

        assert charges_service.abelian_charges_single(k, 1, 0).as_tuple() == (1, 0, 1, 3, 0)

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("p", [0, 1, 3, 5])
    def test_single_sector_is_ladder_at_zero(self, charges_service, n, p):
        """Test la fórmula de un sector coincide con la escalera (−k1..−k5) en 0"""
        k = _k(k1=2, k2=-1, k3=3, k4=5, k5=7, d0=5, d1=3, c=5)

        single = charges_service.abelian_charges_single(k, n, p, include_trajectory=False)
        multi = charges_service.abelian_charges_multi(charges_service.ladder_from_k(k), n, p)

        assert (single - multi).is_zero()

    def test_p_below_depth_rejected(self, charges_service):
        """Test p debe ser >= r"""
        ladder = SectorLadder({2: SectorEntry.of(x=1)})

        with pytest.raises(PreconditionError, match="p debe ser >= r = 2"):
            charges_service.abelian_charges_multi(ladder, 2, 1)

    def test_sweep(self, charges_service):
        """Test barrido en p"""
        ladder = SectorLadder({0: SectorEntry.of(x=1)})

        rows = charges_service.sweep(ladder, 1, [0, 1, 2])

        assert [(p, c.c4) for p, c in rows] == [(0, 1), (1, 2), (2, 3)]


class TestIdentities:
    """Tests para α, β, γ"""

    def test_known_value(self, charges_service):
        """Test r=3, i=2 da (1, −2, 1)"""
        assert charges_service.albega(2, 3) == Albega(1, -2, 1)

    def test_direct_equals_closed(self, charges_service):
        """Test sumas directas contra formas cerradas para r <= 12"""
        for r in range(13):
            for i in range(r + 2):
                assert charges_service.albega_direct(i, r) == charges_service.albega_closed(i, r)

    def test_closing_values(self, charges_service):
        """Test α_{r+1} = 0 para r >= 2 y β_{r+1} = 0 para r >= 1"""
        for r in range(2, 10):
            closing = charges_service.albega_closed(r + 1, r)
            assert (closing.alpha, closing.beta) == (0, 0)
        assert charges_service.albega_closed(2, 1).alpha == 1

    def test_out_of_range(self, charges_service):
        """Test i fuera de 0..r+1"""
        with pytest.raises(PreconditionError, match="0 <= i <= r\\+1"):
            charges_service.albega(5, 3)


class TestConditions:
    """Tests para las condiciones de finitud"""

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_conditions_ladder_passes(self, charges_service, r):
        """Test la escalera objetivo cumple las ocho condiciones y las simplificadas"""
        ladder = charges_service.conditions_ladder(r)

        report = charges_service.check_conditions(ladder, r)

        assert report.passed, report.failing
        assert report.passed_simplified, report.failing_simplified
        assert report.equivalent

    def test_perturbation_detected(self, charges_service):
        """Test perturbar x_1 rompe iv[1] y su forma simplificada"""
        ladder = charges_service.conditions_ladder(3)
        ladder.add(1, SectorEntry.of(x=1))

        report = charges_service.check_conditions(ladder, 3)

        assert "iv[1]" in report.failing
        assert "x[1]" in report.failing_simplified
        assert report.equivalent

    def test_ladder_targets_at_zero(self, charges_service, targets):
        """Test la entrada 0 es (U, V, W, X, Y)"""
        entry = charges_service.ladder_targets(0, 3)

        assert (entry.u, entry.v, entry.w, entry.x, entry.y) == (
            targets["U"], targets["V"], targets["W"], targets["X"], targets["Y"]
        )

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_finite_limit_at_n_equals_r(self, charges_service, unit_targets, n):
        """Test con N = r las cargas son constantes para p >= r"""
        ladder = charges_service.conditions_ladder(n).substitute(unit_targets)
        one = {name: Integer(1) for name in ("U", "V", "W", "X", "Y")}

        for p in range(n, n + 5):
            charges = charges_service.abelian_charges_multi(ladder, n, p)
            assert charges.as_tuple() == (1, 1, -1, 1, -1)
            assert (charges - charges_service.finite_limit(one, n, p, n)).is_zero()

    def test_charges_vanish_below_r(self, charges_service, unit_targets):
        """Test con N < r las cargas se anulan para p >= r"""
        ladder = charges_service.conditions_ladder(4).substitute(unit_targets)

        for n in (1, 2, 3):
            for p in range(4, 8):
                assert charges_service.abelian_charges_multi(ladder, n, p).is_zero()

    def test_symbolic_limit(self, charges_service, targets):
        """Test límite simbólico C(N+p−r, N−r)·(U, V, −W, X, −Y)"""
        ladder = charges_service.conditions_ladder(2)

        charges = charges_service.abelian_charges_multi(ladder, 3, 4)

        factor = 5
        assert (charges - ChargeVector.of(
            factor * targets["U"], factor * targets["V"], -factor * targets["W"],
            factor * targets["X"], -factor * targets["Y"],
        )).is_zero()


class TestGeneratingFunctions:
    """Tests para polinomios de sector y series de fugacidad"""

    def test_sector_polynomial_x(self, charges_service, unit_targets, targets):
        """Test x(ζ) = X(1 − ζ)^4 con N=4"""
        polynomials = charges_service.sector_polynomials(charges_service.substitute_targets(unit_targets), 4)

        assert [polynomials["x"].coeff(ZETA, k) for k in range(5)] == [1, -4, 6, -4, 1]

    def test_sector_polynomial_u_in_two_dimensions(self, charges_service, targets):
        """Test N=2 con U=0, X=1 da u(ζ) = −ζ²"""
        values = charges_service.substitute_targets({targets["U"]: 0, targets["X"]: 1})

        assert charges_service.sector_polynomials(values, 2)["u"] == -ZETA ** 2

    def test_sector_polynomials_require_two_dimensions(self, charges_service):
        """Test N=1 no admite polinomios de sector"""
        with pytest.raises(PreconditionError, match="N >= 2"):
            charges_service.sector_polynomials(None, 1)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_ladder_polynomials_match_sector_polynomials(self, charges_service, n):
        """Test la escalera de condiciones con r = N da los polinomios de sector"""
        from_ladder = charges_service.ladder_polynomials(charges_service.conditions_ladder(n))
        closed = charges_service.sector_polynomials(None, n)

        for family, poly in closed.items():
            assert expand(from_ladder[family] - poly) == 0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_series_are_constant_and_agree(self, charges_service, targets, n):
        """Test las series generatrices son constantes y sus sumas parciales son las cargas"""
        ladder = charges_service.conditions_ladder(n)
        series = charges_service.fugacity_charges(charges_service.ladder_polynomials(ladder), n, n + 4)

        assert all(s.is_constant() for s in series.values())
        assert series["c3"].coefficient(0) == -targets["W"]
        for p in range(n, n + 5):
            direct = charges_service.abelian_charges_multi(ladder, n, p)
            assert (direct - charges_service.charges_from_series(series, p)).is_zero()

    def test_truncation_below_degree(self, charges_service):
        """Test truncación menor que el grado"""
        with pytest.raises(PreconditionError, match="truncación"):
            charges_service.fugacity_charges({"x": (1 - ZETA) ** 3}, 3, 2)

    def test_substitute_targets_keeps_missing_symbolic(self, charges_service):
        """Test los objetivos sin valor quedan simbólicos"""
        values = charges_service.substitute_targets({Symbol("X"): 2})

        assert values["X"] == 2
        assert values["U"] == Symbol("U")
