"""Tests de integración entre representaciones, cargas, oráculo y contenido"""

import pytest
import sympy
from sympy import Integer

from app.domain.representations import Statistics


@pytest.mark.integration
class TestRepresentationPipeline:
    """Tests de integración desde representaciones hasta cargas"""

    @pytest.mark.parametrize("gl_name", ["scalar", "vector", "covector"])
    @pytest.mark.parametrize("statistics", [Statistics.BOSON, Statistics.FERMION])
    def test_rep_ladder_matches_single_sector(
        self, charges_service, representation_repository, gl_name, statistics
    ):
        """Test la escalera de un sector reproduce la fórmula de un sector"""
        gl_rep = representation_repository.get_gl(gl_name, 2)
        k = charges_service.k_parameters(charges_service.trace_numbers(gl_rep), statistics)

        ladder = charges_service.rep_ladder(gl_rep, None, statistics)

        for p in range(4):
            single = charges_service.abelian_charges_single(k, 2, p, include_trajectory=False)
            assert (single - charges_service.abelian_charges_multi(ladder, 2, p)).is_zero()

    def test_boson_and_fermion_cancel(self, charges_service, representation_repository):
        """Test un bosón y un fermión en la misma representación se cancelan"""
        gl_rep = representation_repository.get_gl("vector", 3)
        g_rep = representation_repository.get_internal("fundamental")

        ladder = charges_service.rep_ladder(gl_rep, g_rep, Statistics.BOSON) + charges_service.rep_ladder(
            gl_rep, g_rep, Statistics.FERMION
        )

        assert ladder.is_zero()

    def test_oracle_agrees_with_trace_table(self, oracle_service, charges_service, representation_repository):
        """Test el oráculo confirma los parámetros k de la densidad"""
        gl_rep = representation_repository.get_gl("density", 2, "2/3")
        traces = charges_service.trace_numbers(gl_rep)
        k_of = {s: charges_service.k_parameters(traces, s) for s in (Statistics.BOSON, Statistics.FERMION)}

        report = oracle_service.verify_oracle(gl_rep, None, k_of, max_mode=2)

        assert report.passed, report.failures


@pytest.mark.integration
class TestSpecPipeline:
    """Tests de integración desde archivos hasta cargas"""

    def test_conditions_ladder_is_p_independent(self, content_service, spec_repository, charges_service, write_spec):
        """Test una escalera de condiciones da cargas constantes en p"""
        path = write_spec(
            "dimension: 2\n"
            "conditions_ladder: 2\n"
            "targets: {U: 1, V: 1, W: 1, X: 1, Y: 1}\n"
        )
        ladder, _ = content_service.ladder_from_spec(spec_repository.load(path))

        values = {charges_service.abelian_charges_multi(ladder, 2, p).as_tuple() for p in range(2, 6)}

        assert values == {(1, 1, -1, 1, -1)}

    def test_standard_content_from_file(self, content_service, spec_repository, charges_service, write_spec):
        """Test el contenido de la tabla principal leído desde un archivo"""
        path = write_spec(
            "dimension: 3\n"
            "reduced: true\n"
            "targets: {X: 1}\n"
            "fields:\n"
            "  - name: F\n"
            "    statistics: fermion\n"
            "    el_order: 1\n"
            "    counts: {x: 3*X}\n"
            "    gauge: [{name: S, order: 2, counts: {x: X}}]\n"
            "  - name: B\n"
            "    statistics: boson\n"
            "    el_order: 2\n"
            "    counts: {x: 2*X}\n"
            "    gauge: [{name: G, order: 3, counts: {x: X}}]\n"
        )
        ladder, _ = content_service.ladder_from_spec(spec_repository.load(path))

        assert ladder.family("x") == [1, -3, 3, -1]
        for p in range(3, 7):
            assert charges_service.abelian_charges_multi(ladder, 3, p).c4 == 1

    def test_kt_from_file(self, kt_service, spec_repository, write_spec):
        """Test δ² = 0 para un lagrangiano leído desde un archivo"""
        path = write_spec(
            "dimension: 1\n"
            "lagrangian:\n"
            "  name: cubic\n"
            "  fields: [phi]\n"
            "  text: 1/2*phi_1^2 - 1/3*phi^3\n"
        )
        model = spec_repository.toy_model(spec_repository.load(path))

        report = kt_service.verify_nilpotency(model, 3)

        assert report.passed
        assert sympy.expand(kt_service.euler_lagrange(model)["phi"].expression) == (
            -sympy.Symbol("phi_0") ** 2 - sympy.Symbol("phi_2")
        )

    def test_explicit_ladder_and_density(self, content_service, spec_repository, write_spec):
        """Test entradas explícitas sumadas a un sector de densidad"""
        path = write_spec(
            "dimension: 2\n"
            "ladder: [{offset: 0, v: -1/4, w: -1/2, x: -1}]\n"
            "representations: [{name: d, gl: density, gl_weight: 1/2}]\n"
        )

        ladder, _ = content_service.ladder_from_spec(spec_repository.load(path))

        assert ladder.is_zero()
        assert ladder.totals().x == Integer(0)
