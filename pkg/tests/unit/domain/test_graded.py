"""Tests unitarios para el álgebra polinomial graduada"""

import pytest

from app.core.exceptions import NotFoundError, PreconditionError, ValidationError
from app.domain.graded import (
    GeneratorKind,
    GradedAlgebra,
    GradedDerivation,
    GradedGenerator,
    dotted_name,
    monomials_up_to_two,
)


def _algebra() -> GradedAlgebra:
    return GradedAlgebra([
        GradedGenerator("a", GeneratorKind.FIELD, "a", None, 0, 0, 0),
        GradedGenerator("b", GeneratorKind.FIELD, "b", None, 0, 0, 0),
        GradedGenerator("s", GeneratorKind.ANTIFIELD, "a", None, 0, 1, 1),
        GradedGenerator("t", GeneratorKind.ANTIFIELD, "b", None, 0, 1, 1),
    ])


class TestGradedAlgebra:
    """Tests para productos graduados"""

    def test_odd_generators_anticommute(self):
        """Test s t = −t s"""
        algebra = _algebra()
        s, t = algebra.gen("s"), algebra.gen("t")

        assert (s * t + t * s).is_zero()

    def test_odd_square_vanishes(self):
        """Test s² = 0"""
        algebra = _algebra()
        s = algebra.gen("s")

        assert (s * s).is_zero()

    def test_even_generators_commute(self):
        """Test a s = s a"""
        algebra = _algebra()
        a, s = algebra.gen("a"), algebra.gen("s")

        assert (a * s - s * a).is_zero()

    def test_antifield_number_and_parity(self):
        """Test afn y paridades de un monomio"""
        algebra = _algebra()
        value = algebra.gen("a") * algebra.gen("s") * algebra.gen("t")

        assert value.afns() == {2}
        assert value.parities() == {0}

    def test_repeated_names_rejected(self):
        """Test nombres repetidos"""
        generator = GradedGenerator("a", GeneratorKind.FIELD, "a", None, 0, 0, 0)
        with pytest.raises(ValidationError, match="repetidos"):
            GradedAlgebra([generator, generator])

    def test_unknown_generator(self):
        """Test generador desconocido"""
        with pytest.raises(NotFoundError):
            _algebra().gen("z")

    def test_even_gen_of_odd(self):
        """Test pedir el generador par de uno impar"""
        with pytest.raises(ValidationError, match="impar"):
            _algebra().even_gen("s")


class TestGradedDerivation:
    """Tests para derivaciones pares e impares"""

    def test_odd_derivation_sign(self):
        """Test δ(s t) = δs t − s δt"""
        algebra = _algebra()
        a, b = algebra.gen("a"), algebra.gen("b")
        delta = GradedDerivation(algebra, {"s": a, "t": b}, odd=True)

        result = delta.apply(algebra.gen("s") * algebra.gen("t"))

        expected = a * algebra.gen("t") - algebra.gen("s") * b
        assert (result - expected).is_zero()

    def test_nilpotent_koszul_differential(self):
        """Test δ² = 0 en el complejo de Koszul de (a, b)"""
        algebra = _algebra()
        delta = GradedDerivation(algebra, {"s": algebra.gen("a"), "t": algebra.gen("b")}, odd=True)

        value = algebra.gen("s") * algebra.gen("t") * algebra.gen("a")

        assert delta.apply(delta.apply(value)).is_zero()

    def test_even_derivation_chain_rule(self):
        """Test derivación par sobre el coeficiente"""
        algebra = _algebra()
        d = GradedDerivation(algebra, {"a": algebra.gen("b")}, odd=False)
        a = algebra.gen("a")

        result = d.apply(a * a)

        assert (result - (a * algebra.gen("b")).scale(algebra.ring.from_dict({(0, 0): 2}))).is_zero()


class TestNames:
    """Tests para nombres de generadores"""

    def test_dotted_name(self):
        """Test sufijos temporales"""
        assert dotted_name("q1", 2) == "q1_t_t"
        with pytest.raises(PreconditionError):
            dotted_name("q1", -1)

    def test_monomials_up_to_two(self):
        """Test generadores y productos de dos"""
        assert monomials_up_to_two(["a", "b"]) == [("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "b")]
