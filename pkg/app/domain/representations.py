"""Representaciones matriciales de gl(N) y del álgebra interna, y tablas de campos"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import sympy
from sympy import I, Matrix, Rational, eye, zeros
from sympy.physics.quantum import TensorProduct

from app.core.exceptions import ValidationError
from app.core.utils.validation import validate_positive_int
from app.domain.polynomials import CurrentField

Label = Union[Tuple[int, int], int]

_FIELD_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z]*$")


class RepKind(str, Enum):
    GL = "gl"
    G = "g"


class Statistics(str, Enum):
    BOSON = "boson"
    FERMION = "fermion"

    @property
    def is_odd(self) -> bool:
        return self is Statistics.FERMION


@dataclass(frozen=True)
class LieAlgebra:
    """Álgebra interna con constantes de estructura reales f^{ab}_c"""

    name: str
    dimension: int
    structure: Tuple[Tuple[Tuple[int, int, int], int], ...] = ()

    def f(self, a: int, b: int, c: int) -> int:
        for key, value in self.structure:
            if key == (a, b, c):
                return value
        return 0

    def bracket(self, x: CurrentField, y: CurrentField) -> CurrentField:
        """[X, Y]_c = f^{ab}_c X_a Y_b"""
        if x.dimension != self.dimension or y.dimension != self.dimension:
            raise ValidationError(
                f"Las corrientes deben tener {self.dimension} componentes",
                details={"algebra": self.name, "left": x.dimension, "right": y.dimension}
            )
        components = [x.components[0].ring.zero for _ in range(self.dimension)] if self.dimension else []
        for (a, b, c), value in self.structure:
            components[c] += value * x.components[a] * y.components[b]
        return CurrentField(tuple(components), x.n)


@dataclass
class MatrixRep:
    """Familia de matrices de una representación de gl(N) o del álgebra interna

    Para gl(N) las etiquetas son pares (mu, nu) base 0 de T^mu_nu; para el
    álgebra interna son los índices a de J^a.
    """

    name: str
    kind: RepKind
    dimension: int
    matrices: Dict[Label, Matrix]
    n: int = 0
    algebra: Optional[LieAlgebra] = None

    def __post_init__(self) -> None:
        validate_positive_int(self.dimension, "dimension")
        for label, matrix in self.matrices.items():
            if matrix.shape != (self.dimension, self.dimension):
                raise ValidationError(
                    f"La matriz {label} no es de {self.dimension}x{self.dimension}",
                    details={"rep": self.name, "label": str(label), "shape": list(matrix.shape)}
                )
        if self.kind is RepKind.GL:
            expected = {(mu, nu) for mu in range(self.n) for nu in range(self.n)}
            if set(self.matrices) != expected:
                raise ValidationError(
                    "Una representación de gl(N) necesita las N² matrices T^mu_nu",
                    details={"rep": self.name, "N": self.n}
                )
        elif self.algebra is None or set(self.matrices) != set(range(self.algebra.dimension)):
            raise ValidationError(
                "Una representación interna necesita un álgebra y una matriz por generador",
                details={"rep": self.name}
            )

    def matrix(self, label: Label) -> Matrix:
        return self.matrices[label]

    def bracket_residuals(self) -> Dict[str, Matrix]:
        """Residuos no nulos de los corchetes que definen la familia"""
        residuals: Dict[str, Matrix] = {}
        if self.kind is RepKind.GL:
            for (mu, nu), t1 in self.matrices.items():
                for (rho, sigma), t2 in self.matrices.items():
                    expected = zeros(self.dimension, self.dimension)
                    if rho == nu:
                        expected += self.matrices[(mu, sigma)]
                    if mu == sigma:
                        expected -= self.matrices[(rho, nu)]
                    residual = (t1 * t2 - t2 * t1 - expected).applyfunc(sympy.expand)
                    if not residual.is_zero_matrix:
                        residuals[f"[T{mu + 1}{nu + 1},T{rho + 1}{sigma + 1}]"] = residual
            return residuals
        assert self.algebra is not None
        size = self.algebra.dimension
        for a in range(size):
            for b in range(size):
                j1, j2 = self.matrices[a], self.matrices[b]
                expected = zeros(self.dimension, self.dimension)
                for c in range(size):
                    value = self.algebra.f(a, b, c)
                    if value:
                        expected += I * value * self.matrices[c]
                residual = (j1 * j2 - j2 * j1 - expected).applyfunc(sympy.expand)
                if not residual.is_zero_matrix:
                    residuals[f"[J{a + 1},J{b + 1}]"] = residual
        return residuals

    def real_form(self) -> Dict[int, Matrix]:
        """Matrices t^a = −i J^a; deben ser racionales para actuar sobre jets"""
        if self.kind is not RepKind.G:
            raise ValidationError("La forma real solo aplica a representaciones internas")
        result: Dict[int, Matrix] = {}
        for a, matrix in self.matrices.items():
            t = (-I * matrix).applyfunc(sympy.expand)
            if any(not entry.is_Rational for entry in t):
                raise ValidationError(
                    f"La representación '{self.name}' no tiene forma real racional",
                    details={"rep": self.name, "generator": a + 1}
                )
            result[a] = t
        return result


@dataclass
class FieldEntry:
    """Campo tensorial: representación de gl(N), representación interna y peso λ"""

    label: str
    gl_rep: MatrixRep
    g_rep: Optional[MatrixRep] = None
    weight: Rational = field(default_factory=lambda: Rational(0))
    statistics: Statistics = Statistics.BOSON
    _gl_cache: Optional[Dict[Label, Matrix]] = field(default=None, init=False, repr=False, compare=False)
    _current_cache: Optional[Dict[int, Matrix]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not _FIELD_LABEL_RE.match(self.label):
            raise ValidationError(
                "La etiqueta del campo debe ser alfabética",
                details={"label": self.label}
            )

    @property
    def internal_dimension(self) -> int:
        return self.g_rep.dimension if self.g_rep else 1

    @property
    def components(self) -> int:
        return self.gl_rep.dimension * self.internal_dimension

    def gl_matrix(self, mu: int, nu: int) -> Matrix:
        """T^mu_nu ⊗ 1 en el espacio combinado"""
        if self._gl_cache is None:
            identity = eye(self.internal_dimension)
            self._gl_cache = {
                label: TensorProduct(matrix, identity)
                for label, matrix in self.gl_rep.matrices.items()
            }
        return self._gl_cache[(mu, nu)]

    def current_matrices(self) -> Dict[int, Matrix]:
        """1 ⊗ t^a en el espacio combinado"""
        if self.g_rep is None:
            return {}
        if self._current_cache is None:
            identity = eye(self.gl_rep.dimension)
            self._current_cache = {
                a: TensorProduct(identity, t) for a, t in self.g_rep.real_form().items()
            }
        return self._current_cache


@dataclass
class FieldTable:
    """Conjunto de campos sobre el que actúan L_ξ y J_X, con orden de jet p"""

    n: int
    p: int
    entries: List[FieldEntry]
    algebra: Optional[LieAlgebra] = None

    def __post_init__(self) -> None:
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValidationError("Etiquetas de campo repetidas", details={"labels": labels})
        for entry in self.entries:
            if entry.gl_rep.n != self.n:
                raise ValidationError(
                    f"El campo '{entry.label}' no es una representación de gl({self.n})",
                    details={"field": entry.label, "N": entry.gl_rep.n}
                )
            if entry.g_rep is not None and entry.g_rep.algebra != self.algebra:
                raise ValidationError(
                    f"El campo '{entry.label}' usa un álgebra interna distinta",
                    details={"field": entry.label}
                )

    def field_shapes(self) -> List[Tuple[str, int]]:
        return [(e.label, e.components) for e in self.entries]
