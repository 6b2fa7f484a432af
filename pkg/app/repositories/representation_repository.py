"""Repositorio de representaciones integradas de gl(N) y del álgebra interna su(2)"""

from typing import Dict, List, Optional

from sympy import I, Matrix, Rational, zeros

from app.core.exceptions import NotFoundError
from app.core.utils.rationals import to_rational
from app.core.utils.validation import validate_positive_int
from app.domain.representations import LieAlgebra, MatrixRep, RepKind

SU2 = LieAlgebra(
    name="su2",
    dimension=3,
    structure=(
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((1, 0, 2), -1), ((2, 1, 0), -1), ((0, 2, 1), -1),
    ),
)


def _levi_civita(a: int, b: int, c: int) -> int:
    return SU2.f(a, b, c)


class RepresentationRepository:
    """Catálogo de representaciones construidas bajo demanda"""

    GL_NAMES = ("scalar", "vector", "covector", "density")
    INTERNAL_NAMES = ("trivial", "fundamental", "adjoint")

    def __init__(self) -> None:
        self._algebras: Dict[str, LieAlgebra] = {SU2.name: SU2}

    def list_gl(self) -> List[str]:
        return list(self.GL_NAMES)

    def list_internal(self) -> List[str]:
        return list(self.INTERNAL_NAMES)

    def get_algebra(self, name: str) -> LieAlgebra:
        if name not in self._algebras:
            raise NotFoundError(f"Álgebra interna '{name}' no encontrada", details={"algebra": name})
        return self._algebras[name]

    def get_gl(self, name: str, n: int, weight: Optional[object] = None) -> MatrixRep:
        """Representación de gl(N) por nombre; `weight` solo aplica a 'density'"""
        validate_positive_int(n, "N")
        if name == "scalar":
            matrices = {(mu, nu): zeros(1, 1) for mu in range(n) for nu in range(n)}
            return MatrixRep("scalar", RepKind.GL, 1, matrices, n=n)
        if name == "vector":
            matrices = {
                (mu, nu): self._unit(n, mu, nu) for mu in range(n) for nu in range(n)
            }
            return MatrixRep("vector", RepKind.GL, n, matrices, n=n)
        if name == "covector":
            matrices = {
                (mu, nu): -self._unit(n, nu, mu) for mu in range(n) for nu in range(n)
            }
            return MatrixRep("covector", RepKind.GL, n, matrices, n=n)
        if name == "density":
            lam = to_rational(weight if weight is not None else 1)
            matrices = {
                (mu, nu): Matrix([[lam if mu == nu else Rational(0)]])
                for mu in range(n) for nu in range(n)
            }
            return MatrixRep(f"density({lam})", RepKind.GL, 1, matrices, n=n)
        raise NotFoundError(
            f"Representación de gl(N) '{name}' no encontrada",
            details={"rep": name, "available": list(self.GL_NAMES)}
        )

    def get_internal(self, name: str, algebra: str = "su2") -> MatrixRep:
        """Representación de su(2) por nombre"""
        lie = self.get_algebra(algebra)
        if name == "trivial":
            matrices = {a: zeros(1, 1) for a in range(lie.dimension)}
            return MatrixRep("trivial", RepKind.G, 1, matrices, algebra=lie)
        if name == "fundamental":
            half = Rational(1, 2)
            sigma = {
                0: Matrix([[0, 1], [1, 0]]),
                1: Matrix([[0, -I], [I, 0]]),
                2: Matrix([[1, 0], [0, -1]]),
            }
            matrices = {a: half * sigma[a] for a in range(3)}
            return MatrixRep("fundamental", RepKind.G, 2, matrices, algebra=lie)
        if name == "adjoint":
            matrices = {
                a: Matrix(3, 3, lambda b, c: -I * _levi_civita(a, b, c))
                for a in range(3)
            }
            return MatrixRep("adjoint", RepKind.G, 3, matrices, algebra=lie)
        raise NotFoundError(
            f"Representación interna '{name}' no encontrada",
            details={"rep": name, "available": list(self.INTERNAL_NAMES)}
        )

    def _unit(self, n: int, row: int, column: int) -> Matrix:
        matrix = zeros(n, n)
        matrix[row, column] = 1
        return matrix
