"""Multi-índices, binomiales, enumeración de jets, conteos A/B/C y series de fugacidad"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy
from sympy import Expr, Integer, Symbol

from app.core.exceptions import PreconditionError, ValidationError

ZETA = Symbol("zeta")


@dataclass(frozen=True)
class MultiIndex:
    """Tupla ordenada de N enteros no negativos que etiqueta una derivada parcial"""

    components: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.components) < 1:
            raise ValidationError("Un multi-índice necesita al menos una componente")
        for value in self.components:
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValidationError(
                    "Las componentes de un multi-índice son enteros no negativos",
                    details={"components": list(self.components)}
                )

    @classmethod
    def of(cls, *components: int) -> "MultiIndex":
        return cls(tuple(components))

    @classmethod
    def zero(cls, n: int) -> "MultiIndex":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, mu: int) -> "MultiIndex":
        """Multi-índice con un 1 en la posición mu (base 0)"""
        return cls(tuple(1 if i == mu else 0 for i in range(n)))

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def norm(self) -> int:
        return sum(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[int]:
        return iter(self.components)

    def __getitem__(self, i: int) -> int:
        return self.components[i]

    def _check_dimension(self, other: "MultiIndex") -> None:
        if len(other) != len(self):
            raise ValidationError(
                "Multi-índices de longitudes distintas",
                details={"left": list(self.components), "right": list(other.components)}
            )

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        self._check_dimension(other)
        return MultiIndex(tuple(a + b for a, b in zip(self.components, other.components)))

    def minus(self, other: "MultiIndex") -> Optional["MultiIndex"]:
        """Resta parcial: None si alguna componente queda negativa"""
        self._check_dimension(other)
        diff = tuple(a - b for a, b in zip(self.components, other.components))
        if any(d < 0 for d in diff):
            return None
        return MultiIndex(diff)

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        result = self.minus(other)
        if result is None:
            raise PreconditionError(
                "Resta de multi-índices fuera de rango",
                details={"left": list(self.components), "right": list(other.components)}
            )
        return result

    def dominates(self, other: "MultiIndex") -> bool:
        """Indica si cada componente de self es >= la de other"""
        self._check_dimension(other)
        return all(a >= b for a, b in zip(self.components, other.components))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Clave del orden lexicográfico graduado: grado, luego x1 antes que x2"""
        return (self.norm, tuple(-c for c in self.components))

    def __lt__(self, other: "MultiIndex") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"


def binomial(n: int, k: int) -> int:
    """Binomial estándar extendido por cero fuera de rango"""
    if n < 0:
        raise PreconditionError(
            "binomial no está definido para n negativo",
            details={"n": n, "k": k}
        )
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multi_binomial(m: MultiIndex, n: MultiIndex) -> int:
    """Producto de binomiales componente a componente"""
    if len(m) != len(n):
        raise ValidationError(
            "multi_binomial requiere multi-índices de igual longitud",
            details={"m": list(m.components), "n": list(n.components)}
        )
    result = 1
    for a, b in zip(m.components, n.components):
        result *= binomial(a, b)
        if result == 0:
            return 0
    return result


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    # Orden lexicográfico decreciente
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _jets(n: int, p: int) -> Tuple[MultiIndex, ...]:
    return tuple(
        MultiIndex(components)
        for degree in range(p + 1)
        for components in _compositions(degree, n)
    )


def enumerate_jets(n: int, p: int) -> List[MultiIndex]:
    """Todos los multi-índices con |m| <= p en orden lexicográfico graduado"""
    if n < 1:
        raise ValidationError("N debe ser >= 1", details={"N": n})
    if p < 0:
        raise ValidationError("p debe ser >= 0", details={"p": p})
    return list(_jets(n, p))


def enumerate_shell(n: int, degree: int) -> List[MultiIndex]:
    """Multi-índices con |m| exactamente igual a degree"""
    if degree < 0:
        return []
    return [MultiIndex(components) for components in _compositions(degree, n)]


class CountKind(str, Enum):
    """Funciones de conteo A, B, C y su desplazamiento de dimensión"""

    A = "A"
    B = "B"
    C = "C"

    @property
    def shift(self) -> int:
        return {"A": 0, "B": 1, "C": 2}[self.value]


def count(kind: CountKind, n: int, p: int) -> int:
    """Forma cerrada C(N+p+s, N+s); p negativo da la suma vacía"""
    kind = CountKind(kind)
    if n < 1:
        raise ValidationError("N debe ser >= 1", details={"N": n})
    if p < 0:
        return 0
    return binomial(n + p + kind.shift, n + kind.shift)


def _weight(kind: CountKind, m: MultiIndex) -> int:
    if kind is CountKind.A:
        return 1
    if kind is CountKind.B:
        return m[0] + 1
    # Con N=1 no existe m2: la enumeración usa m2 = 0
    m2 = m[1] if len(m) >= 2 else 0
    return (m[0] + 1) * (m2 + 1)


def weighted_count(kind: CountKind, n: int, p: int) -> int:
    """Suma ponderada directa sobre enumerate_jets(N, p)"""
    kind = CountKind(kind)
    if p < 0:
        return 0
    return sum(_weight(kind, m) for m in enumerate_jets(n, p))


@dataclass(frozen=True)
class FormalSeries:
    """Serie formal en zeta truncada en truncation_order"""

    coefficients: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) < 1:
            raise ValidationError("Una serie formal necesita al menos un coeficiente")

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[object], order: int) -> "FormalSeries":
        values = [sympy.expand(sympy.sympify(c)) for c in coefficients][: order + 1]
        values += [Integer(0)] * (order + 1 - len(values))
        return cls(tuple(values))

    @classmethod
    def zero(cls, order: int) -> "FormalSeries":
        return cls.from_coefficients([], order)

    @classmethod
    def from_polynomial(cls, poly: Expr, order: int) -> "FormalSeries":
        """Coeficientes de un polinomio en zeta hasta el orden dado"""
        expanded = sympy.expand(poly)
        return cls.from_coefficients(
            [expanded.coeff(ZETA, k) for k in range(order + 1)], order
        )

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> Expr:
        if k < 0 or k > self.truncation_order:
            return Integer(0)
        return self.coefficients[k]

    def _common_order(self, other: "FormalSeries") -> int:
        return min(self.truncation_order, other.truncation_order)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        order = self._common_order(other)
        return FormalSeries.from_coefficients(
            [self.coefficient(k) + other.coefficient(k) for k in range(order + 1)], order
        )

    def __neg__(self) -> "FormalSeries":
        return self.scale(-1)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        order = self._common_order(other)
        return FormalSeries.from_coefficients(
            [
                sum((self.coefficient(j) * other.coefficient(k - j) for j in range(k + 1)), Integer(0))
                for k in range(order + 1)
            ],
            order,
        )

    def scale(self, factor: object) -> "FormalSeries":
        return FormalSeries.from_coefficients(
            [factor * c for c in self.coefficients], self.truncation_order
        )

    def shift(self, k: int) -> "FormalSeries":
        """Multiplica por zeta^k conservando el orden de truncación"""
        if k < 0:
            raise PreconditionError("El desplazamiento debe ser >= 0", details={"k": k})
        order = self.truncation_order
        return FormalSeries.from_coefficients(
            [self.coefficient(j - k) for j in range(order + 1)], order
        )

    def partial_sums(self) -> List[Expr]:
        """Sumas parciales: el valor en p de la suma truncada correspondiente"""
        sums: List[Expr] = []
        total: Expr = Integer(0)
        for c in self.coefficients:
            total = sympy.expand(total + c)
            sums.append(total)
        return sums

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coefficients[1:])


def fugacity_series(kind: CountKind, n: int, order: int) -> FormalSeries:
    """Serie de (1 - zeta)^(-N-s) con s = 0, 1, 2 para A, B, C"""
    kind = CountKind(kind)
    if n < 1:
        raise ValidationError("N debe ser >= 1", details={"N": n})
    if order < 0:
        raise ValidationError("El orden de truncación debe ser >= 0", details={"order": order})
    exponent = n + kind.shift
    return FormalSeries.from_coefficients(
        [binomial(exponent - 1 + k, k) for k in range(order + 1)], order
    )
