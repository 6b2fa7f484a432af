"""Operadores diferenciales de primer orden sobre el anillo de jets"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from app.core.exceptions import ValidationError
from app.domain.mindex import MultiIndex


def support(f: PolyElement) -> Set[int]:
    """Índices de los generadores que aparecen en f"""
    used: Set[int] = set()
    for monom in f.itermonoms():
        used.update(i for i, e in enumerate(monom) if e)
    return used


@dataclass
class JetMatrix:
    """Matriz de acción sobre jets: fila (α, m) → columna (β, n) → polinomio en x"""

    rows: Dict[Tuple[int, MultiIndex], Dict[Tuple[int, MultiIndex], PolyElement]] = field(
        default_factory=dict
    )

    def set(self, row: Tuple[int, MultiIndex], column: Tuple[int, MultiIndex], value: PolyElement) -> None:
        if value:
            self.rows.setdefault(row, {})[column] = value

    def entry(self, row: Tuple[int, MultiIndex], column: Tuple[int, MultiIndex]) -> Optional[PolyElement]:
        return self.rows.get(row, {}).get(column)

    def row(self, row: Tuple[int, MultiIndex]) -> Dict[Tuple[int, MultiIndex], PolyElement]:
        return self.rows.get(row, {})

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def nonzero_entries(self) -> List[Tuple[Tuple[int, MultiIndex], Tuple[int, MultiIndex], PolyElement]]:
        return [
            (row, column, value)
            for row, columns in self.rows.items()
            for column, value in columns.items()
        ]


@dataclass
class FirstOrderOperator:
    """Derivación Σ_v a_v ∂/∂v con coeficientes polinomiales

    `terms` asocia el índice de cada generador del anillo a su coeficiente;
    nunca guarda coeficientes nulos.
    """

    ring: PolyRing
    terms: Dict[int, PolyElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {v: c for v, c in self.terms.items() if c}

    @classmethod
    def zero(cls, ring: PolyRing) -> "FirstOrderOperator":
        return cls(ring, {})

    def _check_ring(self, other: "FirstOrderOperator") -> None:
        if other.ring != self.ring:
            raise ValidationError("Los operadores no comparten el mismo anillo de jets")

    def coefficient(self, index: int) -> PolyElement:
        return self.terms.get(index, self.ring.zero)

    def apply(self, f: PolyElement) -> PolyElement:
        """Aplica la derivación a un polinomio"""
        gens = self.ring.gens
        result = self.ring.zero
        used = support(f)
        for index, coefficient in self.terms.items():
            if index not in used:
                continue
            derivative = f.diff(gens[index])
            if derivative:
                result += coefficient * derivative
        return result

    def bracket(self, other: "FirstOrderOperator") -> "FirstOrderOperator":
        """Conmutador [A, B]: coeficiente A(B_v) − B(A_v) en cada generador v"""
        self._check_ring(other)
        variables = sorted(set(self.terms) | set(other.terms))
        return FirstOrderOperator(self.ring, {
            v: self.apply(other.coefficient(v)) - other.apply(self.coefficient(v))
            for v in variables
        })

    def __add__(self, other: "FirstOrderOperator") -> "FirstOrderOperator":
        self._check_ring(other)
        variables = set(self.terms) | set(other.terms)
        return FirstOrderOperator(
            self.ring, {v: self.coefficient(v) + other.coefficient(v) for v in variables}
        )

    def __neg__(self) -> "FirstOrderOperator":
        return FirstOrderOperator(self.ring, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "FirstOrderOperator") -> "FirstOrderOperator":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def describe(self, name: Optional[Callable[[int], str]] = None) -> List[str]:
        """Lista legible 'd/d<var>: <coeficiente>' en orden de generadores"""
        label = name or (lambda index: str(self.ring.symbols[index]))
        return [f"d/d{label(v)}: {self.terms[v]}" for v in sorted(self.terms)]


def operator_bracket(a: FirstOrderOperator, b: FirstOrderOperator) -> FirstOrderOperator:
    return a.bracket(b)
