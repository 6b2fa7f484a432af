"""Especificación de contenido de campos para construir escaleras de sectores"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import sympy
from sympy import Expr, Integer, Rational

from app.core.exceptions import ValidationError
from app.core.utils.validation import validate_non_negative_int, validate_not_empty_string
from app.domain.ladder import FAMILIES, SectorEntry
from app.domain.representations import Statistics


def _counts(values: Dict[str, object]) -> SectorEntry:
    unknown = set(values) - set(FAMILIES)
    if unknown:
        raise ValidationError(
            "Conteos con familias desconocidas", details={"unknown": sorted(unknown)}
        )
    return SectorEntry.of(**{k: sympy.sympify(v) for k, v in values.items()})


@dataclass
class GaugeEntry:
    """Simetría gauge irreducible de orden ς con sus conteos"""

    name: str
    order: int
    counts: SectorEntry = field(default_factory=SectorEntry)

    def __post_init__(self) -> None:
        validate_not_empty_string(self.name, "gauge.name")
        validate_non_negative_int(self.order, "gauge.order")


@dataclass
class FieldSpec:
    """Campo (o multiplete) con su orden de Euler-Lagrange y sus simetrías gauge

    Un orden EL igual a 0 describe un campo algebraico (espurio).
    """

    name: str
    statistics: Statistics
    el_order: int
    counts: SectorEntry
    gauge: List[GaugeEntry] = field(default_factory=list)
    include_barred: bool = True
    weight: Expr = Integer(0)

    def __post_init__(self) -> None:
        validate_not_empty_string(self.name, "field.name")
        validate_non_negative_int(self.el_order, "field.el_order")
        self.statistics = Statistics(self.statistics)
        self.weight = sympy.sympify(self.weight)

    @classmethod
    def build(
        cls,
        name: str,
        statistics: str,
        el_order: int,
        counts: Dict[str, object],
        gauge: Optional[List[GaugeEntry]] = None,
        include_barred: bool = True,
        weight: object = 0
    ) -> "FieldSpec":
        return cls(
            name=name,
            statistics=Statistics(statistics),
            el_order=el_order,
            counts=_counts(counts),
            gauge=list(gauge or []),
            include_barred=include_barred,
            weight=Rational(weight) if isinstance(weight, int) else sympy.sympify(weight),
        )

    @property
    def sign(self) -> int:
        """+1 para filas impares (fermiones), −1 para filas pares"""
        return 1 if self.statistics.is_odd else -1


def gauge_entry(name: str, order: int, counts: Dict[str, object]) -> GaugeEntry:
    return GaugeEntry(name=name, order=order, counts=_counts(counts))


@dataclass
class ToyModel:
    """Teoría de juguete: campos escalares y un lagrangiano polinomial de primer orden

    El lagrangiano usa el nombre de cada campo para φ y `<campo>_<mu>` (mu
    base 1) para ∂_mu φ.
    """

    name: str
    fields: List[str]
    lagrangian: str
    n: int = 1
    statistics: Dict[str, Statistics] = field(default_factory=dict)

    def __post_init__(self) -> None:
        validate_not_empty_string(self.name, "model.name")
        if not self.fields:
            raise ValidationError("El modelo necesita al menos un campo", details={"model": self.name})
        for name in self.fields:
            if not name.isalpha():
                raise ValidationError(
                    "Los nombres de campo del lagrangiano deben ser alfabéticos",
                    details={"field": name}
                )
        self.statistics = {
            name: Statistics(self.statistics.get(name, Statistics.BOSON)) for name in self.fields
        }
