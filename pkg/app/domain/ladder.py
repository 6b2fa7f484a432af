"""Valores de las cargas abelianas: números de traza, parámetros k, cargas y escaleras de sectores"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Tuple

import sympy
from sympy import Expr, Integer, Symbol

from app.core.exceptions import ValidationError

FAMILIES: Tuple[str, ...] = ("x", "y", "u", "v", "w")
TARGET_SYMBOLS: Dict[str, Symbol] = {name: Symbol(name) for name in ("U", "V", "W", "X", "Y")}


def _expr(value: object) -> Expr:
    return sympy.expand(sympy.sympify(value))


@dataclass(frozen=True)
class TraceNumbers:
    """Quíntupla (u, v, w, x, y) de trazas de la representación combinada"""

    u: Expr
    v: Expr
    w: Expr
    x: Expr
    y: Expr

    def __add__(self, other: "TraceNumbers") -> "TraceNumbers":
        return TraceNumbers(*(_expr(a + b) for a, b in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> Tuple[Expr, ...]:
        return (self.u, self.v, self.w, self.x, self.y)

    def as_dict(self) -> Dict[str, Expr]:
        return dict(zip(("u", "v", "w", "x", "y"), self.as_tuple()))


@dataclass(frozen=True)
class KParameters:
    """Coeficientes centrales k1..k5, d0, d1, c; k6 = k7 = k8 = 0 para g semisimple"""

    k1: Expr
    k2: Expr
    k3: Expr
    k4: Expr
    k5: Expr
    d0: Expr
    d1: Expr
    c: Expr
    statistics: str = "boson"
    k6: Expr = Integer(0)
    k7: Expr = Integer(0)
    k8: Expr = Integer(0)

    def __neg__(self) -> "KParameters":
        return KParameters(
            *(_expr(-value) for value in self.core()),
            statistics=self.statistics,
        )

    def core(self) -> Tuple[Expr, ...]:
        return (self.k1, self.k2, self.k3, self.k4, self.k5, self.d0, self.d1, self.c)

    def as_dict(self) -> Dict[str, Expr]:
        names = ("k1", "k2", "k3", "k4", "k5", "d0", "d1", "c", "k6", "k7", "k8")
        return dict(zip(names, self.core() + (self.k6, self.k7, self.k8)))


@dataclass(frozen=True)
class ChargeVector:
    """Cargas abelianas c1..c5 exactas"""

    c1: Expr
    c2: Expr
    c3: Expr
    c4: Expr
    c5: Expr

    @classmethod
    def of(cls, *values: object) -> "ChargeVector":
        if len(values) != 5:
            raise ValidationError("Un vector de cargas tiene cinco entradas", details={"given": len(values)})
        return cls(*(_expr(v) for v in values))

    def __add__(self, other: "ChargeVector") -> "ChargeVector":
        return ChargeVector.of(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __sub__(self, other: "ChargeVector") -> "ChargeVector":
        return ChargeVector.of(*(a - b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> Tuple[Expr, ...]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    def as_dict(self) -> Dict[str, Expr]:
        return dict(zip(("c1", "c2", "c3", "c4", "c5"), self.as_tuple()))

    def substitute(self, values: Mapping[Symbol, object]) -> "ChargeVector":
        return ChargeVector.of(*(sympy.sympify(c).subs(values) for c in self.as_tuple()))

    def is_zero(self) -> bool:
        return all(_expr(c) == 0 for c in self.as_tuple())


@dataclass(frozen=True)
class SectorEntry:
    """Contribución con signo (x_i, y_i, u_i, v_i, w_i) en un desplazamiento de orden"""

    x: Expr = Integer(0)
    y: Expr = Integer(0)
    u: Expr = Integer(0)
    v: Expr = Integer(0)
    w: Expr = Integer(0)

    @classmethod
    def of(cls, **values: object) -> "SectorEntry":
        unknown = set(values) - set(FAMILIES)
        if unknown:
            raise ValidationError(
                "Familias desconocidas en la entrada", details={"unknown": sorted(unknown)}
            )
        return cls(**{k: _expr(v) for k, v in values.items()})

    def get(self, family: str) -> Expr:
        return getattr(self, family)

    def __add__(self, other: "SectorEntry") -> "SectorEntry":
        return SectorEntry.of(**{f: self.get(f) + other.get(f) for f in FAMILIES})

    def scale(self, factor: object) -> "SectorEntry":
        return SectorEntry.of(**{f: factor * self.get(f) for f in FAMILIES})

    def is_zero(self) -> bool:
        return all(self.get(f) == 0 for f in FAMILIES)


@dataclass
class SectorLadder:
    """Entradas por desplazamiento i >= 0; la profundidad r es el mayor i no nulo"""

    entries: Dict[int, SectorEntry] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for offset in self.entries:
            if offset < 0:
                raise ValidationError("Desplazamiento negativo en la escalera", details={"offset": offset})
        self.entries = {i: e for i, e in self.entries.items() if not e.is_zero()}

    @classmethod
    def from_k_parameters(cls, k: KParameters) -> "SectorLadder":
        """Escalera de un único sector: entrada (−k1, −k2, −k3, −k4, −k5) en 0"""
        return cls({0: SectorEntry.of(u=-k.k1, v=-k.k2, w=-k.k3, x=-k.k4, y=-k.k5)})

    @classmethod
    def from_families(cls, families: Mapping[str, List[object]]) -> "SectorLadder":
        """Construye la escalera desde listas por familia indexadas por desplazamiento"""
        depth = max((len(values) for values in families.values()), default=0)
        entries = {}
        for i in range(depth):
            entries[i] = SectorEntry.of(**{
                name: values[i] for name, values in families.items() if i < len(values)
            })
        return cls(entries)

    @property
    def depth(self) -> int:
        return max(self.entries, default=0)

    def entry(self, offset: int) -> SectorEntry:
        return self.entries.get(offset, SectorEntry())

    def add(self, offset: int, entry: SectorEntry) -> None:
        merged = self.entry(offset) + entry
        if merged.is_zero():
            self.entries.pop(offset, None)
        else:
            self.entries[offset] = merged

    def __add__(self, other: "SectorLadder") -> "SectorLadder":
        result = SectorLadder(dict(self.entries))
        for offset, entry in other.entries.items():
            result.add(offset, entry)
        return result

    def scale(self, factor: object) -> "SectorLadder":
        return SectorLadder({i: e.scale(factor) for i, e in self.entries.items()})

    def family(self, name: str, length: int = -1) -> List[Expr]:
        """Valores de una familia para i = 0..length-1 (por defecto hasta la profundidad)"""
        size = self.depth + 1 if length < 0 else length
        return [self.entry(i).get(name) for i in range(size)]

    def substitute(self, values: Mapping[Symbol, object]) -> "SectorLadder":
        return SectorLadder({
            i: SectorEntry.of(**{f: e.get(f).subs(values) for f in FAMILIES})
            for i, e in self.entries.items()
        })

    def is_zero(self) -> bool:
        return not self.entries

    def __iter__(self) -> Iterator[Tuple[int, SectorEntry]]:
        return iter(sorted(self.entries.items()))

    def totals(self) -> SectorEntry:
        """Suma de todas las entradas por familia"""
        total = SectorEntry()
        for _, entry in self:
            total = total + entry
        return total
