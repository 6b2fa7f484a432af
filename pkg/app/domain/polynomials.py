"""Polinomios exactos sobre QQ, campos vectoriales polinomiales y espacios de jets

Los polinomios son `PolyElement` de sympy (anillos dispersos sobre QQ con
orden grlex). El anillo base de dimensión N usa las variables x1..xN; el
anillo de jets antepone q1..qN (punto de la trayectoria) a las variables
de jet de cada campo.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from app.core.exceptions import NotFoundError, ValidationError
from app.core.utils.parsing import parse_expression
from app.core.utils.validation import validate_non_negative_int, validate_positive_int
from app.domain.mindex import MultiIndex, enumerate_jets


def to_qq(value: object) -> object:
    """Convierte enteros o racionales de sympy al dominio QQ"""
    if isinstance(value, int):
        return QQ(value)
    return QQ.from_sympy(value)


@lru_cache(maxsize=None)
def base_ring(n: int) -> PolyRing:
    """Anillo QQ[x1..xN] con orden lexicográfico graduado"""
    validate_positive_int(n, "N")
    names = [f"x{mu + 1}" for mu in range(n)]
    result = ring(names, QQ, grlex)
    return result[0]


def partial(poly: PolyElement, m: MultiIndex) -> PolyElement:
    """Derivada parcial ∂_m de un polinomio del anillo base"""
    gens = poly.ring.gens
    if len(m) != len(gens):
        raise ValidationError(
            "El multi-índice no coincide con la dimensión del anillo",
            details={"index": str(m), "ngens": len(gens)}
        )
    result = poly
    for mu, order in enumerate(m):
        for _ in range(order):
            if not result:
                return result
            result = result.diff(gens[mu])
    return result


def parse_polynomial(text: str, n: int) -> PolyElement:
    """Parsea un polinomio en x1..xN con la gramática documentada"""
    R = base_ring(n)
    symbols = {f"x{mu + 1}": Symbol(f"x{mu + 1}") for mu in range(n)}
    expr = parse_expression(text, symbols)
    return R.from_expr(expr)


def random_polynomial(R: PolyRing, degree: int, rng: random.Random) -> PolyElement:
    """Polinomio aleatorio disperso con coeficientes enteros en [-3, 3]"""
    validate_non_negative_int(degree, "degree")
    terms: Dict[Tuple[int, ...], object] = {}
    for m in enumerate_jets(R.ngens, degree):
        if rng.random() < 0.5:
            coefficient = rng.randint(-3, 3)
            if coefficient:
                terms[m.components] = QQ(coefficient)
    return R.from_dict(terms) if terms else R.zero


@dataclass(frozen=True)
class PolyVectorField:
    """Campo vectorial ξ = ξ^μ ∂_μ con componentes polinomiales"""

    components: Tuple[PolyElement, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValidationError("Un campo vectorial necesita al menos una componente")
        R = self.components[0].ring
        if R.ngens != len(self.components):
            raise ValidationError(
                "El número de componentes debe coincidir con la dimensión",
                details={"components": len(self.components), "N": R.ngens}
            )
        if any(c.ring != R for c in self.components):
            raise ValidationError("Las componentes no comparten el mismo anillo")

    @classmethod
    def from_strings(cls, texts: Sequence[str], n: int) -> "PolyVectorField":
        if len(texts) != n:
            raise ValidationError(
                "Se esperaban N componentes", details={"N": n, "given": len(texts)}
            )
        return cls(tuple(parse_polynomial(t, n) for t in texts))

    @classmethod
    def zero(cls, n: int) -> "PolyVectorField":
        R = base_ring(n)
        return cls(tuple(R.zero for _ in range(n)))

    @classmethod
    def translation(cls, n: int, mu: int) -> "PolyVectorField":
        """Campo constante ∂_mu"""
        R = base_ring(n)
        return cls(tuple(R.one if i == mu else R.zero for i in range(n)))

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    @property
    def dimension(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(not c for c in self.components)

    def derive(self, f: PolyElement) -> PolyElement:
        """ξ(f) = ξ^μ ∂_μ f"""
        gens = self.ring.gens
        result = self.ring.zero
        for mu, component in enumerate(self.components):
            if component:
                result += component * f.diff(gens[mu])
        return result

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def vf_bracket(xi: PolyVectorField, eta: PolyVectorField) -> PolyVectorField:
    """[ξ, η]^ν = ξ^μ ∂_μ η^ν − η^μ ∂_μ ξ^ν"""
    if xi.dimension != eta.dimension:
        raise ValidationError(
            "Campos vectoriales de dimensiones distintas",
            details={"left": xi.dimension, "right": eta.dimension}
        )
    return PolyVectorField(tuple(
        xi.derive(b) - eta.derive(a)
        for a, b in zip(xi.components, eta.components)
    ))


def random_vector_field(n: int, degree: int, rng: random.Random) -> PolyVectorField:
    R = base_ring(n)
    return PolyVectorField(tuple(random_polynomial(R, degree, rng) for _ in range(n)))


@dataclass(frozen=True)
class CurrentField:
    """Función polinomial X = X_a J^a con valores en el álgebra interna"""

    components: Tuple[PolyElement, ...]
    n: int

    def __post_init__(self) -> None:
        R = base_ring(self.n)
        if any(c.ring != R for c in self.components):
            raise ValidationError("Las componentes de la corriente no están en QQ[x1..xN]")

    @classmethod
    def from_strings(cls, texts: Sequence[str], n: int) -> "CurrentField":
        return cls(tuple(parse_polynomial(t, n) for t in texts), n)

    @classmethod
    def constant(cls, dim_g: int, a: int, n: int) -> "CurrentField":
        """Corriente constante igual al generador J^a"""
        R = base_ring(n)
        return cls(tuple(R.one if b == a else R.zero for b in range(dim_g)), n)

    @property
    def dimension(self) -> int:
        return len(self.components)

    def transported(self, xi: PolyVectorField) -> "CurrentField":
        """ξX: derivada de Lie de cada componente a lo largo de ξ"""
        return CurrentField(tuple(xi.derive(c) for c in self.components), self.n)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def random_current(dim_g: int, n: int, degree: int, rng: random.Random) -> CurrentField:
    R = base_ring(n)
    return CurrentField(tuple(random_polynomial(R, degree, rng) for _ in range(dim_g)), n)


class JetSpace:
    """Anillo de jets: q1..qN seguido de φ_{α,c,m} para |m| <= p

    Cada variable de jet se nombra `<campo><componente>_<m1>_..._<mN>`.
    """

    def __init__(self, n: int, p: int, fields: Sequence[Tuple[str, int]]):
        validate_positive_int(n, "N")
        validate_non_negative_int(p, "p")
        self.n = n
        self.p = p
        self.jets: List[MultiIndex] = enumerate_jets(n, p)
        self.fields = list(fields)
        names = [f"q{mu + 1}" for mu in range(n)]
        self._index: Dict[Tuple[str, int, MultiIndex], int] = {}
        for label, components in self.fields:
            for c in range(components):
                for m in self.jets:
                    self._index[(label, c, m)] = len(names)
                    names.append(f"{label}{c}_" + "_".join(str(k) for k in m))
        self.names = names
        self.ring: PolyRing = ring(names, QQ, grlex)[0]

    def q(self, mu: int) -> PolyElement:
        return self.ring.gens[mu]

    def variable_index(self, label: str, component: int, m: MultiIndex) -> int:
        key = (label, component, m)
        if key not in self._index:
            raise NotFoundError(
                f"Variable de jet inexistente: {label}{component}{m}",
                details={"field": label, "component": component, "index": str(m)}
            )
        return self._index[key]

    def variable(self, label: str, component: int, m: MultiIndex) -> PolyElement:
        return self.ring.gens[self.variable_index(label, component, m)]

    def has_variable(self, label: str, component: int, m: MultiIndex) -> bool:
        return (label, component, m) in self._index

    def lift(self, poly: PolyElement) -> PolyElement:
        """Evalúa un polinomio de QQ[x1..xN] en el punto q del anillo de jets"""
        padding = (0,) * (self.ring.ngens - self.n)
        terms = {monom + padding: coeff for monom, coeff in poly.terms()}
        return self.ring.from_dict(terms) if terms else self.ring.zero

    def name(self, index: int) -> str:
        return self.names[index]

    def component_count(self, label: str) -> Optional[int]:
        for name, components in self.fields:
            if name == label:
                return components
        return None
