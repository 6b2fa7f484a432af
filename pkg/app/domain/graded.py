"""Álgebra polinomial graduada conmutativa con generadores pares e impares

Un `GradedPolynomial` es una suma de términos c·θ_{i1}···θ_{ik} con c en el
anillo par (PolyElement sobre QQ) y una palabra estrictamente creciente de
generadores impares. El producto reordena palabras con el signo de la
permutación y se anula si un generador impar se repite.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from app.core.exceptions import NotFoundError, PreconditionError, ValidationError
from app.domain.mindex import MultiIndex

Word = Tuple[int, ...]


class GeneratorKind(str, Enum):
    FIELD = "field"
    ANTIFIELD = "antifield"
    BARRED = "barred"
    BARRED_ANTIFIELD = "barred_antifield"
    TRAJECTORY = "trajectory"


@dataclass(frozen=True)
class GradedGenerator:
    """Generador del complejo con paridad de Grassmann y número de antifields"""

    name: str
    kind: GeneratorKind
    field: str
    index: Optional[MultiIndex]
    dot: int
    parity: int
    afn: int


class GradedAlgebra:
    """Anillo par de sympy más una lista ordenada de generadores impares"""

    def __init__(self, generators: Sequence[GradedGenerator]):
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValidationError("Nombres de generadores repetidos")
        self.generators: Dict[str, GradedGenerator] = {g.name: g for g in generators}
        even = [g for g in generators if g.parity == 0]
        self.odd: List[GradedGenerator] = [g for g in generators if g.parity == 1]
        self.even: List[GradedGenerator] = even
        self.ring: PolyRing = ring([g.name for g in even] or ["_unit"], QQ, grlex)[0]
        self._even_index = {g.name: i for i, g in enumerate(even)}
        self._odd_index = {g.name: i for i, g in enumerate(self.odd)}

    def info(self, name: str) -> GradedGenerator:
        if name not in self.generators:
            raise NotFoundError(f"Generador desconocido: {name}", details={"name": name})
        return self.generators[name]

    def has(self, name: str) -> bool:
        return name in self.generators

    def even_index(self, name: str) -> int:
        return self._even_index[name]

    def odd_index(self, name: str) -> int:
        return self._odd_index[name]

    def gen(self, name: str) -> "GradedPolynomial":
        """El generador como GradedPolynomial"""
        info = self.info(name)
        if info.parity == 0:
            return GradedPolynomial(self, {(): self.ring.gens[self._even_index[name]]})
        return GradedPolynomial(self, {(self._odd_index[name],): self.ring.one})

    def even_gen(self, name: str) -> PolyElement:
        self.info(name)
        if name not in self._even_index:
            raise ValidationError(f"El generador {name} es impar", details={"name": name})
        return self.ring.gens[self._even_index[name]]

    def scalar(self, poly: PolyElement) -> "GradedPolynomial":
        return GradedPolynomial(self, {(): poly})

    def zero(self) -> "GradedPolynomial":
        return GradedPolynomial(self, {})

    def word_afn(self, word: Word) -> int:
        return sum(self.odd[i].afn for i in word)

    def monomial_afn(self, monom: Tuple[int, ...]) -> int:
        return sum(e * self.even[i].afn for i, e in enumerate(monom) if e and i < len(self.even))


def _sort_word(word: Sequence[int]) -> Tuple[int, Optional[Word]]:
    """Ordena una palabra de impares; retorna (signo, palabra) o (0, None) si hay repetidos"""
    if len(set(word)) != len(word):
        return 0, None
    items = list(word)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return sign, tuple(items)


class GradedPolynomial:
    """Elemento del álgebra graduada: {palabra impar ordenada: coeficiente par}"""

    def __init__(self, algebra: GradedAlgebra, terms: Dict[Word, PolyElement]):
        self.algebra = algebra
        self.terms: Dict[Word, PolyElement] = {w: c for w, c in terms.items() if c}

    def _check(self, other: "GradedPolynomial") -> None:
        if other.algebra is not self.algebra:
            raise ValidationError("Los polinomios pertenecen a álgebras distintas")

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, self.algebra.ring.zero) + coeff
        return GradedPolynomial(self.algebra, terms)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        terms: Dict[Word, PolyElement] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                sign, word = _sort_word(w1 + w2)
                if word is None:
                    continue
                product = c1 * c2
                terms[word] = terms.get(word, self.algebra.ring.zero) + (product if sign > 0 else -product)
        return GradedPolynomial(self.algebra, terms)

    def scale(self, coeff: PolyElement) -> "GradedPolynomial":
        """Producto por un elemento del anillo par"""
        return GradedPolynomial(self.algebra, {w: coeff * c for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def parities(self) -> Set[int]:
        return {len(word) % 2 for word in self.terms}

    def afns(self) -> Set[int]:
        """Números de antifields de todos los monomios presentes"""
        result: Set[int] = set()
        for word, coeff in self.terms.items():
            base = self.algebra.word_afn(word)
            for monom in coeff.monoms():
                result.add(base + self.algebra.monomial_afn(monom))
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            coeff = self.terms[word]
            odd = "*".join(self.algebra.odd[i].name for i in word)
            if not odd:
                parts.append(str(coeff))
            else:
                parts.append(f"({coeff})*{odd}")
        return " + ".join(parts)


class GradedDerivation:
    """Derivación definida por sus imágenes sobre generadores

    Con `odd=True` es una derivación impar: al atravesar un generador impar
    adquiere el signo (−1). Los generadores sin imagen se envían a cero.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        images: Dict[str, GradedPolynomial],
        odd: bool
    ):
        self.algebra = algebra
        self.images = images
        self.odd = odd

    def image(self, name: str) -> GradedPolynomial:
        return self.images.get(name, self.algebra.zero())

    def _apply_even_part(self, coeff: PolyElement) -> GradedPolynomial:
        # Regla de la cadena sobre el coeficiente par
        result = self.algebra.zero()
        gens = self.algebra.ring.gens
        for generator in self.algebra.even:
            image = self.images.get(generator.name)
            if image is None or image.is_zero():
                continue
            derivative = coeff.diff(gens[self.algebra.even_index(generator.name)])
            if derivative:
                result = result + image.scale(derivative)
        return result

    def apply(self, value: GradedPolynomial) -> GradedPolynomial:
        algebra = self.algebra
        result = algebra.zero()
        for word, coeff in value.terms.items():
            word_poly = GradedPolynomial(algebra, {word: algebra.ring.one})
            result = result + self._apply_even_part(coeff) * word_poly
            for position, odd_index in enumerate(word):
                image = self.images.get(algebra.odd[odd_index].name)
                if image is None or image.is_zero():
                    continue
                prefix = GradedPolynomial(algebra, {word[:position]: algebra.ring.one})
                suffix = GradedPolynomial(algebra, {word[position + 1:]: algebra.ring.one})
                term = (prefix * image * suffix).scale(coeff)
                if self.odd and position % 2 == 1:
                    term = -term
                result = result + term
        return result

    def apply_to(self, name: str) -> GradedPolynomial:
        return self.apply(self.algebra.gen(name))


def dotted_name(base: str, dot: int) -> str:
    """Nombre del generador con `dot` derivadas temporales"""
    if dot < 0:
        raise PreconditionError("Orden temporal negativo", details={"dot": dot})
    return base + ("_t" * dot)


def monomials_up_to_two(names: Iterable[str]) -> List[Tuple[str, ...]]:
    """Generadores y productos de dos generadores en orden estable"""
    ordered = list(names)
    result: List[Tuple[str, ...]] = [(n,) for n in ordered]
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            result.append((a, b))
    return result
