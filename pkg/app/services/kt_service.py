"""Servicio del complejo de Koszul-Tate sobre jets truncados de modelos de juguete"""

import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Set, Tuple

import sympy
from sympy import Expr, Symbol

from app.core.exceptions import PreconditionError, ValidationError
from app.core.logger import get_logger, log_case
from app.core.utils.parsing import parse_expression
from app.core.utils.validation import validate_non_negative_int
from app.domain.fieldspec import ToyModel
from app.domain.graded import (
    GeneratorKind,
    GradedAlgebra,
    GradedDerivation,
    GradedGenerator,
    GradedPolynomial,
    dotted_name,
    monomials_up_to_two,
)
from app.domain.mindex import MultiIndex, enumerate_jets
from app.domain.polynomials import base_ring, partial, random_polynomial
from app.domain.representations import Statistics

logger = get_logger(__name__)

MAX_DOT = 2

_SUFFIX = {
    GeneratorKind.FIELD: "",
    GeneratorKind.ANTIFIELD: "S",
    GeneratorKind.BARRED: "B",
    GeneratorKind.BARRED_ANTIFIELD: "BS",
}


def generator_name(kind: GeneratorKind, field_name: str, m: MultiIndex, dot: int = 0) -> str:
    """Nombre canónico: <campo><sufijo>_<m1>_..._<mN>[_t...]"""
    base = f"{field_name}{_SUFFIX[kind]}_" + "_".join(str(k) for k in m)
    return dotted_name(base, dot)


def trajectory_name(mu: int, dot: int = 0) -> str:
    return dotted_name(f"q{mu + 1}", dot)


def jet_symbol(field_name: str, m: MultiIndex) -> Symbol:
    return Symbol(generator_name(GeneratorKind.FIELD, field_name, m))


@dataclass
class EulerLagrange:
    """Ecuación de Euler-Lagrange de un campo y su orden de derivación o"""

    field: str
    expression: Expr
    order: int


@dataclass
class KTComplex:
    """Álgebra graduada, diferencial δ y derivada temporal total de un modelo"""

    model: ToyModel
    p: int
    algebra: GradedAlgebra
    delta: GradedDerivation
    dt: GradedDerivation
    equations: Dict[str, EulerLagrange]
    correction: bool


@dataclass
class NilpotencyReport:
    """Residuos de δ² sobre generadores y productos, y violaciones de la graduación"""

    generator_residuals: Dict[str, str] = field(default_factory=dict)
    product_residuals: Dict[str, str] = field(default_factory=dict)
    grading_violations: List[str] = field(default_factory=list)
    generators_checked: int = 0
    products_checked: int = 0

    @property
    def passed(self) -> bool:
        return not (self.generator_residuals or self.product_residuals or self.grading_violations)


class KTService:
    """
    Servicio del diferencial de Koszul-Tate en jets truncados

    Validaciones:
    - Campos bosónicos únicamente (lagrangianos graduados quedan fuera)
    - Lagrangiano polinomial en campos y derivadas de primer orden
    - Órdenes de jet solicitados dentro de las cotas de cada generador
    """

    def lagrangian(self, model: ToyModel) -> Expr:
        """Lagrangiano como expresión en las variables de jet de orden <= 1"""
        symbols: Dict[str, Symbol] = {}
        for name in model.fields:
            symbols[name] = jet_symbol(name, MultiIndex.zero(model.n))
            for mu in range(model.n):
                symbols[f"{name}_{mu + 1}"] = jet_symbol(name, MultiIndex.unit(model.n, mu))
        return parse_expression(model.lagrangian, symbols)

    def _jet_map(self, model: ToyModel, order: int) -> Dict[Symbol, Tuple[str, MultiIndex]]:
        return {
            jet_symbol(name, m): (name, m)
            for name in model.fields
            for m in enumerate_jets(model.n, order)
        }

    def total_derivative(self, expr: Expr, model: ToyModel, mu: int) -> Expr:
        """D_μ f = Σ_n ∂f/∂φ_n φ_{n+μ}"""
        unit = MultiIndex.unit(model.n, mu)
        result = sympy.Integer(0)
        for symbol in sorted(expr.free_symbols, key=lambda s: s.name):
            name, m = self._parse_jet(symbol, model)
            result += sympy.diff(expr, symbol) * jet_symbol(name, m + unit)
        return sympy.expand(result)

    def _parse_jet(self, symbol: Symbol, model: ToyModel) -> Tuple[str, MultiIndex]:
        head, _, tail = symbol.name.partition("_")
        if head not in model.fields:
            raise ValidationError(f"Símbolo fuera del espacio de jets: {symbol}", details={"symbol": symbol.name})
        return head, MultiIndex(tuple(int(k) for k in tail.split("_")))

    def euler_lagrange(self, model: ToyModel) -> Dict[str, EulerLagrange]:
        """E^α = ∂L/∂φ_α − Σ_μ D_μ(∂L/∂(∂_μφ_α)) y su orden o_α"""
        self._check_bosonic(model)
        lagrangian = self.lagrangian(model)
        result: Dict[str, EulerLagrange] = {}
        for name in model.fields:
            expr = sympy.diff(lagrangian, jet_symbol(name, MultiIndex.zero(model.n)))
            for mu in range(model.n):
                momentum = sympy.diff(lagrangian, jet_symbol(name, MultiIndex.unit(model.n, mu)))
                expr -= self.total_derivative(momentum, model, mu)
            expr = sympy.expand(expr)
            order = max((self._parse_jet(s, model)[1].norm for s in expr.free_symbols), default=0)
            result[name] = EulerLagrange(field=name, expression=expr, order=order)
        return result

    def prolong(self, equation: EulerLagrange, model: ToyModel, m: MultiIndex, p: int) -> Expr:
        """E_{,m} = ∂_m E por regla de la cadena; definido para |m| <= p − o"""
        if m.norm > p - equation.order:
            raise PreconditionError(
                f"E_{m} no está definido: |m| debe ser <= p − o = {p - equation.order}",
                details={"field": equation.field, "index": str(m), "p": p, "o": equation.order}
            )
        expr = equation.expression
        for mu, count in enumerate(m):
            for _ in range(count):
                expr = self.total_derivative(expr, model, mu)
        return expr

    def build_algebra(self, model: ToyModel, p: int, equations: Dict[str, EulerLagrange]) -> GradedAlgebra:
        """Generadores de la tabla de jets con sus cotas de orden"""
        generators: List[GradedGenerator] = []
        for mu in range(model.n):
            for dot in range(MAX_DOT + 1):
                generators.append(GradedGenerator(
                    trajectory_name(mu, dot), GeneratorKind.TRAJECTORY, "q", None, dot, 0, 0
                ))
        for name in model.fields:
            o = equations[name].order
            for m in enumerate_jets(model.n, p):
                for dot in range(MAX_DOT + 1):
                    generators.append(GradedGenerator(
                        generator_name(GeneratorKind.FIELD, name, m, dot),
                        GeneratorKind.FIELD, name, m, dot, 0, 0
                    ))
            for m in self._jets_up_to(model.n, p - o):
                for dot in range(MAX_DOT + 1):
                    generators.append(GradedGenerator(
                        generator_name(GeneratorKind.ANTIFIELD, name, m, dot),
                        GeneratorKind.ANTIFIELD, name, m, dot, 1, 1
                    ))
            for m in self._jets_up_to(model.n, p - 1):
                generators.append(GradedGenerator(
                    generator_name(GeneratorKind.BARRED, name, m),
                    GeneratorKind.BARRED, name, m, 0, 1, 1
                ))
            for m in self._jets_up_to(model.n, p - o - 1):
                generators.append(GradedGenerator(
                    generator_name(GeneratorKind.BARRED_ANTIFIELD, name, m),
                    GeneratorKind.BARRED_ANTIFIELD, name, m, 0, 0, 2
                ))
        return GradedAlgebra(generators)

    def _jets_up_to(self, n: int, order: int) -> List[MultiIndex]:
        return enumerate_jets(n, order) if order >= 0 else []

    def _time_derivative_images(self, algebra: GradedAlgebra) -> Dict[str, GradedPolynomial]:
        images: Dict[str, GradedPolynomial] = {}
        for generator in algebra.generators.values():
            if generator.kind in (GeneratorKind.BARRED, GeneratorKind.BARRED_ANTIFIELD):
                continue
            if generator.dot < MAX_DOT:
                base = generator.name[: len(generator.name) - 2 * generator.dot]
                images[generator.name] = algebra.gen(dotted_name(base, generator.dot + 1))
        return images

    def time_derivative(self, complex_: KTComplex, value: GradedPolynomial) -> GradedPolynomial:
        """Derivada temporal total; exige generadores con orden temporal < 2 y sin barras"""
        for name in self._present(value):
            info = complex_.algebra.info(name)
            if info.dot >= MAX_DOT or info.kind in (GeneratorKind.BARRED, GeneratorKind.BARRED_ANTIFIELD):
                raise PreconditionError(
                    f"La derivada temporal de {name} sale del álgebra truncada",
                    details={"generator": name}
                )
        return complex_.dt.apply(value)

    def _present(self, value: GradedPolynomial) -> Set[str]:
        algebra = value.algebra
        names: Set[str] = set()
        for word, coeff in value.terms.items():
            names.update(algebra.odd[i].name for i in word)
            for monom in coeff.itermonoms():
                names.update(algebra.even[i].name for i, e in enumerate(monom) if e and i < len(algebra.even))
        return names

    def dt_constraint(
        self,
        complex_: KTComplex,
        kind: GeneratorKind,
        field_name: str,
        m: MultiIndex
    ) -> GradedPolynomial:
        """D_t g_m = ġ_m − q̇^μ g_{m+μ}; solo un orden por debajo de la cota de g"""
        bound = complex_.p if kind is GeneratorKind.FIELD else complex_.p - complex_.equations[field_name].order
        if kind not in (GeneratorKind.FIELD, GeneratorKind.ANTIFIELD):
            raise ValidationError("D_t solo se define para campos y antifields", details={"kind": kind.value})
        if m.norm > bound - 1:
            raise PreconditionError(
                f"D_t no está definido en el orden superior: |m| debe ser <= {bound - 1}",
                details={"field": field_name, "index": str(m), "bound": bound}
            )
        algebra = complex_.algebra
        result = algebra.gen(generator_name(kind, field_name, m, 1))
        for mu in range(complex_.model.n):
            shifted = generator_name(kind, field_name, m + MultiIndex.unit(complex_.model.n, mu))
            result = result - algebra.gen(trajectory_name(mu, 1)) * algebra.gen(shifted)
        return result

    def kt_differential(self, model: ToyModel, p: int, correction: bool = True) -> KTComplex:
        """
        Diferencial δ:

        - δφ = δq = 0
        - δφ*_m = E_m (y sus derivadas temporales)
        - δφ̄_m = D_tφ_m
        - δφ̄*_m = D_tφ*_m − Σ ∂E_m/∂φ_n φ̄_n (el último término con `correction`)
        """
        validate_non_negative_int(p, "p")
        equations = self.euler_lagrange(model)
        algebra = self.build_algebra(model, p, equations)
        dt = GradedDerivation(algebra, self._time_derivative_images(algebra), odd=False)
        complex_ = KTComplex(
            model=model, p=p, algebra=algebra, delta=GradedDerivation(algebra, {}, odd=True),
            dt=dt, equations=equations, correction=correction,
        )
        images: Dict[str, GradedPolynomial] = {}

        for name in model.fields:
            equation = equations[name]
            # 1. Antifields: ecuaciones de movimiento prolongadas
            prolonged: Dict[MultiIndex, GradedPolynomial] = {}
            for m in self._jets_up_to(model.n, p - equation.order):
                value = algebra.scalar(algebra.ring.from_expr(self.prolong(equation, model, m, p)))
                prolonged[m] = value
                for dot in range(MAX_DOT + 1):
                    images[generator_name(GeneratorKind.ANTIFIELD, name, m, dot)] = value
                    if dot < MAX_DOT:
                        value = complex_.dt.apply(value)

            # 2. Campos barrados: restricciones D_t
            for m in self._jets_up_to(model.n, p - 1):
                images[generator_name(GeneratorKind.BARRED, name, m)] = self.dt_constraint(
                    complex_, GeneratorKind.FIELD, name, m
                )

            # 3. Antifields barrados con el término de corrección
            for m in self._jets_up_to(model.n, p - equation.order - 1):
                value = self.dt_constraint(complex_, GeneratorKind.ANTIFIELD, name, m)
                if correction:
                    value = value - self._linearized(complex_, prolonged[m])
                images[generator_name(GeneratorKind.BARRED_ANTIFIELD, name, m)] = value

        complex_.delta = GradedDerivation(algebra, images, odd=True)
        return complex_

    def _linearized(self, complex_: KTComplex, prolonged: GradedPolynomial) -> GradedPolynomial:
        # Σ_{β,n} ∂E_m/∂φ^β_n φ̄^β_n
        algebra = complex_.algebra
        coefficient = prolonged.terms.get((), algebra.ring.zero)
        result = algebra.zero()
        for name in complex_.model.fields:
            for n in self._jets_up_to(complex_.model.n, complex_.p - 1):
                variable = algebra.even_gen(generator_name(GeneratorKind.FIELD, name, n))
                derivative = coefficient.diff(variable)
                if derivative:
                    result = result + algebra.gen(generator_name(GeneratorKind.BARRED, name, n)).scale(derivative)
        return result

    def uncorrected_residual(self, complex_: KTComplex, field_name: str, m: MultiIndex) -> GradedPolynomial:
        """Σ_n ∂E_m/∂φ_n (φ̇_n − q̇^μ φ_{n+μ}): residuo esperado de δ² sin corrección"""
        equation = complex_.equations[field_name]
        algebra = complex_.algebra
        prolonged = algebra.ring.from_expr(self.prolong(equation, complex_.model, m, complex_.p))
        result = algebra.zero()
        for name in complex_.model.fields:
            for n in self._jets_up_to(complex_.model.n, complex_.p - 1):
                derivative = prolonged.diff(algebra.even_gen(generator_name(GeneratorKind.FIELD, name, n)))
                if derivative:
                    constraint = self.dt_constraint(complex_, GeneratorKind.FIELD, name, n)
                    result = result + constraint.scale(derivative)
        return result

    def verify_nilpotency(
        self,
        model: ToyModel,
        p: int,
        correction: bool = True,
        include_products: bool = True
    ) -> NilpotencyReport:
        """Aplica δ dos veces a cada generador y a todos los productos de grado <= 2"""
        started = time.perf_counter()
        complex_ = self.kt_differential(model, p, correction)
        delta = complex_.delta
        report = NilpotencyReport()
        names = list(complex_.algebra.generators)

        # 1. Generadores y graduación
        for name in names:
            info = complex_.algebra.info(name)
            image = delta.apply_to(name)
            report.generators_checked += 1
            if not image.is_zero():
                if image.afns() != {info.afn - 1}:
                    report.grading_violations.append(f"{name}: afn {sorted(image.afns())} != {info.afn - 1}")
                if image.parities() != {1 - info.parity}:
                    report.grading_violations.append(f"{name}: paridad no invertida")
            residual = delta.apply(image)
            if not residual.is_zero():
                report.generator_residuals[name] = str(residual)

        # 2. Productos de dos generadores
        if include_products:
            for factors in monomials_up_to_two(names):
                if len(factors) < 2:
                    continue
                product = complex_.algebra.gen(factors[0]) * complex_.algebra.gen(factors[1])
                if product.is_zero():
                    continue
                report.products_checked += 1
                residual = delta.apply(delta.apply(product))
                if not residual.is_zero():
                    report.product_residuals["*".join(factors)] = str(residual)

        log_case(
            logger, "kt", f"{model.name}-p{p}", report.passed, time.perf_counter() - started,
            {"correction": correction, "generators": report.generators_checked}
        )
        return report

    def verify_prolongation(
        self,
        model: ToyModel,
        p: int,
        seed: int = 0,
        samples: int = 3
    ) -> List[str]:
        """
        Contraste por sustitución: evalúa E sobre campos polinomiales de prueba
        y compara sus jets con E_{,m} evaluado en los jets del campo.
        """
        equations = self.euler_lagrange(model)
        R = base_ring(model.n)
        coordinates = [Symbol(f"x{mu + 1}") for mu in range(model.n)]
        rng = random.Random(seed)
        mismatches: List[str] = []
        for sample in range(samples):
            test = {name: random_polynomial(R, p + 2, rng) for name in model.fields}
            max_order = p + 2
            substitution = {
                jet_symbol(name, n): partial(test[name], n).as_expr()
                for name in model.fields
                for n in enumerate_jets(model.n, max_order)
            }
            for name, equation in equations.items():
                evaluated = sympy.expand(equation.expression.xreplace(substitution))
                for m in self._jets_up_to(model.n, p - equation.order):
                    direct = evaluated
                    for mu, count in enumerate(m):
                        if count:
                            direct = sympy.diff(direct, coordinates[mu], count)
                    prolonged = self.prolong(equation, model, m, p).xreplace(substitution)
                    if sympy.expand(direct - prolonged) != 0:
                        mismatches.append(f"muestra {sample}, {name}{m}")
        return mismatches

    def _check_bosonic(self, model: ToyModel) -> None:
        fermions = [name for name, stat in model.statistics.items() if stat is Statistics.FERMION]
        if fermions:
            raise ValidationError(
                "Los campos fermiónicos no están soportados en la verificación simbólica",
                details={"fields": fermions}
            )
        reserved = {f"{name}{suffix}" for name in model.fields for suffix in ("S", "B", "BS")}
        clashes = sorted(reserved & set(model.fields))
        if clashes or "q" in model.fields:
            raise ValidationError(
                "Nombres de campo en conflicto con los generadores derivados",
                details={"fields": clashes or ["q"]}
            )
