"""Servicio de cargas abelianas: trazas, tabla de signos, fórmulas de cargas y condiciones de finitud"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import sympy
from sympy import Expr, Integer, Symbol

from app.core.exceptions import PreconditionError, ValidationError, VerificationError
from app.core.logger import get_logger
from app.core.utils.validation import validate_non_negative_int, validate_positive_int
from app.domain.ladder import (
    FAMILIES,
    TARGET_SYMBOLS,
    ChargeVector,
    KParameters,
    SectorEntry,
    SectorLadder,
    TraceNumbers,
)
from app.domain.mindex import ZETA, CountKind, FormalSeries, binomial, count, fugacity_series
from app.domain.representations import MatrixRep, RepKind, Statistics

logger = get_logger(__name__)


@dataclass
class RepValidation:
    """Resultado de validate_rep: residuos de los corchetes que fallan"""

    rep: str
    residuals: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.residuals


@dataclass(frozen=True)
class Albega:
    alpha: int
    beta: int
    gamma: int


@dataclass
class ConditionsReport:
    """Residuos de las ocho condiciones y de su forma simplificada"""

    r: int
    conditions: Dict[str, Expr] = field(default_factory=dict)
    simplified: Dict[str, Expr] = field(default_factory=dict)

    @property
    def failing(self) -> List[str]:
        return [label for label, value in self.conditions.items() if value != 0]

    @property
    def failing_simplified(self) -> List[str]:
        return [label for label, value in self.simplified.items() if value != 0]

    @property
    def passed(self) -> bool:
        return not self.failing

    @property
    def passed_simplified(self) -> bool:
        return not self.failing_simplified

    @property
    def equivalent(self) -> bool:
        return self.passed == self.passed_simplified


def default_targets() -> Dict[str, Expr]:
    return {name: symbol for name, symbol in TARGET_SYMBOLS.items()}


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


class ChargesService:
    """
    Servicio de cargas abelianas c1..c5

    Convenciones:
    - Escaleras: filas impares con signo +, pares con signo −
    - Tabla de Fock: signo superior (−) para bosones
    - Un sector con parámetros k corresponde a la entrada (−k1, ..., −k5)
    """

    # 1. Representaciones y trazas

    def validate_rep(self, rep: MatrixRep) -> RepValidation:
        """Comprueba exactamente los corchetes que definen la familia de matrices"""
        residuals = rep.bracket_residuals()
        return RepValidation(rep=rep.name, residuals={k: str(v.tolist()) for k, v in residuals.items()})

    def trace_numbers(self, gl_rep: MatrixRep, g_rep: Optional[MatrixRep] = None) -> TraceNumbers:
        """
        (u, v, w, x, y) en la representación combinada gl(N) ⊗ g

        Validaciones:
        - tr T^μ_ν T^σ_τ = u δ^μ_τ δ^σ_ν + v δ^μ_ν δ^σ_τ
        - tr T^μ_ν = w δ^μ_ν
        - tr J^a J^b = y δ^ab
        """
        if gl_rep.kind is not RepKind.GL:
            raise ValidationError("Se esperaba una representación de gl(N)", details={"rep": gl_rep.name})
        n = gl_rep.n
        internal = g_rep.dimension if g_rep else 1
        gl_dim = gl_rep.dimension

        def tr_gl(*labels: Tuple[int, int]) -> Expr:
            product = sympy.eye(gl_dim)
            for label in labels:
                product = product * gl_rep.matrix(label)
            return sympy.expand(product.trace() * internal)

        # 1. u y v desde componentes fuera de la diagonal
        if n >= 2:
            u = tr_gl((0, 1), (1, 0))
            v = tr_gl((0, 0), (1, 1))
        else:
            # N = 1: u y v no se separan; todo se asigna a u
            u, v = tr_gl((0, 0), (0, 0)), Integer(0)
        for mu in range(n):
            for nu in range(n):
                for sigma in range(n):
                    for tau in range(n):
                        expected = u * int(mu == tau and sigma == nu) + v * int(mu == nu and sigma == tau)
                        if sympy.expand(tr_gl((mu, nu), (sigma, tau)) - expected) != 0:
                            raise ValidationError(
                                "La traza no tiene la forma isotrópica de gl(N)",
                                details={"rep": gl_rep.name, "indices": [mu, nu, sigma, tau]}
                            )

        # 2. w desde tr T^μ_ν
        w = tr_gl((0, 0))
        for mu in range(n):
            for nu in range(n):
                if sympy.expand(tr_gl((mu, nu)) - w * int(mu == nu)) != 0:
                    raise ValidationError(
                        "tr T^mu_nu no es proporcional a delta",
                        details={"rep": gl_rep.name, "indices": [mu, nu]}
                    )

        # 3. y desde la representación interna
        y: Expr = Integer(0)
        if g_rep is not None and g_rep.algebra is not None and g_rep.algebra.dimension:
            size = g_rep.algebra.dimension

            def tr_g(a: int, b: int) -> Expr:
                return sympy.expand((g_rep.matrix(a) * g_rep.matrix(b)).trace() * gl_dim)

            y = tr_g(0, 0)
            for a in range(size):
                for b in range(size):
                    if sympy.expand(tr_g(a, b) - y * int(a == b)) != 0:
                        raise ValidationError(
                            "tr J^a J^b no es proporcional a delta",
                            details={"rep": g_rep.name, "indices": [a, b]}
                        )
        return TraceNumbers(u=u, v=v, w=w, x=Integer(gl_dim * internal), y=y)

    def k_parameters(self, t: TraceNumbers, statistics: Statistics) -> KParameters:
        """Patrón ∓(u, v, w, x, y, x, w, x); signo superior para bosones"""
        statistics = Statistics(statistics)
        s = 1 if statistics.is_odd else -1
        return KParameters(
            k1=s * t.u, k2=s * t.v, k3=s * t.w, k4=s * t.x, k5=s * t.y,
            d0=s * t.x, d1=s * t.w, c=s * t.x, statistics=statistics.value,
        )

    # 2. Cargas

    def trajectory(self, n: int) -> ChargeVector:
        return ChargeVector.of(1, 0, 1, 2 * n, 0)

    def abelian_charges_single(
        self, k: KParameters, n: int, p: int, include_trajectory: bool = True
    ) -> ChargeVector:
        """Evaluación exacta de c1..c5 para un único sector"""
        validate_positive_int(n, "N")
        validate_non_negative_int(p, "p")
        a = binomial(n + p, n)
        charges = ChargeVector.of(
            -k.k1 * a - k.k4 * binomial(n + p, n + 2),
            -k.k2 * a - 2 * k.k3 * binomial(n + p, n + 1) - k.k4 * binomial(n + p, n + 2),
            k.d1 * a + k.d0 * binomial(n + p, n + 1),
            -k.c * a,
            k.k5 * a,
        )
        return charges + self.trajectory(n) if include_trajectory else charges

    def abelian_charges_multi(
        self, ladder: SectorLadder, n: int, p: int, include_trajectory: bool = False
    ) -> ChargeVector:
        """
        Suma sobre desplazamientos i de la escalera:

            c1 = Σ u_i A(p−i) + x_i C(p−i−2)
            c2 = Σ v_i A(p−i) + 2 w_i B(p−i−1) + x_i C(p−i−2)
            c3 = −Σ w_i A(p−i) + x_i B(p−i−1)
            c4 = Σ x_i A(p−i)
            c5 = −Σ y_i A(p−i)
        """
        validate_positive_int(n, "N")
        if p < ladder.depth:
            raise PreconditionError(
                f"p debe ser >= r = {ladder.depth}",
                details={"p": p, "r": ladder.depth}
            )
        c1 = c2 = c3 = c4 = c5 = Integer(0)
        for i, e in ladder:
            a = count(CountKind.A, n, p - i)
            b = count(CountKind.B, n, p - i - 1)
            c = count(CountKind.C, n, p - i - 2)
            c1 += e.u * a + e.x * c
            c2 += e.v * a + 2 * e.w * b + e.x * c
            c3 -= e.w * a + e.x * b
            c4 += e.x * a
            c5 -= e.y * a
        charges = ChargeVector.of(c1, c2, c3, c4, c5)
        return charges + self.trajectory(n) if include_trajectory else charges

    def sweep(
        self, ladder: SectorLadder, n: int, ps: List[int], include_trajectory: bool = False
    ) -> List[Tuple[int, ChargeVector]]:
        return [(p, self.abelian_charges_multi(ladder, n, p, include_trajectory)) for p in ps]

    def finite_limit(self, targets: Mapping[str, Expr], n: int, p: int, r: int) -> ChargeVector:
        """C(N+p−r, N−r)·(U, V, −W, X, −Y)"""
        if p < r:
            raise PreconditionError("p debe ser >= r", details={"p": p, "r": r})
        factor = binomial(n + p - r, n - r)
        return ChargeVector.of(
            factor * targets["U"], factor * targets["V"], -factor * targets["W"],
            factor * targets["X"], -factor * targets["Y"],
        )

    # 3. Identidades y condiciones

    def albega_direct(self, i: int, r: int) -> Albega:
        """Sumas dobles y triples directas"""
        def partial(j: int) -> int:
            return sum(_sign(l) * binomial(r, l) for l in range(j + 1))

        alpha = sum(partial(j) for j in range(i - 1))
        beta = partial(i - 1) if i >= 1 else 0
        gamma = sum(partial(j - 1) for j in range(1, i))
        return Albega(alpha, beta, gamma)

    def albega_closed(self, i: int, r: int) -> Albega:
        """α = γ = (−1)^i C(r−2, i−2), β = −(−1)^i C(r−1, i−1) con binomial generalizado"""
        alpha = int(_sign(i) * sympy.binomial(r - 2, i - 2))
        beta = int(-_sign(i) * sympy.binomial(r - 1, i - 1))
        return Albega(alpha, beta, alpha)

    def albega(self, i: int, r: int) -> Albega:
        validate_non_negative_int(r, "r")
        if i < 0 or i > r + 1:
            raise PreconditionError("Se requiere 0 <= i <= r+1", details={"i": i, "r": r})
        direct = self.albega_direct(i, r)
        closed = self.albega_closed(i, r)
        if direct != closed:
            raise VerificationError(
                "Las sumas directas no coinciden con las formas cerradas",
                details={"i": i, "r": r, "direct": direct.__dict__, "closed": closed.__dict__}
            )
        return direct

    def ladder_targets(self, i: int, r: int, targets: Optional[Mapping[str, Expr]] = None) -> SectorEntry:
        """Entrada i de la escalera que satisface las condiciones simplificadas"""
        t = targets or default_targets()
        ab = self.albega_closed(i, r)
        c = _sign(i) * binomial(r, i)
        return SectorEntry.of(
            x=c * t["X"],
            y=c * t["Y"],
            u=c * t["U"] - ab.alpha * t["X"],
            v=c * t["V"] - 2 * ab.beta * t["W"] + ab.gamma * t["X"],
            w=c * t["W"] - ab.beta * t["X"],
        )

    def conditions_ladder(self, r: int, targets: Optional[Mapping[str, Expr]] = None) -> SectorLadder:
        validate_non_negative_int(r, "r")
        ladder = SectorLadder()
        for i in range(r + 1):
            ladder.add(i, self.ladder_targets(i, r, targets))
        return ladder

    def check_conditions(
        self, ladder: SectorLadder, r: int, targets: Optional[Mapping[str, Expr]] = None
    ) -> ConditionsReport:
        """Evalúa las ocho familias de condiciones y las cinco simplificadas"""
        t = targets or default_targets()
        report = ConditionsReport(r=r)
        top = max(r, ladder.depth)
        x = ladder.family("x", top + 2)
        w = ladder.family("w", top + 2)

        def cum(values: List[Expr], upto: int) -> Expr:
            # Σ_{ℓ=0}^{upto} values[ℓ]
            return sum((values[l] for l in range(upto + 1)), Integer(0))

        for i in range(top + 1):
            e = ladder.entry(i)
            c = _sign(i) * binomial(r, i)
            sum_i = sum((cum(x, j) for j in range(i - 1)), Integer(0))
            sum_ii = sum((2 * w[j] + cum(x, j - 1) for j in range(i)), Integer(0))
            report.conditions[f"i[{i}]"] = sympy.expand(e.u + sum_i - c * t["U"])
            report.conditions[f"ii[{i}]"] = sympy.expand(e.v + sum_ii - c * t["V"])
            report.conditions[f"iii[{i}]"] = sympy.expand(e.w + cum(x, i - 1) - c * t["W"])
            report.conditions[f"iv[{i}]"] = sympy.expand(e.x - c * t["X"])
            report.conditions[f"v[{i}]"] = sympy.expand(e.y - c * t["Y"])
        report.conditions["vi"] = sympy.expand(
            sum((2 * w[i] + cum(x, i - 1) for i in range(r + 1)), Integer(0))
        )
        report.conditions["vii"] = sympy.expand(cum(x, r))
        report.conditions["viii"] = sympy.expand(sum((cum(x, i) for i in range(r)), Integer(0)))

        for i in range(top + 1):
            e = ladder.entry(i)
            target = self.ladder_targets(i, r, t)
            for family in FAMILIES:
                report.simplified[f"{family}[{i}]"] = sympy.expand(e.get(family) - target.get(family))
        closing = self.albega_closed(r + 1, r)
        report.simplified["alpha[r+1]"] = Integer(closing.alpha)
        report.simplified["beta[r+1]"] = Integer(closing.beta)
        return report

    # 4. Funciones generatrices

    def sector_polynomials(self, targets: Optional[Mapping[str, Expr]], n: int) -> Dict[str, Expr]:
        """
        u(ζ)..y(ζ) cuyas cargas generatrices son constantes (N >= 2)

        El término x de u va con ζ², como c1 = Σ u_i A(p−i) + x_i C(p−i−2):
        con N=2, U=0, X=1 resulta u(ζ) = −ζ².
        """
        if n < 2:
            raise PreconditionError(
                "Los polinomios de sector requieren N >= 2",
                details={"N": n}
            )
        t = targets or default_targets()
        one = 1 - ZETA
        return {
            "u": sympy.expand(t["U"] * one ** n - t["X"] * ZETA ** 2 * one ** (n - 2)),
            "v": sympy.expand(
                t["V"] * one ** n - 2 * t["W"] * ZETA * one ** (n - 1) + t["X"] * ZETA ** 2 * one ** (n - 2)
            ),
            "w": sympy.expand(t["W"] * one ** n - t["X"] * ZETA * one ** (n - 1)),
            "x": sympy.expand(t["X"] * one ** n),
            "y": sympy.expand(t["Y"] * one ** n),
        }

    def ladder_polynomials(self, ladder: SectorLadder) -> Dict[str, Expr]:
        return {
            family: sympy.expand(sum((e.get(family) * ZETA ** i for i, e in ladder), Integer(0)))
            for family in FAMILIES
        }

    def fugacity_charges(self, polynomials: Mapping[str, Expr], n: int, truncation: int) -> Dict[str, FormalSeries]:
        """c1 = uA + ζ²xC, c2 = vA + 2ζwB + ζ²xC, c3 = −(wA + ζxB), c4 = xA, c5 = −yA"""
        degree = max(
            (sympy.Poly(poly, ZETA).degree() for poly in polynomials.values() if sympy.expand(poly) != 0),
            default=0,
        )
        if truncation < degree:
            raise PreconditionError(
                "La truncación debe ser >= grado de los polinomios",
                details={"truncation": truncation, "degree": degree}
            )
        a = fugacity_series(CountKind.A, n, truncation)
        b = fugacity_series(CountKind.B, n, truncation)
        c = fugacity_series(CountKind.C, n, truncation)
        s = {f: FormalSeries.from_polynomial(polynomials.get(f, Integer(0)), truncation) for f in FAMILIES}
        return {
            "c1": s["u"] * a + (s["x"] * c).shift(2),
            "c2": s["v"] * a + (s["w"] * b).shift(1).scale(2) + (s["x"] * c).shift(2),
            "c3": -(s["w"] * a + (s["x"] * b).shift(1)),
            "c4": s["x"] * a,
            "c5": -(s["y"] * a),
        }

    def charges_from_series(self, series: Mapping[str, FormalSeries], p: int) -> ChargeVector:
        """Cargas a orden p como sumas parciales de las series generatrices"""
        return ChargeVector.of(*(series[name].partial_sums()[p] for name in ("c1", "c2", "c3", "c4", "c5")))

    def substitute_targets(self, values: Mapping[Symbol, object]) -> Dict[str, Expr]:
        return {name: sympy.sympify(values.get(symbol, symbol)) for name, symbol in TARGET_SYMBOLS.items()}

    def ladder_from_k(self, k: KParameters) -> SectorLadder:
        return SectorLadder.from_k_parameters(k)

    def rep_ladder(self, gl_rep: MatrixRep, g_rep: Optional[MatrixRep], statistics: Statistics) -> SectorLadder:
        """Escalera de un sector a partir de sus representaciones"""
        return SectorLadder.from_k_parameters(
            self.k_parameters(self.trace_numbers(gl_rep, g_rep), statistics)
        )
