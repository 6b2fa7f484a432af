"""Oráculo de términos centrales por sumas de Wick finitas sobre osciladores libres"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import Expr, Integer, Matrix, eye
from sympy.physics.quantum import TensorProduct

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.core.logger import get_logger, log_case
from app.core.utils.concurrency import ordered_map
from app.core.utils.validation import validate_non_negative_int, validate_positive_int
from app.domain.ladder import KParameters
from app.domain.representations import MatrixRep, Statistics

logger = get_logger(__name__)

# Convención global de signo, calibrada con la corriente E bosónica
ORACLE_SIGMA = -1


class OscillatorKind(str, Enum):
    PHI = "phi"
    PI = "pi"


class Channel(str, Enum):
    """Par de corrientes bilineales y el coeficiente central que prueba"""

    E = "E"
    J = "J"
    TU = "Tu"
    TV = "Tv"
    TW = "Tw"

    @property
    def parameter(self) -> str:
        return {"E": "k4", "J": "k5", "Tu": "k1", "Tv": "k2", "Tw": "k3"}[self.value]


@dataclass(frozen=True)
class Oscillator:
    """Modo de Fourier φ_{α,k} o π^α_k"""

    kind: OscillatorKind
    component: int
    mode: int

    def annihilates_vacuum(self) -> bool:
        # φ_k con k < 0 y π_k con k <= 0 aniquilan el vacío
        if self.kind is OscillatorKind.PHI:
            return self.mode < 0
        return self.mode <= 0


@dataclass(frozen=True)
class BilinearSpec:
    """Corriente E^M_m = Σ_j M_{αβ} :φ_{α,j} π^β_{m−j}:"""

    name: str
    matrix: Matrix

    def __post_init__(self) -> None:
        rows, columns = self.matrix.shape
        if rows != columns:
            raise ValidationError(
                "La matriz de una corriente bilineal debe ser cuadrada",
                details={"current": self.name, "shape": [rows, columns]}
            )

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass
class OracleCase:
    statistics: str
    channel: str
    mode: int
    kappa: Expr
    expected: Expr

    @property
    def passed(self) -> bool:
        return sympy.expand(self.kappa - self.expected) == 0


@dataclass
class OracleReport:
    cases: List[OracleCase] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(case.passed for case in self.cases)


def canonical_bracket(x: Oscillator, y: Oscillator, statistics: Statistics) -> int:
    """[x, y} canónico: [φ_{α,j}, π^β_k} = δ_αβ δ_{j+k,0}"""
    if x.kind is y.kind or x.component != y.component or x.mode + y.mode != 0:
        return 0
    if x.kind is OscillatorKind.PHI:
        return 1
    # π φ: antisimetría bosónica, simetría fermiónica
    return 1 if statistics.is_odd else -1


def two_point(x: Oscillator, y: Oscillator, statistics: Statistics) -> int:
    """⟨0| x y |0⟩"""
    if not x.annihilates_vacuum():
        return 0
    return canonical_bracket(x, y, statistics)


def wick_normal_pair(
    left: Tuple[Oscillator, Oscillator],
    right: Tuple[Oscillator, Oscillator],
    statistics: Statistics,
) -> int:
    """⟨:x1 y1: :x2 y2:⟩ con contracciones cruzadas únicamente"""
    x1, y1 = left
    x2, y2 = right
    crossed = two_point(x1, y2, statistics) * two_point(y1, x2, statistics)
    direct = two_point(x1, x2, statistics) * two_point(y1, y2, statistics)
    return crossed + (-direct if statistics.is_odd else direct)


class OracleService:
    """
    Oráculo de Wick para los términos centrales ⟨[E^A_m, E^B_{−m}]⟩

    Solo los modos entre la separación del vacío contribuyen, así que una
    ventana |j| <= 2m + 1 hace exacta la suma.
    """

    def _terms(self, spec: BilinearSpec, m: int) -> List[Tuple[Expr, Oscillator, Oscillator]]:
        window = 2 * abs(m) + 1
        terms = []
        for j in range(-window, window + 1):
            for alpha in range(spec.dimension):
                for beta in range(spec.dimension):
                    coefficient = spec.matrix[alpha, beta]
                    if coefficient != 0:
                        terms.append((
                            coefficient,
                            Oscillator(OscillatorKind.PHI, alpha, j),
                            Oscillator(OscillatorKind.PI, beta, m - j),
                        ))
        return terms

    def _expectation(self, first: BilinearSpec, m1: int, second: BilinearSpec, m2: int,
                     statistics: Statistics) -> Expr:
        total: Expr = Integer(0)
        for c1, x1, y1 in self._terms(first, m1):
            for c2, x2, y2 in self._terms(second, m2):
                value = wick_normal_pair((x1, y1), (x2, y2), statistics)
                if value:
                    total += c1 * c2 * value
        return sympy.expand(total)

    def oracle_central_term(
        self, spec_a: BilinearSpec, spec_b: BilinearSpec, statistics: Statistics, m: int
    ) -> Expr:
        """κ(m) = ⟨[E^A_m, E^B_{−m}]⟩ exacto"""
        validate_non_negative_int(m, "m")
        statistics = Statistics(statistics)
        if spec_a.dimension != spec_b.dimension:
            raise ValidationError(
                "Las corrientes deben actuar sobre el mismo espacio",
                details={"left": spec_a.dimension, "right": spec_b.dimension}
            )
        forward = self._expectation(spec_a, m, spec_b, -m, statistics)
        backward = self._expectation(spec_b, -m, spec_a, m, statistics)
        return sympy.expand(forward - backward)

    def expected_central_term(self, k: KParameters, m: int, channel: Channel = Channel.E) -> Expr:
        """σ·k·m para el coeficiente del canal"""
        return sympy.expand(ORACLE_SIGMA * getattr(k, Channel(channel).parameter) * m)

    def calibrate_sigma(self) -> int:
        """Signo que relaciona κ(1) con k4 = −1 para un bosón escalar"""
        unit = BilinearSpec("E", eye(1))
        kappa = self.oracle_central_term(unit, unit, Statistics.BOSON, 1)
        return int(kappa / Integer(-1))

    def channel_specs(
        self, gl_rep: MatrixRep, g_rep: Optional[MatrixRep] = None
    ) -> Dict[Channel, Tuple[BilinearSpec, BilinearSpec]]:
        """Pares de corrientes en la representación combinada gl(N) ⊗ g"""
        internal = g_rep.dimension if g_rep else 1
        total = gl_rep.dimension * internal

        def t(mu: int, nu: int) -> BilinearSpec:
            return BilinearSpec(f"T{mu + 1}{nu + 1}", TensorProduct(gl_rep.matrix((mu, nu)), eye(internal)))

        identity = BilinearSpec("E", eye(total))
        channels: Dict[Channel, Tuple[BilinearSpec, BilinearSpec]] = {
            Channel.E: (identity, identity),
            Channel.TW: (t(0, 0), identity),
        }
        if gl_rep.n >= 2:
            channels[Channel.TU] = (t(0, 1), t(1, 0))
            channels[Channel.TV] = (t(0, 0), t(1, 1))
        else:
            channels[Channel.TU] = (t(0, 0), t(0, 0))
        if g_rep is not None and g_rep.algebra is not None and g_rep.algebra.dimension:
            j = BilinearSpec("J1", TensorProduct(eye(gl_rep.dimension), g_rep.matrix(0)))
            channels[Channel.J] = (j, j)
        return channels

    def verify_oracle(
        self,
        gl_rep: MatrixRep,
        g_rep: Optional[MatrixRep],
        k_of: Dict[Statistics, KParameters],
        max_mode: Optional[int] = None,
    ) -> OracleReport:
        """
        Compara κ(m) con σ·k·m en cada canal y estadística

        Validaciones:
        - κ(0) = 0
        - κ(m)/m independiente de m
        - κ fermiónico = −κ bosónico
        """
        max_mode = max_mode or settings.ORACLE_MAX_MODE
        validate_positive_int(max_mode, "max_mode")
        report = OracleReport()
        channels = self.channel_specs(gl_rep, g_rep)
        if self.calibrate_sigma() != ORACLE_SIGMA:
            report.failures.append("sigma")

        jobs = [
            (statistics, channel, m)
            for statistics in (Statistics.BOSON, Statistics.FERMION)
            for channel in channels
            for m in range(max_mode + 1)
        ]

        def run(job: Tuple[Statistics, Channel, int]) -> OracleCase:
            statistics, channel, m = job
            started = time.perf_counter()
            left, right = channels[channel]
            case = OracleCase(
                statistics=statistics.value,
                channel=channel.value,
                mode=m,
                kappa=self.oracle_central_term(left, right, statistics, m),
                expected=self.expected_central_term(k_of[statistics], m, channel),
            )
            log_case(
                logger, "oracle", f"{statistics.value}-{channel.value}-m{m}",
                case.passed, time.perf_counter() - started
            )
            return case

        report.cases = ordered_map(run, jobs)

        by_key: Dict[Tuple[str, str], Dict[int, Expr]] = {}
        for case in report.cases:
            by_key.setdefault((case.statistics, case.channel), {})[case.mode] = case.kappa
        for (statistics, channel), values in by_key.items():
            if values.get(0, Integer(0)) != 0:
                report.failures.append(f"{statistics}-{channel}-m0")
            ratios = {sympy.expand(values[m] / m) for m in values if m > 0}
            if len(ratios) > 1:
                report.failures.append(f"{statistics}-{channel}-ratio")
            if statistics == Statistics.BOSON.value:
                partner = by_key.get((Statistics.FERMION.value, channel), {})
                for m, value in values.items():
                    if sympy.expand(value + partner.get(m, Integer(0))) != 0:
                        report.failures.append(f"{channel}-m{m}-antisymmetry")
        return report
