"""Repositorio con las tablas de contenido de campos del Modelo Estándar más gravedad"""

from dataclasses import dataclass
from typing import List


@dataclass(frozen=True)
class CensusRow:
    """Fila de censo: número de componentes como producto de multiplicidades"""

    field: str
    name: str
    multiplicity: int
    components: int

    @property
    def total(self) -> int:
        return self.multiplicity * self.components


@dataclass(frozen=True)
class VielbeinData:
    """Descripción alternativa de la métrica con campos espurios algebraicos"""

    vielbein_components: int
    symmetry_conditions: int
    metric_components: int


class CensusRepository:
    """Tablas de bosones, condiciones gauge y fermiones de una generación"""

    GENERATIONS = 3
    ANTIPARTICLES = 2

    def bosons(self) -> List[CensusRow]:
        return [
            CensusRow("A^a_mu", "Gauge bosons", 12, 4),
            CensusRow("g_munu", "Metric", 1, 10),
            CensusRow("H", "Higgs field", 1, 2),
        ]

    def gauge_conditions(self) -> List[CensusRow]:
        return [
            CensusRow("D_mu D_nu F^amunu", "Yang-Mills", 12, 1),
            CensusRow("d_nu G^munu", "Diffeomorphisms", 1, 4),
        ]

    def fermions_per_generation(self) -> List[CensusRow]:
        return [
            CensusRow("u", "Up quark", 2, 3),
            CensusRow("d", "Down quark", 2, 3),
            CensusRow("e", "Electron", 1, 2),
            CensusRow("nu_L", "Left-handed neutrino", 1, 1),
        ]

    def fermionic_gauge_conditions(self) -> List[CensusRow]:
        return []

    def vielbein(self) -> VielbeinData:
        return VielbeinData(vielbein_components=16, symmetry_conditions=6, metric_components=10)
