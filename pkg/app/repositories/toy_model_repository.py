"""Repositorio de modelos de juguete para el complejo de Koszul-Tate"""

from typing import Dict, List

from app.core.exceptions import NotFoundError
from app.domain.fieldspec import ToyModel

_MODELS: Dict[str, Dict[str, object]] = {
    "free": {
        "fields": ["phi"],
        "lagrangian": "1/2*phi_1^2 - 1/2*phi^2",
    },
    "phi4": {
        "fields": ["phi"],
        "lagrangian": "1/2*phi_1^2 - 1/4*phi^4",
    },
    "coupled": {
        "fields": ["phi", "chi"],
        "lagrangian": "1/2*phi_1^2 + 1/2*chi_1^2 - 1/2*phi^2 - 1/2*chi^2 - phi^2*chi^2",
    },
}


class ToyModelRepository:
    """Acceso a los modelos integrados por nombre"""

    def list_names(self) -> List[str]:
        return sorted(_MODELS)

    def get(self, name: str, n: int = 1) -> ToyModel:
        """Retorna el modelo; para N > 1 el término cinético suma sobre todas las direcciones"""
        if name not in _MODELS:
            raise NotFoundError(
                f"Modelo de juguete '{name}' no encontrado",
                details={"model": name, "available": self.list_names()}
            )
        data = _MODELS[name]
        fields: List[str] = list(data["fields"])  # type: ignore[arg-type]
        lagrangian = str(data["lagrangian"])
        if n > 1:
            lagrangian = self._isotropic(lagrangian, fields, n)
        return ToyModel(name=name, fields=fields, lagrangian=lagrangian, n=n)

    def _isotropic(self, lagrangian: str, fields: List[str], n: int) -> str:
        for name in fields:
            kinetic = " + ".join(f"1/2*{name}_{mu}^2" for mu in range(1, n + 1))
            lagrangian = lagrangian.replace(f"1/2*{name}_1^2", f"({kinetic})")
        return lagrangian
