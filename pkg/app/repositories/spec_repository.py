"""Repositorio de archivos de especificación: lectura YAML/JSON y conversión a tipos de dominio"""

import json
from pathlib import Path
from typing import Dict, List, Union

import pydantic
import yaml
from sympy import Expr, Symbol

from app.api.schemas.spec_schema import CountsSchema, SpecFile
from app.core.exceptions import SpecFileError, ValidationError
from app.core.logger import get_logger
from app.core.utils.parsing import parse_expression
from app.domain.fieldspec import FieldSpec, GaugeEntry, ToyModel
from app.domain.ladder import TARGET_SYMBOLS, SectorEntry, SectorLadder

logger = get_logger(__name__)


def parse_value(value: Union[int, str]) -> Expr:
    """Racional 'a/b' o forma lineal en U, V, W, X, Y"""
    if isinstance(value, bool):
        raise ValidationError("Valor booleano no permitido", details={"value": value})
    return parse_expression(str(value), dict(TARGET_SYMBOLS))


def counts_entry(counts: CountsSchema) -> SectorEntry:
    return SectorEntry.of(**{
        family: parse_value(getattr(counts, family)) for family in ("x", "y", "u", "v", "w")
    })


class SpecRepository:
    """Carga archivos de especificación y los traduce a objetos de dominio"""

    def load(self, path: Union[str, Path]) -> SpecFile:
        """
        Lee y valida un archivo de especificación

        El formato se elige por la extensión: .yaml/.yml o .json.
        """
        file_path = Path(path)
        if not file_path.is_file():
            raise SpecFileError(
                f"Archivo de especificación no encontrado: {file_path}",
                details={"path": str(file_path)}
            )
        text = file_path.read_text(encoding="utf-8")
        suffix = file_path.suffix.lower()
        try:
            if suffix in (".yaml", ".yml"):
                raw = yaml.safe_load(text)
            elif suffix == ".json":
                raw = json.loads(text)
            else:
                raise SpecFileError(
                    f"Extensión no soportada: '{suffix}'",
                    details={"path": str(file_path), "supported": [".yaml", ".yml", ".json"]}
                )
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise SpecFileError(
                f"No se pudo leer el archivo de especificación: {e}",
                details={"path": str(file_path)}
            )
        logger.info(f"Especificación leída desde {file_path}")
        return self.parse(raw)

    def parse(self, raw: object) -> SpecFile:
        if not isinstance(raw, dict):
            raise SpecFileError("El archivo de especificación debe ser un objeto clave/valor")
        try:
            return SpecFile.model_validate(raw)
        except pydantic.ValidationError as e:
            raise ValidationError(
                "El archivo de especificación no cumple el esquema",
                details={"errors": [
                    {"loc": ".".join(str(part) for part in error["loc"]), "msg": error["msg"]}
                    for error in e.errors()
                ]}
            )

    def targets(self, spec: SpecFile) -> Dict[Symbol, Expr]:
        """Sustitución de los objetivos con valor explícito"""
        values: Dict[Symbol, Expr] = {}
        for name, symbol in TARGET_SYMBOLS.items():
            value = getattr(spec.targets, name)
            if value is not None:
                parsed = parse_value(value)
                if not parsed.is_Rational:
                    raise ValidationError(
                        f"El objetivo {name} debe ser un racional",
                        details={"target": name, "value": str(value)}
                    )
                values[symbol] = parsed
        return values

    def field_specs(self, spec: SpecFile) -> List[FieldSpec]:
        return [
            FieldSpec(
                name=item.name,
                statistics=item.statistics,
                el_order=item.el_order,
                counts=counts_entry(item.counts),
                gauge=[
                    GaugeEntry(name=g.name, order=g.order, counts=counts_entry(g.counts))
                    for g in item.gauge
                ],
                include_barred=item.include_barred,
                weight=parse_value(item.weight),
            )
            for item in spec.fields
        ]

    def explicit_ladder(self, spec: SpecFile) -> SectorLadder:
        ladder = SectorLadder()
        for item in spec.ladder:
            ladder.add(item.offset, SectorEntry.of(**{
                family: parse_value(getattr(item, family)) for family in ("x", "y", "u", "v", "w")
            }))
        return ladder

    def toy_model(self, spec: SpecFile) -> ToyModel:
        if spec.lagrangian is None:
            raise ValidationError("La especificación no define un lagrangiano")
        return ToyModel(
            name=spec.lagrangian.name,
            fields=list(spec.lagrangian.fields),
            lagrangian=spec.lagrangian.text,
            n=spec.dimension,
        )
