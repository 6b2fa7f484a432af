"""Esquemas Pydantic del archivo de especificación (YAML o JSON)"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

Value = Union[int, str]


class CountsSchema(BaseModel):
    """Conteos por familia: racional 'a/b' o forma lineal en U, V, W, X, Y"""
    model_config = ConfigDict(extra="forbid")

    x: Value = Field(0, description="Número de componentes")
    y: Value = 0
    u: Value = 0
    v: Value = 0
    w: Value = 0


class GaugeSchema(BaseModel):
    """Simetría gauge de un campo"""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    order: int = Field(..., ge=0, description="Orden ς de la relación gauge")
    counts: CountsSchema = Field(default_factory=CountsSchema)


class FieldSchema(BaseModel):
    """Entrada de contenido de campos"""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    statistics: Literal["boson", "fermion"]
    el_order: int = Field(..., ge=0, description="Orden de las ecuaciones de Euler-Lagrange")
    counts: CountsSchema = Field(default_factory=CountsSchema)
    gauge: List[GaugeSchema] = Field(default_factory=list)
    include_barred: bool = True
    weight: Value = Field(0, description="Peso de reparametrización (no entra en los conteos)")


class RepresentationSchema(BaseModel):
    """Sector dado por representaciones integradas; sus trazas fijan los parámetros k"""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    gl: Literal["scalar", "vector", "covector", "density"]
    gl_weight: Value = Field(1, description="Peso λ de la densidad")
    g: Literal["none", "trivial", "fundamental", "adjoint"] = "none"
    statistics: Literal["boson", "fermion"] = "boson"


class LadderEntrySchema(BaseModel):
    """Entrada explícita de la escalera de sectores"""
    model_config = ConfigDict(extra="forbid")

    offset: int = Field(..., ge=0)
    x: Value = 0
    y: Value = 0
    u: Value = 0
    v: Value = 0
    w: Value = 0


class LagrangianSchema(BaseModel):
    """Modelo de juguete definido por texto"""
    model_config = ConfigDict(extra="forbid")

    name: str = "custom"
    fields: List[str] = Field(..., min_length=1)
    text: str = Field(..., min_length=1)


class TargetsSchema(BaseModel):
    """Valores de U, V, W, X, Y; los omitidos quedan simbólicos"""
    model_config = ConfigDict(extra="forbid")

    U: Optional[Value] = None
    V: Optional[Value] = None
    W: Optional[Value] = None
    X: Optional[Value] = None
    Y: Optional[Value] = None


class SpecFile(BaseModel):
    """Archivo de especificación completo"""
    model_config = ConfigDict(extra="forbid")

    dimension: int = Field(..., ge=1, description="Dimensión N del espacio")
    jet_order: Optional[int] = Field(None, ge=0, description="Orden de jet p")
    targets: TargetsSchema = Field(default_factory=TargetsSchema)
    fields: List[FieldSchema] = Field(default_factory=list)
    reduced: bool = Field(False, description="Construye la escalera sin filas barradas")
    representations: List[RepresentationSchema] = Field(default_factory=list)
    ladder: List[LadderEntrySchema] = Field(default_factory=list)
    conditions_ladder: Optional[int] = Field(
        None, ge=0, description="Profundidad r de la escalera que satisface las condiciones"
    )
    lagrangian: Optional[LagrangianSchema] = None
    vector_fields: List[List[str]] = Field(
        default_factory=list, description="Campos ξ explícitos, N componentes cada uno"
    )
