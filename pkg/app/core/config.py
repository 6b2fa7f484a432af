from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import field_validator, Field


class Settings(BaseSettings):
    """Configuración de la herramienta usando variables de entorno"""

    # --------------------------------------------------
    # Proyecto
    # --------------------------------------------------
    PROJECT_NAME: str = Field("jetcharges", description="Nombre del proyecto")
    VERSION: str = Field("1.0.0", description="Versión reportada en los informes")

    # --------------------------------------------------
    # Logging
    # --------------------------------------------------
    LOG_LEVEL: str = Field("WARNING", description="Nivel de logging (DEBUG, INFO, WARNING, ERROR)")

    # --------------------------------------------------
    # Verificaciones aleatorias
    # --------------------------------------------------
    DEFAULT_SEED: int = Field(1998, description="Semilla por defecto de los tests de corchetes")
    DEFAULT_TRIALS: int = Field(50, ge=1, description="Número de ensayos aleatorios por defecto")
    BRACKET_DEGREE: int = Field(3, ge=0, description="Grado máximo de los campos vectoriales aleatorios")

    # --------------------------------------------------
    # Barridos y concurrencia
    # --------------------------------------------------
    MAX_WORKERS: int = Field(1, ge=1, description="Hilos para casos independientes (1 = secuencial)")
    SWEEP_LENGTH: int = Field(5, ge=1, description="Longitud por defecto de un barrido en p")
    ORACLE_MAX_MODE: int = Field(5, ge=1, description="Modo de Fourier máximo del oráculo de Wick")
    IDENTITIES_MAX_R: int = Field(12, ge=0, description="r máximo para las identidades alfa/beta/gamma")

    # --------------------------------------------------
    # Informes
    # --------------------------------------------------
    REPORT_INDENT: int = Field(2, ge=0, description="Sangría del JSON de los informes")

    @field_validator("LOG_LEVEL", mode="before")
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        return v

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="JETCHARGES_",
        case_sensitive=True,
        extra="ignore"  # Ignorar variables extra del entorno
    )


settings = Settings()
