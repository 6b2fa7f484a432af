"""Configuración global para tests con pytest"""

import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from app.domain.ladder import TARGET_SYMBOLS
from app.repositories.census_repository import CensusRepository
from app.repositories.representation_repository import RepresentationRepository
from app.repositories.spec_repository import SpecRepository
from app.repositories.toy_model_repository import ToyModelRepository
from app.services.charges_service import ChargesService
from app.services.content_service import ContentService
from app.services.kt_service import KTService
from app.services.liejet_service import LieJetService
from app.services.oracle_service import OracleService
from app.services.report_service import ReportService


@pytest.fixture
def representation_repository() -> RepresentationRepository:
    """Fixture para el repositorio de representaciones"""
    return RepresentationRepository()


@pytest.fixture
def toy_model_repository() -> ToyModelRepository:
    return ToyModelRepository()


@pytest.fixture
def spec_repository() -> SpecRepository:
    return SpecRepository()


@pytest.fixture
def liejet_service(representation_repository) -> LieJetService:
    """Fixture para el servicio de jets"""
    return LieJetService(representation_repository)


@pytest.fixture
def kt_service() -> KTService:
    return KTService()


@pytest.fixture
def charges_service() -> ChargesService:
    """Fixture para el servicio de cargas"""
    return ChargesService()


@pytest.fixture
def content_service(charges_service) -> ContentService:
    """Fixture para el servicio de contenido"""
    return ContentService(charges_service=charges_service, census_repository=CensusRepository())


@pytest.fixture
def oracle_service() -> OracleService:
    return OracleService()


@pytest.fixture
def report_service() -> ReportService:
    return ReportService()


@pytest.fixture
def targets():
    """Símbolos U, V, W, X, Y"""
    return dict(TARGET_SYMBOLS)


@pytest.fixture
def unit_targets():
    """Sustitución (U, V, W, X, Y) = (1, 1, 1, 1, 1)"""
    return {symbol: 1 for symbol in TARGET_SYMBOLS.values()}


@pytest.fixture
def runner():
    """Fixture para invocar la CLI; restaura los handlers que instala setup_logging"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield CliRunner()
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def write_spec(tmp_path: Path):
    """Escribe un archivo de especificación temporal y retorna su ruta"""

    def _write(content: str, name: str = "spec.yaml") -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return _write
