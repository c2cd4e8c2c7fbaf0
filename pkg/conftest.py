"""
Fixtures compartilhadas dos testes
As geometrias e os pipelines pesados são construídos uma vez por sessão
"""

import pytest

from core.geometry import grid_3x3, single_line
from core.settings import settings
from services.report_service import report_service


@pytest.fixture(scope='session', autouse=True)
def logs_temporarios(tmp_path_factory):
    """Arquivos de log dos testes fora do diretório do projeto"""
    anterior = settings.log_dir
    settings.log_dir = str(tmp_path_factory.mktemp('logs'))
    yield
    settings.log_dir = anterior


@pytest.fixture(scope='session')
def h2_pipeline():
    return report_service.pipeline('h2')


@pytest.fixture(scope='session')
def h2dual_pipeline():
    return report_service.pipeline('h2dual')


@pytest.fixture(scope='session')
def h21_pipeline():
    return report_service.pipeline('h21')


@pytest.fixture(scope='session')
def h2(h2_pipeline):
    return h2_pipeline.geometry


@pytest.fixture(scope='session')
def h2dual(h2dual_pipeline):
    return h2dual_pipeline.geometry


@pytest.fixture(scope='session')
def h21(h21_pipeline):
    return h21_pipeline.geometry


@pytest.fixture
def grid():
    return grid_3x3()


@pytest.fixture
def line():
    return single_line()
