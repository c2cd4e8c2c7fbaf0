"""
Testes de configuração, logs e geração de PDF
"""

import pytest

from core.settings import get_settings, settings
from services.report_service import Report
from utils.logger import setup_logger
from utils.pdf_generator import pdf_generator


@pytest.fixture
def configuracao_restaurada():
    anterior = dict(vars(settings))
    yield settings
    vars(settings).update(anterior)


# ====================================================================
# TESTE 1: CONFIGURAÇÕES
# ====================================================================

def test_singleton():
    assert get_settings() is settings


def test_reload_le_o_ambiente(configuracao_restaurada, monkeypatch):
    monkeypatch.setenv('HEXVAL_MAX_SPAN_DIM', '7')
    monkeypatch.setenv('HEXVAL_H2_SEARCH_FALLBACK', 'sim')
    monkeypatch.setenv('HEXVAL_LOG_LEVEL', 'debug')
    configuracao_restaurada.reload()
    assert settings.max_span_dim == 7
    assert settings.h2_search_fallback is True
    assert settings.log_level == 'DEBUG'


def test_valores_padrao(configuracao_restaurada, monkeypatch):
    for nome in ('HEXVAL_MAX_SPAN_DIM', 'HEXVAL_H2_SEARCH_FALLBACK', 'HEXVAL_REPORT_TITLE'):
        monkeypatch.delenv(nome, raising=False)
    configuracao_restaurada.reload()
    assert settings.max_span_dim == 20
    assert settings.h2_search_fallback is False
    assert settings.report_title


# ====================================================================
# TESTE 2: LOGS
# ====================================================================

def test_logger_sem_handlers_duplicados(tmp_path):
    arquivo = tmp_path / 'teste.log'
    primeiro = setup_logger('hexval.teste', str(arquivo))
    segundo = setup_logger('hexval.teste', str(arquivo))
    assert primeiro is segundo
    assert len(segundo.handlers) == 2

    segundo.info("✅ mensagem de teste")
    for handler in segundo.handlers:
        handler.flush()
    assert 'mensagem de teste' in arquivo.read_text(encoding='utf-8')

    for handler in list(segundo.handlers):
        handler.close()
        segundo.removeHandler(handler)


# ====================================================================
# TESTE 3: PDF
# ====================================================================

def test_pdf_de_um_relatorio(tmp_path):
    relatorio = Report(
        geometry='H(2,1)',
        aut_order=336,
        tables={'valuations': [{'type': 'A', 'count': 21, 'max_value': 3, 'zero_count': 1,
                                'hyperplane_size': 13, 'distribution': [1, 4, 8, 8]}]},
        checks={'generalized_hexagon': True},
        diffs=['valuations[A].count: obtido 20, esperado 21'],
    )
    destino = pdf_generator.gerar_pdf_relatorio(relatorio, str(tmp_path / 'um.pdf'))
    with open(destino, 'rb') as f:
        assert f.read(4) == b'%PDF'
