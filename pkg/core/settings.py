"""
Configurações da aplicação
Lê as variáveis de ambiente (.env) uma única vez usando python-dotenv
"""

import os
import logging
from typing import Optional
from dotenv import load_dotenv

# Carrega variáveis de ambiente
load_dotenv()

logger = logging.getLogger(__name__)

_VERDADEIROS = {'1', 'true', 'yes', 'sim', 'on'}


class Settings:
    """
    Classe para centralizar as configurações
    Singleton pattern - apenas uma instância das configurações
    """

    _instance: Optional['Settings'] = None

    def __new__(cls):
        """
        Implementa o padrão Singleton
        Garante que apenas uma instância seja criada
        """
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialize()
        return cls._instance

    def _initialize(self):
        """
        Inicializa os valores com base no .env
        """
        self.log_dir = os.getenv('HEXVAL_LOG_DIR', 'logs')
        self.log_level = os.getenv('HEXVAL_LOG_LEVEL', 'INFO').upper()
        self.h2_search_fallback = (
            os.getenv('HEXVAL_H2_SEARCH_FALLBACK', 'false').strip().lower() in _VERDADEIROS
        )
        self.max_span_dim = int(os.getenv('HEXVAL_MAX_SPAN_DIM', '20'))
        self.report_title = os.getenv(
            'HEXVAL_REPORT_TITLE',
            'Valuation geometries of the generalized hexagons of order 2'
        )

        logger.debug(
            f"Configuração carregada: log_dir={self.log_dir}, "
            f"fallback={self.h2_search_fallback}, max_span_dim={self.max_span_dim}"
        )

    def reload(self):
        """
        Relê as variáveis de ambiente (usado pelos testes)
        """
        self._initialize()
        return self


# Instância global (Singleton)
settings = Settings()


def get_settings() -> Settings:
    """
    Retorna a instância global das configurações

    Returns:
        Settings: Instância única
    """
    return settings
