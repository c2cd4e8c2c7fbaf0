"""
Configuração de logging para a aplicação
"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

from core.settings import settings


def setup_logger(name: str, log_file: Optional[str] = None, level=None):
    """
    Configura um logger para a aplicação

    Args:
        name: Nome do logger
        log_file: Nome do arquivo de log (opcional)
        level: Nível de log (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        Logger configurado
    """
    if level is None:
        level = getattr(logging, settings.log_level, logging.INFO)

    # Configura o logger
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Evita duplicação de handlers
    if logger.handlers:
        return logger

    # Formato do log
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # Handler para arquivo (ignorado se a pasta não puder ser criada)
    if not log_file:
        log_file = f"hexval_{datetime.now().strftime('%Y%m%d')}.log"
    try:
        log_dir = Path(settings.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError:
        pass

    # Handler para console: stderr, apenas warnings e erros
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger
