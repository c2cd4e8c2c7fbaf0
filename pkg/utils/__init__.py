"""
Módulo de utilitários
Funções auxiliares: formato de arquivo, PDF, logs
"""

from .validators import Validators, validators
from .logger import setup_logger
from .pdf_generator import ReportPDFGenerator, pdf_generator

__all__ = [
    'Validators', 'validators',
    'setup_logger',
    'ReportPDFGenerator', 'pdf_generator'
]
