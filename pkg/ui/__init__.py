"""
Módulo de interface
Linha de comando e formatação dos relatórios
"""

from .cli import criar_parser, run
from .report_formatter import format_csv, format_json, format_text, render

__all__ = [
    'criar_parser', 'run',
    'format_csv', 'format_json', 'format_text', 'render'
]
