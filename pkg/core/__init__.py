"""
Módulo núcleo
Álgebra linear sobre GF(2), geometrias, permutações e configurações
"""

from .exceptions import HexValError
from .settings import Settings, settings, get_settings

__all__ = ['HexValError', 'Settings', 'settings', 'get_settings']
