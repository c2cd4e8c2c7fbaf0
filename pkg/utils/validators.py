"""
Utilitários de validação
Formato texto de geometrias e formatação de valores para os relatórios
"""

import re
from pathlib import Path
from typing import Iterable, Optional, Union

from core.exceptions import GeometryFormatError
from core.geometry import Geometry, build

_CABECALHO = re.compile(r'^points (\d+)$')
_RETA = re.compile(r'^\d+( \d+)+$')


class Validators:
    """
    Classe com métodos estáticos para validação e formatação
    """

    @staticmethod
    def validar_cabecalho(linha: str) -> Optional[int]:
        """
        Valida a primeira linha do arquivo de geometria

        Args:
            linha: Texto no formato 'points N'

        Returns:
            N, ou None se inválida
        """
        m = _CABECALHO.match(linha.strip())
        return int(m.group(1)) if m else None

    @staticmethod
    def validar_reta(linha: str) -> bool:
        """Índices separados por um espaço, ao menos dois"""
        return bool(_RETA.match(linha.strip()))

    @staticmethod
    def parse_geometry(texto: str, name: str = '') -> Geometry:
        """
        Lê uma geometria no formato texto

        Linha 1: 'points N'; depois uma reta por linha, índices base 0.

        Raises:
            GeometryFormatError: cabeçalho ou reta malformados
            GeometryError: reta inválida para a geometria
        """
        linhas = texto.split('\n')
        if linhas and linhas[-1] == '':
            linhas.pop()
        if not linhas:
            raise GeometryFormatError("Arquivo vazio", 1)

        n = Validators.validar_cabecalho(linhas[0])
        if n is None:
            raise GeometryFormatError(f"Cabeçalho inválido: '{linhas[0]}'", 1)

        retas = []
        for numero, linha in enumerate(linhas[1:], start=2):
            if not linha.strip():
                continue
            if not Validators.validar_reta(linha):
                raise GeometryFormatError(f"Reta malformada: '{linha}'", numero)
            retas.append([int(p) for p in linha.split()])
        return build(n, retas, name)

    @staticmethod
    def format_geometry(g: Geometry) -> str:
        """Forma canônica: cabeçalho e retas ordenadas, terminada em LF"""
        partes = [f"points {g.num_points}"]
        partes += [' '.join(map(str, linha)) for linha in g.lines]
        return '\n'.join(partes) + '\n'

    @staticmethod
    def read_geometry(path: Union[str, Path], name: Optional[str] = None) -> Geometry:
        caminho = Path(path)
        texto = caminho.read_text(encoding='utf-8')
        return Validators.parse_geometry(texto, name if name is not None else caminho.stem)

    @staticmethod
    def write_geometry(g: Geometry, path: Union[str, Path]) -> Path:
        caminho = Path(path)
        with open(caminho, 'w', encoding='utf-8', newline='\n') as f:
            f.write(Validators.format_geometry(g))
        return caminho

    @staticmethod
    def formatar_distribuicao(distribuicao: Iterable[int]) -> str:
        """
        Formata a distribuição de valores

        Ex: (1, 6, 24, 32) -> '[1, 6, 24, 32]'
        """
        return '[' + ', '.join(str(v) for v in distribuicao) + ']'


# Instância global
validators = Validators()
