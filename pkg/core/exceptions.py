"""
Exceções da aplicação
Todas derivam de ValueError, como os erros de validação dos serviços
"""

from typing import Optional, Sequence


class HexValError(ValueError):
    """Erro base da aplicação"""


class GeometryError(HexValError):
    """Dados de geometria inválidos"""


class PartialLinearSpaceError(GeometryError):
    """
    Dois pontos distintos em mais de uma reta

    Attributes:
        pair: par de pontos ofensivo
        lines: as duas retas que contêm o par
    """

    def __init__(self, pair: tuple, lines: Sequence[tuple]):
        self.pair = tuple(pair)
        self.lines = tuple(tuple(line) for line in lines)
        super().__init__(
            f"Pontos {self.pair[0]} e {self.pair[1]} estão em duas retas: "
            f"{list(self.lines[0])} e {list(self.lines[1])}"
        )


class DisconnectedPointsError(GeometryError):
    """Consulta de distância entre pontos em componentes distintas"""

    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"Pontos {x} e {y} não estão conectados")


class EmbeddingError(GeometryError):
    """
    Subgeometria não isometricamente mergulhada

    Attributes:
        pair: par de pontos onde as distâncias diferem
        sub_distance / ambient_distance: as duas distâncias
    """

    def __init__(self, pair: tuple, sub_distance: Optional[int], ambient_distance: Optional[int],
                 message: Optional[str] = None):
        self.pair = tuple(pair)
        self.sub_distance = sub_distance
        self.ambient_distance = ambient_distance
        super().__init__(
            message or
            f"Distâncias diferem no par {self.pair}: "
            f"subgeometria={sub_distance}, ambiente={ambient_distance}"
        )


class GeometryFormatError(GeometryError):
    """Arquivo de geometria malformado"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        prefixo = f"linha {line_number}: " if line_number is not None else ""
        super().__init__(prefixo + message)


class ConstructionError(HexValError):
    """Modelo construído não passou na validação axiomática"""


class LinearAlgebraError(HexValError):
    """Entrada inválida para a álgebra linear sobre GF(2)"""


class NotNeighboringError(HexValError):
    """Operação estrela aplicada a valorações não vizinhas"""


class ClassificationError(HexValError):
    """Classificação inconsistente (órbitas, contagens por tipo)"""
