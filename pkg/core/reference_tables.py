"""
Valores de referência das tabelas de valorações e de tipos de retas
Usados na comparação célula a célula dos relatórios e nos rótulos de tipos
"""

from typing import Dict, Optional, Sequence, Tuple

# Linha de tabela de valorações: (tipo, quantidade, M_f, |O_f|, |H_f|, distribuição)
ValuationRow = Tuple[str, int, int, int, int, Tuple[int, ...]]

VALUATIONS_H2_DUAL: Tuple[ValuationRow, ...] = (
    ('A', 63, 3, 1, 31, (1, 6, 24, 32)),
    ('B', 252, 3, 1, 47, (1, 14, 32, 16)),
    ('C', 252, 2, 1, 23, (1, 22, 40, 0)),
    ('D', 1008, 2, 5, 31, (5, 26, 32, 0)),
)

VALUATIONS_H2: Tuple[ValuationRow, ...] = (
    ('A', 63, 3, 1, 31, (1, 6, 24, 32)),
    ('B1', 126, 2, 1, 23, (1, 22, 40, 0)),
    ('B2', 252, 2, 3, 27, (3, 24, 36, 0)),
    ('B3', 504, 2, 4, 29, (4, 25, 34, 0)),
    ('B4', 72, 2, 7, 35, (7, 28, 28, 0)),
    ('B5', 378, 2, 9, 39, (9, 30, 24, 0)),
    ('C', 36, 1, 21, 21, (21, 42, 0, 0)),
)

# Tipo de reta -> {tipo de ponto: número de retas desse tipo por ponto}
LINES_H2_DUAL: Dict[str, Dict[str, int]] = {
    'AAA': {'A': 3},
    'ABB': {'A': 2, 'B': 1},
    'ACC': {'A': 2, 'C': 1},
    'ADD': {'A': 24, 'D': 3},
    'BBB': {'B': 4},
    'BCC': {'B': 1, 'C': 2},
    'BDD': {'B': 4, 'D': 2},
    'CCC': {'C': 8},
    'CCD': {'C': 40, 'D': 5},
    'CDD': {'C': 4, 'D': 2},
    'DDD': {'D': 10},
}

LINES_H2: Dict[str, Dict[str, int]] = {
    'AAA': {'A': 3},
    'AB1B1': {'A': 1, 'B1': 1},
    'AB2B2': {'A': 6, 'B2': 3},
    'AB3B3': {'A': 16, 'B3': 4},
    'AB4B4': {'A': 4, 'B4': 7},
    'AB5B5': {'A': 3, 'B5': 1},
    'B1B1B1': {'B1': 3},
    'B1B1B2': {'B1': 16, 'B2': 4},
    'B1B1B5': {'B1': 6, 'B5': 1},
    'B1B2B4': {'B1': 4, 'B2': 2, 'B4': 7},
    'B1B3B3': {'B1': 12, 'B3': 6},
    'B1B3C': {'B1': 12, 'B3': 3, 'C': 42},
    'B2B2B2': {'B2': 12},
    'B2B2B5': {'B2': 6, 'B5': 2},
    'B2B3B3': {'B2': 10, 'B3': 10},
    'B2CC': {'B2': 1, 'C': 14},
    'B3B3B5': {'B3': 3, 'B5': 2},
    'B4B4C': {'B4': 1, 'C': 1},
    'B5B5B5': {'B5': 1},
    'B5CC': {'B5': 1, 'C': 21},
}

# Classes de hiperplanos: (total de classes, classes com valorações)
HYPERPLANE_CLASSES = {
    'H(2)': (25, 7),
    'H^D(2)': (14, 4),
}

AUT_ORDER = 12096

# Número de ovoides
OVOIDS = {
    'H(2)': 36,
    'H^D(2)': 0,
}

# Subgeometria de pontos tipo C e retas CCC do dual
VPRIME_POINTS = 252
VPRIME_LINES = 672
VPRIME_GRIDS_PER_POINT = 16

REFERENCE_BY_GEOMETRY = {
    'H(2)': (VALUATIONS_H2, LINES_H2),
    'H^D(2)': (VALUATIONS_H2_DUAL, LINES_H2_DUAL),
}


def labels_for(distributions: Sequence[Tuple[int, ...]]) -> Optional[Dict[Tuple[int, ...], str]]:
    """
    Rótulos de referência se o conjunto de distribuições coincide com uma tabela

    Returns:
        distribuição -> rótulo, ou None se nenhuma tabela coincide
    """
    procuradas = set(distributions)
    for tabela in (VALUATIONS_H2_DUAL, VALUATIONS_H2):
        if {linha[5] for linha in tabela} == procuradas:
            return {linha[5]: linha[0] for linha in tabela}
    return None
