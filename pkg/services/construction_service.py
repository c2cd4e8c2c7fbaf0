"""
Serviço de Construções
Modelos explícitos de H(2), do seu dual e do hexágono de ordem (2,1)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from core.exceptions import ConstructionError, HexValError
from core.geometry import (
    Geometry,
    build,
    check_generalized_hexagon,
    distance_distribution,
    double,
    dual,
    fano_plane,
    find_ovoids,
    order_of,
)
from core.settings import settings

logger = logging.getLogger(__name__)

DIMENSAO = 7
DISTRIBUICAO_H2 = [1, 6, 24, 32]

# Identidades de Grassmann que selecionam as retas do hexágono entre as
# retas singulares da quádrica (sinais irrelevantes sobre GF(2))
IDENTIDADES_GRASSMANN = (
    ((1, 2), (3, 4)),
    ((5, 4), (3, 2)),
    ((2, 0), (3, 5)),
    ((6, 5), (3, 0)),
    ((0, 1), (3, 6)),
    ((4, 6), (1, 3)),
)

GEOMETRIAS_CONHECIDAS = ('h2', 'h2dual', 'h21')


@dataclass(frozen=True)
class QuadricModel:
    """
    Quádrica parabólica x3² + x0x4 + x1x5 + x2x6 = 0 em GF(2)^7

    Vetores guardados como inteiros: o bit i é a coordenada x_i. O ponto
    de índice k é o k-ésimo vetor singular não nulo em ordem crescente.
    """

    point_coords: Tuple[int, ...]

    @classmethod
    def create(cls) -> 'QuadricModel':
        singulares = tuple(x for x in range(1, 1 << DIMENSAO) if cls.quadric_form(x) == 0)
        return cls(singulares)

    @staticmethod
    def coord(x: int, i: int) -> int:
        return (x >> i) & 1

    @staticmethod
    def quadric_form(x: int) -> int:
        c = QuadricModel.coord
        return (c(x, 3) + c(x, 0) * c(x, 4) + c(x, 1) * c(x, 5) + c(x, 2) * c(x, 6)) & 1

    @staticmethod
    def polar_form(x: int, y: int) -> int:
        """Forma bilinear associada: Q(x+y) - Q(x) - Q(y)"""
        c = QuadricModel.coord
        total = 0
        for i, j in ((0, 4), (1, 5), (2, 6)):
            total += c(x, i) * c(y, j) + c(x, j) * c(y, i)
        return total & 1

    @staticmethod
    def grassmann(x: int, y: int, i: int, j: int) -> int:
        c = QuadricModel.coord
        return (c(x, i) * c(y, j) + c(x, j) * c(y, i)) & 1

    @cached_property
    def index_of(self) -> Dict[int, int]:
        return {x: k for k, x in enumerate(self.point_coords)}

    @property
    def num_points(self) -> int:
        return len(self.point_coords)

    def singular_lines(self) -> List[Tuple[int, int, int]]:
        """As retas totalmente singulares {x, y, x+y}, como índices de pontos"""
        retas = set()
        for x, y in combinations(self.point_coords, 2):
            if self.polar_form(x, y) == 0:
                retas.add(tuple(sorted(self.index_of[v] for v in (x, y, x ^ y))))
        return sorted(retas)

    def is_hexagon_line(self, line: Sequence[int]) -> bool:
        x, y = (self.point_coords[k] for k in line[:2])
        return all(
            self.grassmann(x, y, *a) == self.grassmann(x, y, *b)
            for a, b in IDENTIDADES_GRASSMANN
        )


def _validar_hexagono(g: Geometry, distribuicao: Optional[List[int]] = None) -> Optional[str]:
    """Motivo da falha, ou None se g é hexágono generalizado de ordem (2,2)"""
    relatorio = check_generalized_hexagon(g)
    if not relatorio:
        return f"axiomas de hexágono falham: {relatorio.reason}"
    ordem = order_of(g)
    if ordem.as_tuple() != (2, 2):
        return f"ordem {ordem}, esperada (2,2)"
    if distribuicao is not None:
        for p in range(g.num_points):
            obtida = distance_distribution(g, p)
            if obtida != distribuicao:
                return f"ponto {p} com distribuição de distâncias {obtida}"
    return None


def _distancia_ate(adjacencia: List[Set[int]], origem: int, alvos: Set[int], limite: int) -> bool:
    """Verdadeiro se algum alvo está a distância <= limite de origem"""
    fronteira = {origem}
    vistos = {origem}
    for _ in range(limite):
        proxima = set()
        for x in fronteira:
            proxima |= adjacencia[x]
        proxima -= vistos
        if proxima & alvos:
            return True
        vistos |= proxima
        fronteira = proxima
        if not fronteira:
            break
    return False


def _search_hexagon_lines(num_points: int, candidates: Sequence[Tuple[int, ...]],
                          lines_per_point: int = 3) -> Optional[List[Tuple[int, ...]]]:
    """
    Busca com retrocesso de um subconjunto das retas candidatas com
    `lines_per_point` retas por ponto e sem k-ágonos para k < 6

    Uma reta nova só entra se seus pontos estão a distância >= 5 entre si
    na geometria parcial já escolhida.
    """
    por_ponto: List[List[Tuple[int, ...]]] = [[] for _ in range(num_points)]
    for reta in sorted(candidates):
        for p in reta:
            por_ponto[p].append(reta)

    adjacencia: List[Set[int]] = [set() for _ in range(num_points)]
    grau = [0] * num_points
    escolhidas: List[Tuple[int, ...]] = []
    usadas: Set[Tuple[int, ...]] = set()

    def compativel(reta) -> bool:
        if any(grau[p] >= lines_per_point for p in reta):
            return False
        for i, a in enumerate(reta):
            if _distancia_ate(adjacencia, a, set(reta[i + 1:]), 4):
                return False
        return True

    def adicionar(reta):
        for a, b in combinations(reta, 2):
            adjacencia[a].add(b)
            adjacencia[b].add(a)
        for p in reta:
            grau[p] += 1
        escolhidas.append(reta)
        usadas.add(reta)

    def remover(reta):
        for a, b in combinations(reta, 2):
            adjacencia[a].discard(b)
            adjacencia[b].discard(a)
        for p in reta:
            grau[p] -= 1
        escolhidas.pop()
        usadas.discard(reta)

    def buscar() -> bool:
        pendentes = [p for p in range(num_points) if grau[p] < lines_per_point]
        if not pendentes:
            return True
        opcoes_por_ponto = {
            p: [r for r in por_ponto[p] if r not in usadas and compativel(r)]
            for p in pendentes
        }
        p = min(pendentes, key=lambda q: (len(opcoes_por_ponto[q]) - (lines_per_point - grau[q]), q))
        if len(opcoes_por_ponto[p]) < lines_per_point - grau[p]:
            return False
        for reta in opcoes_por_ponto[p]:
            adicionar(reta)
            if buscar():
                return True
            remover(reta)
        return False

    if buscar():
        return sorted(escolhidas)
    return None


class ConstructionService:
    """
    Serviço de construção dos hexágonos
    Métodos: build_h2, build_h2_dual, build_hexagon_2_1, by_name
    """

    @staticmethod
    def quadric_model() -> QuadricModel:
        modelo = QuadricModel.create()
        if modelo.num_points != 63:
            raise ConstructionError(f"Quádrica com {modelo.num_points} pontos, esperados 63")
        return modelo

    @staticmethod
    def build_h2(fallback: Optional[bool] = None) -> Geometry:
        """
        Constrói o hexágono de Cayley H(2) dentro da quádrica parabólica

        As retas são as retas singulares cujas coordenadas de Grassmann
        satisfazem as identidades clássicas; o resultado só é aceito após
        passar pelos axiomas de hexágono.

        Args:
            fallback: usa a busca com retrocesso se as identidades falharem
                (padrão: HEXVAL_H2_SEARCH_FALLBACK)

        Raises:
            ConstructionError: modelo não é um hexágono de ordem 2
        """
        if fallback is None:
            fallback = settings.h2_search_fallback

        modelo = ConstructionService.quadric_model()
        singulares = modelo.singular_lines()
        retas = [reta for reta in singulares if modelo.is_hexagon_line(reta)]
        logger.debug(f"{len(singulares)} retas singulares, {len(retas)} satisfazem as identidades")

        g = None
        motivo = None
        try:
            g = build(modelo.num_points, retas, 'H(2)')
            motivo = _validar_hexagono(g, DISTRIBUICAO_H2)
        except HexValError as e:
            motivo = str(e)

        if motivo is None:
            logger.info("✅ H(2) construído: 63 pontos, 63 retas, ordem (2,2)")
            return g

        logger.error(f"❌ Identidades de Grassmann não produziram H(2): {motivo}")
        if not fallback:
            raise ConstructionError(f"Modelo de H(2) inválido: {motivo}")

        logger.warning("Usando busca com retrocesso entre as retas singulares")
        return ConstructionService.search_h2(singulares)

    @staticmethod
    def search_h2(candidates: Sequence[Tuple[int, ...]], num_points: int = 63) -> Geometry:
        """
        Busca um hexágono de ordem 2 entre retas candidatas

        Raises:
            ConstructionError: nenhum subconjunto válido
        """
        retas = _search_hexagon_lines(num_points, candidates)
        if retas is None:
            raise ConstructionError("Busca com retrocesso não encontrou um hexágono")
        g = build(num_points, retas, 'H(2)')
        motivo = _validar_hexagono(g, DISTRIBUICAO_H2)
        if motivo is not None:
            raise ConstructionError(f"Resultado da busca inválido: {motivo}")
        logger.info(f"✅ H(2) obtido por busca ({len(retas)} retas)")
        return g

    @staticmethod
    def build_h2_dual(h2: Optional[Geometry] = None) -> Geometry:
        """
        Dual ponto-reta de H(2)

        Raises:
            ConstructionError: dual não é hexágono de ordem 2 ou possui ovoides
        """
        h2 = h2 if h2 is not None else ConstructionService.build_h2()
        g = dual(h2, 'H^D(2)')
        motivo = _validar_hexagono(g, DISTRIBUICAO_H2)
        if motivo is None and find_ovoids(g):
            motivo = "o dual possui ovoides"
        if motivo is not None:
            logger.error(f"❌ H^D(2) inválido: {motivo}")
            raise ConstructionError(f"Modelo de H^D(2) inválido: {motivo}")
        logger.info("✅ H^D(2) construído: 63 pontos, 63 retas, sem ovoides")
        return g

    @staticmethod
    def build_hexagon_2_1() -> Geometry:
        """
        Hexágono de ordem (2,1): dual do duplo do plano de Fano

        Raises:
            ConstructionError: resultado não passa nos axiomas
        """
        g = dual(double(fano_plane()), 'H(2,1)')
        relatorio = check_generalized_hexagon(g)
        ordem = order_of(g)
        if not relatorio or ordem.as_tuple() != (2, 1):
            raise ConstructionError(f"Hexágono (2,1) inválido: {relatorio.reason or ordem}")
        logger.info("✅ Hexágono de ordem (2,1) construído: 21 pontos, 14 retas")
        return g

    @staticmethod
    def by_name(name: str) -> Geometry:
        """
        Geometria embutida pelo nome: h2, h2dual ou h21

        Raises:
            ValueError: nome desconhecido
        """
        nome = name.strip().lower()
        if nome == 'h2':
            return ConstructionService.build_h2()
        if nome == 'h2dual':
            return ConstructionService.build_h2_dual()
        if nome == 'h21':
            return ConstructionService.build_hexagon_2_1()
        raise HexValError(
            f"Geometria desconhecida: '{name}' (opções: {', '.join(GEOMETRIAS_CONHECIDAS)})"
        )


# Instância global do serviço
construction_service = ConstructionService()
