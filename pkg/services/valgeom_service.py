"""
Serviço de Geometrias de Valorações
Valorações vizinhas, operação estrela, geometria de valorações e suas verificações
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from core.exceptions import ClassificationError, HexValError, NotNeighboringError
from core.geometry import Geometry, build, enumerate_grids, grids_per_point
from services.valuation_service import Valuation, ValuationClassification

logger = logging.getLogger(__name__)

EQUAL = 'equal'

Neighboring = Union[int, str, None]


def _intervalo_epsilon(d_min, d_max):
    """Valores de ε em {-1, 0, 1} com |d + ε| <= 1 para d em [d_min, d_max]"""
    return np.maximum(-1, -1 - d_min), np.minimum(1, 1 - d_max)


@dataclass(frozen=True)
class ValuationGeometry:
    """
    Geometria cujos pontos são valorações e cujas retas são triplas fechadas pela estrela

    Os pontos são indexados pela posição na lista ordenada de valorações.
    """

    host: Geometry = field(repr=False)
    vpoints: Tuple[Valuation, ...] = field(repr=False)
    vlines: Tuple[Tuple[int, int, int], ...] = field(repr=False)
    point_types: Tuple[str, ...] = field(default=(), repr=False)
    neighbor_pairs: int = 0

    @cached_property
    def geometry(self) -> Geometry:
        """Os pontos e retas como Geometry (valida o espaço linear parcial)"""
        return build(len(self.vpoints), self.vlines, f"V({self.host.name})")

    @cached_property
    def line_types(self) -> Tuple[str, ...]:
        if not self.point_types:
            return ()
        return tuple(''.join(sorted(self.point_types[p] for p in linha)) for linha in self.vlines)

    @property
    def num_points(self) -> int:
        return len(self.vpoints)

    @property
    def num_lines(self) -> int:
        return len(self.vlines)

    def __repr__(self) -> str:
        return f"ValuationGeometry({self.host.name}: {self.num_points} pontos, {self.num_lines} retas)"


@dataclass(frozen=True)
class LineTypeTable:
    """Retas de cada tipo por ponto de cada tipo, constantes dentro de cada tipo de ponto"""

    point_types: Tuple[str, ...]
    rows: Tuple[Tuple[str, Dict[str, int]], ...]

    def as_dict(self) -> Dict[str, Dict[str, int]]:
        return {tipo: dict(celulas) for tipo, celulas in self.rows}

    def count(self, line_type: str, point_type: str) -> int:
        return self.as_dict().get(line_type, {}).get(point_type, 0)


@dataclass(frozen=True)
class Lemma31Report:
    a: bool
    b: bool
    c: bool
    grids16: bool
    triangle_free: bool
    grid_count: int = 0
    witnesses: Dict[str, tuple] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return self.a and self.b and self.c and self.grids16 and self.triangle_free

    def as_dict(self) -> Dict[str, bool]:
        return {'a': self.a, 'b': self.b, 'c': self.c,
                'grids16': self.grids16, 'triangle_free': self.triangle_free}


class ValuationGeometryService:
    """
    Serviço de geometrias de valorações
    Métodos: are_neighboring, star, build_valuation_geometry, line_type_table,
    extract_subgeometry, check_lemma_3_1
    """

    @staticmethod
    def are_neighboring(f1: Valuation, f2: Valuation) -> Neighboring:
        """
        ε em {-1, 0, 1} com |f1(x) - f2(x) + ε| <= 1 para todo x

        Returns:
            ε, EQUAL se f1 = f2 (os três valores servem) ou None

        Raises:
            HexValError: valorações distintas com mais de um ε
        """
        if f1.values == f2.values:
            return EQUAL
        d = np.array(f1.values, dtype=np.int64) - np.array(f2.values, dtype=np.int64)
        baixo, alto = _intervalo_epsilon(int(d.min()), int(d.max()))
        if baixo > alto:
            return None
        if baixo != alto:
            raise HexValError("Valorações distintas com mais de um ε")
        return int(baixo)

    @staticmethod
    def star(f1: Valuation, f2: Valuation) -> Valuation:
        """
        f1 ∗ f2: f3'(x) = f1(x) - 1 onde f1(x) = f2(x) - ε, senão
        max(f1(x), f2(x) - ε); o resultado é f3' menos o seu mínimo

        Raises:
            NotNeighboringError: f1 e f2 não vizinhas
        """
        eps = ValuationGeometryService.are_neighboring(f1, f2)
        if eps == EQUAL:
            return f1
        if eps is None:
            raise NotNeighboringError("Estrela de valorações não vizinhas")
        linha = []
        for a, b in zip(f1.values, f2.values):
            b = b - eps
            linha.append(a - 1 if a == b else max(a, b))
        m = min(linha)
        return Valuation(f1.host, tuple(v - m for v in linha))

    @staticmethod
    def build_valuation_geometry(g: Geometry, valuations: Sequence[Valuation],
                                 classification: Optional[ValuationClassification] = None
                                 ) -> ValuationGeometry:
        """
        Geometria de valorações

        Para cada par de valorações distintas e vizinhas cuja estrela está
        na lista, a tripla vira uma reta.

        Args:
            g: Geometria hospedeira
            valuations: Valorações distintas de g
            classification: Tipos para rotular pontos (opcional)
        """
        try:
            vals = sorted(valuations, key=lambda f: f.values)
            n = len(vals)
            if n == 0:
                return ValuationGeometry(g, (), (), ())

            matriz = np.array([f.values for f in vals], dtype=np.int16)
            posicao = {linha.tobytes(): i for i, linha in enumerate(matriz)}
            if len(posicao) != n:
                raise HexValError("Valorações repetidas na entrada")

            triplas = set()
            vizinhos = 0
            for i in range(n - 1):
                fi = matriz[i]
                outras = matriz[i + 1:]
                d = fi[None, :].astype(np.int64) - outras
                baixo, alto = _intervalo_epsilon(d.min(axis=1), d.max(axis=1))
                validos = np.nonzero(baixo <= alto)[0]
                if len(validos) == 0:
                    continue
                if (baixo[validos] != alto[validos]).any():
                    raise HexValError("Valorações distintas com mais de um ε")
                vizinhos += len(validos)

                eps = baixo[validos].astype(np.int16)
                g2 = outras[validos] - eps[:, None]
                f3 = np.where(fi[None, :] == g2, fi[None, :] - 1, np.maximum(fi[None, :], g2))
                f3 = (f3 - f3.min(axis=1, keepdims=True)).astype(np.int16)

                for linha, j in zip(f3, validos):
                    k = posicao.get(linha.tobytes())
                    j = i + 1 + int(j)
                    if k is not None and k != i and k != j:
                        triplas.add(tuple(sorted((i, j, k))))

            tipos = ()
            if classification is not None:
                tipos = tuple(classification.label_of(f) for f in vals)

            V = ValuationGeometry(g, tuple(vals), tuple(sorted(triplas)), tipos, vizinhos)
            logger.info(f"Geometria de valorações de {g.name or 'geometria'}: "
                        f"{V.num_points} pontos, {V.num_lines} retas")
            return V

        except Exception as e:
            logger.error(f"Erro ao construir geometria de valorações: {e}")
            raise

    @staticmethod
    def check_star_algebra(V: ValuationGeometry) -> Optional[Tuple[int, int, int]]:
        """
        Confere em cada reta {f1, f2, f3}: f1∗f2 = f2∗f1 = f3, f1∗f3 = f2, f2∗f3 = f1

        Returns:
            Primeira reta que falha, ou None
        """
        star = ValuationGeometryService.star
        for tripla in V.vlines:
            f1, f2, f3 = (V.vpoints[p] for p in tripla)
            if len({f1.values, f2.values, f3.values}) != 3:
                return tripla
            try:
                ok = (star(f1, f2) == f3 and star(f2, f1) == f3
                      and star(f1, f3) == f2 and star(f2, f3) == f1)
            except NotNeighboringError:
                ok = False
            if not ok:
                return tripla
        return None

    @staticmethod
    def line_type_order(V: ValuationGeometry, point_order: Sequence[str]) -> List[str]:
        posicao = {t: i for i, t in enumerate(point_order)}
        tipos = set(V.line_types)

        def chave(tipo_reta: str):
            return tuple(sorted(posicao[t] for t in _partes_do_tipo(tipo_reta, point_order)))

        return sorted(tipos, key=chave)

    @staticmethod
    def line_type_table(V: ValuationGeometry, point_order: Optional[Sequence[str]] = None) -> LineTypeTable:
        """
        Número de retas de cada tipo por ponto de cada tipo

        Raises:
            ClassificationError: contagem não constante num tipo de ponto
        """
        if not V.point_types:
            raise ClassificationError("Geometria de valorações sem tipos de pontos")
        ordem_pontos = list(point_order) if point_order else sorted(set(V.point_types))

        por_ponto: List[Counter] = [Counter() for _ in range(V.num_points)]
        for linha, tipo in zip(V.vlines, V.line_types):
            for p in linha:
                por_ponto[p][tipo] += 1

        contagem_por_tipo: Dict[str, Counter] = {}
        for p, tipo_ponto in enumerate(V.point_types):
            anterior = contagem_por_tipo.setdefault(tipo_ponto, por_ponto[p])
            if anterior != por_ponto[p]:
                raise ClassificationError(
                    f"Contagem de retas não constante nos pontos do tipo {tipo_ponto} (ponto {p})"
                )

        linhas = []
        for tipo_reta in ValuationGeometryService.line_type_order(V, ordem_pontos):
            celulas = {
                tipo_ponto: contagem_por_tipo[tipo_ponto][tipo_reta]
                for tipo_ponto in ordem_pontos
                if tipo_ponto in contagem_por_tipo and contagem_por_tipo[tipo_ponto][tipo_reta]
            }
            linhas.append((tipo_reta, celulas))
        return LineTypeTable(tuple(ordem_pontos), tuple(linhas))

    @staticmethod
    def double_counting(V: ValuationGeometry, table: LineTypeTable) -> Dict[str, int]:
        """
        Número de retas de cada tipo por contagem dupla

        Para cada tipo de ponto X com multiplicidade m no tipo de reta:
        #X * (retas por ponto) / m, igual para todo X e ao total observado.

        Raises:
            ClassificationError: contagens discordantes
        """
        tamanhos = Counter(V.point_types)
        observadas = Counter(V.line_types)
        resultado = {}
        for tipo_reta, celulas in table.rows:
            partes = Counter(_partes_do_tipo(tipo_reta, table.point_types))
            estimativas = {tamanhos[x] * celulas.get(x, 0) / m for x, m in partes.items()}
            if len(estimativas) != 1 or estimativas.pop() != observadas[tipo_reta]:
                raise ClassificationError(f"Contagem dupla falha para retas {tipo_reta}")
            resultado[tipo_reta] = observadas[tipo_reta]
        return resultado

    @staticmethod
    def restrict(V: ValuationGeometry, point_types: Iterable[str],
                 line_types: Iterable[str]) -> ValuationGeometry:
        """Subgeometria com os pontos e retas dos tipos dados, reindexada"""
        tipos_ponto = set(point_types)
        tipos_reta = set(line_types)
        escolhidos = [p for p, t in enumerate(V.point_types) if t in tipos_ponto]
        novo = {p: i for i, p in enumerate(escolhidos)}
        retas = [
            tuple(novo[p] for p in linha)
            for linha, tipo in zip(V.vlines, V.line_types)
            if tipo in tipos_reta and all(p in novo for p in linha)
        ]
        return ValuationGeometry(
            V.host,
            tuple(V.vpoints[p] for p in escolhidos),
            tuple(sorted(retas)),
            tuple(V.point_types[p] for p in escolhidos),
        )

    @staticmethod
    def extract_subgeometry(V: ValuationGeometry, point_types: Iterable[str],
                            line_types: Iterable[str]) -> Geometry:
        return ValuationGeometryService.restrict(V, point_types, line_types).geometry

    # Verificações da subgeometria de pontos C e retas CCC

    @staticmethod
    def _zero(f: Valuation) -> int:
        zeros = f.zero_set
        if len(zeros) != 1:
            raise ClassificationError(f"Valoração com {len(zeros)} zeros, esperado 1")
        return zeros[0]

    @staticmethod
    def check_connected(Vprime: ValuationGeometry) -> bool:
        return Vprime.num_points > 0 and nx.is_connected(Vprime.geometry.collinearity_graph)

    @staticmethod
    def check_collinear_zero_distance(Vprime: ValuationGeometry, host: Geometry):
        """Zeros de pontos colineares a distância 3 no hospedeiro; (ok, testemunha)"""
        zero = ValuationGeometryService._zero
        for linha in Vprime.vlines:
            for p, q in combinations(linha, 2):
                if host.distance(zero(Vprime.vpoints[p]), zero(Vprime.vpoints[q])) != 3:
                    return False, (p, q)
        return True, None

    @staticmethod
    def check_grid_zero_distance(Vprime: ValuationGeometry, host: Geometry, grids=None):
        """Em cada subgrade, zeros de pares não colineares a distância 3; (ok, testemunha)"""
        zero = ValuationGeometryService._zero
        if grids is None:
            grids = enumerate_grids(Vprime.geometry)
        for grade in grids:
            celulas = [(i, j) for i in range(3) for j in range(3)]
            for (i, j), (k, l) in combinations(celulas, 2):
                if i == k or j == l:
                    continue
                p, q = grade.cells[i][j], grade.cells[k][l]
                if host.distance(zero(Vprime.vpoints[p]), zero(Vprime.vpoints[q])) != 3:
                    return False, (p, q)
        return True, None

    @staticmethod
    def check_grids_per_point(Vprime: ValuationGeometry, expected: int = 16, grids=None):
        if grids is None:
            grids = enumerate_grids(Vprime.geometry)
        contagem = grids_per_point(Vprime.geometry, grids)
        for p in range(Vprime.num_points):
            if contagem[p] != expected:
                return False, (p, contagem[p])
        return True, None

    @staticmethod
    def check_triangle_free(Vprime: ValuationGeometry) -> bool:
        """Sem triângulos fora das retas: cada reta dá exatamente um triângulo no grafo"""
        triangulos = sum(nx.triangles(Vprime.geometry.collinearity_graph).values()) // 3
        return triangulos == Vprime.num_lines

    @staticmethod
    def check_lemma_3_1(Vprime: ValuationGeometry, host: Geometry) -> Lemma31Report:
        """
        Verificações da subgeometria de pontos C e retas CCC

        a: conexa; b: zeros de pontos colineares a distância 3;
        c: zeros de pares não colineares de cada subgrade a distância 3;
        grids16: 16 subgrades por ponto; triangle_free: sem triângulos.
        """
        servico = ValuationGeometryService
        grades = enumerate_grids(Vprime.geometry)
        a = servico.check_connected(Vprime)
        b, tb = servico.check_collinear_zero_distance(Vprime, host)
        c, tc = servico.check_grid_zero_distance(Vprime, host, grades)
        g16, tg = servico.check_grids_per_point(Vprime, 16, grades)
        tf = servico.check_triangle_free(Vprime)

        testemunhas = {k: v for k, v in (('b', tb), ('c', tc), ('grids16', tg)) if v is not None}
        relatorio = Lemma31Report(a, b, c, g16, tf, len(grades), testemunhas)
        if relatorio.all_passed:
            logger.info(f"✅ Verificações de V' aprovadas ({len(grades)} subgrades)")
        else:
            logger.warning(f"❌ Verificações de V' falharam: {relatorio.as_dict()} {testemunhas}")
        return relatorio


def _partes_do_tipo(tipo_reta: str, point_order: Sequence[str]) -> List[str]:
    """Separa 'B1B3C' em ['B1', 'B3', 'C'] usando os rótulos conhecidos"""
    rotulos = sorted(point_order, key=len, reverse=True)
    partes = []
    resto = tipo_reta
    while resto:
        for r in rotulos:
            if resto.startswith(r):
                partes.append(r)
                resto = resto[len(r):]
                break
        else:
            raise ClassificationError(f"Tipo de reta '{tipo_reta}' com rótulo desconhecido")
    return partes


# Instância global do serviço
valgeom_service = ValuationGeometryService()
