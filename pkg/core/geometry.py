"""
Modelo de geometrias de incidência finitas
Pontos numerados 0..n-1, retas como tuplas ordenadas de pontos
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.exceptions import (
    DisconnectedPointsError,
    EmbeddingError,
    GeometryError,
    PartialLinearSpaceError,
)
from core.gf2 import BitMatrix

logger = logging.getLogger(__name__)

Line = Tuple[int, ...]

# Números possíveis de vizinhos comuns em near polygons com 3 pontos por reta
PERFIL_VIZINHOS_COMUNS = frozenset({1, 2, 3, 5})


@dataclass(frozen=True)
class OrderSpec:
    """
    Ordem (s, t) de uma geometria

    s + 1 pontos por reta, t + 1 retas por ponto.
    None indica valor misto (ou t + 1 = 1, caso de uma reta isolada).
    """

    s: Optional[int]
    t: Optional[int]

    @property
    def is_uniform(self) -> bool:
        return self.s is not None and self.t is not None

    def as_tuple(self) -> Tuple[Optional[int], Optional[int]]:
        return (self.s, self.t)

    def __str__(self) -> str:
        def fmt(v):
            return 'misto' if v is None else str(v)
        return f"({fmt(self.s)},{fmt(self.t)})"


class DistanceMatrix:
    """
    Distâncias no grafo de colinearidade

    Pares em componentes distintas guardam UNREACHABLE; consultá-los
    com `d(x, y)` levanta DisconnectedPointsError.
    """

    UNREACHABLE = -1

    def __init__(self, dist):
        matriz = np.array(dist, dtype=np.int64)
        if matriz.ndim != 2 or matriz.shape[0] != matriz.shape[1]:
            raise GeometryError("Matriz de distâncias deve ser quadrada")
        matriz.setflags(write=False)
        self._dist = matriz

    @classmethod
    def from_graph(cls, graph: nx.Graph, num_points: int) -> 'DistanceMatrix':
        """Distâncias por busca em largura a partir de cada ponto"""
        dist = np.full((num_points, num_points), cls.UNREACHABLE, dtype=np.int64)
        for origem, alcance in nx.all_pairs_shortest_path_length(graph):
            for destino, d in alcance.items():
                dist[origem, destino] = d
        return cls(dist)

    @property
    def dist(self) -> np.ndarray:
        return self._dist

    @property
    def num_points(self) -> int:
        return self._dist.shape[0]

    def __call__(self, x: int, y: int) -> int:
        valor = int(self._dist[x, y])
        if valor == self.UNREACHABLE:
            raise DisconnectedPointsError(x, y)
        return valor

    def to_set(self, x: int, points: Iterable[int]) -> int:
        """d(x, X) = menor distância de x a um ponto de X"""
        valores = self._dist[x, list(points)]
        alcancaveis = valores[valores != self.UNREACHABLE]
        if len(alcancaveis) == 0:
            raise GeometryError(f"Ponto {x} não alcança o conjunto dado")
        return int(alcancaveis.min())

    @property
    def is_connected(self) -> bool:
        return self.num_points > 0 and not (self._dist == self.UNREACHABLE).any()

    @property
    def diameter(self) -> Optional[int]:
        if not self.is_connected:
            return None
        return int(self._dist.max())


@dataclass(frozen=True)
class Geometry:
    """
    Espaço linear parcial finito

    As retas são normalizadas na construção: cada reta ordenada e a lista
    de retas em ordem lexicográfica. Estruturas derivadas (grafo de
    colinearidade, distâncias) são calculadas sob demanda e guardadas.
    """

    num_points: int
    lines: Tuple[Line, ...]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        if self.num_points < 0:
            raise GeometryError("Número de pontos não pode ser negativo")

        normalizadas = []
        for linha in self.lines:
            pontos = tuple(sorted(int(p) for p in linha))
            if len(pontos) < 2:
                raise GeometryError(f"Reta {list(pontos)} tem menos de 2 pontos")
            if len(set(pontos)) != len(pontos):
                raise GeometryError(f"Reta {list(pontos)} com pontos repetidos")
            if pontos[0] < 0 or pontos[-1] >= self.num_points:
                raise GeometryError(f"Reta {list(pontos)} fora de [0, {self.num_points})")
            normalizadas.append(pontos)
        normalizadas.sort()

        for a, b in zip(normalizadas, normalizadas[1:]):
            if a == b:
                raise GeometryError(f"Reta duplicada: {list(a)}")

        linha_do_par: Dict[Tuple[int, int], int] = {}
        for i, linha in enumerate(normalizadas):
            for par in combinations(linha, 2):
                anterior = linha_do_par.get(par)
                if anterior is not None:
                    raise PartialLinearSpaceError(par, (normalizadas[anterior], linha))
                linha_do_par[par] = i

        object.__setattr__(self, 'lines', tuple(normalizadas))
        object.__setattr__(self, '_linha_do_par', linha_do_par)

    # Incidência

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    @cached_property
    def lines_through(self) -> Tuple[Tuple[int, ...], ...]:
        """Índices das retas por cada ponto"""
        feixes: List[List[int]] = [[] for _ in range(self.num_points)]
        for i, linha in enumerate(self.lines):
            for p in linha:
                feixes[p].append(i)
        return tuple(tuple(f) for f in feixes)

    def line_through(self, x: int, y: int) -> Optional[int]:
        """Índice da reta por x e y, ou None se não colineares"""
        if x == y:
            return None
        par = (x, y) if x < y else (y, x)
        return self._linha_do_par.get(par)

    def collinear(self, x: int, y: int) -> bool:
        return x != y and self.line_through(x, y) is not None

    @cached_property
    def line_masks(self) -> Tuple[int, ...]:
        """Cada reta como máscara de bits sobre os pontos"""
        return tuple(sum(1 << p for p in linha) for linha in self.lines)

    @cached_property
    def incidence_matrix(self) -> BitMatrix:
        """Matriz de incidência sobre GF(2): linhas = retas, colunas = pontos"""
        return BitMatrix.from_rows(self.num_points, self.lines)

    # Grafo de colinearidade

    @cached_property
    def collinearity_graph(self) -> nx.Graph:
        grafo = nx.Graph()
        grafo.add_nodes_from(range(self.num_points))
        for linha in self.lines:
            grafo.add_edges_from(combinations(linha, 2))
        return grafo

    @cached_property
    def adjacency(self) -> np.ndarray:
        matriz = np.zeros((self.num_points, self.num_points), dtype=np.int64)
        for linha in self.lines:
            idx = np.array(linha)
            matriz[np.ix_(idx, idx)] = 1
        np.fill_diagonal(matriz, 0)
        matriz.setflags(write=False)
        return matriz

    @cached_property
    def distances(self) -> DistanceMatrix:
        return DistanceMatrix.from_graph(self.collinearity_graph, self.num_points)

    @property
    def diameter(self) -> Optional[int]:
        return self.distances.diameter

    def distance(self, x: int, y: int) -> int:
        return self.distances(x, y)

    def __repr__(self) -> str:
        rotulo = f"'{self.name}', " if self.name else ''
        return f"Geometry({rotulo}{self.num_points} pontos, {self.num_lines} retas)"


def build(num_points: int, lines: Iterable[Iterable[int]], name: str = '') -> Geometry:
    """
    Cria uma geometria validada

    Raises:
        PartialLinearSpaceError: dois pontos em duas retas
        GeometryError: índices fora do intervalo, retas repetidas ou degeneradas
    """
    return Geometry(num_points, tuple(tuple(linha) for linha in lines), name)


# Axiomas


@dataclass(frozen=True)
class NearPolygonReport:
    is_near_polygon: bool
    diameter: Optional[int]
    witness: Optional[Tuple[int, Line]] = None
    reason: str = ''

    def __bool__(self) -> bool:
        return self.is_near_polygon


@dataclass(frozen=True)
class HexagonReport:
    is_generalized_hexagon: bool
    diameter: Optional[int]
    witness: Optional[tuple] = None
    reason: str = ''

    def __bool__(self) -> bool:
        return self.is_generalized_hexagon


def _projecao_ambigua(g: Geometry) -> Optional[Tuple[int, Line]]:
    """Primeiro par (x, L) sem ponto único de L mais próximo de x"""
    dist = g.distances.dist
    for linha in g.lines:
        sub = dist[:, list(linha)]
        minimos = sub.min(axis=1, keepdims=True)
        empates = (sub == minimos).sum(axis=1)
        ruins = np.nonzero(empates != 1)[0]
        if len(ruins):
            return int(ruins[0]), linha
    return None


def check_near_polygon(g: Geometry) -> NearPolygonReport:
    """
    Verifica se g é um near polygon

    Conexo e, para todo ponto x e reta L, um único ponto de L a distância
    mínima de x.
    """
    if not g.distances.is_connected:
        return NearPolygonReport(False, None, None, "grafo de colinearidade desconexo")

    diametro = g.diameter
    witness = _projecao_ambigua(g)
    if witness is not None:
        x, linha = witness
        return NearPolygonReport(
            False, diametro, witness,
            f"ponto {x} sem projeção única na reta {list(linha)}"
        )
    return NearPolygonReport(True, diametro)


def check_generalized_hexagon(g: Geometry) -> HexagonReport:
    """
    Verifica os axiomas de hexágono generalizado

    Near polygon de diâmetro 3, ao menos duas retas por ponto e vizinho
    comum único para pontos a distância 2.
    """
    relatorio = check_near_polygon(g)
    if not relatorio:
        return HexagonReport(False, relatorio.diameter, relatorio.witness, relatorio.reason)
    if relatorio.diameter != 3:
        return HexagonReport(False, relatorio.diameter, None,
                             f"diâmetro {relatorio.diameter}, esperado 3")

    for p, feixe in enumerate(g.lines_through):
        if len(feixe) < 2:
            return HexagonReport(False, 3, (p,), f"ponto {p} em apenas {len(feixe)} reta(s)")

    comuns = g.adjacency @ g.adjacency
    ruins = np.argwhere((g.distances.dist == 2) & (comuns != 1))
    if len(ruins):
        x, y = (int(v) for v in ruins[0])
        return HexagonReport(
            False, 3, (x, y),
            f"pontos {x} e {y} a distância 2 com {int(comuns[x, y])} vizinhos comuns"
        )
    return HexagonReport(True, 3)


def order_of(g: Geometry) -> OrderSpec:
    tamanhos = {len(linha) for linha in g.lines}
    graus = {len(feixe) for feixe in g.lines_through}
    s = tamanhos.pop() - 1 if len(tamanhos) == 1 else None
    t = graus.pop() - 1 if len(graus) == 1 else None
    return OrderSpec(s if s and s >= 1 else None, t if t and t >= 1 else None)


def common_neighbor_profile(g: Geometry) -> Counter:
    """
    Histograma do número de vizinhos comuns dos pares a distância 2

    Em near polygons com 3 pontos por reta o suporte fica em {1, 2, 3, 5};
    qualquer outro valor levanta GeometryError.
    """
    comuns = g.adjacency @ g.adjacency
    mascara = np.triu(g.distances.dist == 2, k=1)
    perfil = Counter(int(v) for v in comuns[mascara])

    if set(len(linha) for linha in g.lines) == {3} and check_near_polygon(g):
        fora = set(perfil) - PERFIL_VIZINHOS_COMUNS
        if fora:
            logger.error(f"Perfil de vizinhos comuns inválido em {g!r}: {sorted(fora)}")
            raise GeometryError(f"Número de vizinhos comuns fora de {{1,2,3,5}}: {sorted(fora)}")
    return perfil


def distance_distribution(g: Geometry, p: int) -> List[int]:
    """Quantidade de pontos a cada distância 0..diâmetro de p"""
    linha = g.distances.dist[p]
    if (linha == DistanceMatrix.UNREACHABLE).any():
        raise DisconnectedPointsError(p, int(np.nonzero(linha == DistanceMatrix.UNREACHABLE)[0][0]))
    diametro = g.diameter
    return [int(v) for v in np.bincount(linha, minlength=diametro + 1)]


# Construções derivadas


def dual(g: Geometry, name: Optional[str] = None) -> Geometry:
    """
    Dual ponto-reta: o novo ponto i é a reta i, as novas retas são os feixes

    Raises:
        GeometryError: ponto em menos de duas retas (feixe degenerado)
    """
    feixes = []
    for p, feixe in enumerate(g.lines_through):
        if len(feixe) < 2:
            raise GeometryError(f"Dual indefinido: ponto {p} em {len(feixe)} reta(s)")
        feixes.append(feixe)
    nome = name if name is not None else (f"dual({g.name})" if g.name else '')
    return build(g.num_lines, feixes, nome)


def double(g: Geometry, name: Optional[str] = None) -> Geometry:
    """
    Duplo de g: pontos = pontos e retas de g, retas = bandeiras

    O ponto p continua p; a reta i vira o ponto num_points + i.
    """
    bandeiras = [(p, g.num_points + i) for i, linha in enumerate(g.lines) for p in linha]
    nome = name if name is not None else (f"double({g.name})" if g.name else '')
    return build(g.num_points + g.num_lines, bandeiras, nome)


def relabel(g: Geometry, images: Sequence[int], name: Optional[str] = None) -> Geometry:
    """Renomeia o ponto p para images[p]"""
    if sorted(images) != list(range(g.num_points)):
        raise GeometryError("Renomeação não é uma bijeção dos pontos")
    linhas = [[images[p] for p in linha] for linha in g.lines]
    return build(g.num_points, linhas, g.name if name is None else name)


def fano_plane() -> Geometry:
    """Plano de Fano: retas {i, i+1, i+3} mod 7"""
    return build(7, [((i) % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)], 'fano')


def grid_3x3() -> Geometry:
    """Grade 3x3: ponto 3i+j, linhas e colunas como retas"""
    linhas = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(3)]
    colunas = [(j, j + 3, j + 6) for j in range(3)]
    return build(9, linhas + colunas, 'grid3x3')


def single_line() -> Geometry:
    return build(3, [(0, 1, 2)], 'line')


# Subgrades 3x3


@dataclass(frozen=True)
class Grid:
    """
    Subgrade (3x3) na forma canônica

    cells[i][j] é o ponto da linha i e coluna j; o menor ponto fica em
    (0, 0), linhas ordenadas pela coluna 0 e colunas pela linha 0.
    """

    cells: Tuple[Tuple[int, int, int], ...]
    row_lines: Tuple[int, int, int]
    col_lines: Tuple[int, int, int]

    @property
    def points(self) -> Tuple[int, ...]:
        return tuple(p for linha in self.cells for p in linha)

    def verify(self, g: Geometry) -> bool:
        """Reconfere o padrão de colinearidade da grade em g"""
        pontos = self.points
        if len(set(pontos)) != 9:
            return False
        for i in range(3):
            if set(g.lines[self.row_lines[i]]) != set(self.cells[i]):
                return False
            if set(g.lines[self.col_lines[i]]) != {self.cells[r][i] for r in range(3)}:
                return False
        posicoes = [(i, j) for i in range(3) for j in range(3)]
        for (i, j), (k, l) in combinations(posicoes, 2):
            esperado = i == k or j == l
            if g.collinear(self.cells[i][j], self.cells[k][l]) != esperado:
                return False
        return True


def _canonical_grid(g: Geometry, cells: List[List[int]]) -> Grid:
    menor = min(p for linha in cells for p in linha)
    i0, j0 = next((i, j) for i in range(3) for j in range(3) if cells[i][j] == menor)

    # Coloca o menor ponto em (0, 0)
    ordem_linhas = [i0] + [i for i in range(3) if i != i0]
    ordem_colunas = [j0] + [j for j in range(3) if j != j0]
    m = [[cells[i][j] for j in ordem_colunas] for i in ordem_linhas]

    # A reta "linha" pelo menor ponto é a de menor segundo ponto
    if min(m[0][1:]) > min(m[1][0], m[2][0]):
        m = [list(coluna) for coluna in zip(*m)]

    m = [m[0]] + sorted(m[1:], key=lambda linha: linha[0])
    colunas = sorted(range(1, 3), key=lambda j: m[0][j])
    m = [[linha[0]] + [linha[j] for j in colunas] for linha in m]

    row_lines = tuple(g.line_through(linha[0], linha[1]) for linha in m)
    col_lines = tuple(g.line_through(m[0][j], m[1][j]) for j in range(3))
    return Grid(tuple(tuple(linha) for linha in m), row_lines, col_lines)


def enumerate_grids(g: Geometry) -> List[Grid]:
    """
    Todas as subgrades (3x3) de g, cada uma uma única vez

    Para cada ponto x e par de retas L1, L2 por x, completa a grade
    escolhendo as retas pelos outros pontos de L1 e casando os pontos de
    L2 com as colunas.
    """
    if any(len(linha) != 3 for linha in g.lines):
        raise GeometryError("Subgrades exigem 3 pontos por reta")

    encontradas: Dict[Tuple[Tuple[int, ...], ...], Grid] = {}
    for x in range(g.num_points):
        for l1, l2 in combinations(g.lines_through[x], 2):
            a1, a2 = (p for p in g.lines[l1] if p != x)
            b1, b2 = (p for p in g.lines[l2] if p != x)
            for m1 in g.lines_through[a1]:
                if m1 == l1:
                    continue
                u_opcoes = [p for p in g.lines[m1] if p != a1]
                for m2 in g.lines_through[a2]:
                    if m2 == l1:
                        continue
                    w_opcoes = [p for p in g.lines[m2] if p != a2]
                    for u1 in u_opcoes:
                        u2 = u_opcoes[1] if u1 == u_opcoes[0] else u_opcoes[0]
                        for w1 in w_opcoes:
                            w2 = w_opcoes[1] if w1 == w_opcoes[0] else w_opcoes[0]
                            cells = [[x, b1, b2], [a1, u1, u2], [a2, w1, w2]]
                            if not _colunas_fecham(g, cells):
                                continue
                            grade = _canonical_grid(g, cells)
                            if grade.cells not in encontradas and grade.verify(g):
                                encontradas[grade.cells] = grade

    grades = [encontradas[chave] for chave in sorted(encontradas)]
    logger.debug(f"{len(grades)} subgrades (3x3) em {g!r}")
    return grades


def _colunas_fecham(g: Geometry, cells: List[List[int]]) -> bool:
    for j in (1, 2):
        reta = g.line_through(cells[0][j], cells[1][j])
        if reta is None or cells[2][j] not in g.lines[reta]:
            return False
    return True


def grids_per_point(g: Geometry, grids: Sequence[Grid]) -> Counter:
    contagem = Counter({p: 0 for p in range(g.num_points)})
    for grade in grids:
        contagem.update(grade.points)
    return contagem


# Ovoides


def find_ovoids(g: Geometry) -> List[Tuple[int, ...]]:
    """
    Todos os ovoides: conjuntos que encontram cada reta em exatamente um ponto

    Cobertura exata das retas pelos feixes dos pontos (Algoritmo X com
    dicionários de conjuntos), escolhendo sempre a reta com menos pontos
    ainda disponíveis. Pontos isolados ficam fora dos ovoides.
    """
    if g.num_lines == 0:
        return []

    colunas: Dict[int, set] = {i: set(linha) for i, linha in enumerate(g.lines)}
    cobre: Dict[int, Tuple[int, ...]] = {p: feixe for p, feixe in enumerate(g.lines_through) if feixe}

    solucoes: List[Tuple[int, ...]] = []
    _algoritmo_x(colunas, cobre, [], solucoes)
    solucoes = sorted(tuple(sorted(s)) for s in solucoes)
    logger.debug(f"{len(solucoes)} ovoides em {g!r}")
    return solucoes


def _algoritmo_x(colunas: Dict[int, set], cobre: Mapping[int, Tuple[int, ...]],
                 parcial: List[int], solucoes: List[List[int]]):
    if not colunas:
        solucoes.append(list(parcial))
        return
    c = min(colunas, key=lambda k: (len(colunas[k]), k))
    for p in sorted(colunas[c]):
        parcial.append(p)
        removidas = _selecionar(colunas, cobre, p)
        _algoritmo_x(colunas, cobre, parcial, solucoes)
        _desfazer(colunas, cobre, p, removidas)
        parcial.pop()


def _selecionar(colunas, cobre, p):
    removidas = []
    for j in cobre[p]:
        for q in colunas[j]:
            for k in cobre[q]:
                if k != j:
                    colunas[k].discard(q)
        removidas.append(colunas.pop(j))
    return removidas


def _desfazer(colunas, cobre, p, removidas):
    for j in reversed(cobre[p]):
        colunas[j] = removidas.pop()
        for q in colunas[j]:
            for k in cobre[q]:
                if k != j:
                    colunas[k].add(q)


# Cota e valorações induzidas


def near_hexagon_point_bound(s: int, t: int) -> int:
    """
    Cota superior (s+1)(s²t²+st+1) para o número de pontos de um near
    hexágono de ordem (s, t)
    """
    if not isinstance(s, int) or not isinstance(t, int) or s < 1 or t < 1:
        raise GeometryError(f"Ordem inválida ({s}, {t}): s e t devem ser inteiros >= 1")
    return (s + 1) * (s * s * t * t + s * t + 1)


def attains_point_bound(g: Geometry) -> bool:
    """Verdadeiro se g é near hexágono de ordem uniforme com número máximo de pontos"""
    ordem = order_of(g)
    if not ordem.is_uniform:
        return False
    relatorio = check_near_polygon(g)
    if not relatorio or relatorio.diameter != 3:
        return False
    return g.num_points == near_hexagon_point_bound(ordem.s, ordem.t)


def induced_valuation(ambient: Geometry, sub_points: Iterable[int],
                      sub_lines: Iterable[Iterable[int]], x: int) -> Dict[int, int]:
    """
    Valoração induzida y -> d(x, y) - d(x, P) numa subgeometria

    A subgeometria (P, retas) deve ser cheia (suas retas são retas
    inteiras do ambiente) e isometricamente mergulhada.

    Returns:
        dicionário ponto de P -> valor, em ordem crescente de ponto

    Raises:
        EmbeddingError: reta não cheia ou distâncias diferentes
    """
    pontos = sorted(set(sub_points))
    indice = {p: i for i, p in enumerate(pontos)}
    retas = [tuple(sorted(linha)) for linha in sub_lines]

    for linha in retas:
        if any(p not in indice for p in linha):
            raise EmbeddingError((linha[0], linha[-1]), None, None,
                                 f"Reta {list(linha)} tem pontos fora da subgeometria")
        reta_ambiente = ambient.line_through(linha[0], linha[1])
        if reta_ambiente is None or ambient.lines[reta_ambiente] != linha:
            raise EmbeddingError((linha[0], linha[1]), 1, None,
                                 f"Reta {list(linha)} não é uma reta cheia do ambiente")

    sub = build(len(pontos), [[indice[p] for p in linha] for linha in retas])
    d_sub = sub.distances.dist
    d_amb = ambient.distances.dist[np.ix_(pontos, pontos)]
    diferentes = np.argwhere(d_sub != d_amb)
    if len(diferentes):
        i, j = (int(v) for v in diferentes[0])
        ds = int(d_sub[i, j])
        raise EmbeddingError(
            (pontos[i], pontos[j]),
            None if ds == DistanceMatrix.UNREACHABLE else ds,
            int(d_amb[i, j])
        )

    base = ambient.distances.to_set(x, pontos)
    valores = {p: ambient.distance(x, p) - base for p in pontos}

    for linha in retas:
        vals = sorted(valores[p] for p in linha)
        if vals[0] == vals[1] or any(v != vals[0] + 1 for v in vals[1:]):
            raise GeometryError(f"Valoração induzida falha na reta {list(linha)}: {vals}")
    return valores
