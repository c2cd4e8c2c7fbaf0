"""
Serviço de Valorações
Semi-valorações, propagação de valorações parciais, estatísticas e tipos
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.exceptions import ClassificationError, GeometryError
from core.geometry import Geometry
from core.perm import PermGroup
from core.reference_tables import labels_for
from services.hyperplane_service import Hyperplane, HyperplaneClass, hyperplane_service

logger = logging.getLogger(__name__)

# Valores tentados nos pontos do hiperplano (o máximo é fixado em 0)
VALORES_RAMIFICACAO = (-1, -2, -3)


class _Fail:
    """Resultado de uma propagação contraditória"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return 'FAIL'


FAIL = _Fail()


def _reta_valida(valores: Sequence[int]) -> bool:
    """Mínimo único e os demais pontos com mínimo + 1"""
    ordenados = sorted(valores)
    minimo = ordenados[0]
    return all(v == minimo + 1 for v in ordenados[1:])


@dataclass(frozen=True)
class Valuation:
    """
    Valoração: semi-valoração com valor mínimo 0

    Raises:
        GeometryError: valores fora do formato ou regra por reta violada
    """

    host: Geometry = field(compare=False, repr=False)
    values: Tuple[int, ...]

    def __post_init__(self):
        valores = tuple(int(v) for v in self.values)
        object.__setattr__(self, 'values', valores)
        if len(valores) != self.host.num_points:
            raise GeometryError(f"Valoração com {len(valores)} valores para {self.host.num_points} pontos")
        if valores and min(valores) != 0:
            raise GeometryError(f"Valor mínimo {min(valores)}, esperado 0")
        if not ValuationService.is_semi_valuation(self.host, valores):
            raise GeometryError("Valores não formam semi-valoração")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def max_value(self) -> int:
        return max(self.values)

    @property
    def zero_set(self) -> Tuple[int, ...]:
        return tuple(p for p, v in enumerate(self.values) if v == 0)

    @property
    def hyperplane(self) -> Tuple[int, ...]:
        """H_f: pontos com valor abaixo do máximo"""
        m = self.max_value
        return tuple(p for p, v in enumerate(self.values) if v < m)


@dataclass(frozen=True)
class PartialValuation:
    """Valores definidos num subconjunto de pontos fechado pela regra das retas"""

    host: Geometry = field(compare=False, repr=False)
    values: Tuple[Optional[int], ...]

    @classmethod
    def empty(cls, host: Geometry) -> 'PartialValuation':
        return cls(host, (None,) * host.num_points)

    @property
    def defined_set(self) -> Tuple[int, ...]:
        return tuple(p for p, v in enumerate(self.values) if v is not None)

    def is_total(self) -> bool:
        return all(v is not None for v in self.values)


@dataclass(frozen=True)
class ValuationStats:
    max_value: int
    zero_set: Tuple[int, ...]
    hyperplane: Tuple[int, ...]
    distribution: Tuple[int, ...]


@dataclass(frozen=True)
class ValuationType:
    label: str
    class_size: int
    max_value: int
    zero_count: int
    hyperplane_size: int
    distribution: Tuple[int, ...]

    def as_row(self) -> tuple:
        return (self.label, self.class_size, self.max_value, self.zero_count,
                self.hyperplane_size, self.distribution)


@dataclass(frozen=True)
class ValuationClassification:
    """Tipos na ordem da tabela e rótulo de cada vetor de valores"""

    types: Tuple[ValuationType, ...]
    labels: Dict[Tuple[int, ...], str] = field(repr=False)

    def label_of(self, f: Valuation) -> str:
        return self.labels[f.values]


def _propagar(g: Geometry, valores: List[Optional[int]], fila: deque) -> bool:
    """
    Fecha os valores pela regra das retas; altera `valores` no lugar

    Numa reta com dois valores a, b conhecidos: a = b dá a - 1 ao terceiro,
    |a - b| = 1 dá max(a, b), |a - b| >= 2 é contradição.
    """
    while fila:
        x = fila.popleft()
        for li in g.lines_through[x]:
            a, b, c = g.lines[li]
            va, vb, vc = valores[a], valores[b], valores[c]
            desconhecidos = (va is None) + (vb is None) + (vc is None)
            if desconhecidos == 0:
                if not _reta_valida((va, vb, vc)):
                    return False
            elif desconhecidos == 1:
                if va is None:
                    alvo, u, v = a, vb, vc
                elif vb is None:
                    alvo, u, v = b, va, vc
                else:
                    alvo, u, v = c, va, vb
                if u == v:
                    valores[alvo] = u - 1
                elif abs(u - v) == 1:
                    valores[alvo] = max(u, v)
                else:
                    return False
                fila.append(alvo)
    return True


def _exigir_retas_de_3(g: Geometry):
    if any(len(linha) != 3 for linha in g.lines):
        raise GeometryError("Propagação de valorações exige 3 pontos por reta")


class ValuationService:
    """
    Serviço de valorações
    Métodos: is_semi_valuation, classical_valuation, assign_value,
    valuations_from_hyperplane, all_valuations, valuation_stats, classify_valuations
    """

    @staticmethod
    def is_semi_valuation(g: Geometry, values: Sequence[int]) -> bool:
        if len(values) != g.num_points:
            return False
        return all(_reta_valida([values[p] for p in linha]) for linha in g.lines)

    @staticmethod
    def classical_valuation(g: Geometry, center: int) -> Valuation:
        """f(y) = d(center, y)"""
        return Valuation(g, tuple(g.distance(center, y) for y in range(g.num_points)))

    @staticmethod
    def ovoidal_valuation(g: Geometry, ovoid: Iterable[int]) -> Valuation:
        """0 no ovoide, 1 fora dele"""
        pontos = set(ovoid)
        return Valuation(g, tuple(0 if p in pontos else 1 for p in range(g.num_points)))

    @staticmethod
    def assign_value(pv: PartialValuation, x: int, i: int):
        """
        Define pv(x) = i e fecha pela regra das retas

        Returns:
            Nova PartialValuation ou FAIL se alguma reta fica inválida
        """
        _exigir_retas_de_3(pv.host)
        atual = pv.values[x]
        if atual is not None:
            return pv if atual == i else FAIL
        valores = list(pv.values)
        valores[x] = i
        if not _propagar(pv.host, valores, deque([x])):
            return FAIL
        return PartialValuation(pv.host, tuple(valores))

    @staticmethod
    def seed(g: Geometry, points: Iterable[int], value: int = 0):
        """Valoração parcial com `value` em todos os pontos dados, já propagada"""
        _exigir_retas_de_3(g)
        valores: List[Optional[int]] = [None] * g.num_points
        pontos = list(points)
        for p in pontos:
            valores[p] = value
        if not _propagar(g, valores, deque(pontos)):
            return FAIL
        return PartialValuation(g, tuple(valores))

    @staticmethod
    def valuations_from_hyperplane(g: Geometry, hyperplane: Hyperplane) -> List[Valuation]:
        """
        Todas as valorações f com H_f igual ao hiperplano dado

        Fixa 0 no complemento, ramifica o menor ponto indefinido em -1, -2, -3,
        normaliza cada completamento pelo mínimo e mantém só aqueles cujo
        conjunto de valor máximo é exatamente o complemento.
        """
        complemento = set(hyperplane.complement)
        inicial = ValuationService.seed(g, complemento)
        if inicial is FAIL:
            return []

        diametro = g.diameter
        encontrados = set()

        def ramificar(valores: List[Optional[int]]):
            try:
                x = valores.index(None)
            except ValueError:
                encontrados.add(tuple(valores))
                return
            for i in VALORES_RAMIFICACAO:
                filhos = list(valores)
                filhos[x] = i
                if _propagar(g, filhos, deque([x])):
                    ramificar(filhos)

        ramificar(list(inicial.values))

        resultado = set()
        for valores in encontrados:
            minimo = min(valores)
            normalizados = tuple(v - minimo for v in valores)
            maximo = -minimo
            if {p for p, v in enumerate(normalizados) if v == maximo} != complemento:
                continue
            if diametro is not None and maximo > diametro:
                raise GeometryError(f"Valoração com máximo {maximo} acima do diâmetro {diametro}")
            resultado.add(normalizados)

        return [Valuation(g, v) for v in sorted(resultado)]

    @staticmethod
    def all_valuations(g: Geometry, group: Optional[PermGroup] = None,
                       classes: Optional[List[HyperplaneClass]] = None) -> List[Valuation]:
        """
        Todas as valorações de g, sem repetição, em ordem dos vetores de valores

        Com o grupo de automorfismos basta resolver um representante por
        classe de hiperplanos e expandir cada valoração pela sua órbita.
        """
        try:
            _exigir_retas_de_3(g)
            valores = set()
            if group is None:
                for h in hyperplane_service.enumerate_hyperplanes(g):
                    valores.update(f.values for f in ValuationService.valuations_from_hyperplane(g, h))
            else:
                if classes is None:
                    classes = hyperplane_service.classify_hyperplanes(g, group)
                for classe in classes:
                    for f in ValuationService.valuations_from_hyperplane(g, classe.representative):
                        valores.update(group.orbit_of_function(f.values))

            valoracoes = [Valuation(g, v) for v in sorted(valores)]
            logger.info(f"{len(valoracoes)} valorações em {g.name or 'geometria'}")
            return valoracoes

        except Exception as e:
            logger.error(f"Erro ao calcular valorações: {e}")
            raise

    @staticmethod
    def valuations_per_class(g: Geometry, classes: Sequence[HyperplaneClass]) -> List[int]:
        """Número de valorações associadas ao representante de cada classe"""
        return [len(ValuationService.valuations_from_hyperplane(g, c.representative)) for c in classes]

    @staticmethod
    def valuation_stats(f: Valuation) -> ValuationStats:
        comprimento = max(f.max_value, f.host.diameter or 0) + 1
        distribuicao = [0] * comprimento
        for v in f.values:
            distribuicao[v] += 1
        return ValuationStats(f.max_value, f.zero_set, f.hyperplane, tuple(distribuicao))

    @staticmethod
    def classify_valuations(g: Geometry, group: PermGroup,
                            valuations: Sequence[Valuation]) -> ValuationClassification:
        """
        Tipos de valorações por distribuição de valores

        Cada classe de distribuição precisa ser uma única órbita de Aut(g).

        Raises:
            ClassificationError: duas órbitas com a mesma distribuição
        """
        try:
            por_distribuicao: Dict[Tuple[int, ...], List[Valuation]] = {}
            for f in valuations:
                chave = ValuationService.valuation_stats(f).distribution
                por_distribuicao.setdefault(chave, []).append(f)

            tipos = []
            for distribuicao, membros in por_distribuicao.items():
                valores = {f.values for f in membros}
                orbita = set(group.orbit_of_function(membros[0].values))
                if orbita != valores:
                    raise ClassificationError(
                        f"Distribuição {list(distribuicao)}: {len(valores)} valorações, "
                        f"órbita de tamanho {len(orbita)}"
                    )
                stats = ValuationService.valuation_stats(membros[0])
                tipos.append(ValuationType(
                    label='',
                    class_size=len(membros),
                    max_value=stats.max_value,
                    zero_count=len(stats.zero_set),
                    hyperplane_size=len(stats.hyperplane),
                    distribution=distribuicao,
                ))

            tipos.sort(key=lambda t: (-t.max_value, t.zero_count, t.hyperplane_size))
            referencia = labels_for([t.distribution for t in tipos])
            rotulados = []
            for i, t in enumerate(tipos):
                rotulo = referencia[t.distribution] if referencia else _rotulo_sequencial(i)
                rotulados.append(ValuationType(rotulo, *t.as_row()[1:]))
            rotulados.sort(key=lambda t: (-t.max_value, t.zero_count, t.hyperplane_size))

            rotulo_da_distribuicao = {t.distribution: t.label for t in rotulados}
            labels = {}
            for distribuicao, membros in por_distribuicao.items():
                for f in membros:
                    labels[f.values] = rotulo_da_distribuicao[distribuicao]

            logger.info(
                f"Tipos de valorações em {g.name or 'geometria'}: "
                + ', '.join(f"{t.label}={t.class_size}" for t in rotulados)
            )
            return ValuationClassification(tuple(rotulados), labels)

        except Exception as e:
            logger.error(f"Erro ao classificar valorações: {e}")
            raise


def _rotulo_sequencial(i: int) -> str:
    letras = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'
    if i < len(letras):
        return letras[i]
    return f"T{i + 1}"


# Instância global do serviço
valuation_service = ValuationService()
