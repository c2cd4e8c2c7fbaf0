"""
Serviço de Relatórios
Executa o pipeline completo de um hexágono e compara com as tabelas de referência
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence

from core import reference_tables as ref
from core.exceptions import ClassificationError, HexValError
from core.geometry import (
    Geometry,
    attains_point_bound,
    check_generalized_hexagon,
    check_near_polygon,
    distance_distribution,
    find_ovoids,
    order_of,
)
from services.automorphism_service import automorphism_service
from services.construction_service import construction_service
from services.hyperplane_service import hyperplane_service
from services.valgeom_service import valgeom_service
from services.valuation_service import valuation_service

logger = logging.getLogger(__name__)


class HexagonPipeline:
    """
    Artefatos calculados de uma geometria, cada um uma única vez

    Guarda o tempo gasto em cada etapa em `timings`.
    """

    def __init__(self, geometry: Geometry):
        self.geometry = geometry
        self.timings: Dict[str, float] = {}

    @contextmanager
    def _cronometro(self, etapa: str):
        inicio = time.perf_counter()
        yield
        self.timings[etapa] = round(time.perf_counter() - inicio, 3)

    @cached_property
    def group(self):
        with self._cronometro('aut'):
            return automorphism_service.automorphism_group(self.geometry)

    @cached_property
    def hyperplanes(self):
        with self._cronometro('hyperplanes'):
            return hyperplane_service.enumerate_hyperplanes(self.geometry)

    @cached_property
    def hyperplane_classes(self):
        grupo = self.group
        hiperplanos = self.hyperplanes
        with self._cronometro('hyperplane_classes'):
            return hyperplane_service.classify_hyperplanes(self.geometry, grupo, hiperplanos)

    @cached_property
    def valuations_per_class(self) -> List[int]:
        classes = self.hyperplane_classes
        with self._cronometro('valuations_per_class'):
            return valuation_service.valuations_per_class(self.geometry, classes)

    @cached_property
    def valuations(self):
        classes = self.hyperplane_classes
        with self._cronometro('valuations'):
            return valuation_service.all_valuations(self.geometry, self.group, classes)

    @cached_property
    def classification(self):
        valoracoes = self.valuations
        with self._cronometro('classification'):
            return valuation_service.classify_valuations(self.geometry, self.group, valoracoes)

    @cached_property
    def valuation_geometry(self):
        classificacao = self.classification
        with self._cronometro('valgeom'):
            return valgeom_service.build_valuation_geometry(
                self.geometry, self.valuations, classificacao
            )

    @cached_property
    def line_table(self):
        V = self.valuation_geometry
        ordem = [t.label for t in self.classification.types]
        return valgeom_service.line_type_table(V, ordem)

    @cached_property
    def ovoids(self):
        with self._cronometro('ovoids'):
            return find_ovoids(self.geometry)


@dataclass
class Report:
    """
    Resultado de um comando, fonte única das saídas texto, JSON, CSV e PDF
    """

    geometry: str
    command: str = 'report'
    aut_order: Optional[int] = None
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    hyperplanes: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    diffs: List[str] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)
    timings: Optional[Dict[str, float]] = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and not self.diffs

    def to_dict(self) -> Dict[str, Any]:
        dados = asdict(self)
        if self.timings is None:
            dados.pop('timings')
        return dados

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        return cls(
            geometry=data['geometry'],
            command=data.get('command', 'report'),
            aut_order=data.get('aut_order'),
            tables=data.get('tables', {}),
            hyperplanes=data.get('hyperplanes', {}),
            checks=data.get('checks', {}),
            diffs=list(data.get('diffs', [])),
            info=data.get('info', {}),
            timings=data.get('timings'),
        )


def valuation_rows(pipeline: HexagonPipeline) -> List[Dict[str, Any]]:
    return [
        {
            'type': t.label,
            'count': t.class_size,
            'max_value': t.max_value,
            'zero_count': t.zero_count,
            'hyperplane_size': t.hyperplane_size,
            'distribution': list(t.distribution),
        }
        for t in pipeline.classification.types
    ]


def line_rows(pipeline: HexagonPipeline) -> List[Dict[str, Any]]:
    return [{'type': tipo, 'counts': dict(celulas)} for tipo, celulas in pipeline.line_table.rows]


def hyperplane_rows(pipeline: HexagonPipeline) -> List[Dict[str, Any]]:
    linhas = []
    for classe, n_val in zip(pipeline.hyperplane_classes, pipeline.valuations_per_class):
        tamanho, histograma = classe.invariant_key
        linhas.append({
            'size': tamanho,
            'orbit_size': classe.orbit_size,
            'stabilizer_order': classe.stabilizer_order,
            'line_intersections': {str(k): v for k, v in histograma},
            'valuations': n_val,
        })
    return linhas


def diff_valuation_table(rows: Sequence[Dict[str, Any]],
                         reference: Sequence[ref.ValuationRow]) -> List[str]:
    """Diferenças célula a célula entre a tabela obtida e a de referência"""
    diffs = []
    obtidas = {r['type']: r for r in rows}
    colunas = ('count', 'max_value', 'zero_count', 'hyperplane_size', 'distribution')
    for tipo, *esperados in reference:
        linha = obtidas.get(tipo)
        if linha is None:
            diffs.append(f"valuations[{tipo}]: tipo ausente")
            continue
        for coluna, esperado in zip(colunas, esperados):
            obtido = linha[coluna]
            if coluna == 'distribution':
                esperado = list(esperado)
                obtido = list(obtido)[:len(esperado)]
            if obtido != esperado:
                diffs.append(f"valuations[{tipo}].{coluna}: obtido {obtido}, esperado {esperado}")
    for tipo in obtidas:
        if tipo not in {linha[0] for linha in reference}:
            diffs.append(f"valuations[{tipo}]: tipo inesperado")
    return diffs


def diff_line_table(rows: Sequence[Dict[str, Any]], reference: Dict[str, Dict[str, int]]) -> List[str]:
    diffs = []
    obtidas = {r['type']: r['counts'] for r in rows}
    for tipo in sorted(set(obtidas) | set(reference)):
        esperado = reference.get(tipo)
        obtido = obtidas.get(tipo)
        if esperado is None:
            diffs.append(f"lines[{tipo}]: tipo inesperado {obtido}")
        elif obtido is None:
            diffs.append(f"lines[{tipo}]: tipo ausente")
        else:
            for tipo_ponto in sorted(set(esperado) | set(obtido)):
                e, o = esperado.get(tipo_ponto, 0), obtido.get(tipo_ponto, 0)
                if e != o:
                    diffs.append(f"lines[{tipo}][{tipo_ponto}]: obtido {o}, esperado {e}")
    return diffs


class ReportService:
    """
    Serviço de relatórios
    Um método por comando; todos devolvem um Report
    """

    _pipelines: Dict[str, HexagonPipeline] = {}

    @staticmethod
    def pipeline(name: str) -> HexagonPipeline:
        """Pipeline de uma geometria embutida, reaproveitado entre comandos"""
        chave = name.strip().lower()
        if chave not in ReportService._pipelines:
            ReportService._pipelines[chave] = HexagonPipeline(construction_service.by_name(chave))
        return ReportService._pipelines[chave]

    @staticmethod
    def pipeline_for(g: Geometry) -> HexagonPipeline:
        return HexagonPipeline(g)

    @staticmethod
    def validation_report(g: Geometry) -> Report:
        """
        Axiomas de uma geometria lida de arquivo

        Falha (diffs não vazio) se g não for conexa ou não for near polygon;
        o resto vai para `info`.
        """
        relatorio = Report(geometry=g.name, command='validate')
        relatorio.info = {'points': g.num_points, 'lines': g.num_lines, 'order': str(order_of(g))}

        conexa = g.distances.is_connected
        relatorio.checks['connected'] = conexa
        if not conexa:
            relatorio.diffs.append("geometria desconexa")
            return relatorio

        np_rel = check_near_polygon(g)
        relatorio.checks['near_polygon'] = bool(np_rel)
        relatorio.info['diameter'] = np_rel.diameter
        if not np_rel:
            x, linha = np_rel.witness
            relatorio.diffs.append(f"NP2: ponto {x}, reta {list(linha)}: {np_rel.reason}")
            return relatorio

        hexagono = check_generalized_hexagon(g)
        relatorio.info['generalized_hexagon'] = bool(hexagono)
        relatorio.info['distance_distribution'] = distance_distribution(g, 0)
        relatorio.info['point_bound'] = attains_point_bound(g)
        if not hexagono:
            relatorio.info['hexagon_failure'] = hexagono.reason
        return relatorio

    @staticmethod
    def _preencher_aut(relatorio: Report, pipeline: HexagonPipeline):
        grupo = pipeline.group
        relatorio.aut_order = grupo.order
        relatorio.info['generators'] = len(grupo.generators)
        relatorio.info['point_transitive'] = grupo.is_transitive()
        if pipeline.geometry.name in ref.REFERENCE_BY_GEOMETRY and grupo.order != ref.AUT_ORDER:
            relatorio.diffs.append(f"aut_order: obtido {grupo.order}, esperado {ref.AUT_ORDER}")

    @staticmethod
    def _preencher_hiperplanos(relatorio: Report, pipeline: HexagonPipeline, with_classes: bool):
        relatorio.hyperplanes = {'total': len(pipeline.hyperplanes)}
        if not with_classes:
            return
        classes = pipeline.hyperplane_classes
        n_val = pipeline.valuations_per_class
        relatorio.hyperplanes['classes'] = hyperplane_rows(pipeline)

        soma = sum(pipeline.group.order // c.stabilizer_order for c in classes)
        relatorio.checks['hyperplane_class_equation'] = soma == len(pipeline.hyperplanes)

        # Valorações de um mesmo hiperplano são isomorfas
        g = pipeline.geometry
        isomorfas = True
        for classe, n in zip(classes, n_val):
            if n > 1:
                vals = valuation_service.valuations_from_hyperplane(g, classe.representative)
                orbita = set(pipeline.group.orbit_of_function(vals[0].values))
                isomorfas &= all(f.values in orbita for f in vals)
        if g.name in ref.HYPERPLANE_CLASSES:
            relatorio.checks['shared_hyperplane_isomorphic'] = isomorfas
        else:
            relatorio.info['shared_hyperplane_isomorphic'] = isomorfas

        nome = g.name
        if nome in ref.HYPERPLANE_CLASSES:
            esperado = ref.HYPERPLANE_CLASSES[nome]
            obtido = (len(classes), sum(1 for n in n_val if n))
            if obtido != esperado:
                relatorio.diffs.append(f"hyperplanes: classes {obtido}, esperado {esperado}")

    @staticmethod
    def _preencher_valoracoes(relatorio: Report, pipeline: HexagonPipeline, with_table: bool = True):
        relatorio.info['valuations'] = len(pipeline.valuations)
        relatorio.info['types'] = len(pipeline.classification.types)
        if not with_table:
            return
        relatorio.tables['valuations'] = valuation_rows(pipeline)
        nome = pipeline.geometry.name
        if nome in ref.REFERENCE_BY_GEOMETRY:
            tabela_val, _ = ref.REFERENCE_BY_GEOMETRY[nome]
            relatorio.diffs += diff_valuation_table(relatorio.tables['valuations'], tabela_val)

    @staticmethod
    def _preencher_valgeom(relatorio: Report, pipeline: HexagonPipeline, with_table: bool):
        V = pipeline.valuation_geometry
        relatorio.info['vpoints'] = V.num_points
        relatorio.info['vlines'] = V.num_lines
        relatorio.checks['star_algebra'] = valgeom_service.check_star_algebra(V) is None
        if not with_table:
            return

        relatorio.tables['lines'] = line_rows(pipeline)
        try:
            valgeom_service.double_counting(V, pipeline.line_table)
            relatorio.checks['double_counting'] = True
        except ClassificationError as e:
            logger.warning(f"Contagem dupla falhou: {e}")
            relatorio.checks['double_counting'] = False

        nome = pipeline.geometry.name
        if nome in ref.REFERENCE_BY_GEOMETRY:
            _, tabela_retas = ref.REFERENCE_BY_GEOMETRY[nome]
            relatorio.diffs += diff_line_table(relatorio.tables['lines'], tabela_retas)

    @staticmethod
    def _preencher_hexagono(relatorio: Report, pipeline: HexagonPipeline):
        g = pipeline.geometry
        relatorio.checks['generalized_hexagon'] = bool(check_generalized_hexagon(g))
        relatorio.checks['point_bound'] = attains_point_bound(g)

        ovoides = len(pipeline.ovoids)
        relatorio.info['ovoids'] = ovoides
        if g.name in ref.OVOIDS:
            relatorio.checks['ovoids'] = ovoides == ref.OVOIDS[g.name]

    @staticmethod
    def lemma_checks(pipeline: HexagonPipeline) -> Dict[str, bool]:
        """Verificações da subgeometria de pontos C e retas CCC"""
        if pipeline.geometry.name != 'H^D(2)':
            raise HexValError(
                f"Verificações de V' definidas apenas para H^D(2), não {pipeline.geometry.name}"
            )
        Vprime = valgeom_service.restrict(pipeline.valuation_geometry, ['C'], ['CCC'])
        relatorio = valgeom_service.check_lemma_3_1(Vprime, pipeline.geometry)
        checks = {f"lemma_3_1_{k}": v for k, v in relatorio.as_dict().items()}
        checks['vprime_points'] = Vprime.num_points == ref.VPRIME_POINTS
        checks['vprime_lines'] = Vprime.num_lines == ref.VPRIME_LINES
        return checks

    @staticmethod
    def _finalizar(relatorio: Report, pipeline: HexagonPipeline, include_timings: bool) -> Report:
        if include_timings:
            relatorio.timings = dict(pipeline.timings)
        if relatorio.passed:
            logger.info(f"✅ {relatorio.command} de {relatorio.geometry}: verificações aprovadas")
        else:
            logger.warning(
                f"❌ {relatorio.command} de {relatorio.geometry}: {len(relatorio.diffs)} diferença(s)"
            )
        return relatorio

    @staticmethod
    def aut_report(pipeline: HexagonPipeline, include_timings: bool = False) -> Report:
        relatorio = Report(geometry=pipeline.geometry.name, command='aut')
        ReportService._preencher_aut(relatorio, pipeline)
        return ReportService._finalizar(relatorio, pipeline, include_timings)

    @staticmethod
    def hyperplane_report(pipeline: HexagonPipeline, with_classes: bool = False,
                          include_timings: bool = False) -> Report:
        relatorio = Report(geometry=pipeline.geometry.name, command='hyperplanes')
        ReportService._preencher_hiperplanos(relatorio, pipeline, with_classes)
        return ReportService._finalizar(relatorio, pipeline, include_timings)

    @staticmethod
    def valuation_report(pipeline: HexagonPipeline, with_table: bool = False,
                         include_timings: bool = False) -> Report:
        relatorio = Report(geometry=pipeline.geometry.name, command='valuations')
        ReportService._preencher_valoracoes(relatorio, pipeline, with_table)
        return ReportService._finalizar(relatorio, pipeline, include_timings)

    @staticmethod
    def valgeom_report(pipeline: HexagonPipeline, with_table: bool = False,
                       include_timings: bool = False) -> Report:
        relatorio = Report(geometry=pipeline.geometry.name, command='valgeom')
        if with_table:
            relatorio.tables['valuations'] = valuation_rows(pipeline)
        ReportService._preencher_valgeom(relatorio, pipeline, with_table)
        return ReportService._finalizar(relatorio, pipeline, include_timings)

    @staticmethod
    def check_report(pipeline: HexagonPipeline, lemma: Optional[str] = None,
                     include_timings: bool = False) -> Report:
        """
        Sem `lemma`: axiomas, cota de pontos e ovoides.
        Com lemma '3.1': as verificações da subgeometria V' de H^D(2).
        """
        relatorio = Report(geometry=pipeline.geometry.name, command='check')
        if lemma is None:
            ReportService._preencher_hexagono(relatorio, pipeline)
        elif lemma == '3.1':
            relatorio.checks.update(ReportService.lemma_checks(pipeline))
        else:
            raise HexValError(f"Lema desconhecido: {lemma}")
        return ReportService._finalizar(relatorio, pipeline, include_timings)

    @staticmethod
    def build_report(pipeline: HexagonPipeline, include_timings: bool = False) -> Report:
        """
        Relatório completo: tabelas, classes de hiperplanos e verificações

        Para H(2) e H^D(2) as tabelas são comparadas com as de referência
        e cada diferença vira uma linha em `diffs`.
        """
        try:
            relatorio = Report(geometry=pipeline.geometry.name)
            ReportService._preencher_hexagono(relatorio, pipeline)
            ReportService._preencher_aut(relatorio, pipeline)
            ReportService._preencher_hiperplanos(relatorio, pipeline, with_classes=True)
            ReportService._preencher_valoracoes(relatorio, pipeline)
            ReportService._preencher_valgeom(relatorio, pipeline, with_table=True)
            if pipeline.geometry.name == 'H^D(2)':
                relatorio.checks.update(ReportService.lemma_checks(pipeline))
            return ReportService._finalizar(relatorio, pipeline, include_timings)

        except Exception as e:
            logger.error(f"Erro ao gerar relatório: {e}")
            raise


# Instância global do serviço
report_service = ReportService()
