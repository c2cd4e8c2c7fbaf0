"""
Formatação de relatórios
Texto, JSON e CSV a partir do mesmo Report
"""

import csv
import io
import json
from typing import Any, List, Sequence

from core.settings import settings
from services.report_service import Report
from utils.validators import validators

FORMATOS = ('text', 'json', 'csv', 'pdf')

_COLUNAS_VALORACOES = ('Type', '#', 'M_f', '|O_f|', '|H_f|', 'Value Distribution')


def _tabela(cabecalho: Sequence[str], linhas: Sequence[Sequence[Any]]) -> List[str]:
    """Colunas alinhadas à esquerda, separadas por dois espaços"""
    celulas = [[str(c) for c in cabecalho]] + [[str(c) for c in linha] for linha in linhas]
    larguras = [max(len(linha[i]) for linha in celulas) for i in range(len(cabecalho))]
    return ['  '.join(c.ljust(w) for c, w in zip(linha, larguras)).rstrip() for linha in celulas]


def _linhas_valoracoes(report: Report) -> List[List[Any]]:
    return [
        [r['type'], r['count'], r['max_value'], r['zero_count'], r['hyperplane_size'],
         validators.formatar_distribuicao(r['distribution'])]
        for r in report.tables.get('valuations', [])
    ]


def _tipos_ponto(report: Report) -> List[str]:
    tipos = [r['type'] for r in report.tables.get('valuations', [])]
    if tipos:
        return tipos
    vistos = []
    for linha in report.tables.get('lines', []):
        for tipo in linha['counts']:
            if tipo not in vistos:
                vistos.append(tipo)
    return vistos


def _linhas_retas(report: Report, tipos: Sequence[str]) -> List[List[Any]]:
    return [
        [linha['type']] + [linha['counts'].get(t, '') for t in tipos]
        for linha in report.tables.get('lines', [])
    ]


def _linhas_hiperplanos(report: Report) -> List[List[Any]]:
    return [
        [c['size'], c['orbit_size'], c['stabilizer_order'],
         ' '.join(f"{k}:{v}" for k, v in c['line_intersections'].items()), c['valuations']]
        for c in report.hyperplanes.get('classes', [])
    ]


def format_text(report: Report) -> str:
    """Relatório legível; tabelas na mesma ordem de linhas e colunas do JSON"""
    saida = [f"== {report.geometry} ({report.command}) =="]

    if report.aut_order is not None:
        saida.append(f"|Aut| = {report.aut_order}")

    if 'valuations' in report.tables:
        saida.append('')
        saida += _tabela(_COLUNAS_VALORACOES, _linhas_valoracoes(report))

    if 'lines' in report.tables:
        tipos = _tipos_ponto(report)
        saida.append('')
        saida += _tabela(['Line type'] + tipos, _linhas_retas(report, tipos))

    if report.hyperplanes:
        saida.append('')
        classes = report.hyperplanes.get('classes')
        resumo = f"Hyperplanes: {report.hyperplanes['total']}"
        if classes is not None:
            com_valoracoes = sum(1 for c in classes if c['valuations'])
            resumo += f", classes: {len(classes)}, com valorações: {com_valoracoes}"
        saida.append(resumo)
        if classes:
            saida += _tabela(['size', 'orbit', 'stabilizer', 'line intersections', 'valuations'],
                             _linhas_hiperplanos(report))

    if report.info:
        saida.append('')
        saida += [f"{chave}: {valor}" for chave, valor in report.info.items()]

    if report.checks:
        saida.append('')
        largura = max(len(nome) for nome in report.checks)
        saida += [f"{nome.ljust(largura)}  {'OK' if ok else 'FALHOU'}"
                  for nome, ok in report.checks.items()]

    if report.diffs:
        saida.append('')
        saida += [f"! {diff}" for diff in report.diffs]

    if report.timings is not None:
        saida.append('')
        saida += [f"tempo {etapa}: {segundos:.3f}s" for etapa, segundos in report.timings.items()]

    return '\n'.join(saida) + '\n'


def format_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + '\n'


def format_csv(report: Report) -> str:
    """
    Uma seção por tabela, cada uma aberta por uma linha '# nome'

    Seções: valuations, lines, hyperplanes, checks, diffs.
    """
    buffer = io.StringIO()
    escritor = csv.writer(buffer, lineterminator='\n')

    if 'valuations' in report.tables:
        escritor.writerow(['# valuations'])
        escritor.writerow(_COLUNAS_VALORACOES)
        escritor.writerows(_linhas_valoracoes(report))

    if 'lines' in report.tables:
        tipos = _tipos_ponto(report)
        escritor.writerow(['# lines'])
        escritor.writerow(['Line type'] + tipos)
        escritor.writerows(_linhas_retas(report, tipos))

    if report.hyperplanes.get('classes'):
        escritor.writerow(['# hyperplanes'])
        escritor.writerow(['size', 'orbit_size', 'stabilizer_order', 'line_intersections', 'valuations'])
        escritor.writerows(_linhas_hiperplanos(report))

    escritor.writerow(['# checks'])
    escritor.writerow(['geometry', 'check', 'passed'])
    if report.aut_order is not None:
        escritor.writerow([report.geometry, 'aut_order', report.aut_order])
    for nome, ok in report.checks.items():
        escritor.writerow([report.geometry, nome, ok])

    if report.diffs:
        escritor.writerow(['# diffs'])
        for diff in report.diffs:
            escritor.writerow([diff])

    return buffer.getvalue()


def render(reports: Sequence[Report], formato: str) -> str:
    """
    Renderiza um ou mais relatórios

    Vários relatórios em JSON viram {"reports": [...]}; em texto e CSV são
    concatenados, separados por uma linha em branco.
    """
    if formato == 'json':
        if len(reports) == 1:
            return format_json(reports[0])
        dados = {'reports': [r.to_dict() for r in reports]}
        return json.dumps(dados, indent=2, ensure_ascii=False) + '\n'

    if formato == 'text':
        partes = [format_text(r) for r in reports]
        if settings.report_title and len(reports) > 1:
            partes.insert(0, settings.report_title + '\n')
        return '\n'.join(partes)

    if formato == 'csv':
        return '\n'.join(format_csv(r) for r in reports)

    raise ValueError(f"Formato sem renderização em texto: {formato}")


def failure_summary(report: Report) -> List[str]:
    """Linhas para a saída de erro: verificações falhas e diferenças"""
    linhas = [f"{report.geometry}: verificação {nome} falhou"
              for nome, ok in report.checks.items() if not ok]
    linhas += [f"{report.geometry}: {diff}" for diff in report.diffs]
    return linhas
