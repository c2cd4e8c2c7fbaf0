"""
Interface de linha de comando
Subcomandos: build, validate, aut, hyperplanes, valuations, valgeom, check, report

Códigos de saída: 0 = todas as verificações aprovadas, 1 = divergência em
alguma verificação ou tabela (diferenças na saída de erro), 2 = erro de uso
ou de entrada/saída.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from core.exceptions import ClassificationError, GeometryError, GeometryFormatError, HexValError
from services.construction_service import construction_service
from services.report_service import HexagonPipeline, Report, report_service
from ui.report_formatter import FORMATOS, failure_summary, render
from utils.logger import setup_logger
from utils.pdf_generator import pdf_generator
from utils.validators import validators

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2

GEOMETRIAS = ('h2', 'h2dual', 'h21')
GEOMETRIAS_TABELADAS = ('h2dual', 'h2')


class UsageError(HexValError):
    """Combinação de opções inválida"""


def _adicionar_fonte(parser: argparse.ArgumentParser, obrigatoria: bool = True):
    grupo = parser.add_mutually_exclusive_group(required=obrigatoria)
    grupo.add_argument('--geometry', choices=GEOMETRIAS, help='geometria embutida')
    grupo.add_argument('--in', dest='in_file', metavar='ARQUIVO',
                       help='geometria no formato texto')
    return grupo


def _adicionar_saida(parser: argparse.ArgumentParser):
    parser.add_argument('--format', choices=FORMATOS, default='text', help='formato de saída')
    parser.add_argument('--out', metavar='ARQUIVO', help='arquivo de saída (padrão: stdout)')
    parser.add_argument('--timings', action='store_true', help='inclui os tempos de cada etapa')


def criar_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hexval',
        description='Valorações e geometrias de valorações dos hexágonos generalizados de ordem 2',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('build', help='constrói uma geometria e grava no formato texto')
    p.add_argument('--geometry', choices=GEOMETRIAS, required=True)
    p.add_argument('--out', metavar='ARQUIVO')

    p = sub.add_parser('validate', help='verifica os axiomas de uma geometria')
    _adicionar_fonte(p)
    _adicionar_saida(p)

    p = sub.add_parser('aut', help='grupo de automorfismos')
    _adicionar_fonte(p)
    _adicionar_saida(p)

    p = sub.add_parser('hyperplanes', help='enumeração e classes de hiperplanos')
    _adicionar_fonte(p)
    _adicionar_saida(p)
    p.add_argument('--classes', action='store_true', help='classes a menos de automorfismo')

    p = sub.add_parser('valuations', help='tabela de tipos de valorações')
    _adicionar_fonte(p)
    _adicionar_saida(p)
    p.add_argument('--table', action='store_true', help='tabela de tipos (Type, #, M_f, |O_f|, |H_f|)')

    p = sub.add_parser('valgeom', help='geometria de valorações')
    _adicionar_fonte(p)
    _adicionar_saida(p)
    p.add_argument('--lines-table', action='store_true', help='tabela de tipos de retas')

    p = sub.add_parser('check', help='axiomas, cota de pontos, ovoides ou verificações de V\'')
    _adicionar_fonte(p)
    _adicionar_saida(p)
    p.add_argument('--lemma', choices=('3.1',), help='verificações da subgeometria V\' de H^D(2)')

    p = sub.add_parser('report', help='relatório completo com comparação às tabelas')
    grupo = _adicionar_fonte(p, obrigatoria=False)
    grupo.add_argument('--all', action='store_true', help='H^D(2) e H(2)')
    _adicionar_saida(p)

    return parser


def _pipeline(args) -> HexagonPipeline:
    if args.in_file:
        return report_service.pipeline_for(validators.read_geometry(args.in_file))
    return report_service.pipeline(args.geometry)


def _cmd_build(args) -> int:
    g = construction_service.by_name(args.geometry)
    if args.out:
        validators.write_geometry(g, args.out)
        logger.info(f"{g.name} gravada em {args.out}")
    else:
        sys.stdout.write(validators.format_geometry(g))
    return EXIT_OK


def _cmd_validate(args) -> List[Report]:
    if args.geometry:
        return [report_service.validation_report(construction_service.by_name(args.geometry))]
    try:
        g = validators.read_geometry(args.in_file)
    except GeometryFormatError:
        raise
    except GeometryError as e:
        # Arquivo bem formado mas que não define um espaço linear parcial
        relatorio = Report(geometry=Path(args.in_file).stem, command='validate')
        relatorio.checks['partial_linear_space'] = False
        relatorio.diffs.append(str(e))
        return [relatorio]
    return [report_service.validation_report(g)]


def _cmd_aut(args) -> List[Report]:
    return [report_service.aut_report(_pipeline(args), args.timings)]


def _cmd_hyperplanes(args) -> List[Report]:
    return [report_service.hyperplane_report(_pipeline(args), args.classes, args.timings)]


def _cmd_valuations(args) -> List[Report]:
    return [report_service.valuation_report(_pipeline(args), args.table, args.timings)]


def _cmd_valgeom(args) -> List[Report]:
    return [report_service.valgeom_report(_pipeline(args), args.lines_table, args.timings)]


def _cmd_check(args) -> List[Report]:
    return [report_service.check_report(_pipeline(args), args.lemma, args.timings)]


def _cmd_report(args) -> List[Report]:
    if args.all:
        nomes = GEOMETRIAS_TABELADAS
        return [report_service.build_report(report_service.pipeline(n), args.timings) for n in nomes]
    if not (args.geometry or args.in_file):
        raise UsageError("report exige --geometry, --in ou --all")
    return [report_service.build_report(_pipeline(args), args.timings)]


COMANDOS = {
    'validate': _cmd_validate,
    'aut': _cmd_aut,
    'hyperplanes': _cmd_hyperplanes,
    'valuations': _cmd_valuations,
    'valgeom': _cmd_valgeom,
    'check': _cmd_check,
    'report': _cmd_report,
}


def _emitir(reports: Sequence[Report], args):
    if args.format == 'pdf':
        if not args.out:
            raise UsageError("--format pdf exige --out")
        pdf_generator.gerar_pdf_relatorios(reports, args.out)
        return

    texto = render(reports, args.format)
    if args.out:
        with open(args.out, 'w', encoding='utf-8', newline='\n') as f:
            f.write(texto)
    else:
        sys.stdout.write(texto)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executa um subcomando

    Args:
        argv: argumentos sem o nome do programa (padrão: sys.argv[1:])

    Returns:
        Código de saída 0, 1 ou 2
    """
    parser = criar_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_ERROR

    setup_logger('')
    logger.info(f"Comando: {args.command}")

    try:
        if args.command == 'build':
            return _cmd_build(args)

        reports = COMANDOS[args.command](args)
        _emitir(reports, args)

    except ClassificationError as e:
        # Tabela recalculada inconsistente: divergência, não erro de uso
        logger.warning(f"❌ Inconsistência no comando {args.command}: {e}")
        print(f"divergência: {e}", file=sys.stderr)
        return EXIT_MISMATCH

    except (HexValError, OSError) as e:
        logger.error(f"Erro no comando {args.command}: {e}")
        print(f"erro: {e}", file=sys.stderr)
        return EXIT_ERROR

    falhas = [linha for r in reports for linha in failure_summary(r)]
    if falhas:
        for linha in falhas:
            print(linha, file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK
