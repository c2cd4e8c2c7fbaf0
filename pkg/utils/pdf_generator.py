"""
Gerador de PDF para relatórios
Utiliza fpdf2 para criar PDFs com as tabelas reproduzidas
"""

import logging
from fpdf import FPDF

from core.settings import settings
from utils.validators import validators

logger = logging.getLogger(__name__)

COLUNAS_VALORACOES = (('Type', 20), ('#', 20), ('M_f', 18), ('|O_f|', 20), ('|H_f|', 20),
                      ('Value Distribution', 60))


class ReportPDFGenerator:
    """
    Classe para gerar PDFs de relatórios
    """

    def __init__(self):
        """Inicializa o gerador de PDF"""
        self.titulo = settings.report_title

    def gerar_pdf_relatorio(self, report, output_path: str) -> str:
        """
        Gera PDF de um relatório

        Args:
            report: Report já calculado
            output_path: Caminho do arquivo de saída

        Returns:
            Caminho do arquivo PDF gerado
        """
        return self.gerar_pdf_relatorios([report], output_path)

    def gerar_pdf_relatorios(self, reports, output_path: str) -> str:
        """Gera um PDF com uma página (ou mais) por relatório"""
        try:
            pdf = FPDF()
            pdf.set_auto_page_break(auto=True, margin=15)

            for report in reports:
                pdf.add_page()
                self._adicionar_cabecalho(pdf, report)
                self._adicionar_tabela_valoracoes(pdf, report)
                self._adicionar_tabela_retas(pdf, report)
                self._adicionar_hiperplanos(pdf, report)
                self._adicionar_verificacoes(pdf, report)
                self._adicionar_rodape(pdf, report)

            pdf.output(output_path)

            logger.info(f"PDF gerado: {output_path}")
            return output_path

        except Exception as e:
            logger.error(f"Erro ao gerar PDF: {e}")
            raise

    def _adicionar_cabecalho(self, pdf, report):
        """Adiciona título e geometria"""
        pdf.set_font('Helvetica', 'B', 14)
        pdf.multi_cell(0, 8, self.titulo, align='C')

        pdf.set_font('Helvetica', 'I', 10)
        subtitulo = f'Geometria: {report.geometry}'
        if report.aut_order is not None:
            subtitulo += f'   |Aut| = {report.aut_order}'
        pdf.cell(0, 6, subtitulo, new_x='LMARGIN', new_y='NEXT', align='C')

        pdf.ln(3)
        pdf.set_draw_color(0, 0, 0)
        pdf.line(10, pdf.get_y(), 200, pdf.get_y())
        pdf.ln(6)

    def _titulo_secao(self, pdf, texto):
        pdf.set_font('Helvetica', 'B', 12)
        pdf.set_fill_color(200, 200, 200)
        pdf.cell(0, 8, texto, new_x='LMARGIN', new_y='NEXT', fill=True)
        pdf.ln(2)

    def _adicionar_tabela_valoracoes(self, pdf, report):
        """Adiciona a tabela de valorações"""
        linhas = report.tables.get('valuations', [])
        if not linhas:
            return
        self._titulo_secao(pdf, 'VALORACOES')

        pdf.set_font('Helvetica', 'B', 10)
        for nome, largura in COLUNAS_VALORACOES:
            pdf.cell(largura, 6, nome, border=1, align='C')
        pdf.ln()

        pdf.set_font('Helvetica', '', 10)
        for linha in linhas:
            valores = (linha['type'], linha['count'], linha['max_value'], linha['zero_count'],
                       linha['hyperplane_size'], validators.formatar_distribuicao(linha['distribution']))
            for (_, largura), valor in zip(COLUNAS_VALORACOES, valores):
                pdf.cell(largura, 6, str(valor), border=1, align='C')
            pdf.ln()
        pdf.ln(4)

    def _adicionar_tabela_retas(self, pdf, report):
        """Adiciona a tabela de tipos de retas"""
        linhas = report.tables.get('lines', [])
        if not linhas:
            return
        self._titulo_secao(pdf, 'RETAS DA GEOMETRIA DE VALORACOES')

        tipos_ponto = [t['type'] for t in report.tables.get('valuations', [])]
        largura_tipo = 30
        largura = min(20, (190 - largura_tipo) / max(1, len(tipos_ponto)))

        pdf.set_font('Helvetica', 'B', 9)
        pdf.cell(largura_tipo, 6, 'Line type', border=1, align='C')
        for tipo in tipos_ponto:
            pdf.cell(largura, 6, tipo, border=1, align='C')
        pdf.ln()

        pdf.set_font('Helvetica', '', 9)
        for linha in linhas:
            pdf.cell(largura_tipo, 6, linha['type'], border=1, align='C')
            for tipo in tipos_ponto:
                valor = linha['counts'].get(tipo)
                pdf.cell(largura, 6, '' if valor is None else str(valor), border=1, align='C')
            pdf.ln()
        pdf.ln(4)

    def _adicionar_hiperplanos(self, pdf, report):
        """Adiciona o resumo das classes de hiperplanos"""
        if not report.hyperplanes:
            return
        self._titulo_secao(pdf, 'HIPERPLANOS')
        classes = report.hyperplanes.get('classes', [])
        com_valoracoes = sum(1 for c in classes if c['valuations'])

        pdf.set_font('Helvetica', '', 10)
        pdf.cell(0, 6, f"Total: {report.hyperplanes.get('total')}   Classes: {len(classes)}   "
                       f"Com valoracoes: {com_valoracoes}",
                 new_x='LMARGIN', new_y='NEXT')
        pdf.ln(4)

    def _adicionar_verificacoes(self, pdf, report):
        """Adiciona verificações e diferenças"""
        self._titulo_secao(pdf, 'VERIFICACOES')
        pdf.set_font('Helvetica', '', 10)
        for nome, ok in report.checks.items():
            pdf.cell(90, 6, nome)
            pdf.set_font('Helvetica', 'B', 10)
            pdf.cell(0, 6, 'OK' if ok else 'FALHOU', new_x='LMARGIN', new_y='NEXT')
            pdf.set_font('Helvetica', '', 10)

        for diff in report.diffs:
            pdf.multi_cell(0, 5, diff)

    def _adicionar_rodape(self, pdf, report):
        """Adiciona rodapé"""
        pdf.set_y(-30)
        pdf.set_font('Helvetica', 'I', 8)
        situacao = 'todas as verificacoes aprovadas' if report.passed else 'ha divergencias'
        pdf.cell(0, 5, f'Relatorio {report.command} - {situacao}', align='C')


# Instância global
pdf_generator = ReportPDFGenerator()
