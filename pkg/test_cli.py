"""
Testes da linha de comando
Códigos de saída, formatos de saída e determinismo
"""

import json

import pytest

from core.exceptions import ClassificationError
from core.geometry import fano_plane
from services.report_service import Report
from services.valgeom_service import valgeom_service
from services.valuation_service import valuation_service
from ui.cli import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, run
from utils.validators import validators


def _executar(capsys, *argv):
    codigo = run(list(argv))
    saida = capsys.readouterr()
    return codigo, saida.out, saida.err


# ====================================================================
# TESTE 1: BUILD E VALIDATE
# ====================================================================

def test_build_na_saida_padrao(capsys, h21):
    codigo, saida, _ = _executar(capsys, 'build', '--geometry', 'h21')
    assert codigo == EXIT_OK
    assert saida.startswith('points 21\n')
    assert validators.parse_geometry(saida) == h21


def test_build_em_arquivo(capsys, tmp_path, h21):
    destino = tmp_path / 'h21.geom'
    codigo, saida, _ = _executar(capsys, 'build', '--geometry', 'h21', '--out', str(destino))
    assert codigo == EXIT_OK
    assert saida == ''
    assert validators.read_geometry(destino) == h21


def test_validate_geometria_embutida(capsys):
    codigo, saida, _ = _executar(capsys, 'validate', '--geometry', 'h21', '--format', 'json')
    assert codigo == EXIT_OK
    dados = json.loads(saida)
    assert dados['command'] == 'validate'
    assert dados['checks'] == {'connected': True, 'near_polygon': True}
    assert dados['info']['diameter'] == 3
    assert dados['info']['distance_distribution'] == [1, 4, 8, 8]


def test_validate_arquivo_que_nao_e_near_polygon(capsys, tmp_path):
    arquivo = validators.write_geometry(fano_plane(), tmp_path / 'fano.geom')
    codigo, _, erro = _executar(capsys, 'validate', '--in', str(arquivo))
    assert codigo == EXIT_MISMATCH
    assert 'NP2: ponto 2, reta [0, 1, 3]' in erro


def test_validate_arquivo_sem_espaco_linear_parcial(capsys, tmp_path):
    arquivo = tmp_path / 'duas_retas.geom'
    arquivo.write_text('points 4\n0 1 2\n0 1 3\n', encoding='utf-8')
    codigo, saida, _ = _executar(capsys, 'validate', '--in', str(arquivo), '--format', 'json')
    assert codigo == EXIT_MISMATCH
    assert json.loads(saida)['checks'] == {'partial_linear_space': False}


@pytest.mark.parametrize('conteudo', ['pontos 4\n', 'points 4\n0 x 2\n'])
def test_validate_arquivo_malformado(capsys, tmp_path, conteudo):
    arquivo = tmp_path / 'ruim.geom'
    arquivo.write_text(conteudo, encoding='utf-8')
    codigo, _, erro = _executar(capsys, 'validate', '--in', str(arquivo))
    assert codigo == EXIT_ERROR
    assert 'erro:' in erro


def test_arquivo_inexistente(capsys, tmp_path):
    codigo, _, _ = _executar(capsys, 'validate', '--in', str(tmp_path / 'nao_existe.geom'))
    assert codigo == EXIT_ERROR


# ====================================================================
# TESTE 2: ERROS DE USO
# ====================================================================

@pytest.mark.parametrize('argv', [
    [],
    ['desconhecido'],
    ['aut', '--geometry', 'h3'],
    ['aut'],
    ['check', '--geometry', 'h21', '--lemma', '9.9'],
    ['report'],
])
def test_erros_de_uso(capsys, argv):
    codigo, _, _ = _executar(capsys, *argv)
    assert codigo == EXIT_ERROR


def test_ajuda(capsys):
    codigo, saida, _ = _executar(capsys, '--help')
    assert codigo == EXIT_OK
    assert 'valuations' in saida


def test_lema_em_geometria_errada(capsys):
    codigo, _, erro = _executar(capsys, 'check', '--geometry', 'h21', '--lemma', '3.1')
    assert codigo == EXIT_ERROR
    assert 'H^D(2)' in erro


def test_pdf_exige_out(capsys):
    codigo, _, _ = _executar(capsys, 'aut', '--geometry', 'h21', '--format', 'pdf')
    assert codigo == EXIT_ERROR


# ====================================================================
# TESTE 3: SUBCOMANDOS NO HEXÁGONO (2,1)
# ====================================================================

def test_aut(capsys):
    codigo, saida, _ = _executar(capsys, 'aut', '--geometry', 'h21', '--format', 'json')
    assert codigo == EXIT_OK
    dados = json.loads(saida)
    assert dados['aut_order'] == 336
    assert dados['info']['point_transitive'] is True


def test_hyperplanes(capsys, h21_pipeline):
    codigo, saida, _ = _executar(capsys, 'hyperplanes', '--geometry', 'h21', '--classes',
                                 '--format', 'json')
    assert codigo == EXIT_OK
    dados = json.loads(saida)['hyperplanes']
    assert dados['total'] == len(h21_pipeline.hyperplanes)
    assert sum(c['orbit_size'] for c in dados['classes']) == dados['total']


def test_valuations_csv(capsys, h21_pipeline):
    codigo, saida, _ = _executar(capsys, 'valuations', '--geometry', 'h21', '--table',
                                 '--format', 'csv')
    assert codigo == EXIT_OK
    linhas = saida.splitlines()
    assert linhas[0] == '# valuations'
    assert linhas[1] == 'Type,#,M_f,|O_f|,|H_f|,Value Distribution'
    assert len(linhas) >= 2 + len(h21_pipeline.classification.types)


def test_valgeom_texto(capsys):
    codigo, saida, _ = _executar(capsys, 'valgeom', '--geometry', 'h21', '--lines-table')
    assert codigo == EXIT_OK
    assert saida.startswith('== H(2,1) (valgeom) ==')
    assert 'Line type' in saida
    assert 'star_algebra' in saida and 'FALHOU' not in saida


def test_check(capsys):
    codigo, saida, _ = _executar(capsys, 'check', '--geometry', 'h21', '--format', 'json')
    assert codigo == EXIT_OK
    dados = json.loads(saida)
    assert dados['checks'] == {'generalized_hexagon': True, 'point_bound': True}


def test_report_deterministico(capsys):
    _, primeira, _ = _executar(capsys, 'report', '--geometry', 'h21', '--format', 'json')
    codigo, segunda, _ = _executar(capsys, 'report', '--geometry', 'h21', '--format', 'json')
    assert codigo == EXIT_OK
    assert primeira == segunda

    dados = json.loads(primeira)
    assert 'timings' not in dados
    assert Report.from_dict(dados).to_dict() == dados


def test_report_texto_na_mesma_ordem_do_json(capsys):
    _, saida_json, _ = _executar(capsys, 'report', '--geometry', 'h21', '--format', 'json')
    _, saida_texto, _ = _executar(capsys, 'report', '--geometry', 'h21')
    tipos = [r['type'] for r in json.loads(saida_json)['tables']['lines']]
    linhas = saida_texto.splitlines()
    posicoes = [next(i for i, linha in enumerate(linhas) if linha.split()[:1] == [t]) for t in tipos]
    assert posicoes == sorted(posicoes)


def test_report_com_tempos(capsys):
    codigo, saida, _ = _executar(capsys, 'report', '--geometry', 'h21', '--format', 'json', '--timings')
    assert codigo == EXIT_OK
    assert isinstance(json.loads(saida)['timings'], dict)


def test_report_pdf(capsys, tmp_path):
    destino = tmp_path / 'h21.pdf'
    codigo, _, _ = _executar(capsys, 'report', '--geometry', 'h21', '--format', 'pdf',
                             '--out', str(destino))
    assert codigo == EXIT_OK
    assert destino.read_bytes().startswith(b'%PDF')


def test_report_de_arquivo(capsys, tmp_path, h21):
    arquivo = validators.write_geometry(h21, tmp_path / 'hex21.geom')
    codigo, saida, _ = _executar(capsys, 'report', '--in', str(arquivo), '--format', 'json')
    assert codigo == EXIT_OK
    assert json.loads(saida)['geometry'] == 'hex21'


@pytest.mark.parametrize('servico, metodo, comando', [
    (valgeom_service, 'line_type_table', ['valgeom', '--lines-table']),
    (valuation_service, 'classify_valuations', ['valuations', '--table']),
])
def test_inconsistencia_de_tabela_e_divergencia(capsys, tmp_path, monkeypatch, h21,
                                                 servico, metodo, comando):
    def falha(*args, **kwargs):
        raise ClassificationError("contagem de retas ABB não constante no tipo A: 2 != 3")

    monkeypatch.setattr(servico, metodo, falha)
    arquivo = validators.write_geometry(h21, tmp_path / 'hex21.geom')
    codigo, saida, erro = _executar(capsys, *comando, '--in', str(arquivo))
    assert codigo == EXIT_MISMATCH
    assert saida == ''
    assert 'contagem de retas ABB não constante no tipo A: 2 != 3' in erro


# ====================================================================
# TESTE 4: TABELAS DE REFERÊNCIA
# ====================================================================

@pytest.mark.slow
def test_report_dual(capsys):
    codigo, saida, erro = _executar(capsys, 'report', '--geometry', 'h2dual', '--format', 'json')
    assert codigo == EXIT_OK, erro
    dados = json.loads(saida)
    assert dados['aut_order'] == 12096
    assert dados['diffs'] == []
    assert [(r['type'], r['count']) for r in dados['tables']['valuations']] == \
        [('A', 63), ('B', 252), ('C', 252), ('D', 1008)]
    assert dados['tables']['lines'][0] == {'type': 'AAA', 'counts': {'A': 3}}
    assert dados['checks']['lemma_3_1_triangle_free'] is True


@pytest.mark.slow
def test_lema_no_dual(capsys):
    codigo, saida, _ = _executar(capsys, 'check', '--geometry', 'h2dual', '--lemma', '3.1',
                                 '--format', 'json')
    assert codigo == EXIT_OK
    checks = json.loads(saida)['checks']
    assert checks['vprime_points'] and checks['vprime_lines']
    assert all(checks.values())


@pytest.mark.slow
def test_report_all(capsys):
    codigo, saida, _ = _executar(capsys, 'report', '--all', '--format', 'json')
    assert codigo == EXIT_OK
    relatorios = json.loads(saida)['reports']
    assert [r['geometry'] for r in relatorios] == ['H^D(2)', 'H(2)']
    assert relatorios[1]['hyperplanes']['classes'] and len(relatorios[1]['hyperplanes']['classes']) == 25
    assert relatorios[1]['info']['ovoids'] == 36
