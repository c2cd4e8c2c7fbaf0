"""
Testes de geometrias de valorações
Vizinhança, estrela, tabelas de tipos de retas e a subgeometria de pontos C do dual
"""

from collections import Counter
from dataclasses import replace

import pytest

from core import reference_tables as ref
from core.exceptions import ClassificationError, HexValError, NotNeighboringError
from services.automorphism_service import automorphism_service
from services.report_service import report_service
from services.valgeom_service import EQUAL, valgeom_service
from services.valuation_service import valuation_service


def _classica(g, x):
    return valuation_service.classical_valuation(g, x)


@pytest.fixture
def grid_vgeom(grid):
    grupo = automorphism_service.automorphism_group(grid)
    valoracoes = valuation_service.all_valuations(grid, grupo)
    classificacao = valuation_service.classify_valuations(grid, grupo, valoracoes)
    return valgeom_service.build_valuation_geometry(grid, valoracoes, classificacao)


@pytest.fixture(scope='module')
def vprime(h2dual_pipeline):
    return valgeom_service.restrict(h2dual_pipeline.valuation_geometry, ['C'], ['CCC'])


# ====================================================================
# TESTE 1: VIZINHANÇA E ESTRELA
# ====================================================================

def test_valoracoes_iguais(h21):
    f = _classica(h21, 0)
    assert valgeom_service.are_neighboring(f, f) == EQUAL
    assert valgeom_service.star(f, f) == f


def test_classicas_colineares_sao_vizinhas(h21):
    x, y, z = h21.lines[0]
    fx, fy, fz = _classica(h21, x), _classica(h21, y), _classica(h21, z)
    assert valgeom_service.are_neighboring(fx, fy) == 0
    assert valgeom_service.star(fx, fy) == fz
    assert valgeom_service.star(fy, fz) == fx


def test_classicas_opostas_nao_sao_vizinhas(h21):
    y = next(p for p in range(h21.num_points) if h21.distance(0, p) == 3)
    f1, f2 = _classica(h21, 0), _classica(h21, y)
    assert valgeom_service.are_neighboring(f1, f2) is None
    with pytest.raises(NotNeighboringError):
        valgeom_service.star(f1, f2)


def test_vizinhas_com_epsilon_nao_nulo(grid):
    # Clássica em 0 e ovoidal num ovoide por 0: f1 - f2 varia em {0, 1, 2}
    f1 = _classica(grid, 0)
    f2 = valuation_service.ovoidal_valuation(grid, [0, 4, 8])
    eps = valgeom_service.are_neighboring(f1, f2)
    assert eps == -1
    f3 = valgeom_service.star(f1, f2)
    assert valgeom_service.star(f1, f3) == f2
    assert valgeom_service.star(f2, f3) == f1


# ====================================================================
# TESTE 2: GEOMETRIA DE VALORAÇÕES
# ====================================================================

def test_geometria_vazia(grid):
    V = valgeom_service.build_valuation_geometry(grid, [])
    assert V.num_points == 0 and V.num_lines == 0


def test_geometria_da_grade(grid, grid_vgeom):
    V = grid_vgeom
    assert V.num_points == 15
    assert valgeom_service.check_star_algebra(V) is None
    assert V.geometry.num_points == 15

    classicas = valgeom_service.extract_subgeometry(V, ['A'], ['AAA'])
    assert classicas.num_lines == 6
    assert automorphism_service.are_isomorphic(classicas, grid) is not None


def test_estrela_detecta_reta_corrompida(grid_vgeom):
    V = grid_vgeom
    i, j, k = V.vlines[0]
    outro = next(p for p in range(V.num_points) if p not in (i, j, k))
    corrompida = replace(V, vlines=((i, j, outro),) + V.vlines[1:])
    assert valgeom_service.check_star_algebra(corrompida) == (i, j, outro)


def test_tabela_de_retas_exige_tipos(grid):
    valoracoes = valuation_service.all_valuations(grid)
    V = valgeom_service.build_valuation_geometry(grid, valoracoes)
    with pytest.raises(ClassificationError):
        valgeom_service.line_type_table(V)


def test_hexagono_2_1(h21_pipeline):
    V = h21_pipeline.valuation_geometry
    assert V.num_points == len(h21_pipeline.valuations)
    assert valgeom_service.check_star_algebra(V) is None
    tabela = h21_pipeline.line_table
    contagem = valgeom_service.double_counting(V, tabela)
    assert sum(contagem.values()) == V.num_lines


# ====================================================================
# TESTE 3: TABELAS DE TIPOS DE RETAS
# ====================================================================

@pytest.mark.slow
@pytest.mark.parametrize('nome, tabela', [
    ('h2dual_pipeline', ref.LINES_H2_DUAL),
    ('h2_pipeline', ref.LINES_H2),
])
def test_tabela_de_retas(nome, tabela, request):
    pipeline = request.getfixturevalue(nome)
    V = pipeline.valuation_geometry
    assert valgeom_service.check_star_algebra(V) is None

    obtida = pipeline.line_table
    assert [tipo for tipo, _ in obtida.rows] == list(tabela)
    assert obtida.as_dict() == tabela

    contagem = valgeom_service.double_counting(V, obtida)
    assert contagem == dict(Counter(V.line_types))
    assert contagem['AAA'] == 63


@pytest.mark.slow
def test_contagens_do_dual(h2dual_pipeline):
    V = h2dual_pipeline.valuation_geometry
    tabela = h2dual_pipeline.line_table
    contagem = valgeom_service.double_counting(V, tabela)
    assert contagem['CCC'] == 672
    assert contagem['CCD'] == 5040
    assert tabela.count('ADD', 'A') == 24


@pytest.mark.slow
def test_contagem_dupla_detecta_tabela_errada(h2dual_pipeline):
    V = h2dual_pipeline.valuation_geometry
    tabela = h2dual_pipeline.line_table
    linhas = tuple(
        (tipo, {**celulas, 'C': celulas['C'] + 1}) if tipo == 'CCC' else (tipo, celulas)
        for tipo, celulas in tabela.rows
    )
    with pytest.raises(ClassificationError):
        valgeom_service.double_counting(V, replace(tabela, rows=linhas))


@pytest.mark.slow
@pytest.mark.parametrize('nome', ['h2dual_pipeline', 'h2_pipeline'])
def test_subgeometria_classica_e_o_hospedeiro(nome, request):
    pipeline = request.getfixturevalue(nome)
    sub = valgeom_service.extract_subgeometry(pipeline.valuation_geometry, ['A'], ['AAA'])
    assert (sub.num_points, sub.num_lines) == (63, 63)
    assert automorphism_service.are_isomorphic(sub, pipeline.geometry, pipeline.group) is not None


# ====================================================================
# TESTE 4: SUBGEOMETRIA DE PONTOS C E RETAS CCC DO DUAL
# ====================================================================

@pytest.mark.slow
def test_subgeometria_c(vprime, h2dual):
    assert vprime.num_points == ref.VPRIME_POINTS
    assert vprime.num_lines == ref.VPRIME_LINES

    relatorio = valgeom_service.check_lemma_3_1(vprime, h2dual)
    assert relatorio.all_passed
    assert relatorio.grid_count == 252 * 16 // 9
    assert relatorio.witnesses == {}


@pytest.mark.slow
def test_subgeometria_c_corrompida(vprime, h2dual):
    """Controle negativo: reta ligando dois pontos C com o mesmo zero"""
    p, q, r = vprime.vlines[0]
    zero_p = vprime.vpoints[p].zero_set
    s = next(i for i, f in enumerate(vprime.vpoints) if i != p and f.zero_set == zero_p)
    corrompida = replace(vprime, vlines=((p, s, r),) + vprime.vlines[1:])

    ok, testemunha = valgeom_service.check_collinear_zero_distance(corrompida, h2dual)
    assert not ok
    assert testemunha == (p, s)


@pytest.mark.slow
def test_verificacoes_do_lema_no_relatorio(h2dual_pipeline, h21_pipeline):
    checks = report_service.lemma_checks(h2dual_pipeline)
    assert all(checks.values())
    with pytest.raises(HexValError):
        report_service.lemma_checks(h21_pipeline)
