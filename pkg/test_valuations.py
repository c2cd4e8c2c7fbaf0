"""
Testes de valorações
Propagação, valorações de um hiperplano, enumeração completa e tabelas de tipos
"""

import networkx as nx
import pytest

from core import reference_tables as ref
from core.exceptions import ClassificationError, GeometryError
from core.geometry import build
from core.perm import trivial_group
from services.automorphism_service import automorphism_service
from services.hyperplane_service import hyperplane_service
from services.valuation_service import FAIL, PartialValuation, Valuation, valuation_service


def _reta_valida(vals) -> bool:
    vals = sorted(vals)
    return vals[0] != vals[1] and all(v == vals[0] + 1 for v in vals[1:])


def _valoracoes_forca_bruta(g):
    """
    Todas as funções com mínimo 0 e valores até o diâmetro que satisfazem a
    regra das retas, por retrocesso em ordem de busca em largura
    """
    ordem = [0] + [v for _, v in nx.bfs_edges(g.collinearity_graph, 0)]
    valores = [None] * g.num_points
    encontradas = set()

    def compativel(p) -> bool:
        for li in g.lines_through[p]:
            conhecidos = [valores[q] for q in g.lines[li] if valores[q] is not None]
            if len(conhecidos) == 2 and abs(conhecidos[0] - conhecidos[1]) > 1:
                return False
            if len(conhecidos) == 3 and not _reta_valida(conhecidos):
                return False
        return True

    def buscar(i):
        if i == len(ordem):
            if min(valores) == 0:
                encontradas.add(tuple(valores))
            return
        p = ordem[i]
        for v in range(g.diameter + 1):
            valores[p] = v
            if compativel(p):
                buscar(i + 1)
        valores[p] = None

    buscar(0)
    return encontradas


# ====================================================================
# TESTE 1: VALORAÇÕES ELEMENTARES
# ====================================================================

def test_valoracao_classica(grid, h21):
    assert valuation_service.classical_valuation(grid, 4).values == (2, 1, 2, 1, 0, 1, 2, 1, 2)
    f = valuation_service.classical_valuation(h21, 0)
    assert f.max_value == 3
    assert f.zero_set == (0,)
    assert len(f.hyperplane) == 13


def test_valoracao_ovoidal(grid):
    f = valuation_service.ovoidal_valuation(grid, [0, 4, 8])
    assert f.values == (0, 1, 1, 1, 0, 1, 1, 1, 0)
    assert f.hyperplane == (0, 4, 8)


def test_valoracao_invalida(grid):
    with pytest.raises(GeometryError):
        Valuation(grid, (1,) * 9)
    with pytest.raises(GeometryError):
        Valuation(grid, (0,) * 9)
    with pytest.raises(GeometryError):
        Valuation(grid, (0, 1, 1))
    assert not valuation_service.is_semi_valuation(grid, (0,) * 9)


def test_estatisticas(grid):
    stats = valuation_service.valuation_stats(valuation_service.ovoidal_valuation(grid, [0, 4, 8]))
    assert stats.max_value == 1
    assert stats.zero_set == (0, 4, 8)
    assert stats.distribution == (3, 6, 0)


# ====================================================================
# TESTE 2: PROPAGAÇÃO
# ====================================================================

def test_assign_value_numa_reta(line):
    pv = valuation_service.assign_value(PartialValuation.empty(line), 0, 0)
    assert pv.values == (0, None, None)
    assert pv.defined_set == (0,)

    assert valuation_service.assign_value(pv, 1, 0).values == (0, 0, -1)
    assert valuation_service.assign_value(pv, 1, 1).values == (0, 1, 1)
    assert valuation_service.assign_value(pv, 1, 2) is FAIL


def test_assign_value_ponto_ja_definido(line):
    pv = valuation_service.assign_value(PartialValuation.empty(line), 0, 0)
    assert valuation_service.assign_value(pv, 0, 0) is pv
    assert valuation_service.assign_value(pv, 0, 1) is FAIL
    assert not FAIL


def test_propagacao_na_grade(grid):
    # Zeros no complemento do perp de 0 forçam a valoração clássica
    pv = valuation_service.seed(grid, [4, 5, 7, 8])
    assert pv.is_total()
    assert tuple(v + 2 for v in pv.values) == valuation_service.classical_valuation(grid, 0).values


def test_semente_contraditoria(grid):
    assert valuation_service.seed(grid, [0, 1, 2]) is FAIL


def test_propagacao_exige_retas_de_3():
    with pytest.raises(GeometryError):
        valuation_service.seed(build(3, [(0, 1), (1, 2)]), [0])


# ====================================================================
# TESTE 3: VALORAÇÕES DE UM HIPERPLANO
# ====================================================================

def test_valoracoes_dos_hiperplanos_da_grade(grid):
    perp = hyperplane_service.from_members(grid, [0, 1, 2, 3, 6])
    assert valuation_service.valuations_from_hyperplane(grid, perp) == \
        [valuation_service.classical_valuation(grid, 0)]

    ovoide = hyperplane_service.from_members(grid, [0, 4, 8])
    assert valuation_service.valuations_from_hyperplane(grid, ovoide) == \
        [valuation_service.ovoidal_valuation(grid, [0, 4, 8])]


def test_hiperplano_singular_de_h2(h2):
    x = 7
    singular = hyperplane_service.from_members(
        h2, [p for p in range(h2.num_points) if h2.distance(x, p) <= 2]
    )
    assert valuation_service.valuations_from_hyperplane(h2, singular) == \
        [valuation_service.classical_valuation(h2, x)]


# ====================================================================
# TESTE 4: ENUMERAÇÃO CONFERIDA POR FORÇA BRUTA
# ====================================================================

@pytest.mark.parametrize('nome', ['grid', 'h21'])
def test_todas_as_valoracoes_por_forca_bruta(nome, request):
    g = request.getfixturevalue(nome)
    obtidas = {f.values for f in valuation_service.all_valuations(g)}
    assert obtidas == _valoracoes_forca_bruta(g)


def test_enumeracao_com_grupo_coincide(grid, h21_pipeline):
    grupo = automorphism_service.automorphism_group(grid)
    assert valuation_service.all_valuations(grid, grupo) == valuation_service.all_valuations(grid)

    h21 = h21_pipeline.geometry
    assert h21_pipeline.valuations == valuation_service.all_valuations(h21)


def test_tipos_da_grade(grid):
    grupo = automorphism_service.automorphism_group(grid)
    valoracoes = valuation_service.all_valuations(grid, grupo)
    assert len(valoracoes) == 15
    classificacao = valuation_service.classify_valuations(grid, grupo, valoracoes)
    assert [t.as_row() for t in classificacao.types] == [
        ('A', 9, 2, 1, 5, (1, 4, 4)),
        ('B', 6, 1, 3, 3, (3, 6, 0)),
    ]
    assert classificacao.label_of(valuation_service.classical_valuation(grid, 3)) == 'A'


def test_classificacao_exige_orbitas(grid):
    valoracoes = valuation_service.all_valuations(grid)
    with pytest.raises(ClassificationError):
        valuation_service.classify_valuations(grid, trivial_group(9), valoracoes)


# ====================================================================
# TESTE 5: TABELAS DE VALORAÇÕES DOS HEXÁGONOS DE ORDEM 2
# ====================================================================

@pytest.mark.slow
@pytest.mark.parametrize('nome, tabela, total', [
    ('h2dual_pipeline', ref.VALUATIONS_H2_DUAL, 1575),
    ('h2_pipeline', ref.VALUATIONS_H2, 1431),
])
def test_tabela_de_valoracoes(nome, tabela, total, request):
    pipeline = request.getfixturevalue(nome)
    assert len(pipeline.valuations) == total
    assert [t.as_row() for t in pipeline.classification.types] == list(tabela)
    assert all(f.max_value <= 3 for f in pipeline.valuations)
    g = pipeline.geometry
    assert all(hyperplane_service.is_hyperplane(g, sum(1 << p for p in f.hyperplane))
               for f in pipeline.valuations)


@pytest.mark.slow
@pytest.mark.parametrize('nome, tipo_duplo', [
    ('h2dual_pipeline', 'B'),
    ('h2_pipeline', 'B4'),
])
def test_hiperplano_com_duas_valoracoes(nome, tipo_duplo, request):
    pipeline = request.getfixturevalue(nome)
    por_classe = pipeline.valuations_per_class
    assert sum(1 for n in por_classe if n) == ref.HYPERPLANE_CLASSES[pipeline.geometry.name][1]
    assert sorted(n for n in por_classe if n > 1) == [2]

    classe = pipeline.hyperplane_classes[por_classe.index(2)]
    f1, f2 = valuation_service.valuations_from_hyperplane(pipeline.geometry, classe.representative)
    assert pipeline.classification.label_of(f1) == pipeline.classification.label_of(f2) == tipo_duplo
    assert f2.values in set(pipeline.group.orbit_of_function(f1.values))
