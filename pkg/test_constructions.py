"""
Testes das construções de H(2), H^D(2) e do hexágono de ordem (2,1)
"""

import importlib
from random import Random

import pytest

from core.exceptions import ConstructionError, HexValError
from core.geometry import (
    attains_point_bound,
    check_generalized_hexagon,
    distance_distribution,
    find_ovoids,
    order_of,
)
from core.reference_tables import OVOIDS
from services.automorphism_service import automorphism_service
from services.construction_service import QuadricModel, construction_service

# O pacote services reexporta a instância construction_service, que encobre o
# atributo do submódulo; importlib devolve o módulo em si
construcao = importlib.import_module('services.construction_service')


# ====================================================================
# TESTE 1: MODELO NA QUÁDRICA
# ====================================================================

def test_quadrica_parabolica():
    modelo = construction_service.quadric_model()
    assert modelo.num_points == 63
    assert all(QuadricModel.quadric_form(x) == 0 for x in modelo.point_coords)
    assert len(modelo.singular_lines()) == 315


def test_retas_do_hexagono_sao_singulares(h2):
    modelo = construction_service.quadric_model()
    singulares = set(modelo.singular_lines())
    assert all(reta in singulares for reta in h2.lines)
    assert all(modelo.is_hexagon_line(reta) for reta in h2.lines)
    assert sum(1 for reta in singulares if modelo.is_hexagon_line(reta)) == 63


def test_identidades_erradas_sem_busca(monkeypatch):
    monkeypatch.setattr(construcao, 'IDENTIDADES_GRASSMANN', ())
    with pytest.raises(ConstructionError):
        construction_service.build_h2(fallback=False)


# ====================================================================
# TESTE 2: OS DOIS HEXÁGONOS DE ORDEM 2
# ====================================================================

@pytest.mark.parametrize('nome', ['h2', 'h2dual'])
def test_axiomas_de_hexagono(nome, request):
    g = request.getfixturevalue(nome)
    assert g.num_points == 63
    assert g.num_lines == 63
    assert order_of(g).as_tuple() == (2, 2)
    assert check_generalized_hexagon(g)
    assert attains_point_bound(g)
    assert all(distance_distribution(g, p) == [1, 6, 24, 32] for p in range(63))


def test_nomes(h2, h2dual, h21):
    assert (h2.name, h2dual.name, h21.name) == ('H(2)', 'H^D(2)', 'H(2,1)')


@pytest.mark.slow
def test_ovoides(h2_pipeline, h2dual_pipeline):
    assert len(h2_pipeline.ovoids) == OVOIDS['H(2)'] == 36
    assert len(h2dual_pipeline.ovoids) == OVOIDS['H^D(2)'] == 0
    for ovoide in h2_pipeline.ovoids:
        assert len(ovoide) == 21
        assert all(len(set(reta) & set(ovoide)) == 1 for reta in h2_pipeline.geometry.lines)


def test_dual_construido_a_partir_de_h2(h2, h2dual):
    assert construction_service.build_h2_dual(h2) == h2dual


@pytest.mark.slow
def test_h2_e_dual_nao_isomorfos(h2, h2dual, h2dual_pipeline):
    assert automorphism_service.are_isomorphic(h2, h2dual, h2dual_pipeline.group) is None


def test_construcao_deterministica(h2):
    assert construction_service.build_h2() == h2


# ====================================================================
# TESTE 3: BUSCA COM RETROCESSO
# ====================================================================

def test_busca_reencontra_h2(h2):
    candidatas = list(h2.lines)
    Random(5).shuffle(candidatas)
    assert construction_service.search_h2(candidatas) == h2


def test_busca_sem_uma_reta_falha(h2):
    with pytest.raises(ConstructionError):
        construction_service.search_h2(list(h2.lines[1:]))


# ====================================================================
# TESTE 4: HEXÁGONO DE ORDEM (2,1)
# ====================================================================

def test_hexagono_2_1(h21):
    assert h21.num_points == 21
    assert h21.num_lines == 14
    assert order_of(h21).as_tuple() == (2, 1)
    assert check_generalized_hexagon(h21)


def test_ovoides_do_hexagono_2_1(h21):
    for ovoide in find_ovoids(h21):
        assert all(len(set(reta) & set(ovoide)) == 1 for reta in h21.lines)


def test_by_name():
    assert construction_service.by_name(' H21 ').num_points == 21
    with pytest.raises(HexValError):
        construction_service.by_name('h3')
