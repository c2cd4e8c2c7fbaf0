"""
Testes de hiperplanos: enumeração pelo núcleo e classes sob automorfismos
"""

import pytest

from core import reference_tables as ref
from core.exceptions import GeometryError, LinearAlgebraError
from core.gf2 import nullspace_reversed, rank
from core.geometry import build, fano_plane
from core.settings import settings
from services.automorphism_service import automorphism_service
from services.hyperplane_service import hyperplane_service


def _todos_os_hiperplanos(g):
    """Força bruta sobre todos os subconjuntos (poucos pontos)"""
    return [m for m in range((1 << g.num_points) - 1) if hyperplane_service.is_hyperplane(g, m)]


# ====================================================================
# TESTE 1: PREDICADO E CONSTRUÇÃO
# ====================================================================

def test_is_hyperplane(grid):
    assert hyperplane_service.is_hyperplane(grid, 0b100010001)
    assert not hyperplane_service.is_hyperplane(grid, (1 << 9) - 1)
    assert not hyperplane_service.is_hyperplane(grid, 0b11)
    assert not hyperplane_service.is_hyperplane(grid, 1 << 9)


def test_from_members(grid):
    h = hyperplane_service.from_members(grid, [0, 4, 8])
    assert h.members == (0, 4, 8)
    assert h.complement == (1, 2, 3, 5, 6, 7)
    assert h.size == len(h) == 3
    with pytest.raises(GeometryError):
        hyperplane_service.from_members(grid, [0, 1])


# ====================================================================
# TESTE 2: ENUMERAÇÃO
# ====================================================================

@pytest.mark.parametrize('nome', ['grid', 'line'])
def test_enumeracao_confere_com_forca_bruta(nome, request):
    g = request.getfixturevalue(nome)
    obtidos = [h.mask for h in hyperplane_service.enumerate_hyperplanes(g)]
    assert obtidos == _todos_os_hiperplanos(g)


def test_hiperplanos_da_grade(grid):
    hiperplanos = hyperplane_service.enumerate_hyperplanes(grid)
    assert len(hiperplanos) == 15
    assert sorted({h.size for h in hiperplanos}) == [3, 5]


def test_enumeracao_exige_retas_de_3():
    with pytest.raises(GeometryError):
        hyperplane_service.enumerate_hyperplanes(build(3, [(0, 1), (1, 2)]))


def test_limite_de_dimensao(grid, monkeypatch):
    monkeypatch.setattr(settings, 'max_span_dim', 2)
    with pytest.raises(LinearAlgebraError):
        hyperplane_service.enumerate_hyperplanes(grid)


@pytest.mark.slow
@pytest.mark.parametrize('nome', ['h2_pipeline', 'h2dual_pipeline'])
def test_contagem_pelo_nucleo(nome, request):
    pipeline = request.getfixturevalue(nome)
    g = pipeline.geometry
    M = g.incidence_matrix
    base = hyperplane_service.kernel_basis(g)

    assert len(base) == g.num_points - rank(M)
    assert len(base) == g.num_points - rank(M, column_order=list(range(g.num_points - 1, -1, -1)))
    assert nullspace_reversed(M) == base
    assert len(pipeline.hyperplanes) == 2 ** len(base) - 1
    assert all(hyperplane_service.is_hyperplane(g, h.mask) for h in pipeline.hyperplanes[:500])


# ====================================================================
# TESTE 3: CLASSES DE HIPERPLANOS
# ====================================================================

def test_classes_da_grade(grid):
    grupo = automorphism_service.automorphism_group(grid)
    classes = hyperplane_service.classify_hyperplanes(grid, grupo)
    assert [(c.size, c.orbit_size, c.stabilizer_order) for c in classes] == [(3, 6, 12), (5, 9, 8)]
    assert classes[0].invariant_key == (3, ((1, 6),))
    assert classes[1].invariant_key == (5, ((1, 4), (3, 2)))


def test_hiperplanos_do_plano_de_fano():
    fano = fano_plane()
    hiperplanos = hyperplane_service.enumerate_hyperplanes(fano)
    assert sorted(h.members for h in hiperplanos) == sorted(fano.lines)
    assert [h.mask for h in hiperplanos] == _todos_os_hiperplanos(fano)

    grupo = automorphism_service.automorphism_group(fano)
    classes = hyperplane_service.classify_hyperplanes(fano, grupo, hiperplanos)
    assert [(c.orbit_size, c.stabilizer_order) for c in classes] == [(7, 24)]


@pytest.mark.slow
@pytest.mark.parametrize('nome, classes_esperadas', [
    ('h2_pipeline', 25),
    ('h2dual_pipeline', 14),
])
def test_classes_dos_hexagonos(nome, classes_esperadas, request):
    pipeline = request.getfixturevalue(nome)
    classes = pipeline.hyperplane_classes
    assert len(classes) == classes_esperadas
    assert ref.HYPERPLANE_CLASSES[pipeline.geometry.name][0] == classes_esperadas

    # Equação de classes
    assert sum(c.orbit_size for c in classes) == len(pipeline.hyperplanes)
    assert all(c.orbit_size * c.stabilizer_order == 12096 for c in classes)

    # Representante canônico e chave invariante
    for c in classes:
        assert c.representative.mask in c.orbit
        assert hyperplane_service.invariant_key(pipeline.geometry, c.representative.mask) == c.invariant_key
