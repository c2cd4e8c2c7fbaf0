"""
Serviço de Hiperplanos
Enumeração pelo núcleo da matriz de incidência sobre GF(2) e classificação em órbitas
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from core.exceptions import ClassificationError, GeometryError, LinearAlgebraError
from core.geometry import Geometry
from core.gf2 import BitVector, nullspace, span_ints
from core.perm import PermGroup
from core.settings import settings

logger = logging.getLogger(__name__)


def _indices(mask: int) -> Tuple[int, ...]:
    resultado = []
    while mask:
        baixo = mask & -mask
        resultado.append(baixo.bit_length() - 1)
        mask ^= baixo
    return tuple(resultado)


@dataclass(frozen=True)
class Hyperplane:
    """
    Hiperplano: subconjunto próprio que encontra cada reta em 1 ou em todos os pontos

    member_bits guarda os pontos do hiperplano (não o complemento).
    """

    host: Geometry = field(compare=False, repr=False)
    member_bits: BitVector

    @property
    def mask(self) -> int:
        return self.member_bits.to_int()

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(self.member_bits.indices())

    @property
    def complement(self) -> Tuple[int, ...]:
        full = (1 << self.host.num_points) - 1
        return _indices(full ^ self.mask)

    @property
    def size(self) -> int:
        return self.member_bits.popcount()

    def __len__(self) -> int:
        return self.size


@dataclass(frozen=True)
class HyperplaneClass:
    """
    Órbita de hiperplanos sob Aut(host)

    invariant_key = (tamanho, ((k, número de retas com k pontos no hiperplano), ...))
    """

    representative: Hyperplane
    orbit_size: int
    stabilizer_order: int
    invariant_key: tuple
    orbit: Tuple[int, ...] = field(repr=False, default=())

    @property
    def size(self) -> int:
        return self.representative.size


class HyperplaneService:
    """
    Serviço de hiperplanos
    Métodos: enumerate_hyperplanes, classify_hyperplanes, invariant_key
    """

    @staticmethod
    def is_hyperplane(g: Geometry, mask: int) -> bool:
        """Regra 1-ou-todos por reta, e subconjunto próprio"""
        full = (1 << g.num_points) - 1
        if mask == full or mask & ~full:
            return False
        for reta in g.line_masks:
            k = (reta & mask).bit_count()
            if k != 1 and k != reta.bit_count():
                return False
        return True

    @staticmethod
    def from_members(g: Geometry, points: Iterable[int]) -> Hyperplane:
        """
        Raises:
            GeometryError: conjunto não é hiperplano
        """
        bits = BitVector.from_indices(g.num_points, points)
        if not HyperplaneService.is_hyperplane(g, bits.to_int()):
            raise GeometryError(f"Conjunto não é hiperplano de {g!r}")
        return Hyperplane(g, bits)

    @staticmethod
    def kernel_basis(g: Geometry) -> List[BitVector]:
        """Base do núcleo da matriz de incidência (complementos de hiperplanos)"""
        if any(len(linha) != 3 for linha in g.lines):
            raise GeometryError("Enumeração de hiperplanos exige 3 pontos por reta")
        return nullspace(g.incidence_matrix)

    @staticmethod
    def enumerate_hyperplanes(g: Geometry) -> List[Hyperplane]:
        """
        Todos os hiperplanos de g

        Os complementos são exatamente os suportes dos vetores não nulos do
        núcleo da matriz retas x pontos; cada resultado é reconferido pela
        regra 1-ou-3 por reta.

        Returns:
            Lista ordenada pela máscara dos membros (2^dim - 1 hiperplanos)

        Raises:
            GeometryError: retas com tamanho diferente de 3
            LinearAlgebraError: dimensão acima de HEXVAL_MAX_SPAN_DIM
        """
        try:
            base = HyperplaneService.kernel_basis(g)
            if len(base) > settings.max_span_dim:
                raise LinearAlgebraError(
                    f"Núcleo de dimensão {len(base)} acima do limite {settings.max_span_dim}"
                )

            full = (1 << g.num_points) - 1
            mascaras = []
            for complemento in span_ints(base):
                if complemento == 0:
                    continue
                membros = full ^ complemento
                if not HyperplaneService.is_hyperplane(g, membros):
                    raise LinearAlgebraError(
                        f"Vetor do núcleo {complemento:#x} não é complemento de hiperplano"
                    )
                mascaras.append(membros)
            mascaras.sort()

            hiperplanos = [Hyperplane(g, BitVector.from_int(g.num_points, m)) for m in mascaras]
            logger.info(f"{len(hiperplanos)} hiperplanos em {g.name or 'geometria'} (dim {len(base)})")
            return hiperplanos

        except Exception as e:
            logger.error(f"Erro ao enumerar hiperplanos: {e}")
            raise

    @staticmethod
    def invariant_key(g: Geometry, mask: int) -> tuple:
        histograma = Counter((reta & mask).bit_count() for reta in g.line_masks)
        return (mask.bit_count(), tuple(sorted(histograma.items())))

    @staticmethod
    def classify_hyperplanes(g: Geometry, group: PermGroup,
                             hyperplanes: Optional[List[Hyperplane]] = None) -> List[HyperplaneClass]:
        """
        Particiona os hiperplanos em órbitas de Aut(g)

        Args:
            g: Geometria com 3 pontos por reta
            group: Grupo de automorfismos de g
            hyperplanes: Enumeração já feita (opcional)

        Returns:
            Classes ordenadas por (invariant_key, representante)

        Raises:
            ClassificationError: equação de classes não fecha ou chave
                invariante não constante numa órbita
        """
        try:
            if hyperplanes is None:
                hyperplanes = HyperplaneService.enumerate_hyperplanes(g)
            restantes = {h.mask for h in hyperplanes}
            total = len(restantes)

            classes = []
            for h in hyperplanes:
                if h.mask not in restantes:
                    continue
                orbita = group.orbit_of_mask(h.mask)
                if not restantes.issuperset(orbita):
                    raise ClassificationError("Órbita sai do conjunto de hiperplanos")
                restantes.difference_update(orbita)

                chave = HyperplaneService.invariant_key(g, h.mask)
                if any(HyperplaneService.invariant_key(g, m) != chave for m in orbita):
                    raise ClassificationError(f"Chave invariante não constante na órbita de {h.members}")
                if group.order % len(orbita):
                    raise ClassificationError(f"Órbita de tamanho {len(orbita)} não divide |G|={group.order}")

                representante = min(orbita, key=_indices)
                classes.append(HyperplaneClass(
                    representative=Hyperplane(g, BitVector.from_int(g.num_points, representante)),
                    orbit_size=len(orbita),
                    stabilizer_order=group.order // len(orbita),
                    invariant_key=chave,
                    orbit=tuple(orbita),
                ))

            classes.sort(key=lambda c: (c.invariant_key, c.representative.members))

            soma = sum(group.order // c.stabilizer_order for c in classes)
            if soma != total:
                raise ClassificationError(f"Equação de classes: soma {soma} != {total} hiperplanos")

            logger.info(f"{len(classes)} classes de hiperplanos em {g.name or 'geometria'}")
            return classes

        except Exception as e:
            logger.error(f"Erro ao classificar hiperplanos: {e}")
            raise


# Instância global do serviço
hyperplane_service = HyperplaneService()
