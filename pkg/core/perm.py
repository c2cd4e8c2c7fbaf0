"""
Permutações e grupos de permutações sobre os pontos de uma geometria
Cadeia de estabilizadores pelo algoritmo de Schreier-Sims determinístico
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from core.exceptions import HexValError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Permutation:
    """
    Bijeção de 0..n-1 dada pela lista de imagens

    Produto p * q: aplica p e depois q.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        imagens = tuple(int(i) for i in self.images)
        if sorted(imagens) != list(range(len(imagens))):
            raise HexValError(f"Não é uma permutação: {list(imagens)[:10]}...")
        object.__setattr__(self, 'images', imagens)

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> 'Permutation':
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def moved_points(self) -> List[int]:
        return [x for x, y in enumerate(self.images) if x != y]

    def apply_set(self, points: Iterable[int]) -> Tuple[int, ...]:
        """Imagem de um conjunto, como tupla ordenada"""
        return tuple(sorted(self.images[p] for p in points))

    def apply_function(self, values: Sequence[int]) -> Tuple[int, ...]:
        """Composição f∘θ: x -> f(θ(x))"""
        return tuple(values[y] for y in self.images)

    def cycles(self) -> str:
        vistos = set()
        partes = []
        for i in range(len(self.images)):
            if i in vistos or self.images[i] == i:
                continue
            ciclo = [i]
            vistos.add(i)
            j = self.images[i]
            while j != i:
                vistos.add(j)
                ciclo.append(j)
                j = self.images[j]
            partes.append('(' + ' '.join(map(str, ciclo)) + ')')
        return ''.join(partes) or '()'

    def __str__(self) -> str:
        return self.cycles()


def _orbit_transversal(base_point: int, generators: Sequence[Permutation],
                       degree: int) -> Dict[int, Permutation]:
    """Órbita de base_point com u_b tal que u_b(base_point) = b, em ordem de busca em largura"""
    transversal = {base_point: Permutation.identity(degree)}
    fila = deque([base_point])
    while fila:
        x = fila.popleft()
        for g in generators:
            y = g(x)
            if y not in transversal:
                transversal[y] = transversal[x] * g
                fila.append(y)
    return transversal


class PermGroup:
    """
    Grupo de permutações com cadeia de estabilizadores

    A base começa pelos pontos de `initial_base` e é estendida pelo menor
    ponto movido de cada novo gerador forte.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation],
                 initial_base: Sequence[int] = ()):
        self.degree = degree
        geradores = []
        vistos = set()
        for g in generators:
            if g.degree != degree:
                raise HexValError(f"Gerador de grau {g.degree} num grupo de grau {degree}")
            if not g.is_identity() and g.images not in vistos:
                vistos.add(g.images)
                geradores.append(g)
        self.generators: Tuple[Permutation, ...] = tuple(geradores)
        self._schreier_sims(list(initial_base))

    # Schreier-Sims

    def _schreier_sims(self, base: List[int]):
        for g in self.generators:
            if all(g(b) == b for b in base):
                base.append(g.moved_points()[0])

        k = len(base)
        fortes = [[g for g in self.generators if all(g(base[j]) == base[j] for j in range(i))]
                  for i in range(k)]
        transversais = [_orbit_transversal(base[i], fortes[i], self.degree) for i in range(k)]
        self._base, self._strong, self._transversals = base, fortes, transversais

        i = k - 1
        while i >= 0:
            reiniciar = False
            for beta, u in list(transversais[i].items()):
                for s in fortes[i]:
                    schreier = u * s * transversais[i][s(beta)].inverse()
                    if schreier.is_identity():
                        continue
                    h, j = self._strip(schreier, i + 1)
                    if j < len(base) or not h.is_identity():
                        if j == len(base):
                            base.append(h.moved_points()[0])
                            fortes.append([])
                            transversais.append({})
                        for nivel in range(i + 1, j + 1):
                            fortes[nivel].append(h)
                            transversais[nivel] = _orbit_transversal(
                                base[nivel], fortes[nivel], self.degree
                            )
                        i = j
                        reiniciar = True
                        break
                if reiniciar:
                    break
            if not reiniciar:
                i -= 1

        logger.debug(f"Cadeia de estabilizadores: base={base}, ordem={self.order}")

    def _strip(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Peneira g pela cadeia a partir do nível start; devolve (resto, nível de parada)"""
        for nivel in range(start, len(self._base)):
            beta = g(self._base[nivel])
            u = self._transversals[nivel].get(beta)
            if u is None:
                return g, nivel
            g = g * u.inverse()
        return g, len(self._base)

    # Consultas

    @property
    def base(self) -> Tuple[int, ...]:
        return tuple(self._base)

    @property
    def strong_generators(self) -> Tuple[Permutation, ...]:
        vistos = {}
        for nivel in self._strong:
            for g in nivel:
                vistos.setdefault(g.images, g)
        return tuple(vistos.values())

    @cached_property
    def order(self) -> int:
        ordem = 1
        for t in self._transversals:
            ordem *= len(t)
        return ordem

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, j = self._strip(g)
        return j == len(self._base) and h.is_identity()

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def random_element(self, rng: Optional[Random] = None) -> Permutation:
        """Elemento uniforme: produto de um representante de cada transversal"""
        rng = rng or Random()
        g = Permutation.identity(self.degree)
        for t in reversed(self._transversals):
            chaves = sorted(t)
            g = g * t[chaves[rng.randrange(len(chaves))]]
        return g

    def stabilizer(self, point: int) -> 'PermGroup':
        """Estabilizador de um ponto, a partir de uma cadeia com base iniciada nele"""
        cadeia = PermGroup(self.degree, self.generators, initial_base=[point])
        geradores = cadeia._strong[1] if len(cadeia._strong) > 1 else []
        return PermGroup(self.degree, geradores)

    # Órbitas

    def orbit(self, point: int) -> List[int]:
        return sorted(_orbit_transversal(point, self.generators, self.degree))

    def orbits(self) -> List[List[int]]:
        restantes = set(range(self.degree))
        resultado = []
        for p in range(self.degree):
            if p in restantes:
                orbita = self.orbit(p)
                restantes.difference_update(orbita)
                resultado.append(orbita)
        return resultado

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def point_stabilizer_orbits(self, point: int) -> List[List[int]]:
        """Órbitas do estabilizador de point, ordenadas por tamanho e menor ponto"""
        orbitas = self.stabilizer(point).orbits()
        return sorted(orbitas, key=lambda o: (len(o), o[0]))

    def _orbit_generic(self, start: Hashable, act) -> List:
        vistos = {start}
        fila = deque([start])
        while fila:
            x = fila.popleft()
            for g in self.generators:
                y = act(g, x)
                if y not in vistos:
                    vistos.add(y)
                    fila.append(y)
        return sorted(vistos)

    def orbit_of_set(self, points: Iterable[int]) -> List[Tuple[int, ...]]:
        """Órbita de um conjunto de pontos (tuplas ordenadas, em ordem canônica)"""
        return self._orbit_generic(tuple(sorted(points)), lambda g, s: g.apply_set(s))

    def set_stabilizer_order(self, points: Iterable[int]) -> int:
        return self.order // len(self.orbit_of_set(points))

    def orbit_of_function(self, values: Sequence[int]) -> List[Tuple[int, ...]]:
        """Órbita {f∘θ} de uma função nos pontos"""
        return self._orbit_generic(tuple(values), lambda g, f: g.apply_function(f))

    # Ação sobre máscaras de bits (conjuntos de pontos como inteiros)

    @cached_property
    def _byte_tables(self) -> List[List[List[int]]]:
        n_bytes = (self.degree + 7) // 8
        tabelas = []
        for g in self.generators:
            por_byte = []
            for b in range(n_bytes):
                linha = []
                for valor in range(256):
                    imagem = 0
                    for bit in range(8):
                        p = 8 * b + bit
                        if valor >> bit & 1 and p < self.degree:
                            imagem |= 1 << g(p)
                    linha.append(imagem)
                por_byte.append(linha)
            tabelas.append(por_byte)
        return tabelas

    def mask_images(self, mask: int) -> List[int]:
        """Imagem da máscara por cada gerador"""
        imagens = []
        for tabela in self._byte_tables:
            imagem = 0
            m = mask
            b = 0
            while m:
                imagem |= tabela[b][m & 0xFF]
                m >>= 8
                b += 1
            imagens.append(imagem)
        return imagens

    def orbit_of_mask(self, mask: int) -> List[int]:
        vistos = {mask}
        fila = deque([mask])
        while fila:
            for y in self.mask_images(fila.popleft()):
                if y not in vistos:
                    vistos.add(y)
                    fila.append(y)
        return sorted(vistos)

    def __repr__(self) -> str:
        return f"PermGroup(grau={self.degree}, ordem={self.order}, geradores={len(self.generators)})"


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [])
