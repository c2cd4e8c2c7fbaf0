"""
Serviço de Automorfismos
Grupo de automorfismos e isomorfismos de geometrias por individualização e refinamento
"""

import logging
from collections import Counter, deque
from typing import Dict, List, Optional, Sequence, Tuple

from core.geometry import Geometry
from core.perm import Permutation, PermGroup

logger = logging.getLogger(__name__)

Cores = List[int]


def _comprimir(rotulos: Sequence) -> Cores:
    """Troca cada rótulo pela sua posição entre os rótulos distintos ordenados"""
    posicao = {r: i for i, r in enumerate(sorted(set(rotulos)))}
    return [posicao[r] for r in rotulos]


class _ArvoreDeBusca:
    """
    Árvore de individualização-refinamento do grafo de incidência

    Vértices 0..n-1 são os pontos e n..n+m-1 as retas. As cores são
    canônicas: a cada rodada o novo rótulo de um vértice é (cor, cores
    dos vizinhos ordenadas) e as cores são as posições desses rótulos em
    ordem crescente. O traço de um refinamento resume as rodadas e é igual
    para nós equivalentes por um isomorfismo.
    """

    def __init__(self, g: Geometry):
        self.g = g
        self.n = g.num_points
        vizinhos: List[List[int]] = [[] for _ in range(g.num_points + g.num_lines)]
        for i, linha in enumerate(g.lines):
            for p in linha:
                vizinhos[p].append(g.num_points + i)
                vizinhos[g.num_points + i].append(p)
        self.vizinhos = vizinhos
        self.raiz, self.traco_raiz = self._refinar([0] * g.num_points + [1] * g.num_lines)

    def _refinar(self, cores: Cores) -> Tuple[Cores, int]:
        traco = []
        quantidade = len(set(cores))
        while True:
            rotulos = [
                (cores[v], tuple(sorted(cores[u] for u in self.vizinhos[v])))
                for v in range(len(cores))
            ]
            distintos = sorted(set(rotulos))
            contagem = Counter(rotulos)
            traco.append(hash((tuple(distintos), tuple(contagem[r] for r in distintos))))
            posicao = {r: i for i, r in enumerate(distintos)}
            cores = [posicao[r] for r in rotulos]
            if len(distintos) == quantidade:
                return cores, hash(tuple(traco))
            quantidade = len(distintos)

    def individualizar(self, cores: Cores, v: int) -> Tuple[Cores, int]:
        rotulos = [(c, 0 if u == v else 1) for u, c in enumerate(cores)]
        return self._refinar(_comprimir(rotulos))

    def celula_alvo(self, cores: Cores) -> Optional[List[int]]:
        """Célula de pontos não unitária de menor cor, ou None numa folha"""
        celulas: Dict[int, List[int]] = {}
        for p in range(self.n):
            celulas.setdefault(cores[p], []).append(p)
        candidatas = [c for c, membros in celulas.items() if len(membros) > 1]
        if not candidatas:
            return None
        return celulas[min(candidatas)]

    def primeiro_caminho(self):
        """
        Caminho que individualiza sempre o menor ponto da célula alvo

        Returns:
            (pontos individualizados, colorações por nível, traços por nível, folha)
        """
        caminho, coloracoes, tracos = [], [self.raiz], [self.traco_raiz]
        cores = self.raiz
        while True:
            celula = self.celula_alvo(cores)
            if celula is None:
                return caminho, coloracoes, tracos, cores
            v = celula[0]
            cores, traco = self.individualizar(cores, v)
            caminho.append(v)
            coloracoes.append(cores)
            tracos.append(traco)


def _mapear_folhas(origem: _ArvoreDeBusca, folha_origem: Cores,
                   destino: _ArvoreDeBusca, folha_destino: Cores) -> Optional[Permutation]:
    """Bijeção de pontos entre duas folhas; None se não preserva as retas"""
    n = origem.n
    ponto_da_cor = {folha_destino[u]: u for u in range(n)}
    try:
        imagens = tuple(ponto_da_cor[folha_origem[v]] for v in range(n))
    except KeyError:
        return None
    perm = Permutation(imagens)
    retas_destino = set(destino.g.lines)
    for linha in origem.g.lines:
        if perm.apply_set(linha) not in retas_destino:
            return None
    return perm


def _buscar_folha(origem: _ArvoreDeBusca, tracos: Sequence[int], folha_origem: Cores,
                  destino: _ArvoreDeBusca, cores: Cores, nivel: int) -> Optional[Permutation]:
    """Busca exaustiva, na subárvore de destino, de uma folha equivalente à de origem"""
    celula = destino.celula_alvo(cores)
    if celula is None:
        if nivel != len(tracos) - 1:
            return None
        return _mapear_folhas(origem, folha_origem, destino, cores)
    if nivel >= len(tracos) - 1:
        return None
    for w in celula:
        filhas, traco = destino.individualizar(cores, w)
        if traco != tracos[nivel + 1]:
            continue
        perm = _buscar_folha(origem, tracos, folha_origem, destino, filhas, nivel + 1)
        if perm is not None:
            return perm
    return None


def _orbita(ponto: int, geradores: Sequence[Permutation]) -> set:
    vistos = {ponto}
    fila = deque([ponto])
    while fila:
        x = fila.popleft()
        for g in geradores:
            y = g(x)
            if y not in vistos:
                vistos.add(y)
                fila.append(y)
    return vistos


def _invariantes(g: Geometry) -> tuple:
    return (
        g.num_points,
        g.num_lines,
        tuple(sorted(len(linha) for linha in g.lines)),
        tuple(sorted(len(feixe) for feixe in g.lines_through)),
    )


class AutomorphismService:
    """
    Serviço de automorfismos e isomorfismos
    Métodos: automorphism_group, are_isomorphic
    """

    @staticmethod
    def automorphism_group(g: Geometry) -> PermGroup:
        """
        Grupo de automorfismos de g agindo nos pontos

        Percorre os níveis do primeiro caminho do mais fundo ao raso; em
        cada nível procura um automorfismo para cada ponto da célula alvo
        que ainda não está na órbita do ponto do caminho.

        Args:
            g: Geometria válida

        Returns:
            PermGroup com geradores determinísticos para a entrada dada
        """
        try:
            arvore = _ArvoreDeBusca(g)
            caminho, coloracoes, tracos, folha = arvore.primeiro_caminho()

            geradores: List[Permutation] = []
            for nivel in reversed(range(len(caminho))):
                v = caminho[nivel]
                orbita = _orbita(v, geradores)
                for w in arvore.celula_alvo(coloracoes[nivel]):
                    if w in orbita:
                        continue
                    filhas, traco = arvore.individualizar(coloracoes[nivel], w)
                    if traco != tracos[nivel + 1]:
                        continue
                    perm = _buscar_folha(arvore, tracos, folha, arvore, filhas, nivel + 1)
                    if perm is not None:
                        geradores.append(perm)
                        orbita = _orbita(v, geradores)

            grupo = PermGroup(g.num_points, geradores)
            logger.info(
                f"Automorfismos de {g.name or 'geometria'}: ordem {grupo.order}, "
                f"{len(grupo.generators)} geradores, profundidade {len(caminho)}"
            )
            return grupo

        except Exception as e:
            logger.error(f"Erro ao calcular automorfismos: {e}")
            raise

    @staticmethod
    def are_isomorphic(g1: Geometry, g2: Geometry,
                       group2: Optional[PermGroup] = None) -> Optional[Permutation]:
        """
        Procura uma bijeção de pontos de g1 em g2 que leva retas em retas

        Args:
            g1, g2: Geometrias válidas
            group2: Grupo de automorfismos de g2 (opcional); no primeiro
                nível basta tentar um ponto por órbita dele

        Returns:
            Permutation com imagens em g2, ou None se não isomorfas
        """
        if _invariantes(g1) != _invariantes(g2):
            return None
        try:
            origem = _ArvoreDeBusca(g1)
            destino = _ArvoreDeBusca(g2)
            if origem.traco_raiz != destino.traco_raiz:
                return None

            _, _, tracos, folha = origem.primeiro_caminho()
            celula = destino.celula_alvo(destino.raiz)
            if celula is None:
                perm = _mapear_folhas(origem, folha, destino, destino.raiz)
            else:
                perm = None
                tentados: set = set()
                for w in celula:
                    if w in tentados:
                        continue
                    tentados.update(group2.orbit(w) if group2 is not None else [w])
                    filhas, traco = destino.individualizar(destino.raiz, w)
                    if len(tracos) < 2 or traco != tracos[1]:
                        continue
                    perm = _buscar_folha(origem, tracos, folha, destino, filhas, 1)
                    if perm is not None:
                        break

            logger.info(
                f"Isomorfismo {g1.name or 'g1'} -> {g2.name or 'g2'}: "
                f"{'encontrado' if perm is not None else 'inexistente'}"
            )
            return perm

        except Exception as e:
            logger.error(f"Erro ao testar isomorfismo: {e}")
            raise


# Instância global do serviço
automorphism_service = AutomorphismService()
