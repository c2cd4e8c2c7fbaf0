"""
Álgebra linear sobre GF(2) com bits empacotados
Vetores e matrizes guardados em palavras de 64 bits (numpy.uint64)
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import LinearAlgebraError

logger = logging.getLogger(__name__)

WORD_BITS = 64
_UM = np.uint64(1)


def _num_words(length: int) -> int:
    return max(1, (length + WORD_BITS - 1) // WORD_BITS)


def _tail_mask(length: int) -> int:
    resto = length % WORD_BITS
    if resto == 0:
        return (1 << WORD_BITS) - 1
    return (1 << resto) - 1


@dataclass(frozen=True, eq=False)
class BitVector:
    """
    Vetor de bits sobre GF(2)

    O bit i corresponde à coordenada i (ponto i de uma geometria).
    Bits além de `length` são sempre zero.
    """

    length: int
    words: np.ndarray

    def __post_init__(self):
        palavras = np.ascontiguousarray(self.words, dtype=np.uint64)
        if palavras.shape != (_num_words(self.length),):
            raise LinearAlgebraError(
                f"Vetor de comprimento {self.length} exige {_num_words(self.length)} palavras"
            )
        if self.length == 0:
            excedente = int(palavras[0])
        else:
            excedente = int(palavras[-1]) & ~_tail_mask(self.length)
        if excedente:
            raise LinearAlgebraError("Bits além do comprimento devem ser zero")
        palavras = palavras.copy()
        palavras.setflags(write=False)
        object.__setattr__(self, 'words', palavras)

    # Construtores

    @classmethod
    def zeros(cls, length: int) -> 'BitVector':
        return cls(length, np.zeros(_num_words(length), dtype=np.uint64))

    @classmethod
    def from_int(cls, length: int, value: int) -> 'BitVector':
        if value < 0 or value >> length:
            raise LinearAlgebraError(f"Valor {value} não cabe em {length} bits")
        palavras = np.array(
            [(value >> (WORD_BITS * k)) & ((1 << WORD_BITS) - 1) for k in range(_num_words(length))],
            dtype=np.uint64
        )
        return cls(length, palavras)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> 'BitVector':
        valor = 0
        for i in indices:
            if not 0 <= i < length:
                raise LinearAlgebraError(f"Índice {i} fora de [0, {length})")
            valor |= 1 << i
        return cls.from_int(length, valor)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> 'BitVector':
        """Ex: from_bits([1, 1, 0]) -> '110'"""
        return cls.from_indices(len(bits), (i for i, b in enumerate(bits) if b & 1))

    # Conversões

    def to_int(self) -> int:
        valor = 0
        for k, w in enumerate(self.words):
            valor |= int(w) << (WORD_BITS * k)
        return valor

    def indices(self) -> List[int]:
        valor = self.to_int()
        resultado = []
        while valor:
            baixo = valor & -valor
            resultado.append(baixo.bit_length() - 1)
            valor ^= baixo
        return resultado

    def to_bits(self) -> List[int]:
        valor = self.to_int()
        return [(valor >> i) & 1 for i in range(self.length)]

    # Operações

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        w, b = divmod(i, WORD_BITS)
        return int((self.words[w] >> np.uint64(b)) & _UM)

    def __len__(self) -> int:
        return self.length

    def _check_same_length(self, other: 'BitVector'):
        if self.length != other.length:
            raise LinearAlgebraError(f"Comprimentos diferentes: {self.length} e {other.length}")

    def __xor__(self, other: 'BitVector') -> 'BitVector':
        self._check_same_length(other)
        return BitVector(self.length, self.words ^ other.words)

    def __and__(self, other: 'BitVector') -> 'BitVector':
        self._check_same_length(other)
        return BitVector(self.length, self.words & other.words)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def popcount(self) -> int:
        return self.to_int().bit_count()

    def dot(self, other: 'BitVector') -> int:
        """Produto escalar sobre GF(2)"""
        return (self & other).popcount() & 1

    def is_zero(self) -> bool:
        return not self.words.any()

    def __str__(self) -> str:
        return ''.join(str(b) for b in self.to_bits())

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


@dataclass(frozen=True)
class BitMatrix:
    """
    Matriz sobre GF(2) guardada por linhas

    Para a matriz de incidência de uma geometria: linhas = retas, colunas = pontos.
    """

    rows: int
    cols: int
    row_data: Tuple[BitVector, ...]

    def __post_init__(self):
        object.__setattr__(self, 'row_data', tuple(self.row_data))
        if len(self.row_data) != self.rows:
            raise LinearAlgebraError(f"Esperadas {self.rows} linhas, recebidas {len(self.row_data)}")
        for linha in self.row_data:
            if linha.length != self.cols:
                raise LinearAlgebraError(
                    f"Linha de comprimento {linha.length} numa matriz com {self.cols} colunas"
                )

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[Iterable[int]]) -> 'BitMatrix':
        """Cria a matriz a partir dos índices das colunas com bit 1 em cada linha"""
        dados = tuple(BitVector.from_indices(cols, linha) for linha in rows)
        return cls(len(dados), cols, dados)

    @classmethod
    def from_dense(cls, array) -> 'BitMatrix':
        matriz = np.asarray(array, dtype=np.uint8) & 1
        if matriz.ndim != 2:
            raise LinearAlgebraError("Matriz densa deve ser bidimensional")
        linhas, colunas = matriz.shape
        return cls(linhas, colunas, tuple(BitVector.from_bits(list(matriz[i])) for i in range(linhas)))

    def packed(self) -> np.ndarray:
        """Cópia gravável (rows x palavras) das linhas empacotadas"""
        if self.rows == 0:
            return np.zeros((0, _num_words(self.cols)), dtype=np.uint64)
        return np.stack([linha.words for linha in self.row_data]).astype(np.uint64, copy=True)

    def multiply(self, v: BitVector) -> BitVector:
        """M·v sobre GF(2)"""
        if v.length != self.cols:
            raise LinearAlgebraError(f"Vetor de comprimento {v.length} para {self.cols} colunas")
        return BitVector.from_bits([linha.dot(v) for linha in self.row_data])

    def column_permuted(self, order: Sequence[int]) -> 'BitMatrix':
        """Nova matriz cuja coluna j é a coluna order[j] desta"""
        linhas = []
        for linha in self.row_data:
            bits = linha.to_bits()
            linhas.append(BitVector.from_bits([bits[c] for c in order]))
        return BitMatrix(self.rows, self.cols, tuple(linhas))


def _row_reduce(packed: np.ndarray, cols: int,
                column_order: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, List[int]]:
    """
    Forma escalonada reduzida por XOR de linhas inteiras

    Pivoteia as colunas na ordem dada (padrão: índice crescente).

    Returns:
        (matriz reduzida com as linhas de pivô no topo, colunas de pivô)
    """
    a = packed.copy()
    n_linhas = a.shape[0]
    pivots: List[int] = []
    r = 0
    ordem = range(cols) if column_order is None else column_order
    for c in ordem:
        if r == n_linhas:
            break
        w, b = divmod(c, WORD_BITS)
        mascara = np.uint64(1 << b)
        candidatos = np.nonzero(a[r:, w] & mascara)[0]
        if len(candidatos) == 0:
            continue
        p = r + int(candidatos[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        selecionadas = (a[:, w] & mascara) != 0
        selecionadas[r] = False
        a[selecionadas] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def _bit(row: np.ndarray, c: int) -> int:
    w, b = divmod(c, WORD_BITS)
    return int((row[w] >> np.uint64(b)) & _UM)


def rank(M: BitMatrix, column_order: Optional[Sequence[int]] = None) -> int:
    """Posto de M sobre GF(2)"""
    _, pivots = _row_reduce(M.packed(), M.cols, column_order)
    return len(pivots)


def echelon_basis(vectors: Sequence[BitVector]) -> List[BitVector]:
    """
    Base canônica (escalonada reduzida) do subespaço gerado

    Pivô de cada vetor = menor índice com bit 1; vetores ordenados pelo pivô.
    Dois conjuntos geradores do mesmo subespaço dão a mesma base.
    """
    if not vectors:
        return []
    length = vectors[0].length
    m = BitMatrix(len(vectors), length, tuple(vectors))
    reduzida, pivots = _row_reduce(m.packed(), length)
    return [BitVector(length, reduzida[i]) for i in range(len(pivots))]


def nullspace(M: BitMatrix) -> List[BitVector]:
    """
    Base do núcleo {v : M·v = 0} sobre GF(2)

    A base devolvida está na forma escalonada reduzida (ver `echelon_basis`),
    portanto é determinística para uma dada M.
    """
    reduzida, pivots = _row_reduce(M.packed(), M.cols)
    conjunto_pivots = set(pivots)
    livres = [c for c in range(M.cols) if c not in conjunto_pivots]

    base = []
    for f in livres:
        valor = 1 << f
        for i, p in enumerate(pivots):
            if _bit(reduzida[i], f):
                valor |= 1 << p
        base.append(BitVector.from_int(M.cols, valor))

    base = echelon_basis(base)
    logger.debug(f"Núcleo: {M.rows}x{M.cols}, posto={len(pivots)}, dimensão={len(base)}")
    return base


def nullspace_reversed(M: BitMatrix) -> List[BitVector]:
    """
    Mesmo núcleo calculado por uma eliminação independente

    Elimina com a ordem de colunas invertida e desfaz a permutação no fim.
    Serve de verificação cruzada de `nullspace`.
    """
    ordem = list(range(M.cols - 1, -1, -1))
    invertida = M.column_permuted(ordem)
    base_invertida = nullspace(invertida)
    base = []
    for v in base_invertida:
        base.append(BitVector.from_indices(M.cols, (ordem[i] for i in v.indices())))
    return echelon_basis(base)


def span_iter(basis: Sequence[BitVector], max_dim: Optional[int] = None) -> Iterator[BitVector]:
    """
    Percorre todos os 2^k vetores do subespaço gerado pela base

    Ordem lexicográfica dos coeficientes: o vetor número i é a soma dos
    basis[j] com o bit j de i ligado (0, b0, b1, b0+b1, b2, ...).
    Cada passo custa um XOR: de i-1 para i mudam os bits 0..t, onde t é o
    bit menos significativo de i, e o delta é o prefixo b0+...+bt.

    Raises:
        LinearAlgebraError: base dependente, comprimentos diferentes ou
            dimensão acima de max_dim
    """
    base = list(basis)
    if not base:
        yield BitVector.zeros(0)
        return
    length = base[0].length
    if any(v.length != length for v in base):
        raise LinearAlgebraError("Vetores da base com comprimentos diferentes")
    if len(echelon_basis(base)) != len(base):
        raise LinearAlgebraError("Vetores da base são linearmente dependentes")
    if max_dim is not None and len(base) > max_dim:
        raise LinearAlgebraError(f"Dimensão {len(base)} acima do limite {max_dim}")

    prefixos = []
    acumulado = 0
    for v in base:
        acumulado ^= v.to_int()
        prefixos.append(acumulado)

    atual = 0
    yield BitVector.from_int(length, 0)
    for i in range(1, 1 << len(base)):
        t = (i & -i).bit_length() - 1
        atual ^= prefixos[t]
        yield BitVector.from_int(length, atual)


def span_ints(basis: Sequence[BitVector]) -> Iterator[int]:
    """Como `span_iter`, mas devolve os vetores como inteiros (sem validação)"""
    prefixos = []
    acumulado = 0
    for v in basis:
        acumulado ^= v.to_int()
        prefixos.append(acumulado)
    atual = 0
    yield 0
    for i in range(1, 1 << len(prefixos)):
        t = (i & -i).bit_length() - 1
        atual ^= prefixos[t]
        yield atual
