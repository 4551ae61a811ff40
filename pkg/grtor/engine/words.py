# grtor/engine/words.py
# -*- coding: utf-8 -*-
"""
Palavras reduzidas em grupos livres e morfismos de gr.

Uma letra é um inteiro com sinal: +i é o gerador x_i e -i o seu inverso.
Toda palavra é reduzida na construção, então a igualdade entre palavras
(e entre morfismos) é estrutural.

Inclui a redução de Nielsen com registro dos movimentos, usada para
reconhecer bases e inverter automorfismos.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from grtor.engine.linalg import Matrix, Ring, Z
from grtor.errors import RankMismatchError, WordError

logger = logging.getLogger(__name__)


# =============================================================================
# Palavras
# =============================================================================


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """Palavra reduzida no grupo livre de posto `rank`."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0:
                raise WordError('índice de gerador precisa ser >= 1')
            if abs(a) > self.rank:
                raise WordError(
                    f'gerador x{abs(a)} fora do posto {self.rank}'
                )
        object.__setattr__(self, 'letters', _free_reduce(letters))

    @classmethod
    def identity(cls, rank: int) -> 'FreeWord':
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> 'FreeWord':
        return cls((i,), rank)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: 'FreeWord') -> 'FreeWord':
        if self.rank != other.rank:
            raise RankMismatchError(
                f'produto de palavras em postos {self.rank} e {other.rank}'
            )
        return FreeWord(self.letters + other.letters, self.rank)

    def inverse(self) -> 'FreeWord':
        return FreeWord(tuple(-a for a in reversed(self.letters)), self.rank)

    def __pow__(self, e: int) -> 'FreeWord':
        base = self if e >= 0 else self.inverse()
        return FreeWord(base.letters * abs(e), self.rank)

    def substitute(self, images: Sequence['FreeWord'], rank: int):
        """Troca x_i por images[i-1] (e x_i^-1 pelo inverso)."""
        out: list[int] = []
        for a in self.letters:
            img = images[abs(a) - 1].letters
            out.extend(img if a > 0 else (-b for b in reversed(img)))
        return FreeWord(tuple(out), rank)

    def shifted(self, offset: int, rank: int) -> 'FreeWord':
        """Mesma palavra com índices deslocados, num posto maior."""
        return FreeWord(
            tuple(a + offset if a > 0 else a - offset for a in self.letters),
            rank,
        )

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    def support(self) -> set[int]:
        return {abs(a) for a in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return '1'
        return '*'.join(
            f'x{a}' if a > 0 else f'x{-a}^-1' for a in self.letters
        )


def reduce_word(letters: Iterable[int], rank: int) -> FreeWord:
    return FreeWord(tuple(letters), rank)


# =============================================================================
# Morfismos de gr
# =============================================================================


@dataclass(frozen=True)
class GrMorphism:
    """Homomorfismo F_src -> F_dst dado pelas imagens dos geradores."""

    src_rank: int
    dst_rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.src_rank:
            raise RankMismatchError(
                f'{len(images)} imagens para posto de origem {self.src_rank}'
            )
        for w in images:
            if w.rank != self.dst_rank:
                raise RankMismatchError(
                    f'imagem em posto {w.rank}, destino {self.dst_rank}'
                )
        object.__setattr__(self, 'images', images)

    @classmethod
    def from_letters(
        cls, images: Iterable[Iterable[int]], dst_rank: int
    ) -> 'GrMorphism':
        words = tuple(FreeWord(tuple(w), dst_rank) for w in images)
        return cls(len(words), dst_rank, words)

    def __call__(self, word: FreeWord) -> FreeWord:
        if word.rank != self.src_rank:
            raise RankMismatchError(
                f'palavra de posto {word.rank} em morfismo de origem '
                f'{self.src_rank}'
            )
        return word.substitute(self.images, self.dst_rank)

    def sort_key(self) -> tuple:
        return (
            self.src_rank,
            self.dst_rank,
            tuple(_shortlex(w) for w in self.images),
        )

    def __str__(self) -> str:
        inner = ', '.join(str(w) for w in self.images)
        return f'({inner}) : {self.src_rank} -> {self.dst_rank}'


def _letter_key(a: int) -> int:
    return 2 * abs(a) + (1 if a < 0 else 0)


def _shortlex(w: FreeWord) -> tuple:
    return (len(w), tuple(_letter_key(a) for a in w.letters))


@lru_cache(maxsize=64)
def identity(n: int) -> GrMorphism:
    return GrMorphism(
        n, n, tuple(FreeWord.generator(i, n) for i in range(1, n + 1))
    )


def zero_morphism(a: int, b: int) -> GrMorphism:
    return GrMorphism(a, b, tuple(FreeWord.identity(b) for _ in range(a)))


@lru_cache(maxsize=256)
def inclusion(a: int, t: int) -> GrMorphism:
    """u(A, T): A -> T*A, com A como ÚLTIMO bloco."""
    return GrMorphism(
        a,
        t + a,
        tuple(FreeWord.generator(t + i, t + a) for i in range(1, a + 1)),
    )


def projection(b: int, a: int) -> GrMorphism:
    """F_b -> F_a que mantém os a primeiros geradores e mata o resto."""
    return GrMorphism(
        b,
        a,
        tuple(
            FreeWord.generator(i, a) if i <= a else FreeWord.identity(a)
            for i in range(1, b + 1)
        ),
    )


def compose(g: GrMorphism, f: GrMorphism) -> GrMorphism:
    """g ∘ f."""
    if f.dst_rank != g.src_rank:
        raise RankMismatchError(
            f'composição {g.src_rank}->{g.dst_rank} após '
            f'{f.src_rank}->{f.dst_rank}'
        )
    return GrMorphism(
        f.src_rank,
        g.dst_rank,
        tuple(w.substitute(g.images, g.dst_rank) for w in f.images),
    )


def free_product(*maps: GrMorphism) -> GrMorphism:
    """Justaposição em blocos; o bloco k é deslocado pelos destinos anteriores."""
    src = sum(f.src_rank for f in maps)
    dst = sum(f.dst_rank for f in maps)
    images: list[FreeWord] = []
    offset = 0
    for f in maps:
        images.extend(w.shifted(offset, dst) for w in f.images)
        offset += f.dst_rank
    return GrMorphism(src, dst, tuple(images))


def abelianize(f: GrMorphism, ring: Ring = Z) -> Matrix:
    """Matriz dst x src; a coluna j é a soma de expoentes da imagem j."""
    m = Matrix.zeros(Z, f.dst_rank, f.src_rank)
    for j, w in enumerate(f.images):
        for i, s in enumerate(w.exponent_sums()):
            m.data[i, j] = s
    return m.change_ring(ring)


# =============================================================================
# Redução de Nielsen
# =============================================================================


@dataclass(frozen=True)
class NielsenMove:
    """
    kind: 'swap' (i, j), 'invert' (i), 'right' w_i <- w_i·w_j^e,
    'left' w_i <- w_j^e·w_i, 'delete' (i, palavra trivial).
    Índices base 0 na lista corrente.
    """

    kind: str
    i: int
    j: int = -1
    exponent: int = 1

    def apply(self, words: list[FreeWord]) -> None:
        i, j = self.i, self.j
        if self.kind == 'swap':
            words[i], words[j] = words[j], words[i]
        elif self.kind == 'invert':
            words[i] = words[i].inverse()
        elif self.kind == 'right':
            words[i] = words[i] * words[j] ** self.exponent
        elif self.kind == 'left':
            words[i] = words[j] ** self.exponent * words[i]
        elif self.kind == 'delete':
            if not words[i].is_identity:
                raise WordError('delete aplicado a palavra não trivial')
            del words[i]
        else:
            raise WordError(f'movimento desconhecido: {self.kind}')

    def automorphism(self, n: int) -> GrMorphism:
        """O automorfismo elementar ρ com (w∘ρ) = movimento aplicado a w."""
        gens = [FreeWord.generator(k, n) for k in range(1, n + 1)]
        i, j = self.i, self.j
        if self.kind == 'swap':
            gens[i], gens[j] = gens[j], gens[i]
        elif self.kind == 'invert':
            gens[i] = gens[i].inverse()
        elif self.kind == 'right':
            gens[i] = gens[i] * gens[j] ** self.exponent
        elif self.kind == 'left':
            gens[i] = gens[j] ** self.exponent * gens[i]
        else:
            raise WordError(f'{self.kind} não é um automorfismo')
        return GrMorphism(n, n, tuple(gens))


@dataclass(frozen=True)
class NielsenRecord:
    initial: tuple[FreeWord, ...]
    final: tuple[FreeWord, ...]
    steps: tuple[NielsenMove, ...]

    def replay(self, words: Sequence[FreeWord] | None = None):
        current = list(self.initial if words is None else words)
        for move in self.steps:
            move.apply(current)
        return tuple(current)


def _half_key(w: FreeWord) -> tuple:
    """Ordem de Lyndon–Schupp: comprimento, depois metades esquerdas."""
    k = (len(w) + 1) // 2
    left = tuple(_letter_key(a) for a in w.letters[:k])
    right = tuple(_letter_key(a) for a in w.inverse().letters[:k])
    return (len(w), min(left, right), max(left, right))


def _candidates(words: list[FreeWord]):
    n = len(words)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for e in (1, -1):
                yield NielsenMove('right', i, j, e), words[i] * words[j] ** e
                yield NielsenMove('left', i, j, e), words[j] ** e * words[i]


def _next_move(words: list[FreeWord]) -> NielsenMove | None:
    # 1. Movimento que encurta (maior redução; empates pela ordem)
    best = None
    for move, cand in _candidates(words):
        gain = len(words[move.i]) - len(cand)
        if gain > 0:
            key = (-gain, _half_key(cand), move.i, move.j, move.kind)
            if best is None or key < best[0]:
                best = (key, move)
    if best is not None:
        return best[1]
    # 2. Mesmo comprimento, chave estritamente menor
    for move, cand in _candidates(words):
        if len(cand) == len(words[move.i]) and _half_key(cand) < _half_key(
            words[move.i]
        ):
            return move
    return None


def nielsen_reduce(
    words: Iterable[FreeWord], rank: int
) -> tuple[tuple[FreeWord, ...], NielsenRecord]:
    """Conjunto Nielsen-reduzido gerando o mesmo subgrupo, com registro."""
    initial = tuple(words)
    for w in initial:
        if w.rank != rank:
            raise RankMismatchError(f'palavra de posto {w.rank} != {rank}')
    current = list(initial)
    steps: list[NielsenMove] = []
    while True:
        trivial = [k for k, w in enumerate(current) if w.is_identity]
        for k in reversed(trivial):
            move = NielsenMove('delete', k)
            move.apply(current)
            steps.append(move)
        move = _next_move(current)
        if move is None:
            break
        move.apply(current)
        steps.append(move)
    logger.debug('Nielsen: %d movimentos em %d palavras', len(steps),
                 len(initial))
    final = tuple(current)
    return final, NielsenRecord(initial, final, tuple(steps))


def _is_letter_set(words: Sequence[FreeWord]) -> bool:
    return all(len(w) == 1 for w in words) and len(
        {abs(w.letters[0]) for w in words}
    ) == len(words)


def is_basis(words: Iterable[FreeWord], rank: int) -> bool:
    words = tuple(words)
    if len(words) != rank:
        return False
    reduced, _ = nielsen_reduce(words, rank)
    return len(reduced) == rank and _is_letter_set(reduced)


def spans_free_factor(
    words: Iterable[FreeWord], letters: Iterable[int], rank: int
) -> bool:
    """O subgrupo gerado é o fator livre <x_k : k em letters>?"""
    wanted = sorted(set(letters))
    reduced, _ = nielsen_reduce(words, rank)
    return _is_letter_set(reduced) and sorted(
        abs(w.letters[0]) for w in reduced
    ) == wanted


def invert_automorphism(phi: GrMorphism) -> GrMorphism:
    """Inverso de um automorfismo de F_n, refazendo o registro de Nielsen."""
    n = phi.src_rank
    if phi.dst_rank != n:
        raise RankMismatchError(f'{n} -> {phi.dst_rank} não é endomorfismo')
    reduced, record = nielsen_reduce(phi.images, n)
    if len(reduced) != n or not _is_letter_set(reduced):
        raise WordError(f'{phi} não é automorfismo')
    current = list(reduced)
    steps = list(record.steps)
    # 1. Sinais
    for k, w in enumerate(current):
        if w.letters[0] < 0:
            move = NielsenMove('invert', k)
            move.apply(current)
            steps.append(move)
    # 2. Ordena x1, ..., xn por trocas
    for k in range(n):
        pos = next(
            p for p in range(k, n) if current[p].letters[0] == k + 1
        )
        if pos != k:
            move = NielsenMove('swap', k, pos)
            move.apply(current)
            steps.append(move)
    inverse = identity(n)
    for move in steps:
        inverse = compose(inverse, move.automorphism(n))
    return inverse


def is_automorphism(phi: GrMorphism) -> bool:
    return phi.src_rank == phi.dst_rank and is_basis(phi.images, phi.src_rank)


# =============================================================================
# Amostragem aleatória
# =============================================================================


def random_word(
    rng: np.random.Generator, rank: int, max_length: int
) -> FreeWord:
    if rank == 0:
        return FreeWord.identity(0)
    length = int(rng.integers(0, max_length + 1))
    letters = [
        int(rng.integers(1, rank + 1)) * (1 if rng.random() < 0.5 else -1)
        for _ in range(length)
    ]
    return FreeWord(tuple(letters), rank)


def random_morphism(
    rng: np.random.Generator, src: int, dst: int, max_length: int
) -> GrMorphism:
    return GrMorphism(
        src,
        dst,
        tuple(random_word(rng, dst, max_length) for _ in range(src)),
    )


def random_automorphism(
    rng: np.random.Generator, n: int, steps: int = 6
) -> GrMorphism:
    """Produto de automorfismos elementares de Nielsen."""
    phi = identity(n)
    if n == 0:
        return phi
    for _ in range(steps):
        i = int(rng.integers(0, n))
        choice = int(rng.integers(0, 4)) if n > 1 else 1
        if choice == 0:
            move = NielsenMove('swap', i, int(rng.integers(0, n)))
        elif choice == 1:
            move = NielsenMove('invert', i)
        else:
            j = int(rng.choice([k for k in range(n) if k != i]))
            e = 1 if rng.random() < 0.5 else -1
            move = NielsenMove('right' if choice == 2 else 'left', i, j, e)
        phi = compose(phi, move.automorphism(n))
    return phi
