# grtor/engine/barres.py
# -*- coding: utf-8 -*-
"""
Somas formais de morfismos paralelos de gr e a resolução em barras.

O diferencial d_n : P_{n+1} -> P_n corresponde (Yoneda) ao elemento
bar_element(n, r) de k[gr(Z^{*n+r}, Z^{*n+r+1})]:

    a - b_1 + b_2 - ... + (-1)^n b_n + (-1)^{n+1} c

com as faces escritas como tuplas de imagens dos geradores.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from grtor.engine.checks import CheckReport, run_cells
from grtor.engine.linalg import Matrix
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    compose,
    free_product,
    identity,
    inclusion,
    invert_automorphism,
    is_basis,
    random_morphism,
)
from grtor.errors import RankMismatchError, WordError

logger = logging.getLogger(__name__)


# =============================================================================
# Somas formais
# =============================================================================


class FormalSum:
    """Combinação inteira de morfismos Z^{*src} -> Z^{*dst}."""

    __slots__ = ('src_rank', 'dst_rank', 'terms')

    def __init__(
        self,
        src_rank: int,
        dst_rank: int,
        terms: Mapping[GrMorphism, int] | None = None,
    ):
        self.src_rank = src_rank
        self.dst_rank = dst_rank
        self.terms: dict[GrMorphism, int] = {}
        for f, c in (terms or {}).items():
            self._add(f, c)

    def _add(self, f: GrMorphism, c: int) -> None:
        if (f.src_rank, f.dst_rank) != (self.src_rank, self.dst_rank):
            raise RankMismatchError(
                f'termo {f} fora de {self.src_rank} -> {self.dst_rank}'
            )
        total = self.terms.get(f, 0) + c
        if total:
            self.terms[f] = total
        else:
            self.terms.pop(f, None)

    @classmethod
    def single(cls, f: GrMorphism, c: int = 1) -> 'FormalSum':
        return cls(f.src_rank, f.dst_rank, {f: c})

    @classmethod
    def zero(cls, src_rank: int, dst_rank: int) -> 'FormalSum':
        return cls(src_rank, dst_rank)

    def _check(self, other: 'FormalSum') -> None:
        if (self.src_rank, self.dst_rank) != (other.src_rank, other.dst_rank):
            raise RankMismatchError('somas formais não paralelas')

    def __add__(self, other: 'FormalSum') -> 'FormalSum':
        self._check(other)
        out = FormalSum(self.src_rank, self.dst_rank, self.terms)
        for f, c in other.terms.items():
            out._add(f, c)
        return out

    def __neg__(self) -> 'FormalSum':
        return self.scale(-1)

    def __sub__(self, other: 'FormalSum') -> 'FormalSum':
        return self + (-other)

    def scale(self, c: int) -> 'FormalSum':
        return FormalSum(
            self.src_rank,
            self.dst_rank,
            {f: c * v for f, v in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return (
            self.src_rank == other.src_rank
            and self.dst_rank == other.dst_rank
            and self.terms == other.terms
        )

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[GrMorphism, int]]:
        return sorted(self.terms.items(), key=lambda fc: fc[0].sort_key())

    def embed(self, left: int, right: int) -> 'FormalSum':
        """id_left * (cada termo) * id_right."""
        out = FormalSum(left + self.src_rank + right,
                        left + self.dst_rank + right)
        for f, c in self.terms.items():
            out._add(free_product(identity(left), f, identity(right)), c)
        return out

    def evaluate(self, functor) -> Matrix:
        """Σ c·X(φ) para um funtor contravariante X sobre gr."""
        shape = (functor.dim(self.src_rank), functor.dim(self.dst_rank))
        out = Matrix.zeros(functor.ring, *shape)
        for f, c in self.items():
            out = out + functor.on_morphism(f).scale(c)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for f, c in self.items():
            body = '(' + ', '.join(str(w) for w in f.images) + ')'
            sign = '-' if c < 0 else '+'
            mag = '' if abs(c) == 1 else f'{abs(c)}·'
            parts.append(f'{sign} {mag}{body}')
        text = ' '.join(parts)
        return text[2:] if text.startswith('+ ') else text


def formal_compose(s: FormalSum, t: FormalSum) -> FormalSum:
    """S ∘ T, extensão bilinear da composição (S: B -> C, T: A -> B)."""
    if t.dst_rank != s.src_rank:
        raise RankMismatchError(
            f'composição {s.src_rank}->{s.dst_rank} após '
            f'{t.src_rank}->{t.dst_rank}'
        )
    out = FormalSum(t.src_rank, s.dst_rank)
    for g, c in s.terms.items():
        for f, e in t.terms.items():
            out._add(compose(g, f), c * e)
    return out


# =============================================================================
# Faces e elementos de barra
# =============================================================================


@lru_cache(maxsize=1024)
def face(kind: str, n: int, r: int, i: int | None = None) -> GrMorphism:
    """Face a, b_i ou c : Z^{*n+r} -> Z^{*n+r+1}."""
    if n < 1 or r < 0:
        raise WordError(f'face fora de alcance: n={n}, r={r}')
    size = n + r + 1

    def e(k):
        return FreeWord.generator(k, size)

    if kind == 'a':
        images = [e(k + 1) for k in range(1, n + r + 1)]
    elif kind == 'b':
        if i is None or not 1 <= i <= n:
            raise WordError(f'b_i exige 1 <= i <= {n}, recebido {i}')
        images = []
        for k in range(1, n + r + 1):
            if k < i:
                images.append(e(k))
            elif k == i:
                images.append(e(k) * e(k + 1))
            else:
                images.append(e(k + 1))
    elif kind == 'c':
        # omite e_{n+1}: c^{1,0} = (e1), c^{2,0} = (e1, e2)
        images = [e(k) if k <= n else e(k + 1) for k in range(1, n + r + 1)]
    else:
        raise WordError(f'face desconhecida: {kind!r}')
    return GrMorphism(n + r, size, tuple(images))


@lru_cache(maxsize=256)
def _bar_terms(n: int, r: int) -> tuple[tuple[GrMorphism, int], ...]:
    terms = [(face('a', n, r), 1)]
    terms += [(face('b', n, r, i), (-1) ** i) for i in range(1, n + 1)]
    terms.append((face('c', n, r), (-1) ** (n + 1)))
    return tuple(terms)


def bar_element(n: int, r: int) -> FormalSum:
    if n < 1:
        raise WordError(f'bar_element exige n >= 1, recebido {n}')
    out = FormalSum(n + r, n + r + 1)
    for f, c in _bar_terms(n, r):
        out._add(f, c)
    return out


# =============================================================================
# Verificações simbólicas
# =============================================================================


def _grid(n_max: int, r_max: int) -> list[tuple[int, int]]:
    return [(n, r) for n in range(1, n_max + 1) for r in range(r_max + 1)]


def check_d_squared(n_max: int, r_max: int, threads: int = 1) -> CheckReport:
    report = CheckReport('bar d^2 = 0', bound=f'n<={n_max}, r<={r_max}')

    def cell(key):
        n, r = key
        residue = formal_compose(bar_element(n + 1, r), bar_element(n, r))
        return key, residue

    for (n, r), residue in run_cells(cell, _grid(n_max, r_max), threads):
        report.add(
            'd_squared',
            {'n': n, 'r': r},
            residue.is_zero(),
            '' if residue.is_zero() else str(residue),
        )
    logger.info('d^2: %d células', len(report.rows))
    return report


def theta_morphism(tau: Iterable[FreeWord], b: int) -> GrMorphism:
    """θ : T*B -> T*B, T ↦ τ e identidade em B."""
    tau = tuple(tau)
    size = len(tau) + b
    images = list(tau) + [
        FreeWord.generator(len(tau) + k, size) for k in range(1, b + 1)
    ]
    return GrMorphism(size, size, tuple(images))


def psi_morphism(phi: GrMorphism, tau: Iterable[FreeWord]) -> GrMorphism:
    """ψ : T*A -> T*B, T ↦ τ e A ↦ u(B, T)∘φ."""
    tau = tuple(tau)
    t = len(tau)
    shifted = compose(inclusion(phi.dst_rank, t), phi)
    return GrMorphism(t + phi.src_rank, t + phi.dst_rank,
                      tau + shifted.images)


def _homotopy_cells(n: int, r: int) -> list[tuple[str, dict, bool, str]]:
    rows = []
    # (a) a^{n,r} = u(Z^{n+r}, Z)
    a = face('a', n, r)
    rows.append(('a_is_inclusion', {'n': n, 'r': r},
                 a == inclusion(n + r, 1), str(a)))
    # (b) b_{i+1}^{n,r} = Z * b_i^{n-1,r}
    for i in range(1, n):
        lhs = face('b', n, r, i + 1)
        rhs = free_product(identity(1), face('b', n - 1, r, i))
        rows.append(('b_shift', {'n': n, 'r': r, 'i': i}, lhs == rhs,
                     f'{lhs} vs {rhs}'))
    # (c) c^{n,r} = Z * c^{n-1,r}
    if n >= 2:
        lhs = face('c', n, r)
        rhs = free_product(identity(1), face('c', n - 1, r))
        rows.append(('c_shift', {'n': n, 'r': r}, lhs == rhs,
                     f'{lhs} vs {rhs}'))
    # (d) τ = e1 e2: ψ = b_1^{n,r} e θ invertível
    b = n + r
    size = b + 1
    tau = (FreeWord((1, 2), size),)
    theta = theta_morphism(tau, b)
    psi = psi_morphism(inclusion(b - 1, 1), tau)
    rows.append(('psi_is_b1', {'n': n, 'r': r}, psi == face('b', n, r, 1),
                 str(psi)))
    theta_inv = GrMorphism(
        size,
        size,
        (FreeWord((1, -2), size),) + theta.images[1:],
    )
    ok = (
        is_basis(theta.images, size)
        and compose(theta, theta_inv) == identity(size)
        and compose(theta_inv, theta) == identity(size)
        and invert_automorphism(theta) == theta_inv
    )
    rows.append(('theta_invertible', {'n': n, 'r': r}, ok, str(theta_inv)))
    return rows


def check_homotopy_identities(
    n_max: int, r_max: int, threads: int = 1
) -> CheckReport:
    report = CheckReport(
        'identidades estruturais da homotopia',
        bound=f'n<={n_max}, r<={r_max}',
    )
    cells = run_cells(lambda k: _homotopy_cells(*k), _grid(n_max, r_max),
                      threads)
    for rows in cells:
        for check, params, ok, detail in rows:
            report.add(check, params, ok, '' if ok else detail)
    return report


def check_formal_associativity(
    samples: int, seed: int, max_rank: int = 3, max_length: int = 3
) -> CheckReport:
    """(S∘T)∘U = S∘(T∘U) e bilinearidade em triplas aleatórias."""
    rng = np.random.default_rng(seed)
    report = CheckReport('associatividade formal',
                         bound=f'{samples} amostras, posto<={max_rank}')

    def random_sum(src, dst):
        out = FormalSum.zero(src, dst)
        for _ in range(int(rng.integers(1, 4))):
            f = random_morphism(rng, src, dst, max_length)
            out = out + FormalSum.single(f, int(rng.integers(-2, 3)) or 1)
        return out

    for k in range(samples):
        a, b, c, d = (int(x) for x in rng.integers(0, max_rank + 1, 4))
        s, t, u = random_sum(c, d), random_sum(b, c), random_sum(a, b)
        t2 = random_sum(b, c)
        assoc = formal_compose(formal_compose(s, t), u) == formal_compose(
            s, formal_compose(t, u)
        )
        bilinear = formal_compose(s, t + t2) == formal_compose(
            s, t
        ) + formal_compose(s, t2)
        report.add('associativity', {'sample': k, 'ranks': [a, b, c, d]},
                   assoc and bilinear)
    return report
