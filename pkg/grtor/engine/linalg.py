# grtor/engine/linalg.py
# -*- coding: utf-8 -*-
"""
Álgebra linear exata sobre Z, Q e F_p.

As matrizes guardam um numpy.ndarray de dtype=object, com inteiros de
precisão arbitrária (Z, F_p) ou fractions.Fraction (Q). Nada aqui usa
ponto flutuante.

Operações principais:
- forma normal de Smith (`snf`) com as matrizes de passagem;
- núcleo, imagem, posto e resolução de sistemas;
- cokernel e homologia de complexos finitos (com torção sobre Z).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Iterable, Sequence

import numpy as np

from grtor.errors import (
    GrtorError,
    NotInSpanError,
    RingError,
    ShapeError,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Anéis
# =============================================================================


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Ring:
    """k = Z, Q ou F_p (p primo)."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in {'z', 'q', 'fp'}:
            raise RingError(f'anel desconhecido: {self.tag!r}')
        if self.tag == 'fp' and not (self.p and _is_prime(self.p)):
            raise RingError(f'F_p exige p primo, recebido {self.p!r}')
        if self.tag != 'fp' and self.p is not None:
            raise RingError(f'{self.tag} não leva característica')

    @classmethod
    def parse(cls, text: str) -> 'Ring':
        """'z', 'q' ou 'fp:<p>'."""
        text = text.strip().lower()
        if text in {'z', 'q'}:
            return cls(text)
        if text.startswith('fp:'):
            try:
                return cls('fp', int(text[3:]))
            except ValueError as err:
                raise RingError(f'anel inválido: {text!r}') from err
        raise RingError(f'anel inválido: {text!r}')

    @property
    def is_field(self) -> bool:
        return self.tag != 'z'

    @property
    def label(self) -> str:
        return f'fp:{self.p}' if self.tag == 'fp' else self.tag

    def __str__(self) -> str:
        return self.label

    def coerce(self, x: Any) -> Any:
        if self.tag == 'q':
            return Fraction(x)
        if isinstance(x, Fraction):
            if self.tag == 'z':
                if x.denominator != 1:
                    raise RingError(f'{x} não é inteiro')
                return int(x.numerator)
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        x = int(x)
        return x % self.p if self.tag == 'fp' else x

    def inverse(self, x: Any) -> Any:
        if x == 0:
            raise ZeroDivisionError('inverso de zero')
        if self.tag == 'q':
            return 1 / Fraction(x)
        if self.tag == 'fp':
            return pow(int(x), -1, self.p)
        if x in (1, -1):
            return x
        raise RingError(f'{x} não é invertível em Z')

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.tag == 'fp' and arr.size:
            return arr % self.p
        return arr


Z = Ring('z')
Q = Ring('q')


def fp(p: int) -> Ring:
    return Ring('fp', p)


# =============================================================================
# Matrizes
# =============================================================================


def _empty(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


class Matrix:
    """Matriz exata (linhas x colunas) sobre um anel."""

    __slots__ = ('ring', 'data')

    def __init__(self, ring: Ring, rows: Any, shape=None):
        if isinstance(rows, np.ndarray):
            data = np.array(rows, dtype=object)
        else:
            rows = [list(r) for r in rows]
            if shape is None:
                shape = (len(rows), len(rows[0]) if rows else 0)
            data = _empty(*shape)
            for i, row in enumerate(rows):
                if len(row) != shape[1]:
                    raise ShapeError('linhas de tamanhos diferentes')
                for j, x in enumerate(row):
                    data[i, j] = x
        if data.ndim != 2:
            raise ShapeError(f'matriz precisa ser 2D, veio {data.ndim}D')
        if shape is not None and data.shape != tuple(shape):
            data = data.reshape(shape)
        if data.size:
            data = np.vectorize(ring.coerce, otypes=[object])(data)
        self.ring = ring
        self.data = data

    # -------------------------------------------------------------------------
    # Construtores
    # -------------------------------------------------------------------------
    @classmethod
    def _wrap(cls, ring: Ring, data: np.ndarray) -> 'Matrix':
        m = object.__new__(cls)
        m.ring = ring
        m.data = ring.normalize(data)
        return m

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> 'Matrix':
        data = _empty(rows, cols)
        if ring.tag == 'q':
            data[:, :] = Fraction(0)
        return cls._wrap(ring, data)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> 'Matrix':
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.data[i, i] = ring.coerce(1)
        return m

    @classmethod
    def from_triplets(
        cls,
        ring: Ring,
        rows: int,
        cols: int,
        triplets: Iterable[tuple[int, int, Any]],
    ) -> 'Matrix':
        """Entrada esparsa (i, j, valor); repetições se somam."""
        m = cls.zeros(ring, rows, cols)
        for i, j, x in triplets:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f'entrada ({i}, {j}) fora de {rows}x{cols}')
            m.data[i, j] = m.data[i, j] + ring.coerce(x)
        m.data = ring.normalize(m.data)
        return m

    @classmethod
    def from_json(cls, payload: str | dict) -> 'Matrix':
        if isinstance(payload, str):
            payload = json.loads(payload)
        ring = Ring.parse(payload['ring'])
        rows, cols = int(payload['rows']), int(payload['cols'])
        entries = list(payload['entries'])
        if len(entries) != rows * cols:
            raise ShapeError(
                f'{len(entries)} entradas para uma matriz {rows}x{cols}'
            )
        data = _empty(rows, cols)
        for k, x in enumerate(entries):
            data[k // cols, k % cols] = ring.coerce(Fraction(str(x)))
        return cls._wrap(ring, data)

    def to_json(self) -> dict[str, Any]:
        return {
            'ring': self.ring.label,
            'rows': self.rows,
            'cols': self.cols,
            'entries': [str(x) for x in self.data.flatten()],
        }

    # -------------------------------------------------------------------------
    # Acesso
    # -------------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, key):
        return self.data[key]

    def entries(self) -> list[list[Any]]:
        return [list(row) for row in self.data]

    def column(self, j: int) -> 'Matrix':
        return Matrix._wrap(self.ring, self.data[:, j : j + 1].copy())

    def columns(self, idx: Sequence[int]) -> 'Matrix':
        return Matrix._wrap(
            self.ring, self.data[:, list(idx)].reshape(self.rows, len(idx))
        )

    def row_block(self, idx: Sequence[int]) -> 'Matrix':
        return Matrix._wrap(
            self.ring, self.data[list(idx), :].reshape(len(idx), self.cols)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> 'Matrix':
        return self.row_block(rows).columns(cols)

    def copy(self) -> 'Matrix':
        return Matrix._wrap(self.ring, self.data.copy())

    # -------------------------------------------------------------------------
    # Aritmética
    # -------------------------------------------------------------------------
    def _check_ring(self, other: 'Matrix'):
        if self.ring != other.ring:
            raise RingError(f'anéis diferentes: {self.ring} e {other.ring}')

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeError(
                f'produto {self.rows}x{self.cols} por '
                f'{other.rows}x{other.cols}'
            )
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(self.ring, self.rows, other.cols)
        return Matrix._wrap(self.ring, self.data.dot(other.data))

    def __add__(self, other: 'Matrix') -> 'Matrix':
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f'soma {self.shape} com {other.shape}')
        return Matrix._wrap(self.ring, self.data + other.data)

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        return self + (-other)

    def __neg__(self) -> 'Matrix':
        return Matrix._wrap(self.ring, -self.data)

    def scale(self, c: Any) -> 'Matrix':
        return Matrix._wrap(self.ring, self.data * self.ring.coerce(c))

    @property
    def T(self) -> 'Matrix':
        return Matrix._wrap(self.ring, self.data.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ring != other.ring or self.shape != other.shape:
            return False
        return bool(np.all(self.data == other.data)) if self.data.size else True

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.data.size or bool(np.all(self.data == 0))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(
            self.ring, self.rows
        )

    def change_ring(self, ring: Ring) -> 'Matrix':
        """Reduz/estende os escalares (Z -> Q, Z -> F_p)."""
        if ring == self.ring:
            return self
        if not self.data.size:
            return Matrix.zeros(ring, *self.shape)
        return Matrix._wrap(
            ring, np.vectorize(ring.coerce, otypes=[object])(self.data)
        )

    def trace(self) -> Any:
        if self.rows != self.cols:
            raise ShapeError('traço de matriz não quadrada')
        return self.ring.coerce(
            sum((self.data[i, i] for i in range(self.rows)), 0)
        )

    def __repr__(self) -> str:
        return f'Matrix({self.ring.label}, {self.entries()})'


def hstack(ring: Ring, blocks: Sequence[Matrix], rows: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(ring, rows, 0)
    for b in blocks:
        if b.rows != rows:
            raise ShapeError(f'hstack: {b.rows} linhas, esperado {rows}')
    return Matrix._wrap(ring, np.hstack([b.data for b in blocks]))


def vstack(ring: Ring, blocks: Sequence[Matrix], cols: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(ring, 0, cols)
    for b in blocks:
        if b.cols != cols:
            raise ShapeError(f'vstack: {b.cols} colunas, esperado {cols}')
    return Matrix._wrap(ring, np.vstack([b.data for b in blocks]))


def block_diag(ring: Ring, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix.zeros(ring, rows, cols)
    i = j = 0
    for b in blocks:
        out.data[i : i + b.rows, j : j + b.cols] = b.data
        i += b.rows
        j += b.cols
    return out


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Produto de Kronecker, índice (i, k) -> i * rows(b) + k."""
    a._check_ring(b)
    out = Matrix.zeros(a.ring, a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.data[i, j]
            if x == 0:
                continue
            out.data[
                i * b.rows : (i + 1) * b.rows, j * b.cols : (j + 1) * b.cols
            ] = b.data * x
    out.data = a.ring.normalize(out.data)
    return out


# =============================================================================
# Eliminação sobre corpos
# =============================================================================


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Forma escalonada reduzida por linhas e colunas pivô (só corpos)."""
    ring = m.ring
    if not ring.is_field:
        raise RingError('rref exige um corpo')
    a = m.data.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if a[i, c] != 0]
        if not nz:
            continue
        p = nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = ring.normalize(a[r] * ring.inverse(a[r, c]))
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = ring.normalize(a[i] - a[i, c] * a[r])
        pivots.append(c)
        r += 1
    return Matrix._wrap(ring, a), pivots


def rank(m: Matrix) -> int:
    if not m.data.size:
        return 0
    if m.ring.is_field:
        return len(rref(m)[1])
    return len(rref(m.change_ring(Q))[1])


def determinant(m: Matrix) -> Any:
    """Determinante exato (Bareiss sobre Z, eliminação sobre corpos)."""
    if m.rows != m.cols:
        raise ShapeError('determinante de matriz não quadrada')
    ring = m.ring
    n = m.rows
    if n == 0:
        return ring.coerce(1)
    a = [list(row) for row in m.data]
    if ring.is_field:
        det = ring.coerce(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return ring.coerce(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det = det * a[c][c]
            inv = ring.inverse(a[c][c])
            for i in range(c + 1, n):
                f = a[i][c] * inv
                if f:
                    a[i] = [
                        ring.coerce(x - f * y) for x, y in zip(a[i], a[c])
                    ]
        return ring.coerce(det)
    # Bareiss (divisões exatas)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# =============================================================================
# Forma normal de Smith
# =============================================================================


@dataclass(frozen=True)
class SmithForm:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def divisors(self) -> list[int]:
        n = min(self.D.shape)
        return [self.D[i, i] for i in range(n) if self.D[i, i] != 0]


def snf(m: Matrix) -> SmithForm:
    """
    U·M·V = D com U, V unimodulares e D diagonal, d1 | d2 | ...

    Pivô de menor valor absoluto, limpeza de linha/coluna por divisão
    euclidiana e correção de divisibilidade somando linhas.
    """
    if m.ring != Z:
        raise RingError(f'SNF só sobre Z, recebido {m.ring}')
    rows, cols = m.shape
    d = m.data.copy()
    u = Matrix.identity(Z, rows).data
    v = Matrix.identity(Z, cols).data

    def swap_rows(i, j):
        if i != j:
            d[[i, j]] = d[[j, i]]
            u[[i, j]] = u[[j, i]]

    def swap_cols(i, j):
        if i != j:
            d[:, [i, j]] = d[:, [j, i]]
            v[:, [i, j]] = v[:, [j, i]]

    steps = 0
    t = 0
    while t < min(rows, cols):
        block = d[t:, t:]
        nz = np.argwhere(block != 0)
        if not len(nz):
            break
        # 1. Move o menor |entrada| para (t, t)
        i, j = min(nz, key=lambda ij: abs(block[ij[0], ij[1]]))
        swap_rows(t, t + i)
        swap_cols(t, t + j)
        while True:
            steps += 1
            p = d[t, t]
            # 2. Limpa a coluna t
            for i in range(t + 1, rows):
                q = d[i, t] // p
                if q:
                    d[i] = d[i] - q * d[t]
                    u[i] = u[i] - q * u[t]
            rest = [i for i in range(t + 1, rows) if d[i, t] != 0]
            if rest:
                i = min(rest, key=lambda i: abs(d[i, t]))
                swap_rows(t, i)
                continue
            # 3. Limpa a linha t
            for j in range(t + 1, cols):
                q = d[t, j] // p
                if q:
                    d[:, j] = d[:, j] - q * d[:, t]
                    v[:, j] = v[:, j] - q * v[:, t]
            rest = [j for j in range(t + 1, cols) if d[t, j] != 0]
            if rest:
                j = min(rest, key=lambda j: abs(d[t, j]))
                swap_cols(t, j)
                continue
            # 4. Divisibilidade do bloco restante
            bad = [
                i
                for i in range(t + 1, rows)
                if any(d[i, j] % p for j in range(t + 1, cols))
            ]
            if bad:
                d[t] = d[t] + d[bad[0]]
                u[t] = u[t] + u[bad[0]]
                continue
            break
        if d[t, t] < 0:
            d[t] = -d[t]
            u[t] = -u[t]
        t += 1
    logger.debug('SNF %dx%d: %d passos de pivô', rows, cols, steps)
    return SmithForm(
        Matrix._wrap(Z, u), Matrix._wrap(Z, d), Matrix._wrap(Z, v)
    )


# =============================================================================
# Núcleo, imagem, sistemas
# =============================================================================


def kernel_basis(m: Matrix) -> Matrix:
    """
    Base do núcleo em colunas (cols(M) x nulidade).

    Sobre Z a base é saturada (vem das colunas de V na SNF).
    """
    ring = m.ring
    if m.cols == 0:
        return Matrix.zeros(ring, 0, 0)
    if m.rows == 0:
        return Matrix.identity(ring, m.cols)
    if not ring.is_field:
        s = snf(m)
        r = len(s.divisors)
        return s.V.columns(range(r, m.cols))
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = Matrix.zeros(ring, m.cols, len(free))
    for k, f in enumerate(free):
        basis.data[f, k] = ring.coerce(1)
        for r, pc in enumerate(pivots):
            basis.data[pc, k] = ring.normalize(
                np.array([-red.data[r, f]], dtype=object)
            )[0]
    return basis


def image_basis(m: Matrix) -> Matrix:
    """Colunas de M que formam base do espaço coluna (só corpos)."""
    if not m.ring.is_field:
        raise RingError('image_basis exige um corpo')
    if not m.data.size:
        return Matrix.zeros(m.ring, m.rows, 0)
    _, pivots = rref(m)
    return m.columns(pivots)


def left_kernel_basis(m: Matrix) -> Matrix:
    """Linhas q com q·M = 0."""
    return kernel_basis(m.T).T


def solve(b: Matrix, y: Matrix) -> Matrix:
    """
    Uma solução exata X de B·X = Y.

    Sobre corpos as variáveis livres ficam em zero; sobre Z usa a SNF.
    Levanta NotInSpanError se não houver solução no anel.
    """
    b._check_ring(y)
    if b.rows != y.rows:
        raise ShapeError(f'solve: B tem {b.rows} linhas, Y tem {y.rows}')
    ring = b.ring
    if b.cols == 0:
        if not y.is_zero():
            raise NotInSpanError('sistema sem incógnitas e Y != 0')
        return Matrix.zeros(ring, 0, y.cols)
    if ring.is_field:
        aug = hstack(ring, [b, y], b.rows)
        red, pivots = rref(aug)
        if any(p >= b.cols for p in pivots):
            raise NotInSpanError('Y fora do espaço coluna de B')
        x = Matrix.zeros(ring, b.cols, y.cols)
        for r, pc in enumerate(pivots):
            x.data[pc, :] = red.data[r, b.cols :]
        return x
    s = snf(b)
    uy = (s.U @ y).data
    divs = s.divisors
    z = _empty(b.cols, y.cols)
    for i in range(b.rows):
        for j in range(y.cols):
            val = uy[i, j]
            if i < len(divs):
                if val % divs[i]:
                    raise NotInSpanError('sem solução inteira')
                z[i, j] = val // divs[i]
            elif val != 0:
                raise NotInSpanError('Y fora do reticulado de B')
    return s.V @ Matrix._wrap(Z, z)


def complement_columns(m: Matrix) -> Matrix:
    """Vetores canônicos que completam as colunas de M a uma base (corpos)."""
    ring = m.ring
    n = m.rows
    chosen = [m]
    current = rank(m) if m.data.size else 0
    picked: list[int] = []
    for k in range(n):
        e = Matrix.zeros(ring, n, 1)
        e.data[k, 0] = ring.coerce(1)
        trial = hstack(ring, chosen + [e], n)
        if rank(trial) > current:
            chosen.append(e)
            picked.append(k)
            current += 1
        if current == n:
            break
    out = Matrix.zeros(ring, n, len(picked))
    for c, k in enumerate(picked):
        out.data[k, c] = ring.coerce(1)
    return out


# =============================================================================
# Reticulados (redução incremental)
# =============================================================================


def lattice_echelon(ring: Ring, vectors: Iterable[Sequence[Any]], dim: int):
    """
    Forma escalonada das linhas que geram o mesmo submódulo de k^dim.

    Inserção incremental: cada vetor é reduzido contra os pivôs já
    existentes (combinação de Bézout sobre Z). Devolve uma Matrix cujas
    linhas geram o submódulo gerado por `vectors`.
    """
    pivots: dict[int, np.ndarray] = {}
    for vec in vectors:
        v = ring.normalize(np.array(list(vec), dtype=object))
        while True:
            nz = np.nonzero(v != 0)[0]
            if not len(nz):
                break
            c = int(nz[0])
            row = pivots.get(c)
            if row is None:
                if ring.is_field:
                    v = ring.normalize(v * ring.inverse(v[c]))
                elif v[c] < 0:
                    v = -v
                pivots[c] = v
                break
            if ring.is_field:
                v = ring.normalize(v - v[c] * row)
                continue
            a, b = row[c], v[c]
            if b % a == 0:
                v = v - (b // a) * row
                continue
            g, s, t = _exgcd(a, b)
            new_row = s * row + t * v
            v = (a // g) * v - (b // g) * row
            pivots[c] = new_row
    keys = sorted(pivots)
    out = Matrix.zeros(ring, len(keys), dim)
    for i, c in enumerate(keys):
        out.data[i] = pivots[c]
    return out


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t com s·a + t·b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# =============================================================================
# Cokernel, complexos e homologia
# =============================================================================


@dataclass(frozen=True)
class ModuleSummary:
    """Módulo finitamente gerado: k^free ⊕ (torção sobre Z)."""

    ring: Ring
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict[str, Any]:
        return {
            'free_rank': self.free_rank,
            'torsion': list(self.torsion),
        }

    def __str__(self) -> str:
        parts = []
        base = 'Z' if self.ring == Z else self.ring.label.upper()
        if self.free_rank:
            parts.append(
                base if self.free_rank == 1 else f'{base}^{self.free_rank}'
            )
        parts += [f'Z/{d}' for d in self.torsion]
        return ' + '.join(parts) if parts else '0'


def cokernel_presentation(m: Matrix) -> ModuleSummary:
    """k^rows / im(M)."""
    if not m.ring.is_field:
        divs = snf(m).divisors if m.data.size else []
        return ModuleSummary(
            Z, m.rows - len(divs), tuple(d for d in divs if d != 1)
        )
    return ModuleSummary(m.ring, m.rows - rank(m))


def primary_parts(torsion: Iterable[int]) -> list[int]:
    """Decomposição em potências de primos (para comparar somas diretas)."""
    out: list[int] = []
    for d in torsion:
        k = 2
        while d > 1:
            if d % k == 0:
                q = 1
                while d % k == 0:
                    d //= k
                    q *= k
                out.append(q)
            k += 1
    return sorted(out)


@dataclass(frozen=True)
class HomologyEntry:
    degree: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict[str, Any]:
        return {
            'degree': self.degree,
            'free_rank': self.free_rank,
            'torsion': list(self.torsion),
        }


@dataclass
class HomologyResult:
    ring: Ring
    entries: dict[int, HomologyEntry] = field(default_factory=dict)

    def __getitem__(self, n: int) -> HomologyEntry:
        return self.entries[n]

    def to_dict(self) -> dict[str, Any]:
        return {
            'ring': self.ring.label,
            'degrees': [self.entries[n].to_dict() for n in sorted(self.entries)],
        }


@dataclass
class ChainComplex:
    """
    C_n de dimensão dims[n]; d_n : C_n -> C_{n-1} com formato
    dims[n-1] x dims[n]. Diferenciais ausentes são a aplicação nula.
    """

    ring: Ring
    dims: dict[int, int]
    differentials: dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for n, d in self.differentials.items():
            if d.ring != self.ring:
                raise RingError(f'd_{n} sobre {d.ring}, complexo sobre '
                                f'{self.ring}')
            want = (self.dims.get(n - 1, 0), self.dims.get(n, 0))
            if d.shape != want:
                raise ShapeError(f'd_{n} tem formato {d.shape}, esperado {want}')

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        if n in self.differentials:
            return self.differentials[n]
        return Matrix.zeros(self.ring, self.dim(n - 1), self.dim(n))

    def d_squared_residues(self) -> list[int]:
        """Graus n em que d_n·d_{n+1} != 0."""
        return [
            n
            for n in sorted(self.differentials)
            if n + 1 in self.differentials
            and not (self.d(n) @ self.d(n + 1)).is_zero()
        ]

    def is_complex(self) -> bool:
        return not self.d_squared_residues()

    def dual(self) -> 'ChainComplex':
        """Complexo transposto com graus invertidos (n -> -n)."""
        dims = {-n: k for n, k in self.dims.items()}
        diffs = {-n + 1: d.T for n, d in self.differentials.items()}
        return ChainComplex(self.ring, dims, diffs)


def homology(c: ChainComplex, n: int) -> HomologyEntry:
    """H_n = ker d_n / im d_{n+1}."""
    d_n, d_next = c.d(n), c.d(n + 1)
    if not (d_n @ d_next).is_zero():
        raise GrtorError(f'd_{n}·d_{n + 1} != 0')
    if c.ring.is_field:
        kdim = c.dim(n) - rank(d_n)
        return HomologyEntry(n, kdim - rank(d_next))
    kern = kernel_basis(d_n)
    if kern.cols == 0:
        return HomologyEntry(n, 0)
    # d_{n+1} escrito na base saturada do núcleo
    coords = solve(kern, d_next)
    summary = cokernel_presentation(coords)
    return HomologyEntry(n, summary.free_rank, summary.torsion)


def homology_degrees(
    c: ChainComplex, degrees: Iterable[int]
) -> HomologyResult:
    result = HomologyResult(c.ring)
    for n in degrees:
        result.entries[n] = homology(c, n)
    return result


def uct_dimension(z_result: HomologyResult, p: int, n: int) -> int:
    """
    dim H_n(C ⊗ F_p) prevista pelos coeficientes universais a partir da
    homologia inteira: free_n + #{p | d em tors_n} + #{p | d em tors_{n-1}}.
    """
    here = z_result[n]
    total = here.free_rank + sum(1 for d in here.torsion if d % p == 0)
    below = z_result.entries.get(n - 1)
    if below is not None:
        total += sum(1 for d in below.torsion if d % p == 0)
    return total


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)
