# grtor/engine/functors.py
# -*- coding: utf-8 -*-
"""
Funtores sobre ab (e, por precomposição com a abelianização, sobre gr).

Duas camadas:
- `FunctorExpr`: árvore da DSL (id, const, dual, tensor, sum, pow, sym,
  ext, reduced) com avaliação exata em matrizes inteiras;
- `TabulatedFunctor`: interface de avaliação (dim, on_matrix,
  on_morphism) com as construções derivadas (subfuntor, quociente)
  e as transformações naturais.

Convenção de formatos: um funtor covariante leva a matriz b x a
(Z^a -> Z^b) numa matriz dim F(b) x dim F(a); um contravariante, numa
matriz dim F(a) x dim F(b).
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Callable

from grtor.engine.linalg import (
    Matrix,
    Ring,
    Z,
    block_diag,
    complement_columns,
    determinant,
    hstack,
    image_basis,
    kernel_basis,
    kron,
    solve,
)
from grtor.engine.words import GrMorphism, abelianize
from grtor.errors import RingError, ShapeError, VarianceError

logger = logging.getLogger(__name__)

CO = 'co'
CONTRA = 'contra'


# =============================================================================
# Expressões
# =============================================================================


class FunctorExpr:
    """Nó da DSL de funtores."""

    @property
    def variance(self) -> str:
        raise NotImplementedError

    def dim(self, m: int) -> int:
        raise NotImplementedError

    def _eval(self, mat: Matrix, ring: Ring) -> Matrix:
        raise NotImplementedError

    def collapse(self, m: int) -> Matrix:
        """Matriz de Z^m -> 0 (covariante) ou 0 -> Z^m (contravariante)."""
        if self.variance == CO:
            return Matrix.zeros(Z, 0, m)
        return Matrix.zeros(Z, m, 0)


@dataclass(frozen=True)
class Id(FunctorExpr):
    @property
    def variance(self) -> str:
        return CO

    def dim(self, m: int) -> int:
        return m

    def _eval(self, mat, ring):
        return mat.change_ring(ring)

    def __str__(self) -> str:
        return 'id'


@dataclass(frozen=True)
class Const(FunctorExpr):
    rank: int
    var: str = CO

    @property
    def variance(self) -> str:
        return self.var

    def dim(self, m: int) -> int:
        return self.rank

    def _eval(self, mat, ring):
        return Matrix.identity(ring, self.rank)

    def __str__(self) -> str:
        text = f'const({self.rank})'
        return text if self.var == CO else f'dual({text})'


@dataclass(frozen=True)
class Dual(FunctorExpr):
    inner: FunctorExpr

    @property
    def variance(self) -> str:
        return CONTRA if self.inner.variance == CO else CO

    def dim(self, m: int) -> int:
        return self.inner.dim(m)

    def _eval(self, mat, ring):
        return self.inner._eval(mat, ring).T

    def __str__(self) -> str:
        return f'dual({self.inner})'


@dataclass(frozen=True)
class Tensor(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __post_init__(self):
        if self.left.variance != self.right.variance:
            raise VarianceError(
                f'tensor de {self.left} ({self.left.variance}) com '
                f'{self.right} ({self.right.variance})'
            )

    @property
    def variance(self) -> str:
        return self.left.variance

    def dim(self, m: int) -> int:
        return self.left.dim(m) * self.right.dim(m)

    def _eval(self, mat, ring):
        return kron(self.left._eval(mat, ring), self.right._eval(mat, ring))

    def __str__(self) -> str:
        return f'tensor({self.left},{self.right})'


@dataclass(frozen=True)
class DirectSum(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __post_init__(self):
        if self.left.variance != self.right.variance:
            raise VarianceError(
                f'soma de {self.left} ({self.left.variance}) com '
                f'{self.right} ({self.right.variance})'
            )

    @property
    def variance(self) -> str:
        return self.left.variance

    def dim(self, m: int) -> int:
        return self.left.dim(m) + self.right.dim(m)

    def _eval(self, mat, ring):
        return block_diag(
            ring, [self.left._eval(mat, ring), self.right._eval(mat, ring)]
        )

    def __str__(self) -> str:
        return f'sum({self.left},{self.right})'


@dataclass(frozen=True)
class TensorPower(FunctorExpr):
    inner: FunctorExpr
    n: int

    @property
    def variance(self) -> str:
        return self.inner.variance

    def dim(self, m: int) -> int:
        return self.inner.dim(m) ** self.n

    def _eval(self, mat, ring):
        out = Matrix.identity(ring, 1)
        if self.n:
            base = self.inner._eval(mat, ring)
            for _ in range(self.n):
                out = kron(out, base)
        return out

    def __str__(self) -> str:
        return f'pow({self.inner},{self.n})'


@dataclass(frozen=True)
class Sym(FunctorExpr):
    """Potência simétrica de Id; base de monômios em ordem lexicográfica."""

    n: int

    @property
    def variance(self) -> str:
        return CO

    def dim(self, m: int) -> int:
        return comb(m + self.n - 1, self.n) if m else int(self.n == 0)

    def _eval(self, mat, ring):
        b, a = mat.shape
        src = list(combinations_with_replacement(range(a), self.n))
        dst = {
            mono: k
            for k, mono in enumerate(
                combinations_with_replacement(range(b), self.n)
            )
        }
        out = Matrix.zeros(Z, len(dst), len(src))
        for col, mono in enumerate(src):
            for ks in product(range(b), repeat=self.n):
                coef = 1
                for k, i in zip(ks, mono):
                    coef *= mat[k, i]
                    if not coef:
                        break
                if coef:
                    row = dst[tuple(sorted(ks))]
                    out.data[row, col] = out.data[row, col] + coef
        return out.change_ring(ring)

    def __str__(self) -> str:
        return f'sym({self.n})'


@dataclass(frozen=True)
class Ext(FunctorExpr):
    """Potência exterior de Id; base de índices crescentes, entradas menores."""

    n: int

    @property
    def variance(self) -> str:
        return CO

    def dim(self, m: int) -> int:
        return comb(m, self.n)

    def _eval(self, mat, ring):
        b, a = mat.shape
        src = list(combinations(range(a), self.n))
        dst = list(combinations(range(b), self.n))
        out = Matrix.zeros(Z, len(dst), len(src))
        for col, cols in enumerate(src):
            for row, rows in enumerate(dst):
                out.data[row, col] = determinant(
                    mat.submatrix(rows, cols).change_ring(Z)
                )
        return out.change_ring(ring)

    def __str__(self) -> str:
        return f'ext({self.n})'


@dataclass(frozen=True)
class Reduced(FunctorExpr):
    """Parte reduzida F̄ = ker(F(m) -> F(0))."""

    inner: FunctorExpr

    @property
    def variance(self) -> str:
        return self.inner.variance

    def dim(self, m: int) -> int:
        return self.inner.dim(m) - self.inner.dim(0)

    def _eval(self, mat, ring):
        b, a = mat.shape
        full = self.inner._eval(mat, ring)
        k_a = _reduced_basis(self.inner, a, ring)
        k_b = _reduced_basis(self.inner, b, ring)
        if self.variance == CO:
            return solve(k_b, full @ k_a)
        return solve(k_a, full @ k_b)

    def __str__(self) -> str:
        return f'reduced({self.inner})'


@lru_cache(maxsize=512)
def _reduced_basis(inner: FunctorExpr, m: int, ring: Ring) -> Matrix:
    return kernel_basis(inner._eval(inner.collapse(m), ring))


def evaluate(expr: FunctorExpr, mat: Matrix, ring: Ring = Z) -> Matrix:
    """Valor de `expr` na matriz inteira `mat` (Z^a -> Z^b)."""
    if mat.ring != Z:
        raise RingError('morfismos de ab são matrizes inteiras')
    b, a = mat.shape
    out = expr._eval(mat, ring)
    want = (
        (expr.dim(b), expr.dim(a))
        if expr.variance == CO
        else (expr.dim(a), expr.dim(b))
    )
    if out.shape != want:
        raise ShapeError(f'{expr} devolveu {out.shape}, esperado {want}')
    return out


# =============================================================================
# Funtores tabulados
# =============================================================================


class TabulatedFunctor:
    """Interface de avaliação comum a expressões e construções derivadas."""

    def __init__(self, ring: Ring, variance: str, name: str):
        if variance not in {CO, CONTRA}:
            raise VarianceError(f'variância inválida: {variance}')
        self.ring = ring
        self.variance = variance
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _memo(self, key, fill: Callable[[], object]):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = fill()
        with self._lock:
            self._cache.setdefault(key, value)
            return self._cache[key]

    def dim(self, m: int) -> int:
        raise NotImplementedError

    def on_matrix(self, mat: Matrix) -> Matrix:
        raise NotImplementedError

    def on_morphism(self, phi: GrMorphism) -> Matrix:
        """Valor no morfismo de gr, através da abelianização."""
        return self.on_matrix(abelianize(phi))

    def identity(self, m: int) -> Matrix:
        return Matrix.identity(self.ring, self.dim(m))

    def compose_values(self, outer: Matrix, inner: Matrix) -> Matrix:
        """F(outer·inner) esperado a partir de F(outer) e F(inner)."""
        if self.variance == CO:
            return self.on_matrix(outer) @ self.on_matrix(inner)
        return self.on_matrix(inner) @ self.on_matrix(outer)

    def check_functoriality(self, outer: Matrix, inner: Matrix) -> bool:
        return self.on_matrix(outer @ inner) == self.compose_values(
            outer, inner
        )

    def __str__(self) -> str:
        return self.name


class ExprFunctor(TabulatedFunctor):
    """Funtor dado por uma expressão da DSL."""

    def __init__(self, expr: FunctorExpr, ring: Ring = Z):
        super().__init__(ring, expr.variance, str(expr))
        self.expr = expr

    def dim(self, m: int) -> int:
        return self.expr.dim(m)

    def on_matrix(self, mat: Matrix) -> Matrix:
        return evaluate(self.expr, mat, self.ring)


def precompose_ab(expr: FunctorExpr, ring: Ring = Z) -> ExprFunctor:
    """F ∘ abelianização: o funtor de gr associado a `expr`."""
    return ExprFunctor(expr, ring)


class SubFunctor(TabulatedFunctor):
    """Subfuntor com base (em colunas) escolhida em cada posto."""

    def __init__(
        self,
        backing: TabulatedFunctor,
        basis: Callable[[int], Matrix],
        name: str,
    ):
        super().__init__(backing.ring, backing.variance, name)
        self.backing = backing
        self._basis = basis

    def basis(self, m: int) -> Matrix:
        return self._memo(('basis', m), lambda: self._basis(m))

    def dim(self, m: int) -> int:
        return self.basis(m).cols

    def on_matrix(self, mat: Matrix) -> Matrix:
        b, a = mat.shape
        full = self.backing.on_matrix(mat)
        if self.variance == CO:
            return solve(self.basis(b), full @ self.basis(a))
        return solve(self.basis(a), full @ self.basis(b))


class QuotientFunctor(TabulatedFunctor):
    """
    Quociente por um subfuntor gerado (em cada posto) pelas colunas de
    `relations(m)`. Só sobre corpos.
    """

    def __init__(
        self,
        backing: TabulatedFunctor,
        relations: Callable[[int], Matrix],
        name: str,
    ):
        if not backing.ring.is_field:
            raise RingError(f'quociente {name} exige um corpo')
        super().__init__(backing.ring, backing.variance, name)
        self.backing = backing
        self._relations = relations

    def _frame(self, m: int) -> tuple[Matrix, Matrix]:
        """(q, s): projeção para as coordenadas do quociente e seção."""

        def fill():
            rel = self._relations(m)
            size = self.backing.dim(m)
            rel = image_basis(rel) if rel.cols else rel
            comp = complement_columns(rel)
            full = hstack(self.ring, [rel, comp], size)
            inv = solve(full, Matrix.identity(self.ring, size))
            q = inv.row_block(range(rel.cols, size))
            return q, comp

        return self._memo(('frame', m), fill)

    def projection(self, m: int) -> Matrix:
        return self._frame(m)[0]

    def section(self, m: int) -> Matrix:
        return self._frame(m)[1]

    def dim(self, m: int) -> int:
        return self.projection(m).rows

    def on_matrix(self, mat: Matrix) -> Matrix:
        b, a = mat.shape
        full = self.backing.on_matrix(mat)
        if self.variance == CO:
            return self.projection(b) @ full @ self.section(a)
        return self.projection(a) @ full @ self.section(b)


# =============================================================================
# Morfismos geradores de ab
# =============================================================================


def _elementary(m: int, i: int, j: int, e: int) -> Matrix:
    out = Matrix.identity(Z, m)
    out.data[i, j] = e
    return out


def _transposition(m: int, i: int, j: int) -> Matrix:
    out = Matrix.identity(Z, m)
    out.data[i, i] = out.data[j, j] = 0
    out.data[i, j] = out.data[j, i] = 1
    return out


def injection(m: int) -> Matrix:
    """Z^m -> Z^{m+1}, primeiras coordenadas."""
    out = Matrix.zeros(Z, m + 1, m)
    for i in range(m):
        out.data[i, i] = 1
    return out


def ab_projection(m: int) -> Matrix:
    """Z^{m+1} -> Z^m, esquece a última coordenada."""
    return injection(m).T


@lru_cache(maxsize=16)
def ab_generators(max_rank: int) -> tuple[tuple[str, Matrix], ...]:
    """Transvecções E_ij(±1), transposições, injeções e projeções."""
    gens: list[tuple[str, Matrix]] = []
    for m in range(1, max_rank + 1):
        for i in range(m):
            for j in range(m):
                if i != j:
                    for e in (1, -1):
                        gens.append(
                            (f'E{i + 1}{j + 1}({e:+d})@{m}',
                             _elementary(m, i, j, e))
                        )
        for i, j in combinations(range(m), 2):
            gens.append((f'P{i + 1}{j + 1}@{m}', _transposition(m, i, j)))
    for m in range(max_rank):
        gens.append((f'inj{m}->{m + 1}', injection(m)))
        gens.append((f'proj{m + 1}->{m}', ab_projection(m)))
    return tuple(gens)


# =============================================================================
# Transformações naturais
# =============================================================================


class NatTransformation:
    """η : F -> G dada pelas componentes η_m : F(m) -> G(m)."""

    def __init__(
        self,
        source: TabulatedFunctor,
        target: TabulatedFunctor,
        component: Callable[[int], Matrix],
        name: str = 'eta',
    ):
        if source.variance != target.variance:
            raise VarianceError('transformação entre variâncias diferentes')
        if source.ring != target.ring:
            raise RingError('transformação entre anéis diferentes')
        self.source = source
        self.target = target
        self.name = name
        self._component = component
        self._cache: dict[int, Matrix] = {}
        self._lock = threading.Lock()

    def component(self, m: int) -> Matrix:
        with self._lock:
            if m in self._cache:
                return self._cache[m]
        value = self._component(m)
        want = (self.target.dim(m), self.source.dim(m))
        if value.shape != want:
            raise ShapeError(
                f'{self.name}_{m} tem formato {value.shape}, esperado {want}'
            )
        with self._lock:
            return self._cache.setdefault(m, value)

    def naturality_failures(self, max_rank: int) -> list[str]:
        """Nomes dos geradores cujo quadrado não comuta."""
        bad = []
        for name, mat in ab_generators(max_rank):
            b, a = mat.shape
            f_val = self.source.on_matrix(mat)
            g_val = self.target.on_matrix(mat)
            if self.source.variance == CO:
                ok = self.component(b) @ f_val == g_val @ self.component(a)
            else:
                ok = self.component(a) @ f_val == g_val @ self.component(b)
            if not ok:
                bad.append(name)
        return bad

    def is_natural(self, max_rank: int) -> bool:
        return not self.naturality_failures(max_rank)

    def kernel(self) -> SubFunctor:
        return SubFunctor(
            self.source,
            lambda m: kernel_basis(self.component(m)),
            f'ker({self.name})',
        )

    def cokernel(self) -> QuotientFunctor:
        return QuotientFunctor(
            self.target,
            lambda m: self.component(m),
            f'coker({self.name})',
        )

    def is_iso_at(self, m: int) -> bool:
        c = self.component(m)
        if c.rows != c.cols:
            return False
        return kernel_basis(c).cols == 0 if c.rows else True
