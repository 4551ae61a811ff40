# grtor/engine/coend.py
# -*- coding: utf-8 -*-
"""
Produto tensorial de funtores X ⊗_ab G sobre ab truncada no posto N.

Geradores: ⊕_{m<=N} X(m) ⊗ G(m), com x ⊗ y no índice
offset(m) + i·dim G(m) + j. Relações: X(φ)x ⊗ y - x ⊗ G(φ)y para φ entre
os geradores de ab (transvecções, transposições, injeção e projeção
canônicas) de posto <= N. O valor vale para o nível N-1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from grtor.engine.checks import CheckReport, run_cells
from grtor.engine.functors import (
    CO,
    CONTRA,
    DirectSum,
    FunctorExpr,
    Id,
    TabulatedFunctor,
    ab_generators,
    precompose_ab,
)
from grtor.engine.linalg import (
    Matrix,
    ModuleSummary,
    Ring,
    Z,
    cokernel_presentation,
    kron,
    lattice_echelon,
    primary_parts,
)
from grtor.engine.polynomial import degree
from grtor.errors import DegreeError, RingError, ShapeError, VarianceError

logger = logging.getLogger(__name__)


@dataclass
class CoendPresentation:
    n: int
    left: str
    right: str
    blocks: dict[int, tuple[int, int, int]]
    relations: Matrix
    value: ModuleSummary

    @property
    def level(self) -> int:
        return self.n - 1

    @property
    def generators(self) -> int:
        return self.relations.cols

    def to_dict(self) -> dict[str, Any]:
        return {
            'left': self.left,
            'right': self.right,
            'n': self.n,
            'level': self.level,
            'generators': self.generators,
            'relations': self.relations.rows,
            'value': str(self.value),
            **self.value.to_dict(),
        }


def _check_pair(left: TabulatedFunctor, right: TabulatedFunctor) -> None:
    if left.variance != CONTRA or right.variance != CO:
        raise VarianceError(
            f'X ⊗_ab G exige X contravariante e G covariante: '
            f'{left} ({left.variance}), {right} ({right.variance})'
        )
    if left.ring != right.ring:
        raise RingError(f'{left} sobre {left.ring}, {right} sobre '
                        f'{right.ring}')


def _blocks(
    left: TabulatedFunctor, right: TabulatedFunctor, n: int
) -> tuple[dict[int, tuple[int, int, int]], int]:
    blocks, offset = {}, 0
    for m in range(n + 1):
        dx, dg = left.dim(m), right.dim(m)
        blocks[m] = (offset, dx, dg)
        offset += dx * dg
    return blocks, offset


def _relation_columns(
    left: TabulatedFunctor,
    right: TabulatedFunctor,
    mat: Matrix,
    blocks: dict[int, tuple[int, int, int]],
    size: int,
) -> list[np.ndarray]:
    """Uma relação por x ⊗ y, x na base de X(b), y na base de G(a)."""
    ring = left.ring
    b, a = mat.shape
    off_a, dx_a, dg_a = blocks[a]
    off_b, dx_b, dg_b = blocks[b]
    part_a = kron(left.on_matrix(mat), Matrix.identity(ring, dg_a))
    part_b = kron(Matrix.identity(ring, dx_b), right.on_matrix(mat))
    cols = []
    for k in range(dx_b * dg_a):
        v = np.array([ring.coerce(0)] * size, dtype=object)
        v[off_a : off_a + dx_a * dg_a] = part_a.data[:, k]
        v[off_b : off_b + dx_b * dg_b] = (
            v[off_b : off_b + dx_b * dg_b] - part_b.data[:, k]
        )
        cols.append(v)
    return cols


def functor_tensor(
    left: TabulatedFunctor,
    right: TabulatedFunctor,
    n: int,
    extra: Iterable[Matrix] = (),
    threads: int = 1,
) -> CoendPresentation:
    if n < 1:
        raise ShapeError(f'N precisa ser >= 1, recebido {n}')
    _check_pair(left, right)
    ring = left.ring
    blocks, size = _blocks(left, right, n)
    mats = [mat for _, mat in ab_generators(n)] + list(extra)
    for mat in mats:
        if max(mat.shape) > n:
            raise ShapeError(f'morfismo {mat.shape} fora do posto {n}')

    # 1. Relações por gerador (independentes)
    per_gen = run_cells(
        lambda mat: _relation_columns(left, right, mat, blocks, size),
        mats,
        threads,
    )
    # 2. Forma escalonada das relações e cokernel
    rows = lattice_echelon(ring, (v for cols in per_gen for v in cols), size)
    value = cokernel_presentation(rows.T) if rows.rows else ModuleSummary(
        ring, size
    )
    logger.info(
        'coend %s ⊗ %s (N=%d): %d geradores, %d relações -> %s',
        left, right, n, size, rows.rows, value,
    )
    return CoendPresentation(n, str(left), str(right), blocks, rows, value)


# =============================================================================
# Estabilização
# =============================================================================


@dataclass
class Stabilization:
    value: ModuleSummary
    witness: int | None
    levels: dict[int, ModuleSummary] = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            'value': str(self.value),
            **self.value.to_dict(),
            'stable': self.stable,
            'witness': self.witness,
            'levels': {str(n): str(v) for n, v in self.levels.items()},
        }


def _same(a: ModuleSummary, b: ModuleSummary) -> bool:
    return a.free_rank == b.free_rank and a.torsion == b.torsion


def stabilize(
    left: TabulatedFunctor,
    right: TabulatedFunctor,
    n_min: int,
    n_max: int,
    threads: int = 1,
) -> Stabilization:
    """Primeiro par de níveis consecutivos iguais; witness = o maior."""
    if n_min < 2 or n_max < n_min:
        raise ShapeError(f'níveis inválidos: {n_min}..{n_max}')
    levels: dict[int, ModuleSummary] = {}
    previous = None
    for n in range(n_min, n_max + 1):
        value = functor_tensor(left, right, n, threads=threads).value
        levels[n] = value
        if previous is not None and _same(previous, value):
            return Stabilization(value, n, levels)
        previous = value
    logger.warning('%s ⊗ %s não estabilizou até N=%d', left, right, n_max)
    return Stabilization(previous, None, levels)


@dataclass
class StableH1:
    functor: str
    degree: int
    result: Stabilization

    def to_dict(self) -> dict[str, Any]:
        return {
            'functor': self.functor,
            'degree': self.degree,
            **self.result.to_dict(),
        }


def stable_h1(
    expr: FunctorExpr, ring: Ring = Z, bound: int = 4, threads: int = 1
) -> StableH1:
    """colim H_1(Aut(Z^{*n}); F(Z^n)) previsto por F ⊗_ab Id."""
    functor = precompose_ab(expr, ring)
    if functor.variance != CONTRA:
        raise VarianceError(f'{expr} precisa ser contravariante')
    if functor.dim(0):
        raise DegreeError(f'{expr} não é reduzido: dim F(0) = '
                          f'{functor.dim(0)}')
    d = degree(functor, bound)
    if d is None or d < 1:
        raise DegreeError(f'{expr} precisa ter grau entre 1 e {bound}, '
                          f'obtido {d}')
    result = stabilize(functor, precompose_ab(Id(), ring), 2, d + 3,
                       threads)
    return StableH1(str(expr), d, result)


# =============================================================================
# Verificações
# =============================================================================


def check_additivity(
    left: FunctorExpr,
    right_a: FunctorExpr,
    right_b: FunctorExpr,
    n: int,
    ring: Ring = Z,
) -> CheckReport:
    """X ⊗ (G1 ⊕ G2) = X ⊗ G1 ⊕ X ⊗ G2 (posto livre e partes primárias)."""
    x = precompose_ab(left, ring)
    whole = functor_tensor(x, precompose_ab(DirectSum(right_a, right_b),
                                            ring), n).value
    one = functor_tensor(x, precompose_ab(right_a, ring), n).value
    two = functor_tensor(x, precompose_ab(right_b, ring), n).value
    report = CheckReport(f'aditividade de {left} ⊗ -', bound=f'N={n}')
    params = {'left': str(left), 'right': f'{right_a} + {right_b}',
              'n': n, 'ring': ring.label}
    ok = whole.free_rank == one.free_rank + two.free_rank and primary_parts(
        whole.torsion
    ) == primary_parts(one.torsion + two.torsion)
    report.add('coend_additive', params, ok, f'{whole} vs {one}, {two}')
    return report


def check_generator_enlargement(
    left: TabulatedFunctor,
    right: TabulatedFunctor,
    n: int,
    extra: int,
    seed: int,
    max_entry: int = 3,
) -> CheckReport:
    """Matrizes inteiras aleatórias de postos <= N-1 não mudam o valor."""
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(extra):
        a = int(rng.integers(0, n))
        b = int(rng.integers(0, n))
        entries = rng.integers(-max_entry, max_entry + 1, size=(b, a))
        mats.append(Matrix(Z, entries.tolist(), shape=(b, a)))
    base = functor_tensor(left, right, n).value
    bigger = functor_tensor(left, right, n, extra=mats).value
    report = CheckReport('geradores extras no coend',
                         bound=f'N={n}, {extra} matrizes')
    report.add('coend_enlargement',
               {'left': str(left), 'right': str(right), 'n': n,
                'seed': seed},
               _same(base, bigger), f'{base} vs {bigger}')
    return report
