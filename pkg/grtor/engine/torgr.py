# grtor/engine/torgr.py
# -*- coding: utf-8 -*-
"""
Tor sobre gr de um funtor contravariante X contra 𝔞 ⊗ P_r.

O complexo tem X(Z^{*n+r+1}) em grau n e δ_n : X(n+r+1) -> X(n+r)
dado por X aplicado a bar_element(n, r). Cada H_n usa só δ_n e δ_{n+1},
então a resposta é exata em todo grau pedido.

Também aqui: resoluções de 𝔞^{⊗d} ⊗ P_r por potências tensoriais da
resolução em barras, o verificador das hipóteses sobre ξ e a relação
de homotopia δ_n h_n + h_{n-1} δ_{n-1} = Id.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

import numpy as np

from grtor.engine.barres import (
    FormalSum,
    bar_element,
    formal_compose,
    psi_morphism,
    theta_morphism,
)
from grtor.engine.checks import CheckReport, run_cells
from grtor.engine.functors import (
    CONTRA,
    Const,
    ExprFunctor,
    FunctorExpr,
    TabulatedFunctor,
    precompose_ab,
)
from grtor.engine.linalg import (
    ChainComplex,
    HomologyResult,
    Matrix,
    Q,
    Ring,
    Z,
    fp,
    homology_degrees,
    uct_dimension,
)
from grtor.engine.polynomial import degree
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    NielsenMove,
    free_product,
    identity,
    inclusion,
    is_basis,
    random_morphism,
)
from grtor.errors import (
    FunctorialityError,
    RingError,
    ShapeError,
    VarianceError,
    XiShapeError,
)

logger = logging.getLogger(__name__)

Xi = Callable[[int, int], Matrix]


# =============================================================================
# Funtores contravariantes de exemplo
# =============================================================================


def constant_functor(ring: Ring = Z) -> ExprFunctor:
    return precompose_ab(Const(1, CONTRA), ring)


class HomFunctor(TabulatedFunctor):
    """X(A) = k[Hom_gr(A, Z/q)]; base = caracteres v em (Z/q)^posto."""

    def __init__(self, q: int, ring: Ring = Z):
        super().__init__(ring, CONTRA, f'k[Hom(-,Z/{q})]')
        if q < 2:
            raise ShapeError(f'Z/q exige q >= 2, recebido {q}')
        self.q = q

    def characters(self, m: int) -> list[tuple[int, ...]]:
        return self._memo(
            ('chars', m), lambda: list(product(range(self.q), repeat=m))
        )

    def dim(self, m: int) -> int:
        return self.q**m

    def on_matrix(self, mat: Matrix) -> Matrix:
        # f ↦ f∘φ : o caractere v de Z^b vira v·M de Z^a
        b, a = mat.shape
        src = self.characters(a)
        index = {v: k for k, v in enumerate(src)}
        out = Matrix.zeros(self.ring, len(src), self.dim(b))
        for col, v in enumerate(self.characters(b)):
            w = tuple(
                sum(v[i] * mat[i, j] for i in range(b)) % self.q
                for j in range(a)
            )
            out.data[index[w], col] = self.ring.coerce(1)
        return out

    def describe(self, m: int, k: int) -> str:
        return str(self.characters(m)[k])


def hom_functor(q: int = 2, ring: Ring = Z) -> HomFunctor:
    return HomFunctor(q, ring)


def projection_xi(functor: TabulatedFunctor) -> Xi:
    """
    ξ(A, T) = X(π) com π : T*A -> A matando T.

    Para o constante é a identidade; para k[Hom(-, Z/q)] é a extensão
    por zero dos caracteres.
    """

    def xi(a: int, t: int) -> Matrix:
        images = tuple(FreeWord.identity(a) for _ in range(t)) + tuple(
            FreeWord.generator(k, a) for k in range(1, a + 1)
        )
        return functor.on_morphism(GrMorphism(t + a, a, images))

    return xi


def _xi_value(functor: TabulatedFunctor, xi: Xi, a: int, t: int) -> Matrix:
    value = xi(a, t)
    want = (functor.dim(t + a), functor.dim(a))
    if value.shape != want:
        raise XiShapeError(f'ξ({a}, {t}) tem formato {value.shape}, '
                           f'esperado {want}')
    return value


# =============================================================================
# Complexo de Tor
# =============================================================================


def _require_contra(functor: TabulatedFunctor) -> None:
    if functor.variance != CONTRA:
        raise VarianceError(f'{functor} precisa ser contravariante')


def differential(functor: TabulatedFunctor, n: int, r: int) -> Matrix:
    return bar_element(n, r).evaluate(functor)


def tor_complex(
    functor: TabulatedFunctor, r: int, n_max: int, threads: int = 1
) -> ChainComplex:
    if n_max < 1:
        raise ShapeError(f'n_max precisa ser >= 1, recebido {n_max}')
    _require_contra(functor)
    dims = {n: functor.dim(n + r + 1) for n in range(n_max + 1)}
    mats = run_cells(
        lambda n: differential(functor, n, r), range(1, n_max + 1), threads
    )
    cx = ChainComplex(functor.ring, dims, dict(zip(range(1, n_max + 1),
                                                   mats)))
    bad = cx.d_squared_residues()
    if bad:
        raise FunctorialityError(f'δ·δ != 0 nos graus {bad} para {functor}')
    logger.info('complexo de Tor de %s (r=%d): dims %s', functor, r, dims)
    return cx


def homology_of(cx: ChainComplex, degrees: Iterable[int]) -> HomologyResult:
    degrees = list(degrees)
    top = max(cx.differentials, default=0)
    for n in degrees:
        if n + 1 > top:
            raise ShapeError(
                f'H_{n} exige δ_{n + 1}: construa com n_max >= {n + 1}'
            )
    return homology_degrees(cx, degrees)


def tor(
    functor: TabulatedFunctor,
    r: int,
    degrees: Iterable[int],
    n_max: int | None = None,
    threads: int = 1,
) -> HomologyResult:
    degrees = sorted(set(degrees))
    if n_max is None:
        n_max = max(degrees, default=0) + 1
    return homology_of(tor_complex(functor, r, n_max, threads), degrees)


# =============================================================================
# Potências tensoriais da resolução
# =============================================================================


@dataclass
class TensorResolution:
    """
    Em grau n: rótulos J = (j_1, ..., j_d) com Σ j = n, cada um P_{n+d+r}.
    `pieces[n]` = lista de (alvo, fonte, FormalSum) do diferencial n -> n-1.
    """

    d: int
    r: int
    n_max: int
    labels: dict[int, list[tuple[int, ...]]]
    pieces: dict[int, list[tuple[int, int, FormalSum]]]

    def rank(self, label: tuple[int, ...]) -> int:
        return sum(label) + self.d + self.r


def _compositions(n: int, d: int) -> list[tuple[int, ...]]:
    return [t for t in product(range(n + 1), repeat=d) if sum(t) == n]


def resolution_tensor_power(
    d: int, r: int, n_max: int, ring: Ring
) -> TensorResolution:
    if not ring.is_field:
        raise RingError('resolution_tensor_power exige um corpo')
    if d < 1:
        raise ShapeError(f'd precisa ser >= 1, recebido {d}')
    labels = {n: _compositions(n, d) for n in range(n_max + 1)}
    pieces: dict[int, list[tuple[int, int, FormalSum]]] = {}
    for n in range(1, n_max + 1):
        index = {lab: k for k, lab in enumerate(labels[n - 1])}
        out = []
        for col, lab in enumerate(labels[n]):
            for k, j in enumerate(lab):
                if j == 0:
                    continue
                target = lab[:k] + (j - 1,) + lab[k + 1 :]
                sign = (-1) ** sum(lab[:k])
                left = sum(x + 1 for x in lab[:k])
                right = sum(x + 1 for x in lab[k + 1 :]) + r
                piece = bar_element(j, 0).embed(left, right).scale(sign)
                out.append((index[target], col, piece))
        pieces[n] = out
    return TensorResolution(d, r, n_max, labels, pieces)


def pair_with(
    res: TensorResolution, functor: TabulatedFunctor
) -> ChainComplex:
    """Complexo X ⊗ resolução: grau n = ⊕_J X(posto de J)."""
    _require_contra(functor)
    ring = functor.ring
    offsets: dict[int, list[int]] = {}
    dims: dict[int, int] = {}
    for n, labs in res.labels.items():
        acc, offs = 0, []
        for lab in labs:
            offs.append(acc)
            acc += functor.dim(res.rank(lab))
        offsets[n], dims[n] = offs, acc
    diffs = {}
    for n, pieces in res.pieces.items():
        mat = Matrix.zeros(ring, dims[n - 1], dims[n])
        for tgt, src, piece in pieces:
            block = piece.evaluate(functor)
            r0, c0 = offsets[n - 1][tgt], offsets[n][src]
            mat.data[r0 : r0 + block.rows, c0 : c0 + block.cols] = (
                mat.data[r0 : r0 + block.rows, c0 : c0 + block.cols]
                + block.data
            )
        diffs[n] = Matrix._wrap(ring, mat.data)
    cx = ChainComplex(ring, dims, diffs)
    bad = cx.d_squared_residues()
    if bad:
        raise FunctorialityError(f'δ·δ != 0 nos graus {bad}')
    return cx


def check_resolution_d_squared(d: int, r: int, n_max: int) -> CheckReport:
    """d² = 0 simbólico (sinais de Koszul) na resolução tensorial."""
    res = resolution_tensor_power(d, r, n_max, Q)
    report = CheckReport('resolução tensorial d^2 = 0',
                         bound=f'd={d}, r={r}, n<={n_max}')
    for n in range(2, n_max + 1):
        residues: dict[tuple[int, int], FormalSum] = {}
        for mid, src, upper in res.pieces[n]:
            for tgt, mid2, lower in res.pieces[n - 1]:
                if mid2 != mid:
                    continue
                key = (tgt, src)
                term = formal_compose(upper, lower)
                residues[key] = (
                    residues[key] + term if key in residues else term
                )
        bad = {k: v for k, v in residues.items() if not v.is_zero()}
        report.add('koszul_d_squared', {'d': d, 'r': r, 'n': n}, not bad,
                   '; '.join(f'{k}: {v}' for k, v in sorted(bad.items())))
    return report


# =============================================================================
# Hipóteses sobre ξ
# =============================================================================


@dataclass(frozen=True)
class SampleSpec:
    max_rank: int = 3
    max_word_length: int = 4
    samples: int = 60
    max_t_rank: int = 1
    seed: int = 20240101

    def label(self) -> str:
        return (
            f'posto<={self.max_rank}, palavra<={self.max_word_length}, '
            f'T<={self.max_t_rank}, {self.samples} amostras, '
            f'semente {self.seed}'
        )


def _random_tau(
    rng: np.random.Generator, t: int, b: int, steps: int = 4
) -> tuple[FreeWord, ...]:
    """τ com θ invertível: movimentos de Nielsen que só alteram T."""
    size = t + b
    gens = [FreeWord.generator(k, size) for k in range(1, size + 1)]
    for _ in range(steps):
        i = int(rng.integers(0, t))
        kind = int(rng.integers(0, 3))
        if kind == 0:
            NielsenMove('invert', i).apply(gens)
            continue
        j = int(rng.integers(0, size))
        if j == i:
            continue
        e = 1 if rng.random() < 0.5 else -1
        NielsenMove('right' if kind == 1 else 'left', i, j, e).apply(gens)
    return tuple(gens[:t])


def _first_difference(lhs: Matrix, rhs: Matrix) -> tuple[int, list, list]:
    for col in range(lhs.cols):
        a = [str(x) for x in lhs.data[:, col]]
        b = [str(x) for x in rhs.data[:, col]]
        if a != b:
            return col, a, b
    return -1, [], []


def _witness(functor, params, lhs, rhs, rank) -> str:
    col, a, b = _first_difference(lhs, rhs)
    describe = getattr(functor, 'describe', None)
    basis = describe(rank, col) if describe else col
    out = ', '.join(f'{k}={v}' for k, v in params.items())
    return f'{out}; base {basis}: {a} vs {b}'


def verify_xi(
    functor: TabulatedFunctor, xi: Xi, spec: SampleSpec
) -> CheckReport:
    """
    Hipóteses (1) naturalidade em A, (2) ξ seguido de X(u(A,T)) é a
    identidade e (3) compatibilidade θ/τ/ψ, por amostragem limitada.
    PASS significa: nenhum contraexemplo dentro do limite.
    """
    _require_contra(functor)
    rng = np.random.default_rng(spec.seed)
    report = CheckReport('hipóteses sobre ξ', bound=spec.label())
    found = {1: None, 2: None, 3: None}
    t_ranks = range(1, spec.max_t_rank + 1)

    def note(h, params, lhs, rhs, rank):
        if found[h] is None and lhs != rhs:
            found[h] = _witness(functor, params, lhs, rhs, rank)

    # (2) X(u(A,T)) ξ(A,T) = Id, enumerado
    for a in range(spec.max_rank + 1):
        for t in t_ranks:
            lhs = functor.on_morphism(inclusion(a, t)) @ _xi_value(
                functor, xi, a, t
            )
            note(2, {'A': a, 'T': t}, lhs, functor.identity(a), a)

    # (3) primeiro a testemunha canônica, depois amostras
    cases = [(1, 1, 1, identity(1),
              (FreeWord((1, 2), 2),))]
    for _ in range(spec.samples):
        a = int(rng.integers(0, spec.max_rank + 1))
        b = int(rng.integers(0, spec.max_rank + 1))
        t = int(rng.choice(list(t_ranks)))
        phi = random_morphism(rng, a, b, spec.max_word_length)
        cases.append((a, b, t, phi, _random_tau(rng, t, b)))

    for a, b, t, phi, tau in cases:
        params = {'A': a, 'B': b, 'T': t, 'phi': str(phi),
                  'tau': ', '.join(str(w) for w in tau)}
        # (1) X(T*φ) ξ(B,T) = ξ(A,T) X(φ)
        t_phi = free_product(identity(t), phi)
        lhs = functor.on_morphism(t_phi) @ _xi_value(functor, xi, b, t)
        rhs = _xi_value(functor, xi, a, t) @ functor.on_morphism(phi)
        note(1, params, lhs, rhs, b)
        # (3) X(ψ) ξ(B,T) = ξ(A,T) X(φ), com θ invertível
        theta = theta_morphism(tau, b)
        if not is_basis(theta.images, t + b):
            continue
        psi = psi_morphism(phi, tau)
        lhs = functor.on_morphism(psi) @ _xi_value(functor, xi, b, t)
        note(3, params, lhs, rhs, b)

    labels = {
        1: 'xi_natural_in_A',
        2: 'xi_retraction',
        3: 'xi_theta_psi',
    }
    for h in (1, 2, 3):
        report.add(labels[h], {'hypothesis': h}, found[h] is None,
                   found[h] or '')
    return report


def homotopy_check(
    functor: TabulatedFunctor, xi: Xi, r: int, n_max: int
) -> CheckReport:
    """δ_n h_n + h_{n-1} δ_{n-1} = Id com h_n = ξ(Z^{*n+r}, Z)."""
    cx = tor_complex(functor, r, n_max)
    report = CheckReport('relação de homotopia', bound=f'r={r}, n<={n_max}')
    for n in range(1, n_max + 1):
        h_n = _xi_value(functor, xi, n + r, 1)
        lhs = cx.d(n) @ h_n
        if n >= 2:
            lhs = lhs + _xi_value(functor, xi, n - 1 + r, 1) @ cx.d(n - 1)
        ok = lhs == functor.identity(n + r)
        report.add('homotopy', {'n': n, 'r': r, 'ring': functor.ring.label},
                   ok, '' if ok else str(lhs.entries()))
    return report


# =============================================================================
# Verificações de Tor
# =============================================================================


def check_polynomial_tor_vanishing(
    expr: FunctorExpr, degrees: Iterable[int], ring: Ring, bound: int = 4
) -> CheckReport:
    """Tor_i(X, 𝔞) = 0 para i >= grau de X = F∘ab contravariante."""
    functor = precompose_ab(expr, ring)
    _require_contra(functor)
    d = degree(functor, bound)
    report = CheckReport(f'anulamento de Tor para {expr}',
                         bound=f'grau {d}')
    wanted = [i for i in degrees if d is not None and i >= d]
    if not wanted:
        return report
    result = tor(functor, 0, wanted)
    for i in wanted:
        entry = result[i]
        report.add('tor_vanishes', {'functor': str(expr), 'degree': i,
                                    'ring': ring.label},
                   entry.is_zero, str(entry.to_dict()))
    return report


def uct_check(
    expr: FunctorExpr, r: int, degrees: Iterable[int], p: int
) -> CheckReport:
    """Coeficientes universais entre os resultados sobre Z, Q e F_p."""
    degrees = sorted(set(degrees))
    full = sorted(set(degrees) | {n - 1 for n in degrees if n > 0})
    over_z = tor(precompose_ab(expr, Z), r, full)
    over_q = tor(precompose_ab(expr, Q), r, degrees)
    over_p = tor(precompose_ab(expr, fp(p)), r, degrees)
    report = CheckReport(f'coeficientes universais para {expr}',
                         bound=f'p={p}')
    for n in degrees:
        params = {'functor': str(expr), 'r': r, 'degree': n, 'p': p}
        report.add('uct_rational', params,
                   over_q[n].free_rank == over_z[n].free_rank)
        want = uct_dimension(over_z, p, n)
        report.add('uct_mod_p', params, over_p[n].free_rank == want,
                   f'{over_p[n].free_rank} vs {want}')
    return report

