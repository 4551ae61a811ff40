# grtor/engine/polynomial.py
# -*- coding: utf-8 -*-
"""
Cálculo polinomial: efeitos cruzados, grau, módulos sobre 𝔖_n e as
construções α_n(M) = 𝔞^{⊗n} ⊗_{𝔖_n} M e β_n(M) = (𝔞^{⊗n} ⊗ M)^{𝔖_n}
com a unidade F -> β_n(cr_n F) e a coünidade α_n(cr_n F) -> F.

O n-ésimo efeito cruzado é calculado em (Z, ..., Z) como o núcleo
conjunto das n aplicações F(r_i), onde r_i zera a coordenada i de Z^n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from math import comb
from typing import Any

from grtor.engine.checks import CheckReport
from grtor.engine.functors import (
    CO,
    ExprFunctor,
    FunctorExpr,
    NatTransformation,
    QuotientFunctor,
    SubFunctor,
    TabulatedFunctor,
)
from grtor.engine.functors import Const as ConstExpr
from grtor.engine.linalg import (
    Matrix,
    Q,
    Ring,
    Z,
    hstack,
    image_basis,
    kernel_basis,
    kron,
    solve,
    vstack,
)
from grtor.errors import DegreeError, RingError, ShapeError, VarianceError

logger = logging.getLogger(__name__)


# =============================================================================
# Módulos sobre o grupo simétrico
# =============================================================================


@dataclass(frozen=True)
class SymModule:
    """k[𝔖_n]-módulo dado pelas transposições adjacentes s_i = (i, i+1)."""

    n: int
    ring: Ring
    dim: int
    transpositions: tuple[Matrix, ...] = field(default=())
    name: str = 'M'

    def __post_init__(self):
        if len(self.transpositions) != max(self.n - 1, 0):
            raise ShapeError(
                f'{len(self.transpositions)} transposições para n={self.n}'
            )
        ident = Matrix.identity(self.ring, self.dim)
        for k, s in enumerate(self.transpositions):
            if s.shape != (self.dim, self.dim):
                raise ShapeError(f's_{k + 1} com formato {s.shape}')
            if s @ s != ident:
                raise ShapeError(f's_{k + 1}^2 != 1')
        for i, s in enumerate(self.transpositions):
            for j in range(i + 1, len(self.transpositions)):
                t = self.transpositions[j]
                power = 3 if j == i + 1 else 2
                prod = ident
                for _ in range(power):
                    prod = prod @ s @ t
                if prod != ident:
                    raise ShapeError(
                        f'relação de Coxeter falha em (s_{i + 1} s_{j + 1})'
                    )

    def action(self, word: list[int]) -> Matrix:
        """Ação de s_{w1} s_{w2} ... (índices base 1)."""
        out = Matrix.identity(self.ring, self.dim)
        for i in word:
            out = out @ self.transpositions[i - 1]
        return out

    def cycle(self) -> Matrix:
        return self.action(list(range(1, self.n)))

    def character(self) -> dict[str, Any]:
        """Dimensão, traços das transposições e do n-ciclo."""
        return {
            'dim': self.dim,
            'transpositions': [s.trace() for s in self.transpositions],
            'cycle': self.cycle().trace() if self.dim else 0,
        }


def trivial_module(n: int, ring: Ring = Q) -> SymModule:
    one = Matrix.identity(ring, 1)
    return SymModule(n, ring, 1, tuple(one for _ in range(n - 1)), 'trivial')


def sign_module(n: int, ring: Ring = Q) -> SymModule:
    minus = Matrix.identity(ring, 1).scale(-1)
    return SymModule(n, ring, 1, tuple(minus for _ in range(n - 1)), 'sign')


def regular_module(n: int, ring: Ring = Q) -> SymModule:
    """k[𝔖_n] com multiplicação à esquerda; base = permutações em ordem."""
    perms = list(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    mats = []
    for i in range(n - 1):
        m = Matrix.zeros(ring, len(perms), len(perms))
        for col, sigma in enumerate(perms):
            moved = tuple(
                i + 1 if x == i else i if x == i + 1 else x for x in sigma
            )
            m.data[index[moved], col] = ring.coerce(1)
        mats.append(m)
    return SymModule(n, ring, len(perms), tuple(mats), 'regular')


MODULES = {
    'trivial': trivial_module,
    'sign': sign_module,
    'regular': regular_module,
}


# =============================================================================
# Efeitos cruzados e grau
# =============================================================================


def _collapse(n: int, i: int) -> Matrix:
    """r_i : Z^n -> Z^n zerando a coordenada i."""
    out = Matrix.identity(Z, n)
    out.data[i, i] = 0
    return out


def _swap(n: int, i: int) -> Matrix:
    out = Matrix.identity(Z, n)
    out.data[i, i] = out.data[i + 1, i + 1] = 0
    out.data[i, i + 1] = out.data[i + 1, i] = 1
    return out


@dataclass(frozen=True)
class CrossEffect:
    n: int
    basis: Matrix
    module: SymModule

    @property
    def dim(self) -> int:
        return self.basis.cols


def cross_effect(functor: TabulatedFunctor, n: int) -> CrossEffect:
    """cr_n(F)(Z, ..., Z) com a ação de 𝔖_n por permutação dos fatores."""
    ring = functor.ring
    size = functor.dim(n)
    if n == 0:
        basis = Matrix.identity(ring, size)
        return CrossEffect(0, basis, SymModule(0, ring, size, (), 'cr0'))
    maps = [functor.on_matrix(_collapse(n, i)) for i in range(n)]
    basis = kernel_basis(vstack(ring, maps, size))
    actions = tuple(
        solve(basis, functor.on_matrix(_swap(n, i)) @ basis)
        for i in range(n - 1)
    )
    logger.debug('cr_%d(%s): dimensão %d', n, functor, basis.cols)
    module = SymModule(n, ring, basis.cols, actions, f'cr{n}({functor})')
    return CrossEffect(n, basis, module)


def cross_effect_projection(functor: TabulatedFunctor, n: int) -> Matrix:
    """Π_i (I - F(r_i)) : F(Z^n) -> cr_n, como endomorfismo de F(Z^n)."""
    ident = functor.identity(n)
    out = ident
    for i in range(n):
        out = out @ (ident - functor.on_matrix(_collapse(n, i)))
    return out


def cross_effect_dims(functor: TabulatedFunctor, n_max: int) -> list[int]:
    """
    dim cr_n(F)(Z, ..., Z) para n = 0..n_max.

    F(Z^n) = ⊕_{S ⊆ [n]} cr_|S|(Z, ..., Z), logo por inclusão-exclusão
    dim cr_n = Σ_k (-1)^{n-k} C(n, k) dim F(Z^k).
    """
    dims = [functor.dim(m) for m in range(n_max + 1)]
    return [
        sum((-1) ** (n - k) * comb(n, k) * dims[k] for k in range(n + 1))
        for n in range(n_max + 1)
    ]


def degree(functor: TabulatedFunctor, bound: int) -> int | None:
    """
    Maior d <= bound com cr_d != 0, exigindo cr_{bound+1} = 0.

    None quando cr_{bound+1} != 0. Componentes de grau > bound + 1 que se
    anulam em todos os postos <= bound + 1 não são detectadas.
    """
    dims = cross_effect_dims(functor, bound + 1)
    if dims[bound + 1]:
        return None
    return max((d for d in range(bound + 1) if dims[d]), default=0)


def _high_cross_effects(
    functor: TabulatedFunctor, n: int, ranks: int
) -> list[int]:
    """Os m em n..max(n, ranks) com cr_m != 0 (grau <= n-1 exige nenhum)."""
    dims = cross_effect_dims(functor, max(n, ranks))
    return [m for m in range(n, len(dims)) if dims[m]]


# =============================================================================
# α_n e β_n
# =============================================================================


def _factor_swap(m: int, n: int, i: int, ring: Ring) -> Matrix:
    """Troca dos fatores i e i+1 em (k^m)^{⊗n}, índices em ordem linha."""
    tuples = list(product(range(m), repeat=n))
    index = {t: k for k, t in enumerate(tuples)}
    out = Matrix.zeros(ring, len(tuples), len(tuples))
    for col, t in enumerate(tuples):
        s = list(t)
        s[i], s[i + 1] = s[i + 1], s[i]
        out.data[index[tuple(s)], col] = ring.coerce(1)
    return out


class TensorModuleFunctor(TabulatedFunctor):
    """𝔞^{⊗n} ⊗ M com a torção σ ⊗ σ disponível em cada posto."""

    def __init__(self, n: int, module: SymModule):
        super().__init__(module.ring, CO, f'a^{n} x {module.name}')
        self.n = n
        self.module = module

    def dim(self, m: int) -> int:
        return m ** self.n * self.module.dim

    def on_matrix(self, mat: Matrix) -> Matrix:
        b, a = mat.shape
        power = Matrix.identity(self.ring, 1)
        base = mat.change_ring(self.ring)
        for _ in range(self.n):
            power = kron(power, base)
        return kron(power, Matrix.identity(self.ring, self.module.dim))

    def twists(self, m: int) -> list[Matrix]:
        return self._memo(
            ('twists', m),
            lambda: [
                kron(_factor_swap(m, self.n, i, self.ring), s)
                for i, s in enumerate(self.module.transpositions)
            ],
        )


def _require_field(ring: Ring, what: str) -> None:
    if not ring.is_field:
        raise RingError(f'{what} exige um corpo, recebido {ring}')


def alpha(n: int, module: SymModule) -> QuotientFunctor:
    """Coinvariantes de 𝔞^{⊗n} ⊗ M."""
    _require_field(module.ring, 'alpha')
    backing = TensorModuleFunctor(n, module)

    def relations(m):
        size = backing.dim(m)
        ident = Matrix.identity(module.ring, size)
        blocks = [t - ident for t in backing.twists(m)]
        return hstack(module.ring, blocks, size)

    return QuotientFunctor(backing, relations, f'alpha{n}({module.name})')


def beta(n: int, module: SymModule) -> SubFunctor:
    """Invariantes de 𝔞^{⊗n} ⊗ M."""
    _require_field(module.ring, 'beta')
    backing = TensorModuleFunctor(n, module)

    def basis(m):
        size = backing.dim(m)
        ident = Matrix.identity(module.ring, size)
        blocks = [t - ident for t in backing.twists(m)]
        if not blocks:
            return ident
        return kernel_basis(vstack(module.ring, blocks, size))

    return SubFunctor(backing, basis, f'beta{n}({module.name})')


def _g_matrix(m: int, index: tuple[int, ...]) -> Matrix:
    """Z^m -> Z^n com linha k = e_{j_k}^T."""
    out = Matrix.zeros(Z, len(index), m)
    for k, j in enumerate(index):
        out.data[k, j] = 1
    return out


@dataclass
class UnitResult:
    n: int
    module: SymModule
    transformation: NatTransformation
    kernel: TabulatedFunctor


def unit_to_beta(
    functor: TabulatedFunctor, n: int | None = None, bound: int = 4
) -> UnitResult:
    """Unidade F -> β_n(cr_n F) e o seu funtor núcleo."""
    _require_field(functor.ring, 'unit_to_beta')
    if functor.variance != CO:
        raise VarianceError('unit_to_beta é definida para funtores covariantes')
    d = degree(functor, bound)
    if n is None:
        if d is None:
            raise DegreeError(f'grau de {functor} excede {bound}')
        n = d
    elif d != n:
        raise DegreeError(f'{functor} tem grau {d}, não {n}')
    ring = functor.ring

    if n == 0:
        size = functor.dim(0)
        module = SymModule(0, ring, size, (), 'cr0')
        target = ExprFunctor(ConstExpr(size), ring)

        def component0(m):
            return functor.on_matrix(Matrix.zeros(Z, 0, m))

        eta = NatTransformation(functor, target, component0, 'unit0')
        return UnitResult(0, module, eta, eta.kernel())

    ce = cross_effect(functor, n)
    target = beta(n, ce.module)
    proj = cross_effect_projection(functor, n)
    mdim = ce.dim

    def component(m):
        indices = list(product(range(m), repeat=n))
        size = functor.dim(m)
        blocks = []
        for index in indices:
            image = proj @ functor.on_matrix(_g_matrix(m, index))
            blocks.append(solve(ce.basis, image))
        raw = vstack(ring, blocks, size) if blocks else Matrix.zeros(
            ring, 0, size
        )
        if raw.rows != len(indices) * mdim:
            raise ShapeError('unidade com formato inesperado')
        return solve(target.basis(m), raw)

    eta = NatTransformation(functor, target, component, f'unit{n}')
    return UnitResult(n, ce.module, eta, eta.kernel())


@dataclass
class CounitResult:
    n: int
    module: SymModule
    transformation: NatTransformation
    kernel: TabulatedFunctor
    cokernel: TabulatedFunctor


def counit_from_alpha(
    functor: TabulatedFunctor, bound: int = 4
) -> CounitResult:
    """Coünidade α_n(cr_n F) -> F."""
    _require_field(functor.ring, 'counit_from_alpha')
    if functor.variance != CO:
        raise VarianceError('counit_from_alpha exige funtor covariante')
    n = degree(functor, bound)
    if n is None or n == 0:
        raise DegreeError(f'coünidade exige grau >= 1, veio {n}')
    ring = functor.ring
    ce = cross_effect(functor, n)
    source = alpha(n, ce.module)

    def component(m):
        cols = []
        for index in product(range(m), repeat=n):
            h = _g_matrix(m, index).T
            cols.append(functor.on_matrix(h) @ ce.basis)
        raw = hstack(ring, cols, functor.dim(m))
        rel = source._relations(m)
        if rel.cols and not (raw @ rel).is_zero():
            raise ShapeError('coünidade não se anula nas relações')
        return raw @ source.section(m)

    eta = NatTransformation(source, functor, component, f'counit{n}')
    return CounitResult(n, ce.module, eta, eta.kernel(), eta.cokernel())


def additive_quotient(functor: TabulatedFunctor) -> QuotientFunctor:
    """T̄_1(F) = coker(F(p1) + F(p2) - F(s) : F(V ⊕ V) -> F(V))."""
    _require_field(functor.ring, 'additive_quotient')
    if functor.variance != CO:
        raise VarianceError('additive_quotient exige funtor covariante')

    def relations(m):
        p1 = Matrix.zeros(Z, m, 2 * m)
        p2 = Matrix.zeros(Z, m, 2 * m)
        for i in range(m):
            p1.data[i, i] = 1
            p2.data[i, m + i] = 1
        s = p1 + p2
        rel = (
            functor.on_matrix(p1)
            + functor.on_matrix(p2)
            - functor.on_matrix(s)
        )
        return image_basis(rel) if rel.cols else rel

    return QuotientFunctor(functor, relations, f'T1({functor})')


# =============================================================================
# Verificações
# =============================================================================


def _same_character(a: SymModule, b: SymModule) -> bool:
    return a.character() == b.character()


def check_recollement_units(n: int, module: SymModule) -> CheckReport:
    """cr_n α_n(M) ≅ M e cr_n β_n(M) ≅ M por dimensão e caracteres."""
    report = CheckReport(f'recolamento n={n}, M={module.name}')
    for label, build in (('alpha', alpha), ('beta', beta)):
        functor = build(n, module)
        ce = cross_effect(functor, n)
        ok = _same_character(ce.module, module)
        report.add(
            f'cr_{label}',
            {'n': n, 'module': module.name},
            ok,
            f'{ce.module.character()} vs {module.character()}',
        )
    return report


def check_unit_kernel(
    functor: TabulatedFunctor, bound: int = 4, ranks: int = 3
) -> CheckReport:
    """Naturalidade da unidade e grau do núcleo <= n-1."""
    result = unit_to_beta(functor, bound=bound)
    n = result.n
    report = CheckReport(f'unidade de {functor}')
    params = {'functor': str(functor), 'n': n}
    bad = result.transformation.naturality_failures(ranks)
    report.add('unit_natural', params, not bad, ', '.join(bad))
    if n >= 1:
        high = _high_cross_effects(result.kernel, n, ranks)
        report.add('unit_kernel_degree', params, not high,
                   f'cr_m(ker) não nulo em m = {high}' if high else '')
    return report


def check_counit(
    functor: TabulatedFunctor, bound: int = 4, ranks: int = 3
) -> CheckReport:
    result = counit_from_alpha(functor, bound)
    n = result.n
    report = CheckReport(f'coünidade de {functor}')
    params = {'functor': str(functor), 'n': n}
    bad = result.transformation.naturality_failures(ranks)
    report.add('counit_natural', params, not bad, ', '.join(bad))
    for label, part in (('kernel', result.kernel),
                        ('cokernel', result.cokernel)):
        high = _high_cross_effects(part, n, ranks)
        report.add(f'counit_{label}_degree', params, not high,
                   f'cr_m não nulo em m = {high}' if high else '')
    return report


@dataclass
class FiltrationLayer:
    degree: int
    dims: list[int]
    cross_effect_dim: int

    def to_dict(self) -> dict[str, Any]:
        return {
            'degree': self.degree,
            'dims': list(self.dims),
            'cross_effect_dim': self.cross_effect_dim,
        }


def polynomial_filtration(
    functor: TabulatedFunctor, bound: int = 4, ranks: int = 3
) -> list[FiltrationLayer]:
    """
    Camadas F ⊃ ker(unidade) ⊃ ...: cada passo baixa o grau.

    Para quando o funtor corrente é nulo nos postos <= ranks.
    """
    layers: list[FiltrationLayer] = []
    current = functor
    while True:
        dims = [current.dim(m) for m in range(ranks + 1)]
        if not any(dims):
            break
        d = degree(current, bound)
        if d is None:
            raise DegreeError(f'grau de {current} excede {bound}')
        ce_dim = cross_effect(current, d).dim
        layers.append(FiltrationLayer(d, dims, ce_dim))
        logger.info('camada de grau %d: dims %s', d, dims)
        current = unit_to_beta(current, d, bound).kernel
        if d == 0:
            break
    return layers


def degree_table(
    exprs: dict[str, FunctorExpr], bound: int, ring: Ring = Q
) -> dict[str, int | None]:
    return {
        label: degree(ExprFunctor(expr, ring), bound)
        for label, expr in exprs.items()
    }
