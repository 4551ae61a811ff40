# grtor/engine/gcat.py
# -*- coding: utf-8 -*-
"""
A categoria auxiliar 𝒢: morfismos (u, H) com u : A -> B injetivo e H uma
base de um complemento livre (B = u(A) * H).

O complemento é guardado como base explícita; a condição de produto
livre é decidida por Nielsen sobre a base combinada u(A) ∪ H.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from grtor.engine.checks import CheckReport
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    compose,
    free_product,
    identity,
    invert_automorphism,
    is_basis,
    projection,
    random_automorphism,
    spans_free_factor,
)
from grtor.errors import GInvariantError, RankMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GMorphism:
    u: GrMorphism
    complement: tuple[FreeWord, ...]

    def __post_init__(self):
        complement = tuple(self.complement)
        object.__setattr__(self, 'complement', complement)
        a, b = self.u.src_rank, self.u.dst_rank
        if len(complement) != b - a:
            raise GInvariantError(
                f'complemento com {len(complement)} palavras; '
                f'esperado {b - a}'
            )
        for w in complement:
            if w.rank != b:
                raise GInvariantError(f'palavra {w} fora do posto {b}')
        if not is_basis(self.combined, b):
            raise GInvariantError(
                f'{self.u} e {[str(w) for w in complement]} não formam '
                'uma base do destino'
            )

    @property
    def src_rank(self) -> int:
        return self.u.src_rank

    @property
    def dst_rank(self) -> int:
        return self.u.dst_rank

    @property
    def combined(self) -> tuple[FreeWord, ...]:
        return self.u.images + self.complement

    @property
    def automorphism(self) -> GrMorphism:
        """α_f : base padrão -> base combinada u(A) ∪ H."""
        return GrMorphism(self.dst_rank, self.dst_rank, self.combined)

    def to_dict(self) -> dict:
        return {
            'u': str(self.u),
            'complement': [str(w) for w in self.complement],
        }

    def __str__(self) -> str:
        comp = ', '.join(str(w) for w in self.complement)
        return f'{self.u} | {comp}' if comp else str(self.u)


def g_identity(n: int) -> GMorphism:
    return GMorphism(identity(n), ())


def g_canonical(a: int, b: int) -> GMorphism:
    """A -> A*B no primeiro bloco; complemento = geradores de B."""
    size = a + b
    u = GrMorphism(
        a, size, tuple(FreeWord.generator(k, size) for k in range(1, a + 1))
    )
    comp = tuple(FreeWord.generator(a + k, size) for k in range(1, b + 1))
    return GMorphism(u, comp)


def g_from_automorphism(phi: GrMorphism) -> GMorphism:
    return GMorphism(phi, ())


def g_compose(g: GMorphism, f: GMorphism) -> GMorphism:
    """(v∘u, v(H) * K)."""
    if f.dst_rank != g.src_rank:
        raise RankMismatchError(
            f'composição em 𝒢: {g.src_rank}->{g.dst_rank} após '
            f'{f.src_rank}->{f.dst_rank}'
        )
    u = compose(g.u, f.u)
    comp = tuple(g.u(w) for w in f.complement) + g.complement
    return GMorphism(u, comp)


def g_free_product(f: GMorphism, g: GMorphism) -> GMorphism:
    u = free_product(f.u, g.u)
    size = u.dst_rank
    comp = tuple(w.shifted(0, size) for w in f.complement) + tuple(
        w.shifted(f.dst_rank, size) for w in g.complement
    )
    return GMorphism(u, comp)


def functor_i(f: GMorphism) -> GrMorphism:
    return f.u


def functor_iota(f: GMorphism) -> GrMorphism:
    """Retração B = u(A) * H ->> A: inverte α_f e mata o complemento."""
    return compose(
        projection(f.dst_rank, f.src_rank), invert_automorphism(f.automorphism)
    )


def transitivity_witness(f: GMorphism, g: GMorphism) -> GrMorphism:
    """Automorfismo φ de B com φ∘f = g em 𝒢: φ = α_g ∘ α_f^{-1}."""
    if (f.src_rank, f.dst_rank) != (g.src_rank, g.dst_rank):
        raise RankMismatchError('transitividade exige morfismos paralelos')
    return compose(g.automorphism, invert_automorphism(f.automorphism))


def apply_automorphism(phi: GrMorphism, f: GMorphism) -> GMorphism:
    return g_compose(g_from_automorphism(phi), f)


def g_equivalent(f: GMorphism, g: GMorphism) -> bool:
    """Mesmo u e mesmo subgrupo complementar (bases podem diferir)."""
    if f.u != g.u:
        return False
    if not f.complement:
        return not g.complement
    # Transporta por α_f^{-1}: o complemento de f vira os últimos geradores
    back = invert_automorphism(f.automorphism)
    a, b = f.src_rank, f.dst_rank
    moved = [back(w) for w in g.complement]
    return spans_free_factor(moved, range(a + 1, b + 1), b)


# =============================================================================
# Verificações
# =============================================================================


def random_gmorphism(
    rng: np.random.Generator, a: int, b: int, steps: int = 6
) -> GMorphism:
    alpha = random_automorphism(rng, b, steps)
    return GMorphism(
        GrMorphism(a, b, alpha.images[:a]), alpha.images[a:]
    )


def automorphism_check(phi: GrMorphism) -> bool:
    """Para φ em Aut(B) visto em 𝒢: ι(φ) = i(φ)^{-1}."""
    f = g_from_automorphism(phi)
    n = phi.src_rank
    inv = functor_iota(f)
    return compose(inv, functor_i(f)) == identity(n) and compose(
        functor_i(f), inv
    ) == identity(n)


def stabilizer_check(
    a: int, b: int, samples: int, seed: int
) -> CheckReport:
    """As duas inclusões da propriedade de estabilizador de A -> A*B."""
    rng = np.random.default_rng(seed)
    canon = g_canonical(a, b)
    report = CheckReport('estabilizador', bound=f'a={a}, b={b}, {samples}')
    size = a + b
    for k in range(samples):
        # Aut(B) -> Stab: ψ = id_A * φ fixa o morfismo canônico
        phi = random_automorphism(rng, b)
        psi = free_product(identity(a), phi)
        moved = apply_automorphism(psi, canon)
        report.add('aut_b_fixes', {'sample': k, 'phi': str(phi)},
                   g_equivalent(moved, canon))
        # Stab -> Aut(B): quem fixa é identidade em A e preserva B
        if rng.random() < 0.5:
            psi = compose(free_product(identity(a), phi),
                          random_automorphism(rng, size, 2))
        else:
            psi = free_product(identity(a), random_automorphism(rng, b))
        if not g_equivalent(apply_automorphism(psi, canon), canon):
            continue
        on_a = psi.images[:a] == canon.u.images
        tail = psi.images[a:]
        in_b = all(w.support() <= set(range(a + 1, size + 1)) for w in tail)
        restricted = [
            FreeWord(tuple(x - a if x > 0 else x + a for x in w.letters), b)
            for w in tail
        ] if in_b else []
        ok = on_a and in_b and is_basis(restricted, b)
        report.add('stabilizer_restricts', {'sample': k, 'psi': str(psi)},
                   ok)
    return report


def gcat_battery(
    samples: int, seed: int, max_rank: int = 4
) -> CheckReport:
    """Retração, associatividade, funtorialidade e transitividade."""
    rng = np.random.default_rng(seed)
    report = CheckReport('calculo de 𝒢', bound=f'{samples} casos, '
                                               f'posto<={max_rank}')
    for k in range(samples):
        a, b, c, d = sorted(int(x) for x in rng.integers(0, max_rank + 1, 4))
        f = random_gmorphism(rng, a, b)
        g = random_gmorphism(rng, b, c)
        h = random_gmorphism(rng, c, d)
        params = {'sample': k, 'ranks': [a, b, c, d]}
        report.add('retraction', params,
                   compose(functor_iota(f), functor_i(f)) == identity(a))
        report.add('associativity', params,
                   g_compose(h, g_compose(g, f))
                   == g_compose(g_compose(h, g), f))
        gf = g_compose(g, f)
        report.add('i_functor', params,
                   functor_i(gf) == compose(functor_i(g), functor_i(f)))
        report.add('iota_functor', params,
                   functor_iota(gf)
                   == compose(functor_iota(f), functor_iota(g)))
        f2 = random_gmorphism(rng, a, b)
        phi = transitivity_witness(f, f2)
        report.add('transitivity', params,
                   is_basis(phi.images, b)
                   and apply_automorphism(phi, f) == f2)
    return report

