# grtor/suite.py
# -*- coding: utf-8 -*-
"""
Bateria de aceitação: dez critérios, cada um um CheckReport.

Os oráculos são valores fixos (matrizes e dimensões calculadas à mão)
ou propriedades verificadas em amostras com semente fixa.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from grtor.config import Settings
from grtor.engine.barres import check_d_squared, check_homotopy_identities
from grtor.engine.checks import CheckReport
from grtor.engine.coend import stabilize, stable_h1
from grtor.engine.functors import (
    Dual,
    ExprFunctor,
    Ext,
    Id,
    Sym,
    TensorPower,
    precompose_ab,
)
from grtor.engine.gcat import gcat_battery
from grtor.engine.linalg import (
    ChainComplex,
    Matrix,
    Q,
    Z,
    determinant,
    fp,
    homology_degrees,
    rank,
    snf,
)
from grtor.engine.polynomial import (
    MODULES,
    check_recollement_units,
    check_unit_kernel,
    cross_effect,
    cross_effect_projection,
    degree,
)
from grtor.engine.torgr import (
    constant_functor,
    differential,
    hom_functor,
    homotopy_check,
    projection_xi,
    tor,
    verify_xi,
)

logger = logging.getLogger(__name__)

WITNESS = 'A=1, B=1, T=1, phi=(x1) : 1 -> 1, tau=x1*x2'


# =============================================================================
# Critérios
# =============================================================================


def bar_d_squared(settings: Settings) -> CheckReport:
    s = settings.suite
    return check_d_squared(s.d2_n_max, s.d2_r_max, settings.threads)


def homotopy_identities(settings: Settings) -> CheckReport:
    s = settings.suite
    return check_homotopy_identities(s.homotopy_n_max, s.homotopy_r_max,
                                     settings.threads)


def constant_homotopy(settings: Settings) -> CheckReport:
    report = CheckReport('homotopia do funtor constante',
                         bound='n<=6, r<=2, Z/Q/F2')
    for ring in (Z, Q, fp(2)):
        x = constant_functor(ring)
        xi = projection_xi(x)
        for r in range(3):
            report.extend(homotopy_check(x, xi, r, 6))
            result = tor(x, r, range(6))
            for n in range(6):
                report.add('tor_constant_vanishes',
                           {'ring': ring.label, 'r': r, 'degree': n},
                           result[n].is_zero, str(result[n].to_dict()))
    return report


def negative_xi(settings: Settings) -> CheckReport:
    x = hom_functor(2)
    verdicts = verify_xi(x, projection_xi(x), settings.sample)
    rows = {row.params['hypothesis']: row for row in verdicts.rows}
    report = CheckReport('ξ por extensão nula em k[Hom(-,Z/2)]',
                         bound=verdicts.bound)
    report.add('hypothesis_1_holds', {}, rows[1].passed, rows[1].detail)
    report.add('hypothesis_2_holds', {}, rows[2].passed, rows[2].detail)
    report.add('hypothesis_3_fails_at_witness', {},
               not rows[3].passed and rows[3].detail.startswith(WITNESS),
               rows[3].detail)
    return report


def tor_dual_id(settings: Settings) -> CheckReport:
    x = precompose_ab(Dual(Id()), Z)
    report = CheckReport('Tor de dual(id) sobre Z', bound='r=0')
    d1 = Matrix(Z, [[0, 0]])
    d2 = Matrix(Z, [[-1, 0, 0], [0, 0, 1]])
    report.add('delta_1', {'r': 0}, differential(x, 1, 0) == d1,
               str(differential(x, 1, 0).entries()))
    report.add('delta_2', {'r': 0}, differential(x, 2, 0) == d2,
               str(differential(x, 2, 0).entries()))
    result = tor(x, 0, [0, 1])
    report.add('tor_0', {'r': 0},
               result[0].free_rank == 1 and not result[0].torsion,
               str(result[0].to_dict()))
    report.add('tor_1', {'r': 0}, result[1].is_zero,
               str(result[1].to_dict()))
    return report


def recollement(settings: Settings) -> CheckReport:
    report = CheckReport('recolamento sobre Q', bound='n=2')
    for build in MODULES.values():
        report.extend(check_recollement_units(2, build(2, Q)))
    report.extend(check_unit_kernel(ExprFunctor(TensorPower(Id(), 2), Q),
                                    settings.degree_bound))
    return report


EXPECTED_DEGREES = {
    'id': (Id(), 1),
    'pow(id,2)': (TensorPower(Id(), 2), 2),
    'sym(2)': (Sym(2), 2),
    'ext(2)': (Ext(2), 2),
    'pow(id,3)': (TensorPower(Id(), 3), 3),
}


def degrees_and_cross_effects(settings: Settings) -> CheckReport:
    report = CheckReport('tabela de graus', bound=f'grau<='
                         f'{settings.degree_bound}')
    for label, (expr, want) in EXPECTED_DEGREES.items():
        functor = ExprFunctor(expr, Q)
        got = degree(functor, settings.degree_bound)
        report.add('degree', {'functor': label}, got == want,
                   f'{got} vs {want}')
        # Oráculo independente: posto do projetor Π (I - F(r_i))
        for n in (want, want + 1):
            ce = cross_effect(functor, n)
            by_projection = rank(cross_effect_projection(functor, n))
            report.add('cross_effect_oracle',
                       {'functor': label, 'n': n},
                       ce.dim == by_projection,
                       f'{ce.dim} vs {by_projection}')
    square = cross_effect(ExprFunctor(TensorPower(Id(), 2), Q), 2)
    report.add('cr2_square_dim', {'functor': 'pow(id,2)'}, square.dim == 2,
               str(square.dim))
    return report


def coend_dual_id(settings: Settings) -> CheckReport:
    report = CheckReport('coends com id', bound='N=2..4')
    result = stabilize(precompose_ab(Dual(Id()), Z), precompose_ab(Id(), Z),
                       2, 4, settings.threads)
    value = result.value
    report.add('coend_value', {'n_max': 4},
               value.free_rank == 1 and not value.torsion, str(value))
    report.add('coend_witness', {'n_max': 4}, result.witness == 3,
               str(result.witness))
    h1 = stable_h1(Dual(Id()), Z, settings.degree_bound, settings.threads)
    report.add('stable_h1', {'functor': 'dual(id)'},
               h1.result.value.free_rank == 1
               and not h1.result.value.torsion,
               str(h1.result.value))
    # dual(ext(2)) ⊗_ab id: nulo já em N=2, estável em N=3
    h1_ext = stable_h1(Dual(Ext(2)), Z, settings.degree_bound,
                       settings.threads)
    report.add('stable_h1', {'functor': 'dual(ext(2))'},
               h1_ext.degree == 2 and h1_ext.result.value.is_zero
               and h1_ext.result.witness == 3,
               f'{h1_ext.result.value} (grau {h1_ext.degree}, '
               f'N={h1_ext.result.witness})')
    return report


def gcat(settings: Settings) -> CheckReport:
    s = settings.suite
    return gcat_battery(s.gcat_samples, settings.seed, s.gcat_max_rank)


def snf_self_check(settings: Settings) -> CheckReport:
    s = settings.suite
    rng = np.random.default_rng(settings.seed)
    report = CheckReport('forma normal de Smith',
                         bound=f'{s.snf_samples} matrizes, dim<='
                         f'{s.snf_max_dim}, |a|<={s.snf_max_entry}')
    for k in range(s.snf_samples):
        rows = int(rng.integers(1, s.snf_max_dim + 1))
        cols = int(rng.integers(1, s.snf_max_dim + 1))
        entries = rng.integers(-s.snf_max_entry, s.snf_max_entry + 1,
                               size=(rows, cols))
        m = Matrix(Z, entries.tolist())
        form = snf(m)
        divs = form.divisors
        diagonal = all(
            form.D[i, j] == 0
            for i in range(rows)
            for j in range(cols)
            if i != j
        )
        ok = (
            form.U @ m @ form.V == form.D
            and diagonal
            and abs(determinant(form.U)) == 1
            and abs(determinant(form.V)) == 1
            and all(d > 0 for d in divs)
            and all(b % a == 0 for a, b in zip(divs, divs[1:]))
        )
        report.add('snf', {'sample': k, 'shape': [rows, cols]}, ok,
                   '' if ok else str(m.entries()))
    # Complexo Z --2--> Z: H_0 = Z/2, H_1 = 0
    cx = ChainComplex(Z, {0: 1, 1: 1}, {1: Matrix(Z, [[2]])})
    h = homology_degrees(cx, [0, 1])
    report.add('times_two_complex', {},
               h[0].free_rank == 0 and h[0].torsion == (2,)
               and h[1].is_zero,
               f'{h[0].to_dict()}, {h[1].to_dict()}')
    return report


CRITERIA: dict[int, tuple[str, Callable[[Settings], CheckReport]]] = {
    1: ('bar d^2 = 0', bar_d_squared),
    2: ('identidades da homotopia', homotopy_identities),
    3: ('homotopia e Tor do constante', constant_homotopy),
    4: ('ξ negativo', negative_xi),
    5: ('Tor de dual(id)', tor_dual_id),
    6: ('recolamento', recollement),
    7: ('efeitos cruzados e graus', degrees_and_cross_effects),
    8: ('coend e H1 estável', coend_dual_id),
    9: ('cálculo de 𝒢', gcat),
    10: ('autoverificação da SNF', snf_self_check),
}


@dataclass
class SuiteRow:
    criterion: int
    title: str
    report: CheckReport
    seconds: float

    @property
    def verdict(self) -> str:
        return 'PASS' if self.report.passed else 'FAIL'

    def to_dict(self, timed: bool = True) -> dict:
        """Linha da tabela; sem `seconds` quando `timed` é falso."""
        row = {
            'criterion': self.criterion,
            'title': self.title,
            'verdict': self.verdict,
            'checks': len(self.report.rows),
            'failures': len(self.report.failures),
        }
        if timed:
            row['seconds'] = self.seconds
        return row


def run_suite(
    settings: Settings, only: list[int] | None = None
) -> list[SuiteRow]:
    rows = []
    for number, (title, fn) in CRITERIA.items():
        if only and number not in only:
            continue
        logger.info('critério %d: %s', number, title)
        start = time.perf_counter()
        report = fn(settings)
        seconds = round(time.perf_counter() - start, 3)
        rows.append(SuiteRow(number, title, report, seconds))
        logger.info('critério %d: %s em %.2fs', number,
                    'PASS' if report.passed else 'FAIL', seconds)
    return rows
