# grtor/cli.py
# -*- coding: utf-8 -*-
"""
Linha de comando do grtor.

    grtor <comando> [subcomando] [opções] [--json ARQ] [--csv ARQ] [-v]

Códigos de saída: 0 tudo PASS, 1 algum FAIL, 2 erro de uso ou de entrada.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

import pandas as pd

from grtor.config import Settings, load_settings
from grtor.engine.barres import (
    check_d_squared,
    check_formal_associativity,
    check_homotopy_identities,
)
from grtor.engine.checks import CheckReport
from grtor.engine.coend import stabilize, stable_h1
from grtor.engine.functors import CONTRA, precompose_ab
from grtor.engine.gcat import (
    GMorphism,
    apply_automorphism,
    functor_i,
    functor_iota,
    g_compose,
    transitivity_witness,
)
from grtor.engine.linalg import ModuleSummary, Q, Ring
from grtor.engine.parser import (
    parse_functor,
    parse_gmorphism,
    parse_morphism,
    parse_word,
)
from grtor.engine.polynomial import (
    MODULES,
    check_counit,
    check_recollement_units,
    check_unit_kernel,
    cross_effect,
    degree_table,
)
from grtor.engine.torgr import (
    constant_functor,
    hom_functor,
    homotopy_check,
    projection_xi,
    tor,
    verify_xi,
)
from grtor.engine.words import (
    FreeWord,
    compose,
    is_basis,
    nielsen_reduce,
)
from grtor.errors import GrtorError, UsageError
from grtor.report import (
    RunManifest,
    envelope,
    homology_frame,
    render,
    suite_frame,
    summarize,
    verdict_frame,
    write_csv,
    write_json,
)
from grtor.suite import run_suite

logger = logging.getLogger(__name__)


@dataclass
class Outcome:
    """Resultado de um comando: JSON, relatórios de veredito e tabela."""

    result: dict[str, Any]
    reports: list[CheckReport] = field(default_factory=list)
    frame: pd.DataFrame | None = None
    text: str = ''
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return any(not r.passed for r in self.reports)


def setup_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format='   [%(levelname)s] %(message)s', force=True
    )


# =============================================================================
# Auxiliares
# =============================================================================


def parse_degrees(text: str) -> list[int]:
    """'0..3' ou '0,2,5'."""
    try:
        if '..' in text:
            lo, hi = text.split('..', 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(',') if x.strip()]
    except ValueError as err:
        raise UsageError(f'graus inválidos: {text!r}') from err
    if not out or min(out) < 0:
        raise UsageError(f'graus inválidos: {text!r}')
    return out


def _words(texts: list[str], rank: int | None) -> tuple[list[FreeWord], int]:
    parsed = [parse_word(t) for t in texts]
    if rank is None:
        rank = max((w.rank for w in parsed), default=0)
    return [FreeWord(w.letters, rank) for w in parsed], rank


def _gmorphism(text: str) -> GMorphism:
    return GMorphism(*parse_gmorphism(text))


def _field(settings: Settings) -> Ring:
    ring = settings.ring_obj
    if not ring.is_field:
        logger.info('comando exige corpo; usando Q no lugar de %s', ring)
        return Q
    return ring


def _x_functor(name: str, ring: Ring):
    if name == 'const':
        return constant_functor(ring)
    if name == 'hom-zmod2':
        return hom_functor(2, ring)
    functor = precompose_ab(parse_functor(name), ring)
    if functor.variance != CONTRA:
        raise UsageError(f'--x {name}: X precisa ser contravariante')
    return functor


def _reports_outcome(result_key: str, reports: list[CheckReport]) -> Outcome:
    return Outcome(
        {result_key: [r.to_dict() for r in reports]},
        reports,
        verdict_frame(reports),
        summarize(reports),
    )


# =============================================================================
# Comandos
# =============================================================================


def cmd_words(args, settings: Settings) -> Outcome:
    if args.action == 'reduce':
        (word,), _ = _words([args.word], args.rank)
        return Outcome({'input': args.word, 'reduced': str(word),
                        'length': len(word)}, text=str(word))
    if args.action == 'compose':
        g, f = parse_morphism(args.g), parse_morphism(args.f)
        out = compose(g, f)
        return Outcome({'composite': str(out)}, text=str(out))
    words, rank = _words(args.words, args.rank)
    if args.action == 'nielsen':
        reduced, record = nielsen_reduce(words, rank)
        text = ', '.join(str(w) for w in reduced) or '(vazio)'
        return Outcome(
            {'reduced': [str(w) for w in reduced],
             'steps': len(record.steps), 'rank': rank},
            text=text,
        )
    basis = is_basis(words, rank)
    return Outcome({'basis': basis, 'rank': rank}, text=str(basis).lower())


def cmd_gcat(args, settings: Settings) -> Outcome:
    f = _gmorphism(args.f)
    if args.action == 'compose':
        out = g_compose(_gmorphism(args.g), f)
        return Outcome({'composite': out.to_dict()}, text=str(out))
    if args.action == 'i':
        return Outcome({'morphism': str(functor_i(f))},
                       text=str(functor_i(f)))
    if args.action == 'iota':
        return Outcome({'morphism': str(functor_iota(f))},
                       text=str(functor_iota(f)))
    g = _gmorphism(args.g)
    phi = transitivity_witness(f, g)
    report = CheckReport('testemunha de transitividade')
    report.add('transitivity', {'f': str(f), 'g': str(g)},
               apply_automorphism(phi, f) == g, str(phi))
    out = Outcome({'phi': str(phi), 'report': report.to_dict()}, [report],
                  verdict_frame([report]), str(phi))
    return out


def cmd_bar(args, settings: Settings) -> Outcome:
    if args.action == 'check-d2':
        report = check_d_squared(args.n_max, args.r_max, settings.threads)
    elif args.action == 'check-homotopy-ids':
        report = check_homotopy_identities(args.n_max, args.r_max,
                                           settings.threads)
    else:
        report = check_formal_associativity(args.samples, settings.seed)
    return _reports_outcome('reports', [report])


def cmd_tor(args, settings: Settings) -> Outcome:
    degrees = parse_degrees(args.degrees)
    expr = parse_functor(args.functor)
    functor = precompose_ab(expr, settings.ring_obj)
    result = tor(functor, args.r, degrees, args.n_max, settings.threads)
    lines = []
    for n in sorted(result.entries):
        e = result[n]
        value = ModuleSummary(result.ring, e.free_rank, e.torsion)
        lines.append(f'   Tor_{n} = {value}')
    return Outcome(
        {'functor': str(expr), 'r': args.r, **result.to_dict()},
        frame=homology_frame(result, functor=str(expr), r=args.r),
        text='\n'.join(lines),
    )


def cmd_xi(args, settings: Settings) -> Outcome:
    functor = _x_functor(args.x, settings.ring_obj)
    xi = projection_xi(functor)
    if args.action == 'verify':
        report = verify_xi(functor, xi, settings.sample)
    else:
        report = homotopy_check(functor, xi, args.r, args.n_max)
    return _reports_outcome('reports', [report])


def cmd_crosseffect(args, settings: Settings) -> Outcome:
    expr = parse_functor(args.functor)
    ce = cross_effect(precompose_ab(expr, settings.ring_obj), args.n)
    result = {'functor': str(expr), 'n': args.n, 'dim': ce.dim,
              'character': ce.module.character()}
    return Outcome(result, text=f'   cr_{args.n}({expr}): dimensão {ce.dim}')


def cmd_degree(args, settings: Settings) -> Outcome:
    exprs = {text: parse_functor(text) for text in args.functor}
    table = degree_table(exprs, args.bound or settings.degree_bound,
                         settings.ring_obj)
    lines = [f'   {label}: {d if d is not None else "> limite"}'
             for label, d in table.items()]
    return Outcome({'degrees': table}, text='\n'.join(lines))


def cmd_alpha_beta(args, settings: Settings) -> Outcome:
    ring = _field(settings)
    if args.functor:
        functor = precompose_ab(parse_functor(args.functor), ring)
        reports = [check_unit_kernel(functor, settings.degree_bound)]
        if args.counit:
            reports.append(check_counit(functor, settings.degree_bound))
    else:
        module = MODULES[args.module](args.n, ring)
        reports = [check_recollement_units(args.n, module)]
    return _reports_outcome('reports', reports)


def cmd_coend(args, settings: Settings) -> Outcome:
    ring = settings.ring_obj
    left = precompose_ab(parse_functor(args.left), ring)
    right = precompose_ab(parse_functor(args.right), ring)
    n_min = args.n_min or settings.coend.n_min
    n_max = args.n_max or settings.coend.n_max
    result = stabilize(left, right, n_min, n_max, settings.threads)
    where = f'N={result.witness}' if result.stable else 'não estabilizou'
    return Outcome(
        {'left': args.left, 'right': args.right, **result.to_dict()},
        text=f'   {args.left} ⊗_ab {args.right} = {result.value} ({where})',
    )


def cmd_stable_h1(args, settings: Settings) -> Outcome:
    out = stable_h1(parse_functor(args.functor), settings.ring_obj,
                    settings.degree_bound, settings.threads)
    value = out.result.value
    return Outcome(
        out.to_dict(),
        text=f'   colim H_1(Aut; {out.functor}) = {value} '
             f'(grau {out.degree}, N={out.result.witness})',
    )


def cmd_suite(args, settings: Settings) -> Outcome:
    rows = run_suite(settings, args.only)
    table = [row.to_dict() for row in rows]
    lines = [
        f'   [{row.verdict}] {row.criterion:>2}. {row.title} '
        f'({row.seconds:.2f}s)'
        for row in rows
    ]
    return Outcome(
        {'criteria': [row.to_dict(timed=False) for row in rows],
         'reports': [row.report.to_dict() for row in rows]},
        [row.report for row in rows],
        suite_frame(table),
        '\n'.join(lines),
        {str(row.criterion): row.seconds for row in rows},
    )


# =============================================================================


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument('--ring', help='z, q ou fp:<p>')
    p.add_argument('--seed', type=int)
    p.add_argument('--json', help='grava o resultado em JSON')
    p.add_argument('--csv', help='grava a tabela em CSV')
    p.add_argument('--config', help='caminho do config.yaml')
    p.add_argument('-v', '--verbose', action='count', default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog='grtor',
        description='Álgebra homológica exata sobre gr.',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name: str, handler: Callable, help_text: str,
                nested: bool = False):
        # Opções comuns só no último nível
        parents = [] if nested else [common]
        p = sub.add_parser(name, parents=parents, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def actions(p: argparse.ArgumentParser):
        inner = p.add_subparsers(dest='action', required=True)
        return lambda name: inner.add_parser(name, parents=[common])

    # words
    words = actions(command('words', cmd_words, 'palavras e Nielsen', True))
    p = words('reduce')
    p.add_argument('word')
    p.add_argument('--rank', type=int)
    p = words('compose')
    p.add_argument('g')
    p.add_argument('f')
    for name in ('nielsen', 'is-basis'):
        p = words(name)
        p.add_argument('words', nargs='+')
        p.add_argument('--rank', type=int)

    # gcat
    gcat = actions(command('gcat', cmd_gcat, 'categoria 𝒢', True))
    p = gcat('compose')
    p.add_argument('g')
    p.add_argument('f')
    for name in ('i', 'iota'):
        gcat(name).add_argument('f')
    p = gcat('witness')
    p.add_argument('f')
    p.add_argument('g')

    # bar
    bar = actions(command('bar', cmd_bar, 'resolução em barras', True))
    p = bar('check-d2')
    p.add_argument('--n-max', type=int, default=6)
    p.add_argument('--r-max', type=int, default=2)
    p = bar('check-homotopy-ids')
    p.add_argument('--n-max', type=int, default=8)
    p.add_argument('--r-max', type=int, default=3)
    bar('check-assoc').add_argument('--samples', type=int, default=50)

    # tor
    p = command('tor', cmd_tor, 'Tor^gr(X, a ⊗ P_r)')
    p.add_argument('--functor', required=True)
    p.add_argument('--r', type=int, default=0)
    p.add_argument('--degrees', default='0..3')
    p.add_argument('--n-max', type=int)

    # xi
    xi = actions(command('xi', cmd_xi, 'hipóteses sobre ξ', True))
    for name in ('verify', 'homotopy'):
        p = xi(name)
        p.add_argument('--x', required=True,
                       help='const, hom-zmod2 ou expressão')
        p.add_argument('--r', type=int, default=0)
        p.add_argument('--n-max', type=int, default=6)

    # funtores polinomiais
    p = command('crosseffect', cmd_crosseffect, 'efeito cruzado cr_n')
    p.add_argument('--functor', required=True)
    p.add_argument('--n', type=int, required=True)
    p = command('degree', cmd_degree, 'grau polinomial')
    p.add_argument('--functor', required=True, action='append')
    p.add_argument('--bound', type=int)
    p = command('alpha-beta', cmd_alpha_beta, 'α_n, β_n e unidades')
    p.add_argument('--n', type=int, default=2)
    p.add_argument('--module', choices=sorted(MODULES), default='regular')
    p.add_argument('--functor')
    p.add_argument('--counit', action='store_true')

    # coend
    p = command('coend', cmd_coend, 'X ⊗_ab G truncado')
    p.add_argument('--left', required=True)
    p.add_argument('--right', required=True)
    p.add_argument('--n-min', type=int)
    p.add_argument('--n-max', type=int)
    p = command('stable-h1', cmd_stable_h1, 'H_1 estável previsto')
    p.add_argument('--functor', required=True)

    # suite
    p = command('suite', cmd_suite, 'bateria de aceitação')
    p.add_argument('--only', type=int, action='append')
    return parser


def _parameters(args: argparse.Namespace) -> dict[str, Any]:
    skip = {'handler', 'json', 'csv', 'config', 'verbose', 'ring', 'seed'}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# =============================================================================
# Entrada
# =============================================================================


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    setup_logging(args.verbose)
    command = ' '.join(
        x for x in (args.command, getattr(args, 'action', None)) if x
    )
    try:
        settings = load_settings(args.config).with_flags(
            ring=args.ring, seed=args.seed
        )
        Ring.parse(settings.ring)
        manifest = RunManifest(
            command, _parameters(args), settings.ring, settings.seed,
            settings.to_dict(),
        )
        outcome = args.handler(args, settings)
        manifest.timings = outcome.timings
        manifest.stop()
        if args.json:
            write_json(args.json, envelope(manifest, outcome.result))
        if args.csv:
            if outcome.frame is None:
                raise UsageError(f'{command} não produz tabela para --csv')
            write_csv(args.csv, outcome.frame)
    except GrtorError as err:
        print(f'   [ERRO] {err}', file=sys.stderr)
        return 2
    except Exception as err:
        logger.exception('falha inesperada em %s', command)
        print(f'   [ERRO] {type(err).__name__}: {err}', file=sys.stderr)
        return 2
    if outcome.text:
        print(outcome.text)
    if outcome.frame is not None and args.verbose:
        print(render(outcome.frame))
    return 1 if outcome.failed else 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
