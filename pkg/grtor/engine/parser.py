# grtor/engine/parser.py
# -*- coding: utf-8 -*-
"""
Gramáticas (pyparsing) de palavras, morfismos e da DSL de funtores.

Palavras:   x1*x2^-1, e1 e2, x3', 1 (identidade) ou texto vazio.
Morfismos:  (e1 e2, e3) [: 2 -> 3]
G-morfismo: (x1) : 1 -> 2 | x2
Funtores:   id, const(r), dual(F), tensor(F,G), sum(F,G), pow(F,n),
            sym(n), ext(n), reduced(F)

Os printers (`str`) de FreeWord, GrMorphism e FunctorExpr produzem
texto aceito por estas gramáticas.
"""

from __future__ import annotations

import pyparsing as pp

from grtor.engine.functors import (
    Const,
    DirectSum,
    Dual,
    Ext,
    FunctorExpr,
    Id,
    Reduced,
    Sym,
    Tensor,
    TensorPower,
)
from grtor.engine.words import FreeWord, GrMorphism
from grtor.errors import ParseError, RankMismatchError

# =============================================================================
# Palavras e morfismos
# =============================================================================

_INT = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))

_GEN = pp.Combine(pp.one_of('x e') + pp.Word(pp.nums)).set_parse_action(
    lambda t: int(t[0][1:])
)
_EXP = (
    pp.Suppress('^') + pp.Combine(pp.Opt('-') + pp.Word(pp.nums))
).set_parse_action(lambda t: int(t[0])) | pp.Literal("'").set_parse_action(
    lambda: -1
)
_FACTOR = pp.Group(_GEN + pp.Opt(_EXP, default=1))


def _letters(tokens) -> list:
    out: list[int] = []
    for group in tokens:
        index, exponent = group[0], group[1]
        if index < 1:
            raise pp.ParseFatalException('', 0, 'gerador x0 não existe')
        out.extend([index if exponent > 0 else -index] * abs(exponent))
    return [tuple(out)]


_PRODUCT = (
    _FACTOR + pp.ZeroOrMore(pp.Opt(pp.Suppress('*')) + _FACTOR)
).set_parse_action(_letters)
_ONE = pp.Literal('1').set_parse_action(lambda: [()])
_WORD = _ONE | _PRODUCT


def _word_list(name: str):
    return pp.Group(
        pp.Opt(_WORD + pp.ZeroOrMore(pp.Suppress(',') + _WORD))
    )(name)


_RANKS = pp.Suppress(':') + _INT('src') + pp.Suppress('->') + _INT('dst')
_MORPHISM = (
    pp.Suppress('(') + _word_list('words') + pp.Suppress(')') + pp.Opt(_RANKS)
)
_GMORPHISM = _MORPHISM + pp.Opt(
    pp.Suppress('|') + _word_list('complement')
)


def _run(grammar: pp.ParserElement, text: str):
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as err:
        raise ParseError(err.msg, err.loc) from err


def _max_index(words) -> int:
    return max((abs(a) for w in words for a in w), default=0)


def parse_word(text: str, rank: int | None = None) -> FreeWord:
    """Palavra reduzida; o posto padrão é o maior índice presente."""
    if not text.strip():
        return FreeWord.identity(rank or 0)
    letters = _run(_WORD, text)[0]
    return FreeWord(letters, _max_index([letters]) if rank is None else rank)


def _morphism_from(res, text: str) -> GrMorphism:
    words = list(res['words'])
    src = res.get('src')
    dst = res.get('dst')
    if src is not None and src != len(words):
        raise RankMismatchError(
            f'{text!r}: {len(words)} imagens para origem declarada {src}'
        )
    if dst is None:
        dst = _max_index(words)
    return GrMorphism.from_letters(words, dst)


def parse_morphism(text: str) -> GrMorphism:
    return _morphism_from(_run(_MORPHISM, text), text)


def parse_gmorphism(text: str) -> tuple[GrMorphism, tuple[FreeWord, ...]]:
    """(u, complemento); o complemento vive no posto de destino de u."""
    res = _run(_GMORPHISM, text)
    u = _morphism_from(res, text)
    comp = res.get('complement')
    complement = tuple(FreeWord(w, u.dst_rank) for w in (comp or []))
    return u, complement


# =============================================================================
# DSL de funtores
# =============================================================================

_LP, _RP, _COMMA = map(pp.Suppress, '(),')
_EXPR = pp.Forward()


def _kw(name: str):
    return pp.Suppress(pp.Keyword(name))


_EXPR <<= (
    pp.Keyword('id').set_parse_action(lambda: Id())
    | (_kw('const') + _LP + _INT + _RP).set_parse_action(
        lambda t: Const(t[0])
    )
    | (_kw('dual') + _LP + _EXPR + _RP).set_parse_action(
        lambda t: _dual(t[0])
    )
    | (_kw('tensor') + _LP + _EXPR + _COMMA + _EXPR + _RP).set_parse_action(
        lambda t: Tensor(t[0], t[1])
    )
    | (_kw('sum') + _LP + _EXPR + _COMMA + _EXPR + _RP).set_parse_action(
        lambda t: DirectSum(t[0], t[1])
    )
    | (_kw('pow') + _LP + _EXPR + _COMMA + _INT + _RP).set_parse_action(
        lambda t: TensorPower(t[0], t[1])
    )
    | (_kw('sym') + _LP + _INT + _RP).set_parse_action(lambda t: Sym(t[0]))
    | (_kw('ext') + _LP + _INT + _RP).set_parse_action(lambda t: Ext(t[0]))
    | (_kw('reduced') + _LP + _EXPR + _RP).set_parse_action(
        lambda t: Reduced(t[0])
    )
)


def _dual(inner: FunctorExpr) -> FunctorExpr:
    # dual(const(r)) é o constante contravariante
    if isinstance(inner, Const):
        return Const(inner.rank, 'contra' if inner.var == 'co' else 'co')
    return Dual(inner)


def parse_functor(text: str) -> FunctorExpr:
    return _run(_EXPR, text.strip())[0]
