import pytest

from grtor.engine.functors import CO, CONTRA, Dual, Id, Tensor
from grtor.engine.parser import (
    parse_functor,
    parse_gmorphism,
    parse_morphism,
    parse_word,
)
from grtor.engine.words import FreeWord, GrMorphism
from grtor.errors import ParseError, RankMismatchError, VarianceError


@pytest.mark.parametrize(
    ('text', 'letters'),
    [
        ('x1*x2^-1', (1, -2)),
        ("e1 e2'", (1, -2)),
        ('x1^2', (1, 1)),
        ('x2^-2', (-2, -2)),
        ('x1*x1^-1*x2', (2,)),
    ],
)
def test_parse_word(text, letters):
    assert parse_word(text, rank=2).letters == letters


def test_parse_word_identity():
    assert parse_word('1').is_identity
    assert parse_word('', rank=3) == FreeWord.identity(3)


def test_parse_word_default_rank_is_largest_index():
    assert parse_word('x1*x3').rank == 3


def test_parse_word_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_word('x1**x2')
    assert isinstance(exc.value.position, int)
    with pytest.raises(ParseError):
        parse_word('y1')


def test_parse_morphism_round_trip():
    phi = parse_morphism('(x1*x2, x3) : 2 -> 3')
    assert phi == GrMorphism.from_letters([(1, 2), (3,)], 3)
    assert str(phi) == '(x1*x2, x3) : 2 -> 3'
    assert parse_morphism(str(phi)) == phi


def test_parse_morphism_declared_source_must_match():
    with pytest.raises(RankMismatchError):
        parse_morphism('(x1, x2) : 3 -> 2')


def test_parse_gmorphism():
    u, complement = parse_gmorphism('(x1) : 1 -> 2 | x2')
    assert u == GrMorphism.from_letters([(1,)], 2)
    assert complement == (FreeWord((2,), 2),)


@pytest.mark.parametrize(
    'text',
    [
        'id',
        'dual(id)',
        'pow(id,2)',
        'sym(2)',
        'ext(3)',
        'sum(id,const(1))',
        'tensor(dual(id),dual(id))',
        'reduced(pow(sum(id,const(1)),2))',
        'dual(const(1))',
    ],
)
def test_functor_printer_round_trip(text):
    assert str(parse_functor(text)) == text


def test_functor_variance():
    assert parse_functor('dual(id)').variance == CONTRA
    assert parse_functor('dual(const(2))').variance == CONTRA
    assert parse_functor('sym(2)').variance == CO


def test_mixed_variance_rejected():
    with pytest.raises(VarianceError):
        Tensor(Id(), Dual(Id()))


def test_unknown_functor():
    with pytest.raises(ParseError):
        parse_functor('lambda(2)')
