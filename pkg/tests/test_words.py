import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grtor.engine.linalg import Matrix, Z
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    abelianize,
    compose,
    free_product,
    identity,
    inclusion,
    invert_automorphism,
    is_automorphism,
    is_basis,
    nielsen_reduce,
    projection,
    random_automorphism,
    reduce_word,
    spans_free_factor,
    zero_morphism,
)
from grtor.errors import RankMismatchError, WordError


def w(*letters, rank=2):
    return FreeWord(letters, rank)


def letters_of_rank(rank):
    return st.lists(
        st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i])),
        max_size=12,
    )


def test_free_reduction_on_construction():
    assert w(1, -1, 2).letters == (2,)
    assert w(1, 2, -2, -1).is_identity


def test_generator_out_of_range():
    with pytest.raises(WordError):
        FreeWord((3,), 2)
    with pytest.raises(WordError):
        FreeWord((0,), 1)


def test_product_requires_same_rank():
    with pytest.raises(RankMismatchError):
        w(1, rank=1) * w(1, rank=2)


def test_printer():
    assert str(w(1, -2)) == 'x1*x2^-1'
    assert str(FreeWord.identity(3)) == '1'


@given(letters_of_rank(3))
@settings(max_examples=50, deadline=None)
def test_word_times_inverse_is_identity(letters):
    word = FreeWord(tuple(letters), 3)
    assert (word * word.inverse()).is_identity
    assert word.inverse().inverse() == word


def test_compose_substitutes_images():
    f = GrMorphism(1, 2, (w(1, 2),))
    swap = GrMorphism(2, 2, (w(2), w(1)))
    assert compose(swap, f).images == (w(2, 1),)


def test_compose_rank_mismatch():
    with pytest.raises(RankMismatchError):
        compose(identity(3), identity(2))


def test_inclusion_puts_a_last():
    u = inclusion(2, 1)
    assert u.images == (FreeWord((2,), 3), FreeWord((3,), 3))


def test_projection_and_zero():
    assert projection(3, 1).images == (
        FreeWord((1,), 1),
        FreeWord.identity(1),
        FreeWord.identity(1),
    )
    assert all(x.is_identity for x in zero_morphism(2, 3).images)


def test_free_product_shifts_blocks():
    f = GrMorphism(1, 2, (w(1, 2),))
    out = free_product(identity(1), f)
    assert out.images == (FreeWord((1,), 3), FreeWord((2, 3), 3))


def test_abelianize_columns_are_exponent_sums():
    phi = GrMorphism(2, 2, (w(1, 2), w(2)))
    assert abelianize(phi) == Matrix(Z, [[1, 0], [1, 1]])


def test_nielsen_reduced_set_is_unchanged():
    word = FreeWord((1, 2, -1), 2)
    reduced, record = nielsen_reduce([word], 2)
    assert reduced == (word,)
    assert record.steps == ()


def test_nielsen_record_replays():
    words = [w(1, 2), w(2)]
    reduced, record = nielsen_reduce(words, 2)
    assert record.replay() == reduced
    assert sorted(abs(x.letters[0]) for x in reduced) == [1, 2]


@pytest.mark.parametrize(
    ('words', 'expected'),
    [
        ([(1, 2), (2,)], True),
        ([(1, 1), (2,)], False),
        ([(1,), (1,)], False),
        ([(2, 1, -2), (2,)], True),
    ],
)
def test_is_basis(words, expected):
    assert is_basis([FreeWord(x, 2) for x in words], 2) is expected


def test_spans_free_factor():
    assert spans_free_factor([FreeWord((-3,), 3)], [3], 3)
    assert spans_free_factor([FreeWord((1, 3), 3), FreeWord((1,), 3)],
                             [1, 3], 3)
    # conjugado de x3 não é o fator <x3>
    assert not spans_free_factor([FreeWord((1, 3, -1), 3)], [3], 3)
    assert not spans_free_factor([FreeWord((3, 3), 3)], [3], 3)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_invert_automorphism(seed, n):
    phi = random_automorphism(np.random.default_rng(seed), n)
    inv = invert_automorphism(phi)
    assert compose(phi, inv) == identity(n)
    assert compose(inv, phi) == identity(n)
    assert is_automorphism(phi)


def test_invert_rejects_non_automorphism():
    with pytest.raises(WordError):
        invert_automorphism(GrMorphism(1, 1, (FreeWord((1, 1), 1),)))


def test_reduce_word_is_idempotent():
    word = reduce_word([1, 2, -2, -1, 2, 2], 2)
    assert word.letters == (2, 2)
    assert reduce_word(word.letters, 2) == word
    with pytest.raises(WordError):
        reduce_word([3], 2)
