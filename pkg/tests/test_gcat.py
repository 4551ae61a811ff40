import numpy as np
import pytest

from grtor.engine.gcat import (
    GMorphism,
    apply_automorphism,
    automorphism_check,
    functor_i,
    functor_iota,
    g_canonical,
    g_compose,
    g_equivalent,
    g_free_product,
    g_identity,
    gcat_battery,
    random_gmorphism,
    stabilizer_check,
    transitivity_witness,
)
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    compose,
    identity,
    random_automorphism,
)
from grtor.errors import GInvariantError, RankMismatchError


def word(*letters, rank=2):
    return FreeWord(letters, rank)


def u12():
    return GrMorphism(1, 2, (word(1),))


def test_invalid_complement():
    with pytest.raises(GInvariantError):
        GMorphism(u12(), (word(1),))
    with pytest.raises(GInvariantError):
        GMorphism(u12(), ())
    with pytest.raises(GInvariantError):
        GMorphism(u12(), (word(2, 2),))


def test_iota_of_canonical_is_projection():
    f = g_canonical(1, 1)
    assert functor_i(f) == u12()
    assert functor_iota(f) == GrMorphism(
        2, 1, (FreeWord((1,), 1), FreeWord.identity(1))
    )


def test_retraction_with_twisted_complement():
    f = GMorphism(u12(), (word(1, 2),))
    assert compose(functor_iota(f), functor_i(f)) == identity(1)
    # ι mata o complemento escolhido
    assert functor_iota(f)(word(1, 2)).is_identity


def test_transitivity_witness():
    f = g_canonical(1, 1)
    g = GMorphism(GrMorphism(1, 2, (word(1, 2),)), (word(2),))
    phi = transitivity_witness(f, g)
    assert apply_automorphism(phi, f) == g
    with pytest.raises(RankMismatchError):
        transitivity_witness(f, g_identity(2))


def test_compose_and_free_product():
    f = g_canonical(1, 1)
    assert g_compose(g_identity(2), f) == f
    assert g_compose(f, g_identity(1)) == f
    with pytest.raises(RankMismatchError):
        g_compose(f, f)
    prod = g_free_product(g_identity(1), f)
    assert prod.u == GrMorphism.from_letters([(1,), (2,)], 3)
    assert prod.complement == (FreeWord((3,), 3),)


def test_equivalence_up_to_complement_basis():
    f = g_canonical(1, 1)
    assert g_equivalent(f, GMorphism(u12(), (word(-2),)))
    assert not g_equivalent(f, GMorphism(u12(), (word(1, 2),)))


def test_random_gmorphisms_are_valid():
    rng = np.random.default_rng(3)
    for a, b in [(0, 2), (1, 3), (2, 2)]:
        f = random_gmorphism(rng, a, b)
        assert (f.src_rank, f.dst_rank) == (a, b)
        assert compose(functor_iota(f), functor_i(f)) == identity(a)


def test_automorphism_check():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3):
        assert automorphism_check(random_automorphism(rng, n))


def test_batteries():
    assert gcat_battery(25, seed=5, max_rank=3).passed
    assert stabilizer_check(1, 2, samples=10, seed=5).passed
