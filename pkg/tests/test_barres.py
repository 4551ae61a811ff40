import pytest

from grtor.engine.barres import (
    FormalSum,
    bar_element,
    check_d_squared,
    check_formal_associativity,
    check_homotopy_identities,
    face,
    formal_compose,
    psi_morphism,
    theta_morphism,
)
from grtor.engine.words import (
    FreeWord,
    GrMorphism,
    free_product,
    identity,
    inclusion,
)
from grtor.errors import RankMismatchError, WordError


def gens(rank, *images):
    return GrMorphism.from_letters(images, rank)


def test_faces_low_degree():
    assert face('a', 1, 0) == gens(2, (2,))
    assert face('b', 1, 0, 1) == gens(2, (1, 2))
    assert face('c', 1, 0) == gens(2, (1,))
    assert face('c', 2, 0) == gens(3, (1,), (2,))
    assert face('b', 2, 1, 2) == gens(4, (1,), (2, 3), (4,))


def test_face_out_of_range():
    with pytest.raises(WordError):
        face('b', 2, 0, 3)
    with pytest.raises(WordError):
        face('z', 1, 0)
    with pytest.raises(WordError):
        bar_element(0, 0)


def test_bar_element_printer():
    assert str(bar_element(1, 0)) == '(x1) + (x2) - (x1*x2)'
    assert len(bar_element(3, 1)) == 5


@pytest.mark.parametrize(('n', 'r'), [(1, 0), (2, 0), (3, 1), (4, 2)])
def test_d_squared_is_zero(n, r):
    residue = formal_compose(bar_element(n + 1, r), bar_element(n, r))
    assert residue.is_zero()


def test_d_squared_report():
    report = check_d_squared(4, 1, threads=2)
    assert report.passed
    assert len(report.rows) == 8


def test_homotopy_identities_report():
    assert check_homotopy_identities(4, 2).passed


def test_formal_associativity_report():
    assert check_formal_associativity(20, seed=7).passed


def test_formal_sums_must_be_parallel():
    with pytest.raises(RankMismatchError):
        FormalSum.zero(1, 2) + FormalSum.zero(2, 3)
    with pytest.raises(RankMismatchError):
        FormalSum.single(identity(2), 1)._add(identity(1), 1)
    with pytest.raises(RankMismatchError):
        formal_compose(bar_element(1, 0), bar_element(1, 0))


def test_cancellation_and_scale():
    s = FormalSum.single(identity(1), 2)
    assert (s - s).is_zero()
    assert s.scale(-1) == -s


def test_embed_uses_free_products():
    embedded = bar_element(1, 0).embed(1, 0)
    expected = FormalSum(2, 3)
    for f, c in bar_element(1, 0).items():
        expected._add(free_product(identity(1), f), c)
    assert embedded == expected


def test_theta_psi_recover_b1():
    tau = (FreeWord((1, 2), 3),)
    theta = theta_morphism(tau, 2)
    assert theta.images[1:] == (FreeWord((2,), 3), FreeWord((3,), 3))
    psi = psi_morphism(inclusion(1, 1), tau)
    assert psi == face('b', 2, 0, 1)
