import numpy as np
import pytest

from grtor.engine.functors import (
    CONTRA,
    Const,
    DirectSum,
    Dual,
    ExprFunctor,
    Ext,
    Id,
    QuotientFunctor,
    Reduced,
    Sym,
    Tensor,
    TensorPower,
    ab_generators,
    evaluate,
    precompose_ab,
)
from grtor.engine.linalg import Matrix, Q, Z
from grtor.engine.words import GrMorphism
from grtor.errors import RingError

EXPRESSIONS = [
    Id(),
    Dual(Id()),
    TensorPower(Id(), 2),
    Sym(2),
    Ext(2),
    DirectSum(Id(), Const(1)),
    Tensor(Dual(Id()), Dual(Id())),
    Reduced(TensorPower(DirectSum(Id(), Const(1)), 2)),
]


def random_matrix(rng, rows, cols):
    return Matrix(Z, rng.integers(-2, 3, size=(rows, cols)).tolist(),
                  shape=(rows, cols))


def test_identity_and_dual():
    m = Matrix(Z, [[1, 2, 0], [0, 1, 5]])
    assert ExprFunctor(Id()).on_matrix(m) == m
    assert ExprFunctor(Dual(Id())).on_matrix(m) == m.T


def test_sym_two_on_a_shear():
    m = Matrix(Z, [[1, 1], [0, 1]])
    assert evaluate(Sym(2), m) == Matrix(
        Z, [[1, 1, 1], [0, 1, 2], [0, 0, 1]]
    )


def test_ext_is_determinant_on_top_degree():
    m = Matrix(Z, [[2, 0], [0, 3]])
    assert evaluate(Ext(2), m) == Matrix(Z, [[6]])


def test_dimensions():
    assert Sym(2).dim(3) == 6
    assert Ext(2).dim(3) == 3
    assert Sym(0).dim(0) == 1
    assert TensorPower(Id(), 3).dim(2) == 8
    assert Reduced(DirectSum(Id(), Const(1))).dim(2) == 2


@pytest.mark.parametrize('expr', EXPRESSIONS, ids=str)
def test_functoriality_on_random_matrices(expr):
    rng = np.random.default_rng(17)
    functor = ExprFunctor(expr, Z)
    for _ in range(5):
        a, b, c = (int(x) for x in rng.integers(0, 4, 3))
        inner = random_matrix(rng, b, a)
        outer = random_matrix(rng, c, b)
        assert functor.check_functoriality(outer, inner)


def test_contravariant_shapes():
    functor = ExprFunctor(TensorPower(Dual(Id()), 2), Q)
    assert functor.variance == CONTRA
    assert functor.on_matrix(Matrix(Z, [[1], [2]])).shape == (1, 4)


def test_on_morphism_goes_through_abelianization():
    phi = GrMorphism.from_letters([(1, 2, -1), (2, 2)], 2)
    assert ExprFunctor(Id()).on_morphism(phi) == Matrix(Z, [[0, 0], [1, 2]])


def test_evaluate_requires_integer_matrices():
    with pytest.raises(RingError):
        evaluate(Id(), Matrix(Q, [[1]]))


def test_quotient_requires_field():
    with pytest.raises(RingError):
        QuotientFunctor(
            ExprFunctor(Id(), Z), lambda m: Matrix.zeros(Z, m, 0), 'q'
        )


def test_ab_generators():
    names = [name for name, _ in ab_generators(2)]
    assert len(names) == 9
    assert 'P12@2' in names
    assert 'inj0->1' in names


def test_precompose_ab_over_fields():
    functor = precompose_ab(Sym(2), Q)
    value = functor.on_matrix(Matrix(Z, [[2]]))
    assert value == Matrix(Q, [[4]])
