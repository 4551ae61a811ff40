import pytest

from grtor.engine.coend import (
    check_additivity,
    check_generator_enlargement,
    functor_tensor,
    stabilize,
    stable_h1,
)
from grtor.engine.functors import (
    CONTRA,
    Const,
    Dual,
    Ext,
    Id,
    precompose_ab,
)
from grtor.engine.linalg import Q, Z
from grtor.errors import DegreeError, RingError, ShapeError, VarianceError


@pytest.fixture
def dual_id():
    return precompose_ab(Dual(Id()), Z)


@pytest.fixture
def ident():
    return precompose_ab(Id(), Z)


def test_dual_id_tensor_id_stabilizes_to_z(dual_id, ident):
    result = stabilize(dual_id, ident, 2, 4)
    assert result.stable
    assert result.witness == 3
    assert result.value.free_rank == 1
    assert result.value.torsion == ()
    assert str(result.value) == 'Z'


def test_presentation_blocks(dual_id, ident):
    pres = functor_tensor(dual_id, ident, 3)
    assert pres.level == 2
    # 0 + 1 + 4 + 9 geradores
    assert pres.generators == 14
    assert pres.blocks[2] == (1, 2, 2)


def test_constant_tensor_reduced_vanishes(ident):
    const = precompose_ab(Const(1, CONTRA), Z)
    assert functor_tensor(const, ident, 3).value.is_zero


def test_stable_h1_of_dual_id():
    h1 = stable_h1(Dual(Id()))
    assert h1.degree == 1
    assert h1.result.witness == 3
    assert h1.to_dict()['value'] == 'Z'


def test_stable_h1_errors():
    with pytest.raises(VarianceError):
        stable_h1(Id())
    with pytest.raises(DegreeError):
        stable_h1(Const(1, CONTRA))


def test_tensor_errors(dual_id, ident):
    with pytest.raises(ShapeError):
        functor_tensor(dual_id, ident, 0)
    with pytest.raises(VarianceError):
        functor_tensor(ident, dual_id, 2)
    with pytest.raises(RingError):
        functor_tensor(dual_id, precompose_ab(Id(), Q), 2)
    with pytest.raises(ShapeError):
        stabilize(dual_id, ident, 1, 3)


def test_additivity():
    assert check_additivity(Dual(Id()), Id(), Id(), 3).passed


def test_extra_generators_do_not_change_the_value(dual_id, ident):
    assert check_generator_enlargement(
        dual_id, ident, 3, extra=4, seed=1
    ).passed


def test_stable_h1_of_dual_exterior_square():
    h1 = stable_h1(Dual(Ext(2)))
    assert h1.degree == 2
    assert h1.result.value.is_zero
    assert h1.result.witness == 3
    assert h1.to_dict()['levels'] == {'2': '0', '3': '0'}
