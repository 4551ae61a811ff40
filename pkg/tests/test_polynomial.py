import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grtor.engine.functors import (
    Const,
    DirectSum,
    Dual,
    ExprFunctor,
    Ext,
    Id,
    Sym,
    Tensor,
    TensorPower,
)
from grtor.engine.linalg import Matrix, Q, Z, rank
from grtor.engine.polynomial import (
    MODULES,
    SymModule,
    additive_quotient,
    alpha,
    beta,
    check_counit,
    check_recollement_units,
    check_unit_kernel,
    cross_effect,
    cross_effect_dims,
    cross_effect_projection,
    degree,
    degree_table,
    polynomial_filtration,
    regular_module,
    unit_to_beta,
)
from grtor.errors import DegreeError, RingError, ShapeError, VarianceError


def over_q(expr):
    return ExprFunctor(expr, Q)


def test_cross_effect_of_square():
    ce = cross_effect(over_q(TensorPower(Id(), 2)), 2)
    assert ce.dim == 2
    # 𝔖_2 troca e1⊗e2 e e2⊗e1: traço 0
    assert ce.module.character()['transpositions'] == [0]


@pytest.mark.parametrize(
    ('expr', 'n'),
    [
        (TensorPower(Id(), 2), 2),
        (Sym(2), 2),
        (Ext(2), 2),
        (TensorPower(Id(), 3), 3),
        (DirectSum(Id(), Const(1)), 1),
    ],
)
def test_cross_effect_matches_projection_rank(expr, n):
    functor = over_q(expr)
    for k in (n, n + 1):
        assert cross_effect(functor, k).dim == rank(
            cross_effect_projection(functor, k)
        )


def test_degree_table():
    table = degree_table(
        {
            'const(1)': Const(1),
            'id': Id(),
            'pow(id,2)': TensorPower(Id(), 2),
            'sym(2)': Sym(2),
            'ext(2)': Ext(2),
            'pow(id,3)': TensorPower(Id(), 3),
        },
        bound=4,
    )
    assert table == {
        'const(1)': 0,
        'id': 1,
        'pow(id,2)': 2,
        'sym(2)': 2,
        'ext(2)': 2,
        'pow(id,3)': 3,
    }
    assert degree(over_q(TensorPower(Id(), 3)), 2) is None


def test_degree_over_integers():
    assert degree(ExprFunctor(Dual(Id()), Z), 3) == 1


@pytest.mark.parametrize(
    'expr, want',
    [
        (Ext(2), 2),
        (Ext(3), 3),
        (Tensor(Ext(2), Id()), 3),
        (DirectSum(Id(), Ext(3)), 3),
        (Dual(Ext(2)), 2),
    ],
    ids=str,
)
def test_degree_when_first_cross_effect_vanishes(expr, want):
    assert degree(over_q(expr), 4) == want


def test_cross_effect_dims_of_exterior_powers():
    assert cross_effect_dims(over_q(Ext(2)), 3) == [0, 0, 1, 0]
    assert cross_effect_dims(over_q(Ext(3)), 5) == [0, 0, 0, 1, 0, 0]
    assert cross_effect_dims(over_q(Tensor(Ext(2), Id())), 5) == [
        0, 0, 2, 3, 0, 0
    ]


@pytest.mark.parametrize('n', [1, 2, 3])
def test_cross_effect_dims_match_the_kernel(n):
    functor = over_q(Ext(2))
    assert cross_effect_dims(functor, n)[n] == cross_effect(functor, n).dim


LIBRARY = [Id(), Const(1), TensorPower(Id(), 2), Sym(2), Ext(2), Ext(3)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LIBRARY), st.sampled_from(LIBRARY))
def test_degree_of_tensor_is_additive(left, right):
    total = degree(over_q(Tensor(left, right)), 6)
    assert total == degree(over_q(left), 6) + degree(over_q(right), 6)


def test_library_modules():
    reg = regular_module(3)
    assert reg.dim == 6
    assert reg.character() == {
        'dim': 6,
        'transpositions': [0, 0],
        'cycle': 0,
    }
    assert MODULES['sign'](2).character()['transpositions'] == [-1]


def test_invalid_module():
    with pytest.raises(ShapeError):
        SymModule(2, Q, 1, (Matrix(Q, [[2]]),))
    with pytest.raises(ShapeError):
        SymModule(3, Q, 1, ())


@pytest.mark.parametrize('name', sorted(MODULES))
def test_recollement_units(name):
    assert check_recollement_units(2, MODULES[name](2, Q)).passed


def test_alpha_beta_dimensions():
    trivial = MODULES['trivial'](2, Q)
    # trivial dá Sym^2, sinal dá Λ^2
    assert alpha(2, trivial).dim(3) == 6
    assert beta(2, trivial).dim(3) == 6
    sign = MODULES['sign'](2, Q)
    assert alpha(2, sign).dim(3) == 3
    assert beta(2, sign).dim(3) == 3


def test_alpha_requires_field():
    with pytest.raises(RingError):
        alpha(2, MODULES['trivial'](2, Z))


def test_unit_kernel_of_square():
    assert check_unit_kernel(over_q(TensorPower(Id(), 2)), 4).passed


def test_counit_of_square():
    assert check_counit(over_q(TensorPower(Id(), 2)), 4).passed


def test_unit_errors():
    with pytest.raises(DegreeError):
        unit_to_beta(over_q(Id()), n=2)
    with pytest.raises(RingError):
        unit_to_beta(ExprFunctor(Id(), Z))
    with pytest.raises(VarianceError):
        unit_to_beta(over_q(Dual(Id())))


def test_polynomial_filtration_peels_degrees():
    layers = polynomial_filtration(
        over_q(DirectSum(TensorPower(Id(), 2), Id())), bound=4
    )
    assert [layer.degree for layer in layers] == [2, 1]
    assert layers[0].dims == [0, 2, 6, 12]
    assert layers[1].dims == [0, 1, 2, 3]


def test_additive_quotient():
    assert additive_quotient(over_q(Id())).dim(2) == 2
    assert additive_quotient(over_q(TensorPower(Id(), 2))).dim(2) == 0
