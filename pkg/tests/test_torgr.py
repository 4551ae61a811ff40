import pytest

from grtor.engine.functors import Dual, Id, precompose_ab
from grtor.engine.linalg import Matrix, Q, Z, fp
from grtor.engine.torgr import (
    SampleSpec,
    check_polynomial_tor_vanishing,
    check_resolution_d_squared,
    constant_functor,
    differential,
    hom_functor,
    homology_of,
    homotopy_check,
    pair_with,
    projection_xi,
    resolution_tensor_power,
    tor,
    tor_complex,
    uct_check,
    verify_xi,
)
from grtor.errors import RingError, ShapeError, VarianceError, XiShapeError

WITNESS = 'A=1, B=1, T=1, phi=(x1) : 1 -> 1, tau=x1*x2'


@pytest.fixture
def dual_id():
    return precompose_ab(Dual(Id()), Z)


def test_dual_id_differentials(dual_id):
    assert differential(dual_id, 1, 0) == Matrix(Z, [[0, 0]])
    assert differential(dual_id, 2, 0) == Matrix(
        Z, [[-1, 0, 0], [0, 0, 1]]
    )
    assert differential(dual_id, 3, 0) == Matrix(
        Z, [[0, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 0]]
    )


def test_tor_of_dual_id(dual_id):
    result = tor(dual_id, 0, range(4))
    assert result[0].free_rank == 1
    assert not result[0].torsion
    for n in (1, 2, 3):
        assert result[n].is_zero


def test_threads_do_not_change_the_answer(dual_id):
    serial = tor(dual_id, 1, [0, 1, 2])
    parallel = tor(dual_id, 1, [0, 1, 2], threads=3)
    assert serial.to_dict() == parallel.to_dict()


@pytest.mark.parametrize('ring', [Z, Q, fp(2)], ids=str)
@pytest.mark.parametrize('r', [0, 1, 2])
def test_constant_functor(ring, r):
    x = constant_functor(ring)
    assert homotopy_check(x, projection_xi(x), r, 5).passed
    result = tor(x, r, range(5))
    assert all(result[n].is_zero for n in range(5))


def test_tor_errors(dual_id):
    with pytest.raises(ShapeError):
        tor_complex(dual_id, 0, 0)
    with pytest.raises(VarianceError):
        tor(precompose_ab(Id(), Z), 0, [0])
    with pytest.raises(ShapeError):
        homology_of(tor_complex(dual_id, 0, 2), [2])


def test_xi_shape_is_checked(dual_id):
    def bad_xi(a, t):
        return Matrix.zeros(Z, 1, 1)

    with pytest.raises(XiShapeError):
        homotopy_check(dual_id, bad_xi, 0, 2)


def test_hom_functor_values():
    x = hom_functor(2)
    assert x.dim(3) == 8
    value = x.on_matrix(Matrix(Z, [[1], [1]]))
    assert value == Matrix(Z, [[1, 0, 0, 1], [0, 1, 1, 0]])
    with pytest.raises(ShapeError):
        hom_functor(1)


def test_extend_by_zero_xi_fails_only_theta_psi():
    x = hom_functor(2)
    report = verify_xi(x, projection_xi(x), SampleSpec(samples=10))
    rows = {row.params['hypothesis']: row for row in report.rows}
    assert rows[1].passed
    assert rows[2].passed
    assert not rows[3].passed
    assert rows[3].detail.startswith(WITNESS)


def test_constant_xi_passes_everything():
    x = constant_functor(Z)
    assert verify_xi(x, projection_xi(x), SampleSpec(samples=15)).passed


@pytest.mark.parametrize('d', [1, 2, 3])
def test_tensor_resolution_d_squared(d):
    assert check_resolution_d_squared(d, 1, 3).passed


def test_tensor_resolution_degree_one_is_the_bar_complex():
    x = precompose_ab(Dual(Id()), Q)
    res = resolution_tensor_power(1, 1, 3, Q)
    paired = pair_with(res, x)
    direct = tor_complex(x, 1, 3)
    for n in (1, 2, 3):
        assert paired.d(n) == direct.d(n)


def test_tensor_resolution_square():
    res = resolution_tensor_power(2, 0, 2, Q)
    assert res.labels[1] == [(0, 1), (1, 0)]
    assert res.rank((1, 0)) == 3
    cx = pair_with(res, precompose_ab(Dual(Id()), Q))
    assert cx.dim(0) == 2
    assert cx.dim(1) == 6
    assert cx.is_complex()


def test_tensor_resolution_errors():
    with pytest.raises(RingError):
        resolution_tensor_power(2, 0, 2, Z)
    with pytest.raises(ShapeError):
        resolution_tensor_power(0, 0, 2, Q)


def test_polynomial_tor_vanishing():
    report = check_polynomial_tor_vanishing(Dual(Id()), range(4), Q)
    assert report.passed
    assert [row.params['degree'] for row in report.rows] == [1, 2, 3]


def test_universal_coefficients():
    assert uct_check(Dual(Id()), 0, [0, 1, 2], 2).passed
