import pytest

from homalg.algebra import corner, zero_algebra
from homalg.cartan import (
    cartan_det,
    cartan_matrix,
    cartan_reduction,
    euler_matrix,
    evaluate_grid,
    format_graded_cartan,
    graded_cartan,
    identity,
    int_det,
    matmul_int,
    principal_block,
)
from homalg.ext import ext_algebra, ext_algebra_global_dimension
from homalg.harness.families import linear, linear_masks
from homalg.polynomial import IntPolynomial
from homalg.quiver import compile_presentation
from homalg.resolution import BoundError, ResolutionCache, global_dimension
from homalg.verdict import Finite

T = IntPolynomial([0, 1])


def fresh():
    return ResolutionCache()


def test_cartan_matrix_examples(semisimple2, a2, cyc3):
    assert cartan_matrix(semisimple2) == [[1, 0], [0, 1]]
    assert cartan_matrix(a2) == [[1, 0], [1, 1]]
    assert cartan_matrix(cyc3) == [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    assert cartan_det(cyc3) == 2


def test_cartan_det_examples(a2):
    assert cartan_det(zero_algebra()) == 1
    assert cartan_det(a2) == 1
    assert int_det([]) == 1


def test_graded_cartan_examples(semisimple2, a2):
    assert graded_cartan(semisimple2) == [[IntPolynomial(1), IntPolynomial(0)], [IntPolynomial(0), IntPolynomial(1)]]
    assert graded_cartan(a2) == [[IntPolynomial(1), IntPolynomial(0)], [T, IntPolynomial(1)]]


def test_graded_cartan_of_truncated_polynomial_ext(cyc3):
    Y = ext_algebra(cyc3, ["1"], 9, fresh())
    (p,), = graded_cartan(Y.algebra)
    assert p == IntPolynomial([1, 0, 0, 1, 0, 0, 1, 0, 0, 1])
    assert format_graded_cartan([[p]], truncated=True) == ["gradedCartan[1][1] = 1 + t^3 + t^6 + t^9 + ..."]


def test_graded_cartan_at_one_is_cartan(cyc3, a3rad2):
    for alg in (cyc3, a3rad2):
        assert evaluate_grid(graded_cartan(alg), 1) == cartan_matrix(alg)


def test_euler_matrix_examples(semisimple2, a2):
    assert euler_matrix(semisimple2, 5, fresh()).matrix == [[1, 0], [0, 1]]
    E = euler_matrix(a2, 5, fresh())
    assert E.complete and E.matrix == [[1, 0], [-1, 1]]
    # S_2 is projective: unit column
    assert [row[1] for row in E.matrix] == [0, 1]


def test_incomplete_euler_matrix_is_refused(cyc3):
    E = euler_matrix(cyc3, 10, fresh())
    assert not E.complete
    with pytest.raises(BoundError):
        E.require_complete()
    with pytest.raises(BoundError):
        cartan_reduction(cyc3, ["1"], 10, fresh())


def test_cartan_times_euler_is_identity_on_linear_family():
    for n in range(1, 5):
        for mask in linear_masks(n):
            alg = compile_presentation(linear(n, mask))
            assert isinstance(global_dimension(alg, 10, fresh()), Finite)
            E = euler_matrix(alg, 10, fresh())
            C = cartan_matrix(alg)
            assert matmul_int(C, E.matrix) == identity(alg.n)
            assert abs(int_det(C)) == 1


def test_corner_determinant_is_principal_block(cyc3, a3rad2):
    for alg in (cyc3, a3rad2):
        for keep in ([0], [1, 2], [0, 2]):
            g = corner(alg, [alg.labels[i] for i in keep])
            assert cartan_det(g) == int_det(principal_block(cartan_matrix(alg), keep))


def test_reduction_full_support(a3rad2):
    rep = cartan_reduction(a3rad2, a3rad2.labels, 10, fresh())
    assert rep.det_Gamma == 1
    assert rep.det_CA * rep.det_W == 1
    assert all(rep.identity_checks().values())


def test_reduction_a2(a2):
    rep = cartan_reduction(a2, ["1"], 10, fresh())
    assert (rep.det_CA, rep.det_Gamma) == (1, 1)
    assert rep.W == [[1]]
    assert all(rep.identity_checks().values())


def test_reduction_a3_rad2_middle_vertex(a3rad2):
    cache = fresh()
    Y = ext_algebra(a3rad2, ["2"], 10, cache)
    gY, advisory = ext_algebra_global_dimension(Y, cache=cache)
    assert isinstance(gY, Finite) and not advisory
    rep = cartan_reduction(a3rad2, ["2"], 10, cache, ext=Y, ext_gldim=gY)
    assert rep.det_CA == rep.det_Gamma == rep.det_W == 1
    assert rep.graded_checks["graded_det_one"]
    assert rep.graded_checks["C_Y(-1)_is_W^T"]
    checks = rep.identity_checks()
    assert all(checks.values()), checks
    text = "\n".join(rep.lines())
    assert "det_CA = 1" in text
    assert "E^T (transpose convention)" in text
