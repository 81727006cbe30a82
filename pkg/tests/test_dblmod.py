import numpy as np
import pytest

from genbil import algebra as al
from genbil import scalars as sc
from genbil.dblmod import (DblAntiAuto, DoubleModule, QuotientDouble, double_dual, dual,
                           dual_map, find_anti_auto, is_dbl_isomorphic, pattern_double, phi,
                           side_module, standard_double, u_theta)
from genbil.errors import InvalidInput, ModuleLawViolation
from genbil.modrep import RightModule, is_module_isomorphic, row_module
from genbil.worked_examples import incidence
from genbil.scalars import Field, Status

F2, F3 = Field(2), Field(3)


@pytest.mark.parametrize("p", [2, 3])
def test_standard_double_commutes_for_every_map(p):
    R = al.upper_triangular(Field(p), 2)
    maps = al.enumerate_anti_endos(R)
    assert maps
    for a in maps:
        K = standard_double(R, a)
        for x in K.P:
            for y in K.Q:
                assert np.array_equal(x @ y % p, y @ x % p)


def test_non_commuting_actions_rejected():
    R = al.matrix_algebra(F2, 2)
    right = [R.right_basis_matrix(i) for i in range(4)]
    with pytest.raises(ModuleLawViolation):
        DoubleModule(R, right, right)


def test_sides_of_standard_double_isomorphic():
    R = al.matrix_algebra(F2, 2)
    K = standard_double(R, al.transpose(R))
    assert is_module_isomorphic(side_module(K, 0), side_module(K, 1)).status is Status.FOUND


def test_dual_dimension():
    R = al.matrix_algebra(F2, 2)
    M = row_module(R)
    K = standard_double(R, al.transpose(R))
    assert dual(M, K, 1).dim == 2
    assert dual(M, K, 0).dim == 2


def test_dual_map_rank():
    R = al.field_algebra(F2)
    K = standard_double(R, al.identity_map(R))
    M = RightModule(R, [F2.eye(2)])
    D = dual(M, K, 1)
    f = F2.asarray([[1, 0], [0, 0]])
    g = dual_map(f, D, D)
    assert sc.rank(F2, g.matrix) == 1


def test_u_theta_incidence_invertible():
    ex = incidence(F2)
    D0, D1 = dual(ex.M, ex.K, 0), dual(ex.M, ex.K, 1)
    u = u_theta(ex.theta, D0, D1)
    assert u.matrix.shape == (4, 4)
    assert sc.is_invertible(F2, u.matrix)


def test_phi_bijective():
    R = al.matrix_algebra(F3, 2)
    M = row_module(R)
    K = standard_double(R, al.transpose(R))
    D1, D10 = double_dual(M, K)
    assert sc.is_invertible(F3, phi(M, D1, D10).matrix)


def test_standard_doubles_of_id_and_swap_differ():
    k = al.field_algebra(F2)
    R = al.product_algebra(k, k)
    A = standard_double(R, al.identity_map(R))
    B = standard_double(R, al.swap(R))
    assert is_dbl_isomorphic(A, B).status is Status.NONE
    assert is_dbl_isomorphic(A, A).status is Status.FOUND


def test_find_anti_auto_standard_transpose():
    R = al.matrix_algebra(F3, 2)
    K = standard_double(R, al.transpose(R))
    s = find_anti_auto(K)
    assert s.status is Status.FOUND
    assert s.involution is not None and s.involution.involution


def test_anti_auto_must_exchange_actions():
    ex = incidence(F2)
    with pytest.raises(InvalidInput):
        DblAntiAuto(ex.K, F2.eye(ex.K.dim))


def test_pattern_double_requires_closed_mask():
    R = al.upper_triangular(F2, 2)
    with pytest.raises(InvalidInput):
        pattern_double(R, [[0, 1], [0, 0]])


def test_quotient_double_requires_sub_double_module():
    R = al.upper_triangular(F3, 2)
    K = pattern_double(R, np.ones((2, 2), dtype=int))
    e = F3.zeros(4)
    e[3] = 1
    Q = QuotientDouble(K, [e])
    assert Q.dim == 3
    bad = F3.zeros(4)
    bad[0] = 1
    with pytest.raises(InvalidInput):
        QuotientDouble(K, [bad])
