import itertools

import numpy as np
import pytest

from genbil import algebra as al
from genbil.errors import ModuleLawViolation
from genbil.modrep import (RightModule, direct_sum, endo_algebra, hom_space, is_fg_projective,
                           is_generator, is_module_isomorphic, left_pattern_endo, pattern_module,
                           power_endo, regular_endo, regular_module, row_module, twist,
                           vector_space_endo)
from genbil.scalars import Field, Status

F2, F3 = Field(2), Field(3)
UT2 = al.upper_triangular(F2, 2)           # basis e11, e12, e22
M2 = al.matrix_algebra(F2, 2)
S1 = RightModule(UT2, [[[1]], [[0]], [[0]]], name="S1")   # e11 acts as 1, not projective
S2 = RightModule(UT2, [[[0]], [[0]], [[1]]], name="S2")   # e22 acts as 1, = e22 UT2


def brute_hom_count(M, N):
    """Count F2-matrices h with h A_i = B_i h by trying all of them."""
    count = 0
    for entries in itertools.product(range(2), repeat=M.dim * N.dim):
        h = np.array(entries, dtype=np.int64).reshape(N.dim, M.dim)
        if all(np.array_equal(h @ a % 2, b @ h % 2) for a, b in zip(M.actions, N.actions)):
            count += 1
    return count


def test_regular_module_right_multiplication_rank():
    R = regular_module(UT2)
    assert R.dim == 3
    # x . e11 for x in e11, e12, e22 gives e11, 0, 0
    assert np.linalg.matrix_rank(R.actions[0].astype(float)) == 1
    for i in range(3):
        x = np.eye(3, dtype=np.int64)[i]
        assert F2.equal(R.act(x, UT2.basis(0)), UT2.mul(x, UT2.basis(0)))


def test_module_law_violation():
    with pytest.raises(ModuleLawViolation):
        RightModule(UT2, [[[1]], [[1]], [[0]]])


def test_column_space_hom_is_scalars():
    V = row_module(M2)
    assert len(hom_space(V, V)) == 1


@pytest.mark.parametrize("A,B,want", [(S1, S1, 1), (S1, S2, 0), (S2, S1, 0), (S2, S2, 1)])
def test_simple_homs(A, B, want):
    assert len(hom_space(A, B)) == want


@pytest.mark.parametrize("M,N", [
    (regular_module(UT2), regular_module(UT2)),
    (regular_module(UT2), S1),
    (S2, regular_module(UT2)),
    (row_module(UT2), regular_module(UT2)),
])
def test_hom_dims_match_bruteforce(M, N):
    assert 2 ** len(hom_space(M, N)) == brute_hom_count(M, N)


def test_end_of_regular_is_algebra():
    E = endo_algebra(regular_module(M2))
    assert E.W.dim == 4
    E2 = regular_endo(M2)
    assert E2.W is M2
    for k in range(4):
        assert F2.equal(E2.rep[k], M2.left_basis_matrix(k))


def test_generator_predicate():
    assert is_generator(row_module(M2))
    assert not is_generator(S2)
    assert not is_generator(S1)
    assert is_generator(regular_module(UT2))


def test_projective_predicate():
    e11R = pattern_module(UT2, [[1, 1]])
    assert e11R.dim == 2
    assert is_fg_projective(e11R)
    assert is_fg_projective(S2)
    assert not is_fg_projective(S1)


def test_direct_sum_end():
    R = regular_module(UT2)
    M = direct_sum(R, R)
    assert M.dim == 6
    assert endo_algebra(M).W.dim == 12


def test_power_endo_is_matrix_ring():
    E = power_endo(regular_endo(UT2), 2)
    assert E.W.dim == 12
    assert E.M.dim == 6
    assert len(hom_space(E.M, E.M)) == 12


def test_vector_space_endo():
    E = vector_space_endo(F3, 2)
    assert E.W.dim == 4 and E.M.dim == 2


def test_left_pattern_endo_incidence():
    R = al.structured_subalgebra(F2, 3, [[1, 1, 1], [1, 1, 1], [0, 0, 1]])
    M = pattern_module(R, [[1, 1, 1], [0, 0, 1]])
    E = left_pattern_endo(M, al.upper_triangular(F2, 2))
    assert E.W.dim == 3 and M.dim == 4
    assert endo_algebra(M).W.dim == 3


def test_isomorphism_search():
    assert is_module_isomorphic(S1, S1).status is Status.FOUND
    assert is_module_isomorphic(S1, S2).status is Status.NONE
    e22R = pattern_module(UT2, [[0, 1]])
    assert is_module_isomorphic(e22R, S2).status is Status.FOUND


def test_twisted_module():
    E = vector_space_endo(F2, 2)
    t = al.transpose(E.W)
    Mt = twist(E, t)
    assert Mt.R is E.W and Mt.dim == 2
    assert is_fg_projective(Mt)
