import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genbil import algebra as al
from genbil.errors import (AssociativityViolation, BudgetExceeded, NotAntiMultiplicative,
                           NotUnital, PatternNotClosed, PatternNotUnital, UnityViolation)
from genbil.scalars import Field, Status

Q, F2, F3 = Field(0), Field(2), Field(3)


def unit(F, d, i):
    v = F.zeros(d)
    v[i] = 1
    return v


def cell(A, i, j):
    return unit(A.F, A.dim, A.cells.index((i, j)))


def matrix_unit_consts(n):
    """e_ij e_kl = delta_jk e_il, written out directly."""
    cells = [(i, j) for i in range(n) for j in range(n)]
    d = len(cells)
    c = np.zeros((d, d, d), dtype=int)
    for a, (i, j) in enumerate(cells):
        for b, (k, l) in enumerate(cells):
            if j == k:
                c[a, b, cells.index((i, l))] = 1
    return c


def test_matrix_unit_constants_valid():
    c = matrix_unit_consts(2)
    A = al.make_algebra(F2, 4, c, [1, 0, 0, 1])
    assert A.dim == 4
    assert np.array_equal(A.consts, al.matrix_algebra(F2, 2).consts)


def test_matrix_algebra_products():
    A = al.matrix_algebra(Q, 2)
    assert A.dim == 4
    assert Q.equal(A.mul(cell(A, 0, 0), cell(A, 0, 1)), cell(A, 0, 1))
    assert Q.is_zero(A.mul(cell(A, 0, 1), cell(A, 0, 0)))
    assert Q.equal(A.mul(cell(A, 0, 1), cell(A, 1, 0)), cell(A, 0, 0))


def test_associativity_violation():
    c = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        c[0, i, i] = c[i, 0, i] = 1
    c[1, 2, 1] = 1
    c[2, 2, 1] = 1
    with pytest.raises(AssociativityViolation):
        al.make_algebra(F2, 3, c, [1, 0, 0])


def test_unity_violation():
    c = matrix_unit_consts(2)
    with pytest.raises(UnityViolation):
        al.make_algebra(F2, 4, c, [1, 0, 0, 0])


def test_pattern_checks():
    with pytest.raises(PatternNotUnital):
        al.structured_subalgebra(F2, 2, [[0, 1], [0, 1]])
    with pytest.raises(PatternNotClosed):
        al.structured_subalgebra(F2, 3, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_center_of_matrix_algebra_is_scalars():
    A = al.matrix_algebra(F2, 2)
    z = al.center(A)
    assert len(z) == 1
    assert F2.equal(z[0], A.unity)


def test_transpose_is_bijective_anti_endo():
    A = al.matrix_algebra(Q, 2)
    t = al.transpose(A)
    assert t.bijective and t.is_involution()
    for i, j in itertools.product(range(4), repeat=2):
        a, b = unit(Q, 4, i), unit(Q, 4, j)
        assert Q.equal(t.apply(A.mul(a, b)), A.mul(t.apply(b), t.apply(a)))


def test_non_anti_multiplicative_rejected():
    A = al.matrix_algebra(F2, 2)
    with pytest.raises(NotAntiMultiplicative):
        al.make_anti_endo(A, F2.eye(4))  # identity is multiplicative, not anti


def test_non_unital_rejected():
    A = al.upper_triangular(F2, 2)
    with pytest.raises(NotUnital):
        al.make_anti_endo(A, F2.zeros((3, 3)))


def test_product_anti_endos():
    k = al.field_algebra(F2)
    A = al.product_algebra(k, k)
    maps = al.enumerate_anti_endos(A)
    assert len(maps) == 4
    assert sum(a.bijective for a in maps) == 2
    keys = {a.key() for a in maps if a.bijective}
    assert keys == {al.identity_map(A).key(), al.swap(A).key()}


def test_m2_f2_anti_endos():
    A = al.matrix_algebra(F2, 2)
    maps = al.enumerate_anti_endos(A)
    assert len(maps) == 6
    assert all(a.bijective for a in maps)
    assert len(al.inner_orbits(maps)) == 1


@pytest.mark.parametrize("A", [
    al.upper_triangular(F2, 2),
    al.product_algebra(al.field_algebra(F3), al.field_algebra(F3)),
    al.extension_field(F2, [1, 1]),
    al.extension_field(F3, [0, 0]),
    al.structured_subalgebra(F2, 2, [[1, 0], [0, 1]]),
], ids=lambda A: A.name)
def test_enumeration_matches_bruteforce(A):
    fast = [a.key() for a in al.enumerate_anti_endos(A)]
    slow = [a.key() for a in al.all_anti_endos_bruteforce(A)]
    assert fast == slow


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        al.enumerate_anti_endos(al.matrix_algebra(F3, 2), budget=10)


def test_inner_automorphism_scales():
    A = al.matrix_algebra(Q, 2)
    u = Q.add(cell(A, 0, 0), Q.scale(2, cell(A, 1, 1)))
    phi = al.inner_automorphism(A, u)
    assert Q.equal(Q.matmul(phi, cell(A, 0, 1)), Q.scale("1/2", cell(A, 0, 1)))


def test_transpose_and_symplectic_inner_equivalent():
    A = al.matrix_algebra(F3, 2)
    res = al.is_inner_equivalent(al.transpose(A), al.symplectic(A))
    assert res.status is Status.FOUND
    u = res.matrix
    uinv = A.inverse(u)
    t, s = al.transpose(A), al.symplectic(A)
    for i in range(4):
        assert F3.equal(s.image(i), A.mul(A.mul(u, t.image(i)), uinv))


def test_swap_not_inner_equivalent_to_identity():
    k = al.field_algebra(F2)
    A = al.product_algebra(k, k)
    assert al.is_inner_equivalent(al.identity_map(A), al.swap(A)).status is Status.NONE


def test_is_inner_on_conjugation():
    A = al.matrix_algebra(F3, 2)
    u = F3.add(cell(A, 0, 1), cell(A, 1, 0))
    res = al.is_inner(A, al.inner_automorphism(A, u))
    assert res.found


def test_extension_field_is_field():
    A = al.extension_field(F3, [1, 0])  # x^2 + 1
    for coeffs in itertools.product(range(3), repeat=2):
        a = F3.asarray(coeffs)
        if any(coeffs):
            assert A.is_unit(a)


def test_matrix_ring_block_structure():
    k = al.field_algebra(F2)
    A = al.matrix_ring(al.product_algebra(k, k), 2)
    assert A.dim == 8
    assert A.block[0] == 2


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.sampled_from(["UT2", "M2", "F4", "F3xF3", "F2[x]/x^2"]), st.data())
def test_enumerated_maps_reverse_products(name, data):
    A = _ALGEBRAS[name]
    maps = _MAPS[name]
    a = maps[data.draw(st.integers(0, len(maps) - 1))]
    F = A.F
    x = F.asarray(data.draw(st.lists(st.integers(0, F.p - 1), min_size=A.dim, max_size=A.dim)))
    y = F.asarray(data.draw(st.lists(st.integers(0, F.p - 1), min_size=A.dim, max_size=A.dim)))
    assert F.equal(a.apply(A.mul(x, y)), A.mul(a.apply(y), a.apply(x)))
    assert F.equal(a.apply(A.unity), A.unity)


_ALGEBRAS = {
    "UT2": al.upper_triangular(F3, 2),
    "M2": al.matrix_algebra(F2, 2),
    "F4": al.extension_field(F2, [1, 1]),
    "F3xF3": al.product_algebra(al.field_algebra(F3), al.field_algebra(F3)),
    "F2[x]/x^2": al.extension_field(F2, [0, 0]),
}
_MAPS = {k: al.enumerate_anti_endos(A) for k, A in _ALGEBRAS.items()}
