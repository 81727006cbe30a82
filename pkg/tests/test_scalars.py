from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, QQ, Matrix
from sympy.polys.matrices import DomainMatrix

from genbil import scalars as sc
from genbil._kernels import _fallback
from genbil.scalars import Field, Status

try:
    from genbil._kernels import _modp
except ImportError:
    _modp = None

Q = Field(0)
F2, F3, F5 = Field(2), Field(3), Field(5)


def sympy_rref(F, rows):
    """Independent oracle: sympy's rref over QQ or GF(p)."""
    if F.p == 0:
        r, piv = Matrix(rows).rref()
        return [[Fraction(int(x.p), int(x.q)) for x in r.row(i)] for i in range(r.rows)], list(piv)
    dm = DomainMatrix([[GF(F.p)(int(x)) for x in row] for row in rows], (len(rows), len(rows[0])), GF(F.p))
    r, piv = dm.rref()
    return [[int(x) % F.p for x in row] for row in r.to_Matrix().tolist()], list(piv)


def test_field_parse():
    assert Field.parse("Q") == Q
    assert Field.parse(3) == F3
    assert Field.parse("F5") == F5
    with pytest.raises(ValueError):
        Field(4)


def test_scalar_coercion():
    assert Q.scalar("2/4") == Fraction(1, 2)
    assert F3.scalar("1/2") == 2
    assert F5.scalar(-1) == 4


def test_rref_example():
    r, piv = sc.rref(Q, [[2, 4], [1, 2]])
    assert r.tolist() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_solve_example():
    x = sc.solve(Q, Q.asarray([[1, 1], [0, 1]]), Q.asarray([[3], [1]]))
    assert x.tolist() == [[2], [1]]


def test_solve_inconsistent():
    assert sc.solve(Q, Q.asarray([[1, 1], [1, 1]]), Q.asarray([1, 2])) is None


def test_nullspace_example():
    ker = sc.kernel_basis(Q, Q.asarray([[1, 2]]))
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == -2 * v[1] and v[1] != 0


def test_invert_example():
    assert sc.invert(Q, Q.asarray([[1, 1], [0, 1]])).tolist() == [[1, -1], [0, 1]]
    assert sc.invert(F2, F2.asarray([[1, 1], [1, 1]])) is None


def test_span_search_example():
    e11, e22 = Q.asarray([[1, 0], [0, 0]]), Q.asarray([[0, 0], [0, 1]])
    res = sc.find_invertible_in_span(Q, [e11, e22])
    assert res.status is Status.FOUND
    assert res.matrix.tolist() == [[1, 0], [0, 1]]


def test_span_search_provably_none():
    # span of rank-one nilpotents e12, e13 in 3x3: every element is singular
    mats = []
    for c in (1, 2):
        m = F3.zeros((3, 3))
        m[0, c] = 1
        mats.append(m)
    res = sc.find_invertible_in_span(F3, mats)
    assert res.status is Status.NONE


def test_span_search_budget_inconclusive():
    # strictly upper triangular span: no invertible element, but with p below the
    # coefficient degrees and a budget under p**t nothing can be proved
    mats = []
    for cells in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        m = F2.zeros((4, 4))
        for c in cells:
            m[c] = 1
        mats.append(m)
    assert sc.find_invertible_in_span(F2, mats, budget=4).status is Status.INCONCLUSIVE
    assert sc.find_invertible_in_span(F2, mats, budget=100).status is Status.NONE


def test_quotient_space_example():
    qs = sc.QuotientSpace(Q, [Q.asarray([1, 1, 0])], 3)
    assert qs.dim == 2
    assert Q.equal(Q.matmul(qs.proj, Q.asarray([1, 1, 0])), Q.zeros(2))
    swap = Q.asarray([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert qs.descends(swap)
    shear = Q.asarray([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    assert qs.descends(shear)
    bad = Q.asarray([[1, 0, 0], [0, 1, 0], [0, 1, 1]])
    assert not qs.descends(bad)


def test_subspace_coords():
    u, w = F3.asarray([1, 2, 0]), F3.asarray([0, 1, 1])
    sp = sc.Subspace.span(F3, [u, w], 3)
    assert sp.dim == 2
    v = F3.add(u, F3.scale(2, w))
    assert sp.contains(v)
    assert F3.equal(sp.vector(sp.coords(v)), v)
    assert not sp.contains(F3.asarray([0, 0, 1]))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(matrices, st.sampled_from([0, 2, 3, 5, 7]))
def test_rref_matches_sympy(rows, p):
    F = Field(p)
    r, piv = sc.rref(F, rows)
    want, wpiv = sympy_rref(F, rows)
    assert piv == wpiv
    assert [[F.scalar(x) for x in row] for row in r.tolist()] == [[F.scalar(x) for x in row] for row in want]
    assert sc.rank(F, F.asarray(rows)) == len(wpiv)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(matrices, st.sampled_from([0, 2, 3]))
def test_kernel_and_solve(rows, p):
    F = Field(p)
    a = F.asarray(rows)
    ker = sc.kernel_basis(F, a)
    assert len(ker) == a.shape[1] - sc.rank(F, a)
    for v in ker:
        assert F.is_zero(F.matmul(a, v))
    x = F.asarray([1] * a.shape[1])
    b = F.matmul(a, x)
    y = sc.solve(F, a, b)
    assert F.equal(F.matmul(a, y), b)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)),
       st.sampled_from([0, 5]))
def test_inverse_two_sided(rows, p):
    F = Field(p)
    a = F.asarray(rows)
    inv = sc.invert(F, a)
    det = Matrix(rows).det()
    assert (inv is None) == (det % p == 0 if p else det == 0)
    if inv is not None:
        n = a.shape[0]
        assert F.equal(F.matmul(a, inv), F.eye(n))
        assert F.equal(F.matmul(inv, a), F.eye(n))


@pytest.mark.skipif(_modp is None, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None, derandomize=True)
@given(matrices, st.sampled_from([2, 3, 5, 101]))
def test_backends_agree(rows, p):
    a = np.ascontiguousarray(np.asarray(rows, dtype=np.int64) % p)
    x, y = a.copy(), a.copy()
    assert _fallback.rref_modp(x, p) == list(_modp.rref_modp(y, p))
    assert np.array_equal(x, y)
    assert _fallback.rank_modp(a.copy(), p) == _modp.rank_modp(a.copy(), p)


def test_qq_oracle_agrees_with_domain_matrix():
    rows = [[1, 2, 3], [2, 4, 7]]
    r, piv = sc.rref(Q, rows)
    dm = DomainMatrix([[QQ(x) for x in row] for row in rows], (2, 3), QQ).rref()
    assert list(dm[1]) == piv


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GENBIL_PURE_PYTHON="1")
    code = "from genbil import _kernels, scalars as sc, Field; " \
           "print(_kernels.BACKEND, sc.rank(Field(3), Field(3).asarray([[1, 2], [2, 1]])))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "1"]
