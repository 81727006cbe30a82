import itertools

import numpy as np
import pytest

from genbil import algebra as al
from genbil.classify import (InvolutionType, OsbornCase, center_restriction, classify_involution,
                             invariant_idempotent_hypothesis, osborn_classify,
                             primitive_central_idempotents, radical_check, radical_is_zero)
from genbil.errors import (HypothesisUnverified, HypothesisViolated, Inconclusive, NotFieldCase,
                           NotInvolution, NotSemisimple)
from genbil.modrep import regular_endo, vector_space_endo
from genbil.scalars import Field

Q, F2, F3 = Field(0), Field(2), Field(3)


def pair(F):
    k = al.field_algebra(F)
    return al.product_algebra(k, k)


def brute_central_idempotents(A):
    """Every nonzero central idempotent, by listing all elements over F_p."""
    F = A.F
    out = []
    for coeffs in itertools.product(range(F.p), repeat=A.dim):
        x = F.asarray(coeffs)
        if F.is_zero(x) or not A.is_idempotent(x):
            continue
        if all(F.equal(A.mul(x, A.basis(i)), A.mul(A.basis(i), x)) for i in range(A.dim)):
            out.append(x)
    return out


def primitive(A, idems):
    """Central idempotents that are not a sum of two nonzero orthogonal ones."""
    F = A.F
    keys = {tuple(e) for e in idems}
    prim = []
    for e in idems:
        split = any(tuple(F.sub(e, f)) in keys and F.is_zero(A.mul(f, F.sub(e, f)))
                    for f in idems if not F.equal(f, e))
        if not split:
            prim.append(e)
    return prim


def test_center_restriction_trivial_on_m2():
    A = al.matrix_algebra(F2, 2)
    for alpha in al.enumerate_anti_endos(A):
        cr = center_restriction(alpha)
        assert cr.invariant and cr.trivial


def test_frobenius_moves_the_center():
    A = al.extension_field(F3, [1, 0])
    cr = center_restriction(al.frobenius(A))
    assert cr.invariant and cr.bijective and not cr.trivial


def test_involution_types_m2():
    E = vector_space_endo(F3, 2)
    assert classify_involution(E, al.transpose(E.W)).kind is InvolutionType.ORTHOGONAL
    sym = classify_involution(E, al.symplectic(E.W))
    assert sym.kind is InvolutionType.SYMPLECTIC
    assert sym.witness["theta_sign"] == -1


def test_char_two_uses_alternation():
    E = vector_space_endo(F2, 2)
    t = classify_involution(E, al.transpose(E.W))
    assert t.kind is InvolutionType.ORTHOGONAL and not t.witness["alternating"]
    s = classify_involution(E, al.symplectic(E.W))
    assert s.kind is InvolutionType.SYMPLECTIC and s.witness["alternating"]


def test_unitary_over_f9():
    A = al.extension_field(F3, [1, 0])
    E = regular_endo(A)
    assert classify_involution(E, al.frobenius(A)).kind is InvolutionType.UNITARY


def test_non_field_center_reported():
    A = pair(F3)
    E = regular_endo(A)
    with pytest.raises(NotFieldCase):
        classify_involution(E, al.swap(A))


def test_classify_rejects_non_involution():
    A = al.upper_triangular(F2, 2)
    alpha = next(a for a in al.enumerate_anti_endos(A) if not a.is_involution())
    with pytest.raises(NotInvolution):
        classify_involution(regular_endo(A), alpha)


def test_idempotent_scans():
    P = pair(F2)
    assert invariant_idempotent_hypothesis(al.swap(P)).status == "holds"
    ident = invariant_idempotent_hypothesis(al.identity_map(P))
    assert ident.status == "fails"
    assert P.is_idempotent(ident.witness)
    M = al.matrix_algebra(F2, 2)
    assert invariant_idempotent_hypothesis(al.symplectic(M)).status == "holds"
    t = invariant_idempotent_hypothesis(al.transpose(M))
    assert t.status == "fails"
    assert F2.equal(al.transpose(M).apply(t.witness), t.witness)


def test_idempotent_scan_over_rationals_inconclusive():
    M = al.matrix_algebra(Q, 2)
    assert invariant_idempotent_hypothesis(al.symplectic(M)).status == "inconclusive"


def test_idempotent_scan_budget():
    M = al.matrix_algebra(F3, 2)
    assert invariant_idempotent_hypothesis(al.transpose(M), budget=3).status == "inconclusive"


@pytest.mark.parametrize("alg,alpha,case", [
    (al.extension_field(F2, [1, 1]), al.frobenius, OsbornCase.DIVISION_RING),
    (al.field_algebra(F3), al.identity_map, OsbornCase.DIVISION_RING),
    (pair(F2), al.swap, OsbornCase.D_TIMES_DOP),
    (pair(F3), al.swap, OsbornCase.D_TIMES_DOP),
    (al.matrix_algebra(F2, 2), al.symplectic, OsbornCase.M2_SYMPLECTIC),
    (al.matrix_algebra(F3, 2), al.symplectic, OsbornCase.M2_SYMPLECTIC),
], ids=lambda x: getattr(x, "name", str(x)))
def test_osborn_cases(alg, alpha, case):
    verdict = osborn_classify(alpha(alg))
    assert verdict.case is case


def test_osborn_product_witness_is_bijective():
    v = osborn_classify(al.swap(pair(F3)))
    assert v.witness["block_dim"] == 1
    assert np.linalg.matrix_rank(v.witness["iso"].astype(float)) == 2


def test_osborn_hypothesis_checks():
    with pytest.raises(HypothesisViolated):
        osborn_classify(al.transpose(al.matrix_algebra(F3, 2)))
    with pytest.raises(HypothesisUnverified):
        osborn_classify(al.symplectic(al.matrix_algebra(Q, 2)))
    v = osborn_classify(al.symplectic(al.matrix_algebra(Q, 2)), assume_hypothesis=True)
    assert v.case is OsbornCase.M2_SYMPLECTIC
    with pytest.raises(NotSemisimple):
        osborn_classify(al.identity_map(al.extension_field(F2, [0, 0])))


@pytest.mark.parametrize("A,zero", [
    (pair(F2), True),
    (al.matrix_algebra(F2, 2), True),
    (al.extension_field(F3, [1, 0]), True),
    (al.upper_triangular(F2, 2), False),
    (al.upper_triangular(Q, 2), False),
    (al.extension_field(F2, [0, 0]), False),
    (al.extension_field(F2, [1, 0]), False),     # x^2 + 1 = (x + 1)^2 over F2
], ids=lambda x: getattr(x, "name", str(x)))
def test_radical(A, zero):
    res = radical_check(A)
    assert res.zero == zero
    if not zero:
        # the witness generates a nilpotent ideal, so in particular it is nilpotent
        assert A.F.is_zero(A.power(res.witness, A.dim + 1))


def test_radical_scan_budget():
    A = al.matrix_algebra(F2, 2)
    with pytest.raises(Inconclusive):
        radical_check(A, budget=2)


@pytest.mark.parametrize("A", [
    pair(F2),
    al.product_algebra(pair(F2), al.field_algebra(F2)),
    al.matrix_algebra(F2, 2),
    al.extension_field(F2, [1, 1]),
    al.product_algebra(al.extension_field(F2, [1, 1]), al.field_algebra(F2)),
    pair(F3),
], ids=lambda A: A.name)
def test_primitive_central_idempotents_match_bruteforce(A):
    got = {tuple(e) for e in primitive_central_idempotents(A)}
    want = {tuple(e) for e in primitive(A, brute_central_idempotents(A))}
    assert got == want
    F = A.F
    total = F.zeros(A.dim)
    for e in got:
        total = F.add(total, F.asarray(e))
    assert F.equal(total, A.unity)


def test_central_idempotents_over_rationals():
    assert len(primitive_central_idempotents(pair(Q))) == 2
    assert radical_is_zero(al.matrix_algebra(Q, 2))
