import pytest

from genbil import algebra as al
from genbil import scalars as sc
from genbil.biform import Adjoints, BilinearForm, corresponding_anti_endo, n_fold
from genbil.corresp import (gamma_of_alpha, generization, inner_twist_iso, is_similar,
                            lambda_induced_theta, regularity_predictor, t_n, tensor_alpha,
                            tensor_over_w, theta_alpha, universal_map, verify_weak_isometry,
                            weak_isometry_from_inner)
from genbil.dblmod import is_dbl_isomorphic
from genbil.errors import AlphaNotInvolution, HypothesisViolated, NotRightRegular
from genbil.modrep import (RightModule, direct_sum, endo_algebra, power_endo, regular_endo,
                           regular_module, vector_space_endo)
from genbil.worked_examples import counter3, incidence, triangular, triangular_uv
from genbil.scalars import Field, Status

Q, F2, F3 = Field(0), Field(2), Field(3)
UT2 = al.upper_triangular(F2, 2)


def pair(F):
    k = al.field_algebra(F)
    return al.product_algebra(k, k)


def test_k_alpha_of_field_is_field():
    E = regular_endo(al.field_algebra(Q))
    ka = tensor_alpha(E, al.identity_map(E.W))
    assert ka.dim == 1
    assert Q.equal(ka.form.gram.reshape(1), Q.asarray([1]))


def test_counter3_form_kills_first_vector():
    ex = counter3(F2)
    assert F2.is_zero(ex.b.gram[:, 0, :])
    assert not Adjoints(ex.b).right_injective


@pytest.mark.parametrize("R", [UT2, pair(F2), al.field_algebra(F3)], ids=lambda R: R.name)
@pytest.mark.parametrize("n", [1, 2])
def test_free_module_k_alpha_has_dim_of_ring(R, n):
    En = power_endo(regular_endo(R), n)
    for gamma in al.enumerate_anti_endos(R):
        ka = tensor_alpha(En, al.block_transpose(gamma, En.W))
        assert ka.dim == R.dim


def test_universal_map_of_b_alpha_is_identity():
    E = vector_space_endo(F3, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    f = universal_map(ka.form, ka)
    assert F3.equal(f.matrix, F3.eye(ka.dim))


def test_universal_map_incidence_bijective():
    ex = incidence(F2)
    ka = tensor_alpha(ex.E, ex.S)
    f = universal_map(ex.b, ka)
    assert f is not None and f.is_bijective()


def test_universal_map_absent_for_other_map():
    E = vector_space_endo(F3, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    k = ka.K
    g = F3.asarray([[1, 1], [0, 1]]).reshape(2, 2, 1)
    b = BilinearForm(E.M, k, g)
    assert universal_map(b, ka) is None


def test_theta_alpha_signs():
    E = vector_space_endo(F3, 2)
    kt = tensor_alpha(E, al.transpose(E.W))
    assert F3.equal(theta_alpha(kt).matrix, F3.eye(1))
    assert F3.equal(kt.form.gram, kt.form.gram.transpose(1, 0, 2))
    ks = tensor_alpha(E, al.symplectic(E.W))
    assert F3.equal(theta_alpha(ks).matrix, F3.asarray([[2]]))
    g = ks.form.gram
    assert all(F3.is_zero(g[i, i]) for i in range(2))


def test_theta_alpha_requires_involution():
    E = regular_endo(UT2)
    alpha = next(a for a in al.enumerate_anti_endos(UT2) if not a.is_involution())
    with pytest.raises(AlphaNotInvolution):
        theta_alpha(tensor_alpha(E, alpha))


def test_similarity_reflexive_and_triangular_pairs():
    tri = triangular(F3, 2)
    assert is_similar(tri.b, tri.b).found
    forms = [triangular_uv(tri, u, v) for u in range(2) for v in range(2)]
    for i, b in enumerate(forms):
        assert is_similar(b, b).found
        for b2 in forms[i + 1:]:
            assert is_similar(b, b2).status is Status.NONE


@pytest.mark.parametrize("case", ["field", "m2"])
def test_block_transpose_form_is_two_fold(case):
    if case == "field":
        E = regular_endo(al.field_algebra(F3))
        alpha = al.identity_map(E.W)
    else:
        E = vector_space_endo(F2, 2)
        alpha = al.transpose(E.W)
    En, Ta = t_n(E, alpha, 2)
    assert is_similar(n_fold(tensor_alpha(E, alpha).form, 2), tensor_alpha(En, Ta).form).found


def test_generization_of_incidence_form_is_generic():
    ex = incidence(F2)
    g = generization(ex.b, ex.E)
    assert g.alpha == ex.S
    assert g.status is Status.FOUND
    assert g.right_regular and g.left_regular


def test_truncated_triangular_form_not_generic():
    tri = triangular(F3, 2)
    g = generization(triangular_uv(tri, 1, 0), tri.E)
    assert g.kalpha.dim == 4
    assert g.status is Status.NONE


def test_generization_needs_regular_form():
    ex = counter3(F2)
    with pytest.raises(NotRightRegular):
        generization(ex.b, ex.E)


def test_inner_twist_by_one_is_identity():
    E = vector_space_endo(F3, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    kb, f = inner_twist_iso(ka, E.W.unity)
    assert kb.alpha == ka.alpha
    assert F3.equal(f.matrix, F3.eye(ka.dim))


def test_inner_twist_of_transpose():
    E = vector_space_endo(F2, 2)
    W = E.W
    u = F2.asarray([0, 1, 1, 0])     # e12 + e21
    ka = tensor_alpha(E, al.transpose(W))
    kb, f = inner_twist_iso(ka, u)
    assert f.is_bijective()
    phi = al.inner_automorphism(W, u)
    assert F2.equal(kb.alpha.matrix, F2.matmul(phi, ka.alpha.matrix))


@pytest.mark.parametrize("E", [vector_space_endo(F2, 2), regular_endo(pair(F2))], ids=["M2", "F2xF2"])
def test_isomorphic_k_alpha_implies_inner_equivalence(E):
    maps = al.enumerate_anti_endos(E.W)
    ks = [tensor_alpha(E, a) for a in maps]
    for a, ka in zip(maps, ks):
        for b, kb in zip(maps, ks):
            if is_dbl_isomorphic(ka.K, kb.K).found:
                assert al.is_inner_equivalent(a, b).found


def test_swap_and_identity_give_different_k_alpha():
    E = regular_endo(pair(F2))
    ka = tensor_alpha(E, al.identity_map(E.W))
    kb = tensor_alpha(E, al.swap(E.W))
    assert is_dbl_isomorphic(ka.K, kb.K).status is Status.NONE


def test_lambda_signs_over_rationals():
    E = vector_space_endo(Q, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    one = E.W.unity
    assert Q.equal(lambda_induced_theta(ka, one).matrix, Q.eye(1))
    assert Q.equal(lambda_induced_theta(ka, Q.scale(-1, one)).matrix, Q.scale(-1, Q.eye(1)))


def test_lambda_hypothesis_checked():
    E = vector_space_endo(Q, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    with pytest.raises(HypothesisViolated):
        lambda_induced_theta(ka, Q.asarray([1, 0, 0, 0]))


def test_weak_isometries():
    E = vector_space_endo(F3, 2)
    ka = tensor_alpha(E, al.transpose(E.W))
    kb = tensor_alpha(E, al.transpose(E.W))
    assert verify_weak_isometry(ka.form, kb.form, F3.eye(2), F3.eye(1))
    sigma, f = weak_isometry_from_inner(ka, kb, F3.asarray([0, 1, 1, 0]))
    assert verify_weak_isometry(ka.form, kb.form, sigma, f)
    assert not verify_weak_isometry(ka.form, kb.form, F3.asarray([[1, 1], [0, 1]]), F3.eye(1))


def test_t1_is_alpha():
    E = regular_endo(UT2)
    for alpha in al.enumerate_anti_endos(UT2):
        En, Ta = t_n(E, alpha, 1)
        assert F2.equal(Ta.matrix, alpha.matrix)


def test_t2_of_identity_is_transpose():
    E = regular_endo(al.field_algebra(F2))
    En, Ta = t_n(E, al.identity_map(E.W), 2)
    # M2(F2) basis e11, e12, e21, e22: transpose swaps the middle two
    perm = F2.eye(4)[[0, 2, 1, 3]]
    assert F2.equal(Ta.matrix, perm)


def test_t2_squares_inner_iff_alpha_squared_inner():
    E = regular_endo(UT2)
    for alpha in al.enumerate_anti_endos(UT2):
        if not alpha.bijective:
            continue
        En, Ta = t_n(E, alpha, 2)
        small = al.is_inner(UT2, F2.matmul(alpha.matrix, alpha.matrix)).found
        big = al.is_inner(En.W, F2.matmul(Ta.matrix, Ta.matrix)).found
        assert small == big


def test_tensor_over_w_incidence():
    ex = incidence(F2)
    ka = tensor_alpha(ex.E, ex.S)
    tw = tensor_over_w(ka)
    assert tw.tensor.dim == ka.dim
    assert tw.delta.is_bijective()


def test_tensor_over_w_gamma_bijective_on_m2():
    E = vector_space_endo(F2, 2)
    tw = tensor_over_w(tensor_alpha(E, al.transpose(E.W)))
    assert tw.gamma_injective and tw.gamma_bijective


def test_predictor_projective_cases():
    ex = incidence(F2)
    pred = regularity_predictor(ex.E, ex.S)
    assert pred.fired and pred.right == "regular"
    assert Adjoints(tensor_alpha(ex.E, ex.S).form).right_regular


def test_predictor_generator_case_is_sound():
    S1 = RightModule(UT2, [[[1]], [[0]], [[0]]])
    E = endo_algebra(direct_sum(regular_module(UT2), S1))
    for alpha in al.enumerate_anti_endos(E.W):
        pred = regularity_predictor(E, alpha)
        adj = Adjoints(tensor_alpha(E, alpha).form)
        if pred.right == "regular":
            assert adj.right_regular
        if pred.left == "regular":
            assert adj.left_regular
        if alpha.bijective:
            assert pred.right == pred.left == "regular"


def test_predictor_silent_on_counter3():
    ex = counter3(F2)
    pred = regularity_predictor(ex.E, ex.alpha)
    assert not pred.fired
    assert pred.right is None and pred.left is None


def test_gamma_of_transpose_is_identity():
    E = vector_space_endo(F3, 2)
    res = gamma_of_alpha(E, al.transpose(E.W))
    assert res.gamma.matrix.tolist() == [[1]]
    assert res.iso.is_bijective()


def test_gamma_of_block_swap_is_swap():
    R = pair(F2)
    E2 = power_endo(regular_endo(R), 2)
    res = gamma_of_alpha(E2, al.block_transpose(al.swap(R), E2.W))
    assert F2.equal(res.gamma.matrix, al.swap(R).matrix)


@pytest.mark.parametrize("R", [UT2, pair(F3)], ids=lambda R: R.name)
def test_gamma_round_trip(R):
    E2 = power_endo(regular_endo(R), 2)
    for gamma in al.enumerate_anti_endos(R):
        res = gamma_of_alpha(E2, al.block_transpose(gamma, E2.W))
        assert al.is_inner_equivalent(res.gamma, gamma).found
        assert res.gamma.bijective == gamma.bijective
        assert sc.rank(R.F, res.iso.matrix) == R.dim


def test_regular_module_of_m2_round_trip():
    M2 = al.matrix_algebra(F2, 2)
    E = regular_endo(M2)
    ka = tensor_alpha(E, al.transpose(M2))
    assert ka.dim == 4
    adj = Adjoints(ka.form)
    assert adj.right_regular and adj.left_regular
    assert corresponding_anti_endo(ka.form, E) == al.transpose(M2)
